"""Qubit state construction, validation, reduction and seeded sampling.

Conventions fixed here and used everywhere else:

* Computational basis labels read |q_A q_B q_C ...> with subsystem A as
  the most significant bit, so for three qubits index 4 is |100> and
  index 7 is |111>.  This is what makes "reduce to AB" and "reduce to
  AC" unambiguous.
* Every sampler is indexed: sample k of a run is drawn from its own
  generator seeded by ``SeedSequence(entropy=seed, spawn_key=(k,))``,
  so the k-th state is bit-identical no matter how the index range is
  split across workers.  The generator choice (PCG64 behind
  ``numpy.random.default_rng``) is frozen; outputs record it as
  ``GENERATOR_NAME``.
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from . import linalg

GENERATOR_NAME = "numpy-pcg64-seedseq(seed,index)"

MAX_SEED = 2**64 - 1


class StateError(ValueError):
    """A state fails one of its construction invariants."""


class MembershipError(StateError):
    """A canonical parameter point fails a class-membership precondition."""


def sample_rng(seed: int, index: int) -> np.random.Generator:
    """The frozen per-sample generator: PCG64 keyed by (seed, index)."""
    if not 0 <= seed <= MAX_SEED:
        raise StateError(f"seed must be a 64-bit unsigned integer, got {seed}")
    if index < 0:
        raise StateError(f"sample index must be non-negative, got {index}")
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(index,)))


class DensityMatrix:
    """Validated density operator: Hermitian, unit trace, PSD within tolerance.

    Validation runs one Jacobi eigendecomposition; the spectrum is kept
    so downstream consumers (matrix square roots, purity checks) do not
    repeat it.
    """

    HERMITIAN_TOL = 1e-10
    TRACE_TOL = 1e-10

    def __init__(self, matrix):
        m = np.asarray(matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise StateError(f"density matrix must be square, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise StateError("density matrix contains non-finite entries")
        herm = float(np.abs(m - m.conj().T).max())
        if herm > self.HERMITIAN_TOL:
            raise StateError(
                f"not Hermitian: max |M - M^H| entry is {herm:.3e},"
                f" tolerance {self.HERMITIAN_TOL:.1e}"
            )
        trace_dev = abs(complex(np.trace(m)) - 1.0)
        if trace_dev > self.TRACE_TOL:
            raise StateError(
                f"trace deviates from 1 by {trace_dev:.3e},"
                f" tolerance {self.TRACE_TOL:.1e}"
            )
        eig = linalg.hermitian_eigen(m, tol=self.HERMITIAN_TOL)
        try:
            w = linalg.clamp_psd_eigenvalues(eig.eigenvalues, context="density matrix")
        except linalg.NotPsdError as exc:
            raise StateError(str(exc)) from exc
        self.matrix = m
        self.dim = m.shape[0]
        self._eigenvalues = w
        self._eigenvectors = eig.eigenvectors

    @property
    def eigenvalues(self) -> np.ndarray:
        """Ascending spectrum, tiny negatives already clamped to zero."""
        return self._eigenvalues

    @property
    def eigenvectors(self) -> np.ndarray:
        return self._eigenvectors

    def sqrt(self) -> np.ndarray:
        """Principal square root, reusing the validation spectrum."""
        v = self._eigenvectors
        r = (v * np.sqrt(linalg.spectral_floor(self._eigenvalues))) @ v.conj().T
        return 0.5 * (r + r.conj().T)

    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)

    def to_json_dict(self) -> dict:
        return {
            "dim": int(self.dim),
            "re": [float(x) for x in self.matrix.real.ravel()],
            "im": [float(x) for x in self.matrix.imag.ravel()],
        }

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim})"


class PureState:
    """Normalized state vector over a power-of-two dimensional space."""

    NORM_TOL = 1e-12

    def __init__(self, amplitudes):
        v = np.asarray(amplitudes, dtype=np.complex128)
        if v.ndim != 1 or v.size == 0:
            raise StateError(f"amplitudes must be a 1-d sequence, got shape {v.shape}")
        if v.size & (v.size - 1):
            raise StateError(f"dimension must be a power of two, got {v.size}")
        if not np.all(np.isfinite(v)):
            raise StateError("amplitudes contain non-finite entries")
        dev = abs(float((v.real * v.real + v.imag * v.imag).sum()) - 1.0)
        if dev > self.NORM_TOL:
            raise StateError(
                f"state is not normalized: squared-modulus sum deviates"
                f" from 1 by {dev:.3e}, tolerance {self.NORM_TOL:.1e}"
            )
        self.amplitudes = v
        self.dim = v.size
        self.n_qubits = self.dim.bit_length() - 1

    def density(self) -> DensityMatrix:
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()))

    def __repr__(self):
        return f"PureState(dim={self.dim})"


def pure_to_density(psi: PureState) -> DensityMatrix:
    """Rank-one projector |psi><psi|."""
    return psi.density()


def partial_trace(rho: DensityMatrix, qubit_dims, keep) -> DensityMatrix:
    """Reduce ``rho`` to the subsystems in ``keep`` (original order kept).

    ``qubit_dims`` lists the local dimension of every subsystem in order;
    their product must equal ``rho.dim``.  ``keep`` must be a non-empty
    proper subset of subsystem indices.
    """
    dims = tuple(int(d) for d in qubit_dims)
    if any(d < 1 for d in dims):
        raise StateError(f"subsystem dimensions must be positive, got {dims}")
    if math.prod(dims) != rho.dim:
        raise StateError(
            f"subsystem dimensions {dims} multiply to {math.prod(dims)},"
            f" but the state has dimension {rho.dim}"
        )
    keep_idx = sorted(set(int(i) for i in keep))
    if any(i < 0 or i >= len(dims) for i in keep_idx):
        raise StateError(f"keep indices {keep_idx} out of range for {len(dims)} subsystems")
    if not keep_idx or len(keep_idx) == len(dims):
        raise StateError("keep must be a non-empty proper subset of subsystems")
    arr = rho.matrix.reshape(dims + dims)
    current = list(dims)
    for t in sorted(set(range(len(dims))) - set(keep_idx), reverse=True):
        arr = np.trace(arr, axis1=t, axis2=t + len(current))
        current.pop(t)
    d_out = math.prod(current)
    return DensityMatrix(arr.reshape(d_out, d_out))


@dataclass(frozen=True)
class CanonicalThreeQubit:
    """Five-amplitude, one-phase canonical parametrization of a pure three-qubit state.

    Amplitudes sit on |000>, |100> (with the phase), |101>, |110> and
    |111>; the squared amplitudes sum to one.
    """

    lambda0: float
    lambda1: float
    lambda2: float
    lambda3: float
    lambda4: float
    theta: float = 0.0

    NORM_TOL = 1e-10

    def __post_init__(self):
        for name in ("lambda0", "lambda1", "lambda2", "lambda3", "lambda4"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0.0:
                raise StateError(f"{name} must be a non-negative real, got {value}")
        if not 0.0 <= self.theta <= math.pi:
            raise StateError(f"theta must lie in [0, pi], got {self.theta}")
        dev = abs(sum(v * v for v in self.lambdas()) - 1.0)
        if dev > self.NORM_TOL:
            raise StateError(
                f"squared amplitudes must sum to 1: deviation {dev:.3e},"
                f" tolerance {self.NORM_TOL:.1e}"
            )

    def lambdas(self) -> tuple:
        return (self.lambda0, self.lambda1, self.lambda2, self.lambda3, self.lambda4)


def canonical_state(p: CanonicalThreeQubit) -> PureState:
    """Amplitude vector of the canonical form, basis |q_A q_B q_C>."""
    amp = np.zeros(8, dtype=np.complex128)
    amp[0] = p.lambda0
    amp[4] = p.lambda1 * complex(math.cos(p.theta), math.sin(p.theta))
    amp[5] = p.lambda2
    amp[6] = p.lambda3
    amp[7] = p.lambda4
    return PureState(amp)


def ghz_member(p: CanonicalThreeQubit) -> PureState:
    """Canonical point restricted to the GHZ-class window lambda0, lambda4 > 0."""
    if p.theta != 0.0:
        raise MembershipError(f"GHZ-class window is defined at theta=0, got theta={p.theta}")
    if p.lambda0 <= 0.0 or p.lambda4 <= 0.0:
        raise MembershipError(
            "GHZ-class membership needs lambda0 > 0 and lambda4 > 0,"
            f" got lambda0={p.lambda0}, lambda4={p.lambda4}"
        )
    return canonical_state(p)


def w_member(p: CanonicalThreeQubit) -> PureState:
    """Canonical point restricted to the W-class slice lambda4 = 0, lambda0 > 0."""
    if p.theta != 0.0:
        raise MembershipError(f"W-class slice is defined at theta=0, got theta={p.theta}")
    if p.lambda4 != 0.0:
        raise MembershipError(f"W-class slice needs lambda4 = 0, got lambda4={p.lambda4}")
    if p.lambda0 <= 0.0:
        # lambda0 = 0 makes both partial concurrences vanish; the slice is
        # degenerate there and membership is not decidable from this form.
        raise MembershipError("W-class slice needs lambda0 > 0")
    return canonical_state(p)


@dataclass(frozen=True)
class EnsembleSpec:
    """A reproducible random-state ensemble: kind, seed, size and (Ginibre) rank."""

    kind: str
    seed: int
    count: int
    rank: int | None = None

    def __post_init__(self):
        if self.kind not in ("haar-pure", "ginibre"):
            raise StateError(f"unknown ensemble kind {self.kind!r}")
        if not 0 <= self.seed <= MAX_SEED:
            raise StateError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.count < 1:
            raise StateError(f"count must be at least 1, got {self.count}")
        if self.rank is not None and self.rank < 1:
            raise StateError(f"rank must be positive, got {self.rank}")

    def describe(self, dim: int) -> str:
        if self.kind == "ginibre":
            return f"ginibre(dim={dim},rank={self.rank if self.rank else dim})"
        return f"haar-pure(dim={dim})"


def haar_pure_state(seed: int, index: int, dim: int) -> PureState:
    """Sample k of the Haar-uniform pure ensemble: a normalized complex Gaussian vector."""
    rng = sample_rng(seed, index)
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    v /= math.sqrt(float((v.real * v.real + v.imag * v.imag).sum()))
    return PureState(v)


def ginibre_density(seed: int, index: int, dim: int, rank: int) -> DensityMatrix:
    """Sample k of the Ginibre ensemble: G.G^H normalized, G complex Gaussian dim x rank."""
    if not 1 <= rank <= dim:
        raise StateError(f"rank must lie in [1, {dim}], got {rank}")
    rng = sample_rng(seed, index)
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    m = g @ g.conj().T
    m /= np.trace(m).real
    return DensityMatrix(0.5 * (m + m.conj().T))


def canonical_sample(seed: int, index: int, theta_mode: str = "zero") -> CanonicalThreeQubit:
    """Sample k of the canonical family: squared amplitudes flat on the 4-simplex.

    The flat Dirichlet draw goes through normalized exponentials; theta is
    either pinned to zero or uniform on [0, pi].
    """
    if theta_mode not in ("zero", "uniform"):
        raise StateError(f"theta_mode must be 'zero' or 'uniform', got {theta_mode!r}")
    rng = sample_rng(seed, index)
    e = rng.standard_exponential(5)
    w = e / e.sum()
    lam = np.sqrt(w)
    theta = 0.0 if theta_mode == "zero" else float(rng.uniform(0.0, math.pi))
    return CanonicalThreeQubit(*(float(x) for x in lam), theta=theta)


def sample_pure(spec: EnsembleSpec, dim: int):
    """Stream the Haar-pure ensemble described by ``spec``."""
    if spec.kind != "haar-pure":
        raise StateError(f"sample_pure needs kind 'haar-pure', got {spec.kind!r}")
    for k in range(spec.count):
        yield haar_pure_state(spec.seed, k, dim)


def sample_density(spec: EnsembleSpec, dim: int):
    """Stream the Ginibre ensemble described by ``spec``."""
    if spec.kind != "ginibre":
        raise StateError(f"sample_density needs kind 'ginibre', got {spec.kind!r}")
    rank = spec.rank if spec.rank is not None else dim
    if rank > dim:
        raise StateError(f"rank {rank} exceeds dimension {dim}")
    for k in range(spec.count):
        yield ginibre_density(spec.seed, k, dim, rank)


def sample_canonical(seed: int, count: int, theta_mode: str = "zero"):
    """Stream ``count`` canonical parameter points."""
    if count < 1:
        raise StateError(f"count must be at least 1, got {count}")
    for k in range(count):
        yield canonical_sample(seed, k, theta_mode)


def werner_state(p: float) -> DensityMatrix:
    """Bell state mixed with white noise: p |phi+><phi+| + (1-p) I/4."""
    if not 0.0 <= p <= 1.0:
        raise StateError(f"mixing weight must lie in [0, 1], got {p}")
    bell = np.zeros((4, 4), dtype=np.complex128)
    bell[0, 0] = bell[0, 3] = bell[3, 0] = bell[3, 3] = 0.5
    return DensityMatrix(p * bell + (1.0 - p) * np.eye(4) / 4.0)


def bell_state() -> PureState:
    """(|00> + |11>)/sqrt(2)."""
    s = 1.0 / math.sqrt(2.0)
    return PureState([s, 0.0, 0.0, s])


# --- density-matrix file format -------------------------------------------
#
# A density matrix on disk is a JSON object {"dim": d, "re": [...],
# "im": [...]} with row-major real and imaginary parts of length d*d.


def density_matrix_from_json_dict(obj) -> DensityMatrix:
    """Build a validated DensityMatrix from the JSON wire format."""
    if not isinstance(obj, dict):
        raise StateError("density-matrix JSON must be an object")
    try:
        dim = int(obj["dim"])
        re = np.asarray(obj["re"], dtype=np.float64)
        im = np.asarray(obj["im"], dtype=np.float64)
    except (KeyError, TypeError, ValueError) as exc:
        raise StateError(f"density-matrix JSON is malformed: {exc}") from exc
    if dim < 1 or re.shape != (dim * dim,) or im.shape != (dim * dim,):
        raise StateError(
            f"density-matrix JSON needs re/im arrays of length dim^2={dim * dim},"
            f" got {re.shape} and {im.shape}"
        )
    m = (re + 1j * im).reshape(dim, dim)
    if not np.all(np.isfinite(m)):
        raise StateError("density-matrix JSON contains non-finite entries")
    # report every residual at once so a bad file is diagnosable in one pass
    herm = float(np.abs(m - m.conj().T).max())
    trace_dev = abs(complex(np.trace(m)) - 1.0)
    problems = []
    if herm > DensityMatrix.HERMITIAN_TOL:
        problems.append(f"hermiticity residual {herm:.3e}")
    if trace_dev > DensityMatrix.TRACE_TOL:
        problems.append(f"trace deviation {trace_dev:.3e}")
    if not problems:
        wmin = float(linalg.hermitian_eigen(m).eigenvalues.min())
        if wmin < -linalg.PSD_CLAMP:
            problems.append(f"minimum eigenvalue {wmin:.3e}")
    if problems:
        raise StateError("density-matrix file fails validation: " + ", ".join(problems))
    return DensityMatrix(m)


def read_density_matrix(path) -> DensityMatrix:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise StateError(f"density-matrix file is not valid JSON: {exc}") from exc
    return density_matrix_from_json_dict(obj)


def write_density_matrix(path, rho: DensityMatrix):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(rho.to_json_dict(), fh)
        fh.write("\n")
