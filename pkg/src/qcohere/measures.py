"""Coherence, concurrence and tangle evaluators.

Two routes exist for the canonical three-qubit family: closed forms in
the amplitudes (valid on the zero-phase slice, except the tangle which
holds for any phase) and a matrix route that builds the state, reduces
it and evaluates the general definitions.  The two are kept independent
so each can audit the other.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .linalg import SIGMA_Y
from .states import (
    CanonicalThreeQubit,
    DensityMatrix,
    PureState,
    canonical_state,
    partial_trace,
    pure_to_density,
)

SIGMA_YY = np.kron(SIGMA_Y, SIGMA_Y)

# Slack applied to every inequality verdict in the chain report, and the
# band inside which a slightly negative tangle residual is treated as zero.
LINK_TOL = 1e-9
TANGLE_CLAMP = 1e-8


class MeasureError(ValueError):
    pass


class OutOfFamilyError(MeasureError):
    """A closed form was asked for outside the zero-phase canonical slice."""


class NumericalInconsistencyError(MeasureError):
    """Two routes to the same quantity disagree beyond their noise band."""


def _require_theta_zero(p: CanonicalThreeQubit, what: str):
    if p.theta != 0.0:
        raise OutOfFamilyError(f"{what} is a zero-phase closed form, got theta={p.theta}")


def l1_coherence(rho: DensityMatrix) -> float:
    """Sum of |rho_ij| over all ordered pairs i != j (each unordered pair counts twice)."""
    m = rho.matrix
    return float(np.abs(m).sum() - np.abs(np.diagonal(m)).sum())


def spin_flip(rho: DensityMatrix) -> np.ndarray:
    """(sigma_y x sigma_y) rho* (sigma_y x sigma_y), conjugation in the computational basis."""
    if rho.dim != 4:
        raise MeasureError(f"spin flip is defined for two qubits (dim 4), got dim {rho.dim}")
    return SIGMA_YY @ rho.matrix.conj() @ SIGMA_YY


def _spin_flip_roots(rho: DensityMatrix) -> np.ndarray:
    """Descending square roots of the eigenvalues of rho.rho~.

    The spectrum is taken from the Hermitian matrix sqrt(rho).rho~.sqrt(rho),
    which shares it with rho.rho~ but keeps every solver Hermitian.
    """
    s = rho.sqrt()
    m = s @ spin_flip(rho) @ s
    m = 0.5 * (m + m.conj().T)
    w = linalg.hermitian_eigen(m).eigenvalues
    w = linalg.clamp_psd_eigenvalues(w, context="spin-flip product spectrum")
    return np.sqrt(linalg.spectral_floor(w))[::-1]


def concurrence(rho: DensityMatrix) -> float:
    """Two-qubit concurrence from the spin-flip spectrum (Wootters form)."""
    if rho.dim != 4:
        raise MeasureError(f"concurrence is defined for two qubits (dim 4), got dim {rho.dim}")
    r = _spin_flip_roots(rho)
    return max(0.0, float(r[0] - r[1] - r[2] - r[3]))


@dataclass(frozen=True)
class MeasureReport:
    """Basis-fixed coherence, entanglement and purity of one two-qubit state."""

    l1_coherence: float
    concurrence: float
    purity: float

    def __post_init__(self):
        if self.l1_coherence < 0.0:
            raise MeasureError(f"l1 coherence must be non-negative, got {self.l1_coherence}")
        if not -1e-10 <= self.concurrence <= 1.0 + 1e-10:
            raise MeasureError(f"concurrence must lie in [0, 1], got {self.concurrence}")


def measure_report(rho: DensityMatrix) -> MeasureReport:
    return MeasureReport(
        l1_coherence=l1_coherence(rho),
        concurrence=concurrence(rho),
        purity=rho.purity(),
    )


@dataclass(frozen=True)
class LinkVerdict:
    holds: bool
    margin: float


def _verdict(margin: float) -> LinkVerdict:
    return LinkVerdict(holds=margin >= -LINK_TOL, margin=float(margin))


@dataclass(frozen=True)
class ChainReport:
    """Every quantity in the concurrence-vs-coherence inequality chain.

    Intermediate links are reported, never asserted: the literal
    trace-of-square reading of the middle bound fails on easy diagonal
    states and the one-norm bound has two inequivalent readings, so each
    link carries its own margin and the chain is judged end to end.
    """

    concurrence: float
    sqrt_lambda_max: float
    smax_product: float
    frobenius_product: float
    trace_sq_product: float
    candidate_one_norms: dict
    l1_coherence: float
    link_verdicts: dict

    @property
    def end_to_end(self) -> LinkVerdict:
        return self.link_verdicts["concurrence_le_l1_coherence"]

    def to_json_dict(self) -> dict:
        return {
            "concurrence": self.concurrence,
            "sqrt_lambda_max": self.sqrt_lambda_max,
            "smax_product": self.smax_product,
            "frobenius_product": self.frobenius_product,
            "trace_sq_product": self.trace_sq_product,
            "candidate_one_norms": dict(self.candidate_one_norms),
            "l1_coherence": self.l1_coherence,
            "links": {
                name: {"holds": v.holds, "margin": v.margin}
                for name, v in self.link_verdicts.items()
            },
        }


def inequality_chain(rho: DensityMatrix) -> ChainReport:
    """Evaluate the full chain of bounds linking concurrence to l1-coherence."""
    if rho.dim != 4:
        raise MeasureError(f"the inequality chain is defined for dim 4, got dim {rho.dim}")
    roots = _spin_flip_roots(rho)
    conc = max(0.0, float(roots[0] - roots[1] - roots[2] - roots[3]))
    sqrt_lmax = float(roots[0])
    flip = spin_flip(rho)
    smax = float(linalg.singular_values(rho.matrix)[0])
    smax_flip = float(linalg.singular_values(flip)[0])
    nc = linalg.norm_candidates(rho.matrix)
    l1 = l1_coherence(rho)
    smax_product = smax * smax_flip
    frobenius_product = nc.frobenius * smax_flip
    trace_sq_product = nc.trace_of_square * smax_flip
    links = {
        "concurrence_le_sqrt_lambda_max": _verdict(sqrt_lmax - conc),
        "sqrt_lambda_max_le_smax_product": _verdict(smax_product - sqrt_lmax),
        "smax_le_trace_of_square": _verdict(nc.trace_of_square - smax),
        "smax_le_frobenius": _verdict(nc.frobenius - smax),
        "frobenius_le_trace_norm": _verdict(nc.trace_norm - nc.frobenius),
        "concurrence_le_trace_sq_product": _verdict(trace_sq_product - conc),
        "concurrence_le_frobenius_product": _verdict(frobenius_product - conc),
        "trace_norm_le_l1_coherence": _verdict(l1 - nc.trace_norm),
        "induced_one_le_l1_coherence": _verdict(l1 - nc.induced_one),
        "smax_flip_le_one": _verdict(1.0 - smax_flip),
        "concurrence_le_l1_times_smax_flip": _verdict(l1 * smax_flip - conc),
        "concurrence_le_l1_coherence": _verdict(l1 - conc),
    }
    return ChainReport(
        concurrence=conc,
        sqrt_lambda_max=sqrt_lmax,
        smax_product=smax_product,
        frobenius_product=frobenius_product,
        trace_sq_product=trace_sq_product,
        candidate_one_norms={
            "trace_norm": nc.trace_norm,
            "induced_one": nc.induced_one,
        },
        l1_coherence=l1,
        link_verdicts=links,
    )


# --- canonical three-qubit closed forms -------------------------------------


def partial_concurrences_analytic(p: CanonicalThreeQubit) -> tuple:
    """(C_AB, C_AC) = (2 l0 l3, 2 l0 l2) on the zero-phase slice."""
    _require_theta_zero(p, "partial concurrence")
    return 2.0 * p.lambda0 * p.lambda3, 2.0 * p.lambda0 * p.lambda2


def reduced_coherences_analytic(p: CanonicalThreeQubit) -> tuple:
    """l1-coherences of the AB, AC and A reductions on the zero-phase slice."""
    _require_theta_zero(p, "reduced coherence")
    l0, l1_, l2, l3, l4 = p.lambdas()
    coh_ab = 2.0 * (l0 * l1_ + l0 * l3 + l1_ * l3 + l2 * l4)
    coh_ac = 2.0 * (l0 * l1_ + l0 * l2 + l1_ * l2 + l3 * l4)
    coh_a = 2.0 * l0 * l1_
    return coh_ab, coh_ac, coh_a


def tangle_analytic(p: CanonicalThreeQubit) -> float:
    """Three-tangle of the canonical family, 4 l0^2 l4^2, valid for any phase."""
    return 4.0 * p.lambda0 * p.lambda0 * p.lambda4 * p.lambda4


def _cut_concurrence(rho: DensityMatrix) -> float:
    """2 sqrt(det rho_A) for a three-qubit rank-one density matrix."""
    a = partial_trace(rho, (2, 2, 2), (0,)).matrix
    det = float((a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]).real)
    return 2.0 * math.sqrt(max(det, 0.0))


def bipartition_concurrence(psi: PureState) -> float:
    """Concurrence across the A|(BC) cut of a three-qubit pure state."""
    if psi.dim != 8:
        raise MeasureError(f"expected a three-qubit pure state, got dim {psi.dim}")
    return _cut_concurrence(pure_to_density(psi))


def tangle_residual(psi: PureState) -> float:
    """Residual three-way entanglement C_A(BC)^2 - C_AB^2 - C_AC^2.

    Partial concurrences come from the spin-flip formula on the numerically
    reduced states.  Values in [-TANGLE_CLAMP, 0) are rounding noise and
    collapse to zero; lower values mean an inconsistent construction.
    """
    if psi.dim != 8:
        raise MeasureError(f"expected a three-qubit pure state, got dim {psi.dim}")
    rho = pure_to_density(psi)
    c_cut = _cut_concurrence(rho)
    c_ab = concurrence(partial_trace(rho, (2, 2, 2), (0, 1)))
    c_ac = concurrence(partial_trace(rho, (2, 2, 2), (0, 2)))
    t = c_cut * c_cut - c_ab * c_ab - c_ac * c_ac
    if t < -TANGLE_CLAMP:
        raise NumericalInconsistencyError(
            f"tangle residual {t:.3e} is below -{TANGLE_CLAMP:.1e}"
        )
    return max(t, 0.0)


@dataclass(frozen=True)
class CanonicalMeasures:
    """Partial concurrences, reduced coherences and tangle of one canonical point."""

    c_ab: float
    c_ac: float
    coh_ab: float
    coh_ac: float
    coh_a: float
    tangle: float

    def __post_init__(self):
        for name in ("c_ab", "c_ac", "coh_ab", "coh_ac", "coh_a", "tangle"):
            value = getattr(self, name)
            if value < 0.0:
                raise MeasureError(f"{name} must be non-negative, got {value}")
        if self.tangle > 1.0 + 1e-10:
            raise MeasureError(f"tangle exceeds 1: {self.tangle}")

    def to_json_dict(self) -> dict:
        return {
            "c_ab": self.c_ab,
            "c_ac": self.c_ac,
            "coh_ab": self.coh_ab,
            "coh_ac": self.coh_ac,
            "coh_a": self.coh_a,
            "tangle": self.tangle,
        }


def canonical_measures_analytic(p: CanonicalThreeQubit) -> CanonicalMeasures:
    """Closed-form canonical measures (zero-phase slice)."""
    c_ab, c_ac = partial_concurrences_analytic(p)
    coh_ab, coh_ac, coh_a = reduced_coherences_analytic(p)
    return CanonicalMeasures(c_ab, c_ac, coh_ab, coh_ac, coh_a, tangle_analytic(p))


def canonical_measures_matrix(p: CanonicalThreeQubit) -> CanonicalMeasures:
    """Matrix-route canonical measures; valid for any phase."""
    psi = canonical_state(p)
    rho = pure_to_density(psi)
    rho_ab = partial_trace(rho, (2, 2, 2), (0, 1))
    rho_ac = partial_trace(rho, (2, 2, 2), (0, 2))
    rho_a = partial_trace(rho, (2, 2, 2), (0,))
    c_ab = concurrence(rho_ab)
    c_ac = concurrence(rho_ac)
    c_cut = _cut_concurrence(rho)
    t = c_cut * c_cut - c_ab * c_ab - c_ac * c_ac
    if t < -TANGLE_CLAMP:
        raise NumericalInconsistencyError(
            f"tangle residual {t:.3e} is below -{TANGLE_CLAMP:.1e}"
        )
    return CanonicalMeasures(
        c_ab=c_ab,
        c_ac=c_ac,
        coh_ab=l1_coherence(rho_ab),
        coh_ac=l1_coherence(rho_ac),
        coh_a=l1_coherence(rho_a),
        tangle=max(t, 0.0),
    )
