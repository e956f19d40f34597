"""Coherence and entanglement measures for two- and three-qubit states."""

__version__ = "0.1.0"

from .classify import (
    AuditRecord,
    ClassificationReport,
    CoherenceProductCheck,
    ConcurrenceSumCheck,
    ObservableTriple,
    ParameterWitness,
    coherence_difference,
    coherence_monogamy_check,
    coherence_product_check,
    concurrence_sum_check,
    discriminate,
    observable_closed_forms,
    observables_expectations,
    one_norm_bound_audit,
    parameter_witness,
)
from .linalg import (
    PAULI,
    HermitianEigenDecomposition,
    NormCandidates,
    PauliSet,
    adjoint,
    hermitian_eigen,
    induced_one_norm,
    kron,
    matmul,
    norm_candidates,
    psd_sqrt,
    singular_values,
)
from .measures import (
    CanonicalMeasures,
    ChainReport,
    MeasureReport,
    bipartition_concurrence,
    canonical_measures_analytic,
    canonical_measures_matrix,
    concurrence,
    inequality_chain,
    l1_coherence,
    measure_report,
    partial_concurrences_analytic,
    reduced_coherences_analytic,
    spin_flip,
    tangle_analytic,
    tangle_residual,
)
from .states import (
    CanonicalThreeQubit,
    DensityMatrix,
    EnsembleSpec,
    PureState,
    bell_state,
    canonical_sample,
    canonical_state,
    ghz_member,
    ginibre_density,
    haar_pure_state,
    partial_trace,
    pure_to_density,
    read_density_matrix,
    sample_canonical,
    sample_density,
    sample_pure,
    w_member,
    werner_state,
    write_density_matrix,
)
