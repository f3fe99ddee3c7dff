"""Non-Gaussian two-mode entangled resources: entanglement, EPR correlation
and teleportation fidelity in truncated Fock space."""

from ._cvent import (
    CSV_HEADER,
    DEFAULT_CUTOFF,
    DEFAULT_QUADRATURE_NODES,
    BracketFailure,
    ConvergenceFailure,
    CutoffTooSmall,
    DegenerateState,
    Error,
    InvalidSpec,
    NumericalInstability,
    QuadratureNotConverged,
    ResourceSpec,
    TruncationOverflow,
    amplitudes,
    entropy,
    entropy_cat_closed,
    entropy_pacs_closed,
    epr,
    epr_cat_closed,
    epr_pacs_closed,
    fidelity,
    fidelity_pacs_closed,
    sweep,
    sweep_csv,
    table_one,
    threshold,
    validate,
)

__all__ = [name for name in dir() if not name.startswith("_")]
