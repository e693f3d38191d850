"""Finite generalised measure theory: events, measures, co-events and the multiplicative scheme."""

__version__ = "0.1.0"

from .algebra import (  # noqa: E402
    Event,
    HistorySpace,
    complement,
    enumerate_events,
    implies,
    is_subset,
    join,
    product,
    sum_,
)
from .coevent import (  # noqa: E402
    CoEvent,
    Support,
    affirmed_is_filter,
    classical_coevent,
    from_support,
    is_additive,
    is_c1,
    is_c2,
    is_homomorphism,
    is_mp,
    is_multiplicative,
    is_preclusive,
    is_unital,
    is_zero_preserving,
    precedes,
    support_of,
)
from .errors import CapacityError, DomainError, GMTError, InvalidMeasureError  # noqa: E402
from .measure import (  # noqa: E402
    ClassicalMeasure,
    ComplexRational,
    Measure,
    QuantumMeasure,
    ValidationReport,
    evaluate,
    is_stymied,
    maximal_null_events,
    null_events,
    validate_classical,
    validate_quantum,
)
from .scheme import (  # noqa: E402
    SchemeSolution,
    equivalence_report,
    minimal_coevents,
    minimal_nonstymied_events,
    preclusive_homomorphisms,
    solve,
)
