"""Multi-objective permutation flow shop scheduling with Pareto Iterated Local Search."""

from .archive import ArchiveEntry, ParetoArchive, UpdateOutcome, nondominated
from .errors import (
    InvalidInputError,
    InvalidStateError,
    OracleSizeError,
    ParseError,
    PerturbationUnavailableError,
)
from .metrics import MetricReport, ReferenceSet, build_reference, compute_d1_d2
from .model import (
    BICRITERIA,
    CRITERIA,
    TRICRITERIA,
    Instance,
    ObjectiveSet,
    completion_times,
    decode_and_evaluate,
    dominates,
)
from .neighborhoods import (
    enumerate_backward_shift,
    enumerate_exchange,
    enumerate_forward_shift,
    perturb,
    perturb_at,
)
from .oracle import exact_front
from .search import (
    SearchConfig,
    SearchResult,
    intensify_to_local_optimum,
    random_permutation,
    run_mos,
    run_pils,
)

__version__ = "0.1.0"
