from dedekind_pcoef.collections import (
    KNOWN_CLASS_COUNTS,
    KNOWN_DEDEKIND_NUMBERS,
    ComputationMethod,
    ComputationReport,
    FormulaTerm,
    ReportFormat,
)
from dedekind_pcoef.exceptions import (
    CapabilityException,
    CheckpointException,
    ConsistencyException,
    DedekindException,
    InvalidInputException,
    PreconditionException,
)
from dedekind_pcoef.run_config import RunConfig
from dedekind_pcoef.engine import (
    brute_force_D,
    compute,
    consistency_matrix,
    d_nplus2,
    d_nplus3,
    d_nplus4,
    oracle_check,
    wiedemann_d_nplus2,
)
from dedekind_pcoef.tables import reproduce_tables
