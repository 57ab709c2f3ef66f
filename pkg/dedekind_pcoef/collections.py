from enum import Enum
from typing import Dict, List, NamedTuple, Union


class ComputationMethod(Enum):
    BruteForce = "bruteforce"
    NPlus2 = "nplus2"
    NPlus3 = "nplus3"
    NPlus4 = "nplus4"
    Wiedemann = "wiedemann"

    def __str__(self) -> str:
        return self.value

    @property
    def offset(self) -> int:
        """The difference between the target Dedekind index and the base set size"""
        return {
            ComputationMethod.BruteForce: 0,
            ComputationMethod.NPlus2: 2,
            ComputationMethod.NPlus3: 3,
            ComputationMethod.NPlus4: 4,
            ComputationMethod.Wiedemann: 2,
        }[self]


class CliCommand(Enum):
    Compute = "compute"
    Consistency = "consistency"
    PCoef = "pcoef"
    Classes = "classes"
    OracleCheck = "oracle-check"
    Tables = "tables"

    def __str__(self) -> str:
        return self.value


class ReportFormat(Enum):
    Yaml = "yaml"
    Json = "json"

    def __str__(self) -> str:
        return self.value


# D(n) for n = 0..8
KNOWN_DEDEKIND_NUMBERS = [
    2,
    3,
    6,
    20,
    168,
    7581,
    7828354,
    2414682040998,
    56130437228687557907788,
]

# Number of antichain classes under base set permutations, n = 0..7
KNOWN_CLASS_COUNTS = [2, 3, 5, 10, 30, 210, 16353, 490013148]


class FormulaTerm(NamedTuple):
    """One summand of a counting formula.

    Attributes:
        parameters: The antichain texts of the summand parameters, by name.
        multiplicity: The orbit size of the outer parameter when symmetry reduced, else 1.
        value: The product of the P-coefficients and interval sizes.
    """

    parameters: Dict[str, Union[str, List[str]]]
    multiplicity: int
    value: int


class ShardResult(NamedTuple):
    shard_id: int
    partial_sum: int
    term_count: int
    details: dict


class ComputationReport:
    def __init__(
        self,
        method: ComputationMethod,
        n: int,
        result: int,
        terms: int,
        seconds: float,
        shard_count: int,
        shard_digest: str,
        workers: int = 1,
        reduce_symmetry: bool = False,
        cache: Dict[str, int] = None,
        complete: bool = True,
        details: dict = None,
    ):
        """The outcome of a formula run. The result is only meaningful when complete is true.

        Args:
            method (ComputationMethod): The formula that was run.
            n (int): The base set size.
            result (int): The computed sum.
            terms (int): The number of summed terms.
            seconds (float): The wall time.
            shard_count (int): The number of shards the run was split into.
            shard_digest (str): A digest of the shard parameter ranges.
            workers (int, optional): The number of worker threads. Defaults to 1.
            reduce_symmetry (bool, optional): True if the outer sum ran over classes. Defaults to False.
            cache (Dict[str, int], optional): Interval cache statistics. Defaults to None.
            complete (bool, optional): False if the run stopped before all shards finished. Defaults to True.
            details (dict, optional): Method specific breakdowns. Defaults to None.
        """
        self.method = method
        self.n = n
        self.result = result
        self.terms = terms
        self.seconds = seconds
        self.shard_count = shard_count
        self.shard_digest = shard_digest
        self.workers = workers
        self.reduce_symmetry = reduce_symmetry
        self.cache = cache or {}
        self.complete = complete
        self.details = details or {}

    @property
    def target(self) -> int:
        return self.n + self.method.offset

    def as_dict(self, include_details: bool = True) -> dict:
        report = {
            "method": str(self.method),
            "n": self.n,
            "target": self.target,
            "result": str(self.result),
            "terms": str(self.terms),
            "seconds": f"{self.seconds:.3f}",
            "shards": {"count": self.shard_count, "digest": self.shard_digest},
            "workers": self.workers,
            "reduce_symmetry": self.reduce_symmetry,
            "complete": self.complete,
            "cache": {k: str(v) for k, v in self.cache.items()},
        }
        if include_details and len(self.details) > 0:
            report["details"] = self.details
        return report

    def __repr__(self) -> str:
        return f"ComputationReport({self.method}, n={self.n}, result={self.result})"
