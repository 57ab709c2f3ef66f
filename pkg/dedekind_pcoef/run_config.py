from typing import Dict, Optional

from dedekind_pcoef.collections import ComputationMethod
from dedekind_pcoef.config import DEFAULT_MAX_N, DEFAULT_SHARD_COUNT, DEFAULT_WORKERS
from dedekind_pcoef.exceptions import CapabilityException, InvalidInputException


class RunConfig:
    def __init__(
        self,
        method: ComputationMethod,
        base_n: int,
        workers: int = None,
        reduce_symmetry: bool = False,
        checkpoint_path: str = None,
        shard_count: int = None,
        stop_after: int = None,
        limits: Dict[ComputationMethod, int] = None,
    ):
        """The parameters of a formula run.

        Args:
            method (ComputationMethod): The formula.
            base_n (int): The base set size.
            workers (int, optional): Worker threads, at least 1. Defaults to config.
            reduce_symmetry (bool, optional): Sum over classes. Defaults to False.
            checkpoint_path (str, optional): Checkpoint file. Defaults to None.
            shard_count (int, optional): Number of shards. Defaults to config.
            stop_after (int, optional): Stop after this many shards (simulated interruption). Defaults to None.
            limits (Dict[ComputationMethod, int], optional): Capability caps. Defaults to config.
        """
        if isinstance(method, str):
            method = ComputationMethod(method)
        self.method: ComputationMethod = method
        self.base_n = base_n
        self.workers = workers if workers is not None else DEFAULT_WORKERS
        self.reduce_symmetry = reduce_symmetry
        self.checkpoint_path: Optional[str] = checkpoint_path
        self.shard_count = shard_count if shard_count is not None else DEFAULT_SHARD_COUNT
        self.stop_after = stop_after
        self.limits: Dict[ComputationMethod, int] = dict(DEFAULT_MAX_N)
        self.limits.update(limits or {})

    @property
    def max_n(self) -> int:
        return self.limits[self.method]

    def validate(self) -> "RunConfig":
        """Validates the config.

        Raises:
            InvalidInputException: On a malformed value.
            CapabilityException: If base_n is above the method cap.

        Returns:
            RunConfig: self
        """
        if not isinstance(self.base_n, int) or self.base_n < 0:
            raise InvalidInputException(f"n must be a non negative integer, got {self.base_n}")
        if not isinstance(self.workers, int) or self.workers < 1:
            raise InvalidInputException(f"workers must be at least 1, got {self.workers}")
        if not isinstance(self.shard_count, int) or self.shard_count < 1:
            raise InvalidInputException(f"shards must be at least 1, got {self.shard_count}")
        if self.stop_after is not None and self.stop_after < 0:
            raise InvalidInputException(f"stop_after must be non negative, got {self.stop_after}")
        if self.base_n > self.max_n:
            raise CapabilityException(
                f"Method {self.method} is capped at n <= {self.max_n} (max_n_{self.method}), got n={self.base_n}",
                cap_name=f"max_n_{self.method}",
                cap_value=self.max_n,
            )
        return self

    def __repr__(self) -> str:
        return f"RunConfig({self.method}, n={self.base_n}, workers={self.workers}, shards={self.shard_count})"
