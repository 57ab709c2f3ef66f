from typing import Dict, List, NamedTuple, Tuple


class IntervalCacheStats(NamedTuple):
    hits: int
    misses: int
    size: int

    def as_dict(self) -> Dict[str, int]:
        return {"hits": self.hits, "misses": self.misses, "size": self.size}


class ComponentBreakdown(NamedTuple):
    """A connected component of the connection graph with its weight

    Attributes:
        vertices: The vertex set masks, canonically sorted.
        index_set: The union of the forced index sets of the component (as sorted indices).
        in_all_beta: True if some vertex lies in every right hand side.
        weight: The number of solutions the component contributes.
    """

    vertices: Tuple[int, ...]
    index_set: Tuple[int, ...]
    in_all_beta: bool
    weight: int


class PairIndex(NamedTuple):
    k: int
    l: int  # noqa: E741

    @classmethod
    def all_pairs(cls, r: int) -> List["PairIndex"]:
        """Returns the index pairs k < l over 1..r, lexicographically"""
        return [cls(k, l) for k in range(1, r + 1) for l in range(k + 1, r + 1)]  # noqa: E741

    def __str__(self) -> str:
        return f"{self.k}{self.l}"
