from typing import Dict, List

from zthreading.decorators import thread_synchronized

from dedekind_pcoef.lattice.antichains import Antichain
from dedekind_pcoef.lattice.collections import IntervalCacheStats
from dedekind_pcoef.lattice.config import DEFAULT_INTERVAL_CACHE_SIZE, MAX_BASE_SET_SIZE
from dedekind_pcoef.lattice.utils import iter_bits, lattice_logger, popcount, subset_tables


class IntervalCounter:
    max_cache_size: int = DEFAULT_INTERVAL_CACHE_SIZE

    def __init__(self, max_cache_size: int = None):
        """Counts the antichains of induced sub posets of the subset lattice, memoized
        by the sub poset bitset. The interval [b, t] has exactly as many members as the
        sub poset code(t) - code(b) has antichains.

        Since inclusion between two set masks does not depend on the base set size, the
        comparability tables of the largest base set serve every n and the cache is shared
        between base sets.

        Args:
            max_cache_size (int, optional): Stop caching once this many entries are stored,
                0 is unbounded. Defaults to the class default (config).
        """
        self.max_cache_size = max_cache_size if max_cache_size is not None else IntervalCounter.max_cache_size
        self._comparable: List[int] = subset_tables(MAX_BASE_SET_SIZE).comparable
        self._cache: Dict[int, int] = {}
        self._hits = 0
        self._misses = 0
        self._cap_reported = False

    @property
    def stats(self) -> IntervalCacheStats:
        return IntervalCacheStats(self._hits, self._misses, len(self._cache))

    def clear(self):
        self._cache = {}
        self._hits = 0
        self._misses = 0
        self._cap_reported = False

    @thread_synchronized
    def _record_lookup(self, hit: bool):
        if hit:
            self._hits += 1
        else:
            self._misses += 1

    @thread_synchronized
    def _store(self, poset: int, value: int):
        if self.max_cache_size > 0 and len(self._cache) >= self.max_cache_size:
            if not self._cap_reported:
                lattice_logger.warning(f"Interval cache reached its size cap ({self.max_cache_size}), no longer caching")
                self._cap_reported = True
            return
        self._cache[poset] = value

    def count_antichains(self, poset: int) -> int:
        """Returns the number of antichains (equivalently downsets) of the sub poset.

        Args:
            poset (int): The sub poset, bit X set iff the set mask X belongs to it.

        Returns:
            int: The exact count.
        """
        if poset == 0:
            return 1
        value = self._cache.get(poset)
        self._record_lookup(value is not None)
        if value is not None:
            return value
        value = self._count(poset)
        self._store(poset, value)
        return value

    def _components(self, poset: int) -> List[int]:
        comparable = self._comparable
        components = []
        rest = poset
        while rest:
            component = rest & -rest
            frontier = component
            while frontier:
                reach = 0
                for x in iter_bits(frontier):
                    reach |= comparable[x]
                reach &= poset
                frontier = reach & ~component
                component |= reach
            components.append(component)
            rest &= ~component
        return components

    def _count(self, poset: int) -> int:
        comparable = self._comparable
        size = popcount(poset)

        pivot = -1
        pivot_degree = 0
        for x in iter_bits(poset):
            degree = popcount(comparable[x] & poset)
            if degree > pivot_degree:
                pivot, pivot_degree = x, degree

        if pivot_degree == 1:
            # no two elements are comparable
            return 1 << size
        if pivot_degree == size and all(popcount(comparable[x] & poset) == size for x in iter_bits(poset)):
            # a chain
            return size + 1

        components = self._components(poset)
        if len(components) > 1:
            value = 1
            for component in components:
                value *= self.count_antichains(component)
            return value

        return self.count_antichains(poset & ~(1 << pivot)) + self.count_antichains(poset & ~comparable[pivot])

    def count_between(self, bottom_code: int, top_code: int) -> int:
        """The interval size between two downset codes, 0 if bottom is not below top"""
        if bottom_code & ~top_code:
            return 0
        return self.count_antichains(top_code & ~bottom_code)

    def interval_size(self, bottom: Antichain, top: Antichain) -> int:
        """Returns |[bottom, top]|, 0 when bottom is not below top.

        Args:
            bottom (Antichain): The interval bottom.
            top (Antichain): The interval top (same base set).

        Returns:
            int: The exact interval size.
        """
        bottom.check_same_base(top)
        return self.count_between(bottom.code, top.code)

    def eta(self, s: Antichain) -> int:
        """The number of antichains below s (including the empty one)"""
        return self.count_between(0, s.code)


DEFAULT_INTERVAL_COUNTER = IntervalCounter()


def interval_size(bottom: Antichain, top: Antichain, counter: IntervalCounter = None) -> int:
    return (counter or DEFAULT_INTERVAL_COUNTER).interval_size(bottom, top)


def eta(s: Antichain, counter: IntervalCounter = None) -> int:
    return (counter or DEFAULT_INTERVAL_COUNTER).eta(s)


def count_between(bottom_code: int, top_code: int, counter: IntervalCounter = None) -> int:
    return (counter or DEFAULT_INTERVAL_COUNTER).count_between(bottom_code, top_code)
