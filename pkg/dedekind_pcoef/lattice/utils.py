import logging
from functools import lru_cache
from logging import Logger
from typing import Iterator, List, NamedTuple

from dedekind_pcoef.lattice.config import MAX_BASE_SET_SIZE

lattice_logger: Logger = logging.getLogger(__name__)


def popcount(value: int) -> int:
    """Returns the number of set bits in a non negative integer"""
    return bin(value).count("1")


def iter_bits(value: int) -> Iterator[int]:
    """Yields the positions of the set bits, lowest first"""
    while value:
        low = value & -value
        yield low.bit_length() - 1
        value ^= low


def set_sort_key(bits: int):
    """The canonical order of sets inside an antichain, (popcount, bits)"""
    return (popcount(bits), bits)


class SubsetTables(NamedTuple):
    """Precomputed inclusion masks over the subsets of {1..n}.

    A family of subsets is stored as an integer with bit X set iff the subset
    with bitmask X belongs to the family.
    """

    n: int
    size: int
    universe: int
    down: List[int]
    up: List[int]
    comparable: List[int]


@lru_cache(maxsize=None)
def subset_tables(n: int) -> SubsetTables:
    """Returns the (cached) inclusion tables for base set size n.

    Args:
        n (int): The base set size, 0 <= n <= MAX_BASE_SET_SIZE.

    Returns:
        SubsetTables: The tables.
    """
    assert 0 <= n <= MAX_BASE_SET_SIZE, ValueError(f"Base set size must be in 0..{MAX_BASE_SET_SIZE}, got {n}")
    size = 1 << n
    down = [0] * size
    up = [0] * size
    for x in range(size):
        # enumerate subsets of x
        sub = x
        while True:
            down[x] |= 1 << sub
            up[sub] |= 1 << x
            if sub == 0:
                break
            sub = (sub - 1) & x
    comparable = [down[x] | up[x] for x in range(size)]
    return SubsetTables(n, size, (1 << size) - 1, down, up, comparable)


def downset_of(sets, n: int) -> int:
    """Returns the downset code generated by a collection of set masks"""
    down = subset_tables(n).down
    code = 0
    for x in sets:
        code |= down[x]
    return code


def maximal_sets(code: int, n: int) -> List[int]:
    """Returns the maximal sets of a downset code, sorted canonically"""
    up = subset_tables(n).up
    sets = [x for x in iter_bits(code) if up[x] & code == 1 << x]
    sets.sort(key=set_sort_key)
    return sets


def reverse_bits(value: int, width: int) -> int:
    """Reverses the lowest `width` bits of value"""
    if width == 0:
        return 0
    return int(format(value, f"0{width}b")[::-1], 2)


def dual_code(code: int, n: int) -> int:
    """The downset code of the dual: the complement of the set of complements"""
    tables = subset_tables(n)
    return tables.universe ^ reverse_bits(code, tables.size)
