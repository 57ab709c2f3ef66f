from collections import Counter
from itertools import product
from typing import Dict, Iterator, List, Mapping, NamedTuple, Tuple

from dedekind_pcoef.lattice.antichains import Antichain, validate_base_set_size
from dedekind_pcoef.lattice.collections import PairIndex
from dedekind_pcoef.lattice.config import DEFAULT_ORACLE_ENUMERATION_LIMIT, DEFAULT_ORACLE_SEARCH_LIMIT
from dedekind_pcoef.lattice.connections import SystemInstance
from dedekind_pcoef.lattice.exceptions import (
    BaseSetMismatchException,
    InvalidAntichainException,
    LatticePreconditionException,
    OracleCapabilityException,
)
from dedekind_pcoef.lattice.intervals import DEFAULT_INTERVAL_COUNTER
from dedekind_pcoef.lattice.utils import iter_bits, subset_tables

MAX_ENUMERATION_BASE_SET_SIZE = 6


# ------------------------------
# enumeration


def iter_interval_codes(bottom_code: int, top_code: int, n: int) -> Iterator[int]:
    """Yields the downset code of every member of the interval [bottom, top], once each.

    A member is bottom joined with an antichain of the sub poset top - bottom. The antichains
    are grown in increasing set mask order, each extension restricted to the later sets that
    are incomparable to everything chosen so far.

    Args:
        bottom_code (int): The downset code of the bottom.
        top_code (int): The downset code of the top.
        n (int): The base set size.
    """
    if bottom_code & ~top_code:
        return
    tables = subset_tables(n)
    down = tables.down
    comparable = tables.comparable
    stack = [(top_code & ~bottom_code, bottom_code)]
    while stack:
        avail, code = stack.pop()
        yield code
        while avail:
            low = avail & -avail
            x = low.bit_length() - 1
            avail ^= low
            stack.append((avail & ~comparable[x], code | down[x]))


def iter_antichain_codes(n: int) -> Iterator[int]:
    validate_base_set_size(n)
    return iter_interval_codes(0, subset_tables(n).universe, n)


def enumerate_antichains(n: int, max_n: int = MAX_ENUMERATION_BASE_SET_SIZE) -> Iterator[Antichain]:
    """Yields every antichain over {1..n} exactly once.

    Args:
        n (int): The base set size.
        max_n (int, optional): The capability cap. Defaults to MAX_ENUMERATION_BASE_SET_SIZE.
    """
    validate_base_set_size(n)
    if n > max_n:
        raise OracleCapabilityException(
            f"Antichain enumeration is capped at n <= {max_n}, got n={n}", cap_name="oracle", cap_value=max_n
        )
    for code in iter_antichain_codes(n):
        yield Antichain.from_code(code, n)


def enumerate_interval(
    bottom: Antichain,
    top: Antichain,
    limit: int = DEFAULT_ORACLE_ENUMERATION_LIMIT,
) -> Iterator[Antichain]:
    """Yields exactly the antichains chi with bottom <= chi <= top.

    Args:
        bottom (Antichain): The interval bottom.
        top (Antichain): The interval top.
        limit (int, optional): Refuse to enumerate intervals larger than this.
            Defaults to DEFAULT_ORACLE_ENUMERATION_LIMIT.
    """
    bottom.check_same_base(top)
    size = DEFAULT_INTERVAL_COUNTER.interval_size(bottom, top)
    if size > limit:
        raise OracleCapabilityException(
            f"Interval [{bottom}, {top}] has {size} members, above the enumeration limit {limit}",
            cap_name="oracle_enumeration",
            cap_value=limit,
        )
    for code in iter_interval_codes(bottom.code, top.code, bottom.n):
        yield Antichain.from_code(code, bottom.n)


# ------------------------------
# equation systems


class SolutionTuple(NamedTuple):
    chi: Tuple[Antichain, ...]

    def satisfies(self, inst: SystemInstance) -> bool:
        codes = [c.code for c in self.chi]
        if len(codes) != inst.r:
            return False
        meet = codes[0]
        for code in codes[1:]:
            meet &= code
        if meet != inst.alpha.code:
            return False
        for pair, beta_code in zip(inst.pairs, inst.beta_codes):
            if codes[pair.k - 1] | codes[pair.l - 1] != beta_code:
                return False
        return True


def _candidate_codes(inst: SystemInstance, k: int, unrestricted: bool) -> List[int]:
    n = inst.n
    if unrestricted:
        return list(iter_antichain_codes(n))

    pool = set(inst.alpha.sets)
    for beta in inst.betas:
        pool.update(beta.sets)
    pool_mask = 0
    for x in pool:
        pool_mask |= 1 << x

    up_bound = subset_tables(n).universe
    for pair, beta_code in zip(inst.pairs, inst.beta_codes):
        if k in (pair.k, pair.l):
            up_bound &= beta_code

    up = subset_tables(n).up
    candidates = []
    for code in iter_interval_codes(inst.alpha.code, up_bound, n):
        maximal = [x for x in iter_bits(code) if up[x] & code == 1 << x]
        if all((pool_mask >> x) & 1 for x in maximal):
            candidates.append(code)
    return candidates


def solve_system(
    inst: SystemInstance,
    unrestricted: bool = False,
    limit: int = DEFAULT_ORACLE_SEARCH_LIMIT,
) -> List[SolutionTuple]:
    """Finds every solution of the system by backtracking over candidate antichains.

    Args:
        inst (SystemInstance): The system.
        unrestricted (bool, optional): If true, every variable ranges over all of D_n. Otherwise
            candidates are the members of [alpha, ∧_l beta_kl] whose sets all belong to alpha or
            some beta. Defaults to False.
        limit (int, optional): Refuse to search candidate products larger than this.
            Defaults to DEFAULT_ORACLE_SEARCH_LIMIT.

    Returns:
        List[SolutionTuple]: The solutions, in candidate order.
    """
    r = inst.r
    n = inst.n
    candidates = [_candidate_codes(inst, k, unrestricted) for k in range(1, r + 1)]
    search_size = 1
    for c in candidates:
        search_size *= max(len(c), 1)
    if search_size > limit:
        raise OracleCapabilityException(
            f"System search space {search_size} is above the oracle limit {limit}",
            cap_name="oracle_search",
            cap_value=limit,
        )

    alpha_code = inst.alpha.code
    joins: Dict[Tuple[int, int], int] = {(p.k - 1, p.l - 1): code for p, code in zip(inst.pairs, inst.beta_codes)}
    solutions: List[SolutionTuple] = []
    chosen: List[int] = []

    def assign(k: int, running_meet: int):
        if k == r:
            if running_meet == alpha_code:
                solutions.append(SolutionTuple(tuple(Antichain.from_code(code, n) for code in chosen)))
            return
        for code in candidates[k]:
            meet = running_meet & code
            if meet & alpha_code != alpha_code:
                continue
            if any(chosen[j] | code != joins[(j, k)] for j in range(k)):
                continue
            chosen.append(code)
            assign(k + 1, meet)
            chosen.pop()

    assign(0, subset_tables(n).universe)
    return solutions


def count_solutions(inst: SystemInstance, unrestricted: bool = False) -> int:
    return len(solve_system(inst, unrestricted=unrestricted))


def solution_census(n: int, r: int, max_tuples: int = DEFAULT_ORACLE_SEARCH_LIMIT) -> Counter:
    """Counts, for every right hand side, the tuples of D_n^r solving it.

    Args:
        n (int): The base set size.
        r (int): The number of variables.
        max_tuples (int, optional): Refuse when D(n)^r exceeds this. Defaults to DEFAULT_ORACLE_SEARCH_LIMIT.

    Returns:
        Counter: Keyed by (alpha code, beta codes in lexicographic pair order), the solution count.
    """
    codes = list(iter_antichain_codes(n))
    if len(codes) ** r > max_tuples:
        raise OracleCapabilityException(
            f"Census of {len(codes)}^{r} tuples is above the oracle limit {max_tuples}",
            cap_name="oracle_search",
            cap_value=max_tuples,
        )
    pairs = [(p.k - 1, p.l - 1) for p in PairIndex.all_pairs(r)]
    census: Counter = Counter()
    for chi in product(codes, repeat=r):
        meet = chi[0]
        for code in chi[1:]:
            meet &= code
        census[(meet, tuple(chi[k] | chi[l] for k, l in pairs))] += 1
    return census


# ------------------------------
# decomposition of D_{n+k}


def _validate_parts(parts: Mapping[int, Antichain], n: int, k: int):
    if set(parts.keys()) != set(range(1 << k)):
        raise InvalidAntichainException(f"Expected parts for all {1 << k} subsets of the {k} added elements")
    for part in parts.values():
        if part.n != n:
            raise BaseSetMismatchException(
                f"Part {part} is over base set size {part.n}, expected {n}", left_n=part.n, right_n=n
            )
    for a in range(1 << k):
        for i in range(k):
            b = a | (1 << i)
            if b != a and not parts[a].le(parts[b]):
                raise LatticePreconditionException(
                    f"Parts are not monotone, part {a:0{k}b} = {parts[a]} is not below part {b:0{k}b} = {parts[b]}"
                )


def compose_decomposition(parts: Mapping[int, Antichain], n: int, k: int) -> Antichain:
    """Composes the antichain over n+k elements whose part indexed by A (a subset of the added
    elements n+1..n+k, as a k bit mask) is parts[A]. The sets of parts[A] are extended by the
    added elements not in A.

    Args:
        parts (Mapping[int, Antichain]): The parts, for every k bit mask, monotone in the mask.
        n (int): The base set size of the parts.
        k (int): The number of added elements.

    Returns:
        Antichain: The composed antichain over n+k elements.
    """
    validate_base_set_size(n + k)
    _validate_parts(parts, n, k)
    full = (1 << k) - 1
    sets = []
    for a, part in parts.items():
        extension = (full ^ a) << n
        sets.extend(x | extension for x in part.sets)
    return Antichain.normalize(sets, n + k)


def decompose(eta: Antichain, n: int, k: int) -> Dict[int, Antichain]:
    """Splits an antichain over n+k elements into its 2^k parts, the inverse of compose_decomposition.

    Args:
        eta (Antichain): The antichain over n+k elements.
        n (int): The base set size of the parts.
        k (int): The number of added elements.

    Returns:
        Dict[int, Antichain]: The parts keyed by k bit mask.
    """
    if eta.n != n + k:
        raise BaseSetMismatchException(
            f"Cannot split {eta} over {eta.n} elements into parts over {n} + {k}", left_n=eta.n, right_n=n + k
        )
    code = eta.code
    full = (1 << k) - 1
    parts = {}
    for a in range(1 << k):
        extension = (full ^ a) << n
        fiber = 0
        for x in range(1 << n):
            if (code >> (x | extension)) & 1:
                fiber |= 1 << x
        parts[a] = Antichain.from_code(fiber, n)
    return parts


def count_valid_part_maps(n: int, k: int) -> int:
    """Counts the monotone part maps (2^k antichains over n elements), equal to D(n+k)"""
    codes = list(iter_antichain_codes(n))
    count = 0
    for assignment in product(codes, repeat=1 << k):
        if all(
            assignment[a] & ~assignment[a | (1 << i)] == 0 for a in range(1 << k) for i in range(k)
        ):
            count += 1
    return count
