from collections import Counter
from typing import Dict, Generic, Iterable, List, Optional, Sequence, Tuple, TypeVar, Union

from dedekind_pcoef.lattice.antichains import Antichain, SetLike, format_antichain, format_set, to_set_bits
from dedekind_pcoef.lattice.collections import ComponentBreakdown, PairIndex
from dedekind_pcoef.lattice.config import MAX_BASE_SET_SIZE
from dedekind_pcoef.lattice.exceptions import (
    BaseSetMismatchException,
    InvalidAntichainException,
    LatticePreconditionException,
)
from dedekind_pcoef.lattice.utils import iter_bits, popcount, set_sort_key, subset_tables

T = TypeVar("T")


class UnionFind(Generic[T]):
    """Disjoint sets with union by rank and path compression."""

    def __init__(self, items: Iterable[T] = None) -> None:
        self.parent: Dict[T, T] = {}
        self.rank: Dict[T, int] = Counter()
        for item in items or []:
            self.find(item)

    def find(self, x: T) -> T:
        try:
            if self.parent[x] != x:
                self.parent[x] = self.find(self.parent[x])
        except KeyError:
            self.parent[x] = x

        return self.parent[x]

    def union(self, x: T, y: T) -> None:
        px = self.find(x)
        py = self.find(y)

        if px == py:
            return

        if self.rank[px] == self.rank[py]:
            self.parent[py] = px
            self.rank[px] += 1
        elif self.rank[px] > self.rank[py]:
            self.parent[py] = px
        else:
            self.parent[px] = py

    def groups(self) -> List[List[T]]:
        """Returns the disjoint sets, each in insertion order, ordered by first member"""
        grouped: Dict[T, List[T]] = {}
        for item in list(self.parent.keys()):
            grouped.setdefault(self.find(item), []).append(item)
        return list(grouped.values())


def _components_by_alpha(vertices: Sequence[int], alpha_code: int) -> List[List[int]]:
    finder: UnionFind[int] = UnionFind(vertices)
    for i, x in enumerate(vertices):
        for y in vertices[i + 1 :]:  # noqa: E203
            if not (alpha_code >> (x & y)) & 1:
                finder.union(x, y)
    return finder.groups()


# ------------------------------
# two variable systems


def directly_connected(x: SetLike, y: SetLike, alpha: Antichain) -> bool:
    """True iff the singleton {X ∩ Y} is not below alpha, i.e. alpha does not dominate X ∩ Y.

    Args:
        x (SetLike): A set.
        y (SetLike): A set.
        alpha (Antichain): The antichain the intersection is compared with.
    """
    return not alpha.dominates(to_set_bits(x, alpha.n) & to_set_bits(y, alpha.n))


def connection_components(alpha: Antichain, beta: Antichain) -> List[List[int]]:
    """The connected components of the connection graph of beta with respect to alpha.
    The vertices are the sets of beta not in alpha.
    """
    alpha.check_same_base(beta)
    if not alpha.le(beta):
        raise LatticePreconditionException(f"The connection graph requires {alpha} <= {beta}")
    vertices = [x for x in beta.sets if x not in alpha.sets]
    return _components_by_alpha(vertices, alpha.code)


def connector_number(alpha: Antichain, beta: Antichain) -> int:
    """Returns the number of connected components of the connection graph of beta w.r.t. alpha.

    Args:
        alpha (Antichain): The lower antichain.
        beta (Antichain): The upper antichain, alpha <= beta.

    Returns:
        int: The connector number.
    """
    return len(connection_components(alpha, beta))


def connector_number_codes(alpha_code: int, beta_code: int, n: int) -> int:
    """The connector number for downset codes with alpha below beta.

    The sets of beta not in alpha are the maximal sets of beta outside alpha's downset.
    """
    up = subset_tables(n).up
    vertices = [x for x in iter_bits(beta_code & ~alpha_code) if up[x] & beta_code == 1 << x]
    count = len(vertices)
    if count < 2:
        return count

    adjacency = [0] * count
    for i in range(count):
        x = vertices[i]
        for j in range(i + 1, count):
            if not (alpha_code >> (x & vertices[j])) & 1:
                adjacency[i] |= 1 << j
                adjacency[j] |= 1 << i

    components = 0
    unseen = (1 << count) - 1
    while unseen:
        frontier = unseen & -unseen
        unseen ^= frontier
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            reach = adjacency[low.bit_length() - 1] & unseen
            unseen ^= reach
            frontier |= reach
        components += 1
    return components


def p2(alpha: Antichain, beta: Antichain) -> int:
    """The number of pairs (chi, upsilon) with chi ∧ upsilon = alpha and chi ∨ upsilon = beta.
    Returns 0 when alpha is not below beta.
    """
    alpha.check_same_base(beta)
    if not alpha.le(beta):
        return 0
    return 1 << connector_number(alpha, beta)


# ------------------------------
# r variable systems


class SystemInstance:
    def __init__(
        self,
        alpha: Antichain,
        beta: Union[Dict[Tuple[int, int], Antichain], Sequence[Antichain]],
        r: int = None,
    ):
        """A meet/pairwise join equation system in r antichain variables,
        chi_1 ∧ ... ∧ chi_r = alpha and chi_k ∨ chi_l = beta_kl for all k < l.

        Args:
            alpha (Antichain): The meet right hand side.
            beta (Union[Dict[Tuple[int, int], Antichain], Sequence[Antichain]]): The join right hand
                sides. Either a dictionary keyed by index pairs (either order), or a sequence in
                lexicographic pair order (12, 13, .., 1r, 23, ..).
            r (int, optional): The number of variables. Deduced from beta if not provided.
        """
        if isinstance(beta, dict):
            if r is None:
                indices = set(i for pair in beta.keys() for i in pair)
                r = max(indices) if len(indices) > 0 else 0
            table: Dict[PairIndex, Antichain] = {}
            for (k, l), value in beta.items():  # noqa: E741
                pair = PairIndex(min(k, l), max(k, l))
                if k == l or pair.k < 1 or pair.l > r:
                    raise InvalidAntichainException(f"Invalid right hand side index pair ({k},{l}) for r={r}")
                if pair in table and table[pair] != value:
                    raise InvalidAntichainException(f"Conflicting right hand sides for the pair {pair}")
                table[pair] = value
        else:
            beta = list(beta)
            if r is None:
                r = 2
                while r * (r - 1) // 2 < len(beta):
                    r += 1
            pairs = PairIndex.all_pairs(r)
            if len(pairs) != len(beta):
                raise InvalidAntichainException(
                    f"Expected {len(pairs)} right hand sides for r={r}, got {len(beta)}"
                )
            table = dict(zip(pairs, beta))

        if r < 2:
            raise InvalidAntichainException(f"A system requires at least two variables, got r={r}")

        self._r = r
        self._alpha = alpha
        self._pairs: List[PairIndex] = PairIndex.all_pairs(r)
        missing = [str(p) for p in self._pairs if p not in table]
        if len(missing) > 0:
            raise InvalidAntichainException(f"Missing right hand sides for pairs {', '.join(missing)}")
        for value in table.values():
            if not isinstance(value, Antichain):
                raise InvalidAntichainException(f"Right hand sides must be antichains, got {type(value).__name__}")
            if value.n != alpha.n:
                raise BaseSetMismatchException(
                    f"Right hand side {value} is over base set size {value.n}, expected {alpha.n}",
                    left_n=alpha.n,
                    right_n=value.n,
                )
        self._beta: Tuple[Antichain, ...] = tuple(table[p] for p in self._pairs)

    @classmethod
    def parse(cls, alpha: str, beta: Sequence[str], n: int, normalize: bool = False) -> "SystemInstance":
        """Creates an instance from the antichain text grammar, beta in lexicographic pair order"""
        return cls(
            Antichain.parse(alpha, n, normalize=normalize),
            [Antichain.parse(b, n, normalize=normalize) for b in beta],
        )

    @property
    def r(self) -> int:
        return self._r

    @property
    def n(self) -> int:
        return self._alpha.n

    @property
    def alpha(self) -> Antichain:
        return self._alpha

    @property
    def pairs(self) -> List[PairIndex]:
        return list(self._pairs)

    @property
    def betas(self) -> Tuple[Antichain, ...]:
        """The right hand sides in lexicographic pair order"""
        return self._beta

    @property
    def beta_codes(self) -> Tuple[int, ...]:
        return tuple(b.code for b in self._beta)

    def beta(self, k: int, l: int) -> Antichain:  # noqa: E741
        return self._beta[self._pairs.index(PairIndex(min(k, l), max(k, l)))]

    def is_alpha_below_all(self) -> bool:
        return all(self._alpha.le(b) for b in self._beta)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SystemInstance)
            and self._r == other._r
            and self._alpha == other._alpha
            and self._beta == other._beta
        )

    def __hash__(self) -> int:
        return hash((self._r, self._alpha, self._beta))

    def __str__(self) -> str:
        betas = ", ".join(f"b{p}={b}" for p, b in zip(self._pairs, self._beta))
        return f"r={self._r}, a={self._alpha}, {betas}"

    def __repr__(self) -> str:
        return f"SystemInstance({str(self)})"


class ConnectionDecomposition:
    def __init__(
        self,
        r: int,
        n: int,
        vertices: Sequence[int],
        components: Sequence[Sequence[int]],
        index_sets: Dict[int, Tuple[int, ...]],
        in_all_beta: Dict[int, bool],
    ):
        """The connection graph of a system on the sets of the right hand sides that are
        not sets of alpha, with per vertex index sets and membership flags.

        Args:
            r (int): The number of variables.
            n (int): The base set size.
            vertices (Sequence[int]): The vertex set masks.
            components (Sequence[Sequence[int]]): The partition of the vertices.
            index_sets (Dict[int, Tuple[int, ...]]): Per vertex, the sorted indices s with the vertex
                in every beta_si.
            in_all_beta (Dict[int, bool]): Per vertex, true if the vertex is in every beta_ij.
        """
        self.r = r
        self.n = n
        self.vertices: Tuple[int, ...] = tuple(sorted(vertices, key=set_sort_key))
        self.components: Tuple[Tuple[int, ...], ...] = tuple(
            sorted((tuple(sorted(c, key=set_sort_key)) for c in components), key=lambda c: set_sort_key(c[0]))
        )
        self.index_sets = dict(index_sets)
        self.in_all_beta = dict(in_all_beta)

    def weights(self) -> List[int]:
        return [component_weight(c, self, self.r) for c in self.components]

    def breakdown(self) -> List[ComponentBreakdown]:
        result = []
        for component in self.components:
            indices = set()
            for x in component:
                indices.update(self.index_sets.get(x, ()))
            result.append(
                ComponentBreakdown(
                    vertices=component,
                    index_set=tuple(sorted(indices)),
                    in_all_beta=any(self.in_all_beta.get(x, False) for x in component),
                    weight=component_weight(component, self, self.r),
                )
            )
        return result

    def __len__(self) -> int:
        return len(self.components)

    def __repr__(self) -> str:
        parts = []
        for c in self.breakdown():
            parts.append(f"{format_antichain(c.vertices)}:S={list(c.index_set)}:w={c.weight}")
        return f"ConnectionDecomposition(r={self.r}, [{'; '.join(parts)}])"


def _index_set(member_of_pair: Sequence[bool], pairs: Sequence[PairIndex], r: int) -> Tuple[int, ...]:
    indices = []
    for s in range(1, r + 1):
        if all(member_of_pair[i] for i, p in enumerate(pairs) if s in (p.k, p.l)):
            indices.append(s)
    return tuple(indices)


def decompose_connections(inst: SystemInstance) -> ConnectionDecomposition:
    """Builds the connection graph of the sets of the right hand sides that are not sets of
    alpha, connected when their intersection is not dominated by alpha. Membership in a
    right hand side is literal antichain membership.

    Args:
        inst (SystemInstance): The system, alpha must be below every beta_ij.

    Returns:
        ConnectionDecomposition: The decomposition.
    """
    if not inst.is_alpha_below_all():
        raise LatticePreconditionException(f"The connection decomposition requires alpha below every beta, {inst}")

    alpha = inst.alpha
    pairs = inst.pairs
    vertices = sorted(set(x for b in inst.betas for x in b.sets if x not in alpha.sets), key=set_sort_key)

    index_sets: Dict[int, Tuple[int, ...]] = {}
    in_all: Dict[int, bool] = {}
    for x in vertices:
        member_of_pair = [x in b.sets for b in inst.betas]
        in_all[x] = all(member_of_pair)
        # only sets missing from some beta are tied to variable indices
        index_sets[x] = () if in_all[x] else _index_set(member_of_pair, pairs, inst.r)

    components = _components_by_alpha(vertices, alpha.code)
    return ConnectionDecomposition(inst.r, inst.n, vertices, components, index_sets, in_all)


def component_weight(component: Sequence[int], decomp: ConnectionDecomposition, r: int) -> int:
    """The number of choices a connected component contributes to the solution count.

    Args:
        component (Sequence[int]): The component vertex masks.
        decomp (ConnectionDecomposition): The decomposition holding the vertex data.
        r (int): The number of variables.

    Returns:
        int: r - |∪S_X| if a vertex is in all right hand sides, otherwise 0 if ∪S_X covers
            every index and 1 if not.
    """
    indices = set()
    for x in component:
        indices.update(decomp.index_sets.get(x, ()))
    if any(decomp.in_all_beta.get(x, False) for x in component):
        return max(r - len(indices), 0)
    return 0 if len(indices) == r else 1


class ReducedInstance:
    def __init__(
        self,
        inst: SystemInstance,
        consistent: bool,
        forced: Dict[int, Tuple[int, ...]],
        decomposition: Optional[ConnectionDecomposition],
        reason: str = None,
    ):
        """The result of reducing a system to its free sets.

        Args:
            inst (SystemInstance): The source system.
            consistent (bool): False if some right hand side pattern admits no solution.
            forced (Dict[int, Tuple[int, ...]]): The sets in some but not every beta_ij, with
                the variable indices that must contain them.
            decomposition (ConnectionDecomposition): The reduced connection graph, vertices are
                the maximal free sets, all present in every reduced right hand side.
            reason (str, optional): Why the system has no solution.
        """
        self.instance = inst
        self.consistent = consistent
        self.forced = forced
        self.decomposition = decomposition
        self.reason = reason

    @property
    def count(self) -> int:
        if not self.consistent:
            return 0
        count = 1
        for weight in self.decomposition.weights():
            count *= weight
        return count

    def as_dict(self) -> dict:
        result = {
            "count": str(self.count),
            "consistent": self.consistent,
            "forced": {format_set(x): list(s) for x, s in sorted(self.forced.items(), key=lambda i: set_sort_key(i[0]))},
        }
        if self.reason is not None:
            result["reason"] = self.reason
        if self.decomposition is not None:
            result["components"] = [
                {
                    "vertices": format_antichain(c.vertices),
                    "index_set": list(c.index_set),
                    "weight": c.weight,
                }
                for c in self.decomposition.breakdown()
            ]
        return result


def _reduce_codes(
    alpha_code: int, beta_codes: Sequence[int], pairs: Sequence[PairIndex], r: int
) -> Tuple[bool, Dict[int, int], List[int], str]:
    incident = [[i for i, p in enumerate(pairs) if s in (p.k, p.l)] for s in range(1, r + 1)]

    all_mask = beta_codes[0]
    any_mask = 0
    for code in beta_codes:
        all_mask &= code
        any_mask |= code

    forced: Dict[int, int] = {}
    for y in iter_bits(any_mask & ~all_mask):
        s_mask = 0
        for s in range(r):
            if all((beta_codes[i] >> y) & 1 for i in incident[s]):
                s_mask |= 1 << s
        for i, p in enumerate(pairs):
            expected = (s_mask >> (p.k - 1)) & 1 or (s_mask >> (p.l - 1)) & 1
            if bool((beta_codes[i] >> y) & 1) != bool(expected):
                return False, forced, [], f"set {format_set(y)} has no consistent index pattern"
        forced[y] = s_mask

    free = all_mask & ~alpha_code
    up = subset_tables(MAX_BASE_SET_SIZE).up
    vertices = [x for x in iter_bits(free) if up[x] & free == 1 << x]
    return True, forced, vertices, None


def _mask_indices(mask: int) -> Tuple[int, ...]:
    return tuple(s + 1 for s in iter_bits(mask))


def _vertex_index_mask(v: int, alpha_code: int, forced: Dict[int, int]) -> int:
    # a forced set y sits above a free set below v iff y ∩ v is not in alpha
    s_mask = 0
    for y, s in forced.items():
        if not (alpha_code >> (y & v)) & 1:
            s_mask |= s
    return s_mask


def p_general_codes(alpha_code: int, beta_codes: Sequence[int], r: int) -> int:
    """Counts the solutions of a system given by downset codes.

    Args:
        alpha_code (int): The downset code of alpha.
        beta_codes (Sequence[int]): The downset codes of beta_kl in lexicographic pair order.
        r (int): The number of variables.

    Returns:
        int: The exact solution count, 0 if there is none.
    """
    if any(alpha_code & ~b for b in beta_codes):
        return 0
    pairs = PairIndex.all_pairs(r)
    consistent, forced, vertices, _ = _reduce_codes(alpha_code, beta_codes, pairs, r)
    if not consistent:
        return 0
    if len(vertices) == 0:
        return 1
    count = 1
    for component in _components_by_alpha(vertices, alpha_code):
        s_mask = 0
        for v in component:
            s_mask |= _vertex_index_mask(v, alpha_code, forced)
        count *= r - popcount(s_mask)
        if count == 0:
            return 0
    return count


def reduce_instance(inst: SystemInstance) -> ReducedInstance:
    """Reduces a system to its free sets: sets in some but not all right hand sides are forced
    into the variables whose index pairs contain them, and the maximal sets dominated by every
    right hand side but not by alpha form the reduced connection graph.

    Args:
        inst (SystemInstance): The system.

    Returns:
        ReducedInstance: The reduction, including the component breakdown.
    """
    if not inst.is_alpha_below_all():
        return ReducedInstance(inst, False, {}, None, reason="alpha is not below every beta")

    alpha_code = inst.alpha.code
    consistent, forced, vertices, reason = _reduce_codes(alpha_code, inst.beta_codes, inst.pairs, inst.r)
    forced_indices = {y: _mask_indices(s) for y, s in forced.items()}
    if not consistent:
        return ReducedInstance(inst, False, forced_indices, None, reason=reason)

    index_sets = {v: _mask_indices(_vertex_index_mask(v, alpha_code, forced)) for v in vertices}
    decomposition = ConnectionDecomposition(
        inst.r,
        inst.n,
        vertices,
        _components_by_alpha(vertices, alpha_code),
        index_sets,
        {v: True for v in vertices},
    )
    return ReducedInstance(inst, True, forced_indices, decomposition)


def p_general(inst: SystemInstance) -> int:
    """Returns the exact number of solutions of the system, the product of the component
    weights of its reduced connection graph. Equals p2 for r = 2.

    Args:
        inst (SystemInstance): The system.

    Returns:
        int: The solution count, 0 for unsatisfiable systems.
    """
    return p_general_codes(inst.alpha.code, inst.beta_codes, inst.r)


def p_coefficient(alpha: Antichain, *beta: Antichain) -> int:
    """Shorthand for p_general over the pair ordered right hand sides"""
    if len(beta) == 1:
        return p2(alpha, beta[0])
    return p_general(SystemInstance(alpha, list(beta)))


