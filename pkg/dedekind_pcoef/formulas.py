from collections import Counter
from itertools import product
from typing import Dict, Iterator, List, Optional, Tuple, Type

from dedekind_pcoef.collections import ComputationMethod, FormulaTerm, ShardResult
from dedekind_pcoef.lattice import (
    DEFAULT_INTERVAL_COUNTER,
    Antichain,
    IntervalCounter,
    PairIndex,
    connector_number_codes,
    iter_antichain_codes,
    iter_canonical_codes,
    iter_interval_codes,
    p_general_codes,
    validate_base_set_size,
)
from dedekind_pcoef.lattice.utils import dual_code, subset_tables
from dedekind_pcoef.utils import engine_logger, stable_digest

ItemDetails = Optional[dict]
ItemValue = Tuple[int, int, ItemDetails]


def merge_details(target: dict, source: dict) -> dict:
    """Merges method details, lists are concatenated and dictionaries are summed per key.

    Args:
        target (dict): The accumulated details (updated in place).
        source (dict): The details to add.

    Returns:
        dict: The target.
    """
    for key, value in (source or {}).items():
        if isinstance(value, list):
            target.setdefault(key, []).extend(value)
        elif isinstance(value, dict):
            merged = target.setdefault(key, {})
            for sub_key, sub_value in value.items():
                merged[sub_key] = merged.get(sub_key, 0) + sub_value
        else:
            target[key] = value
    return target


def complement_pair_positions(r: int) -> List[int]:
    """For r = 4, the position (in lexicographic pair order) of the pair made of the two
    other indices, for every pair position.
    """
    assert r == 4, ValueError("Complementary pairs are only defined for four variables")
    pairs = PairIndex.all_pairs(r)
    indices = set(range(1, r + 1))
    return [pairs.index(PairIndex(*sorted(indices - {p.k, p.l}))) for p in pairs]


class Formula:
    method: ComputationMethod = None

    def __init__(
        self,
        n: int,
        reduce_symmetry: bool = False,
        counter: IntervalCounter = None,
        collect_details: bool = None,
    ):
        """A counting formula for a Dedekind number, written as an outer sum over the
        antichains of D_n (or their classes when symmetry reduced). The outer sum is what
        gets sharded.

        Args:
            n (int): The base set size.
            reduce_symmetry (bool, optional): If true, the outer sum runs over canonical
                class representatives weighted by their orbit size. Defaults to False.
            counter (IntervalCounter, optional): The interval counter. Defaults to the shared counter.
            collect_details (bool, optional): If true, collect the method breakdown (only
                when not symmetry reduced). Defaults to the method default.
        """
        validate_base_set_size(n)
        self.n = n
        self.reduce_symmetry = reduce_symmetry
        self.counter = counter or DEFAULT_INTERVAL_COUNTER
        if collect_details is None:
            collect_details = self.default_collect_details(n)
        self.collect_details = collect_details and not reduce_symmetry
        self.top_code = subset_tables(n).universe
        self._items: List[Tuple[int, int]] = None
        self._is_prepared = False

    @classmethod
    def default_collect_details(cls, n: int) -> bool:
        return False

    @property
    def target(self) -> int:
        return self.n + self.method.offset

    @property
    def items(self) -> List[Tuple[int, int]]:
        """The outer sum items, (downset code, multiplicity)"""
        if self._items is None:
            self._items = self.load_items()
        return self._items

    def load_items(self) -> List[Tuple[int, int]]:
        if self.reduce_symmetry:
            return list(iter_canonical_codes(self.n))
        return [(code, 1) for code in iter_antichain_codes(self.n)]

    def prepare(self):
        """Builds the shared tables of the formula. Called once, before the shards are evaluated."""
        if self._is_prepared:
            return
        self.items
        self._prepare()
        self._is_prepared = True

    def _prepare(self):
        pass

    def shard_ranges(self, shard_count: int) -> List[Tuple[int, int]]:
        """Splits the outer items into contiguous ranges, at least one, at most one per item.

        Args:
            shard_count (int): The requested number of shards.

        Returns:
            List[Tuple[int, int]]: The (start, stop) item ranges, by shard id.
        """
        count = len(self.items)
        shard_count = max(1, min(shard_count, count))
        return [(i * count // shard_count, (i + 1) * count // shard_count) for i in range(shard_count)]

    def shard_digest(self, shard_count: int, shard_id: int, start: int, stop: int) -> str:
        return stable_digest(self.method, self.n, self.reduce_symmetry, shard_count, shard_id, start, stop)

    def text(self, code: int) -> str:
        return str(Antichain.from_code(code, self.n))

    def evaluate_range(self, shard_id: int, start: int, stop: int) -> ShardResult:
        """Evaluates the outer items [start, stop).

        Args:
            shard_id (int): The shard id.
            start (int): The first item index.
            stop (int): The item index past the last.

        Returns:
            ShardResult: The shard partial sum, term count and details.
        """
        self.prepare()
        partial_sum = 0
        term_count = 0
        details = {}
        for code, multiplicity in self.items[start:stop]:
            value, terms, item_details = self.evaluate_item(code)
            partial_sum += multiplicity * value
            term_count += terms
            if item_details:
                merge_details(details, item_details)
        return ShardResult(shard_id, partial_sum, term_count, details)

    def evaluate_item(self, code: int) -> ItemValue:
        """Returns (value, number of terms, details) for one outer item"""
        raise NotImplementedError()

    def evaluate(self) -> int:
        """Evaluates the full sum in the calling thread"""
        return self.evaluate_range(0, 0, len(self.items)).partial_sum


class BruteForceFormula(Formula):
    method = ComputationMethod.BruteForce

    def load_items(self) -> List[Tuple[int, int]]:
        return [(self.top_code, 1)]

    def evaluate_item(self, code: int) -> ItemValue:
        if self.reduce_symmetry:
            classes = list(iter_canonical_codes(self.n))
            return sum(orbit for _, orbit in classes), len(classes), None
        count = sum(1 for _ in iter_interval_codes(0, code, self.n))
        return count, count, None


class NPlus2Formula(Formula):
    """D(n+2) as a sum over pairs alpha <= beta of 2^C(alpha, beta) |[bot, alpha]| |[beta, top]|"""

    method = ComputationMethod.NPlus2

    def evaluate_item(self, code: int) -> ItemValue:
        count_between = self.counter.count_between
        top_code = self.top_code
        inner = 0
        terms = 0
        for beta_code in iter_interval_codes(code, top_code, self.n):
            inner += count_between(beta_code, top_code) << connector_number_codes(code, beta_code, self.n)
            terms += 1
        return count_between(0, code) * inner, terms, None

    def iter_terms(self, code: int, multiplicity: int = 1) -> Iterator[FormulaTerm]:
        """Yields the summands of one outer item.

        Args:
            code (int): The alpha downset code.
            multiplicity (int, optional): The alpha orbit size. Defaults to 1.
        """
        count_between = self.counter.count_between
        eta_alpha = count_between(0, code)
        for beta_code in iter_interval_codes(code, self.top_code, self.n):
            value = (
                eta_alpha
                * count_between(beta_code, self.top_code)
                << connector_number_codes(code, beta_code, self.n)
            )
            yield FormulaTerm({"alpha": self.text(code), "beta": self.text(beta_code)}, multiplicity, value)


class WiedemannFormula(Formula):
    """D(n+2) as a sum over all pairs (sigma, tau) of eta(sigma & tau) eta(dual sigma & dual tau)"""

    method = ComputationMethod.Wiedemann

    def _prepare(self):
        self._pairs = [(code, dual_code(code, self.n)) for code in iter_antichain_codes(self.n)]

    def evaluate_item(self, code: int) -> ItemValue:
        count_between = self.counter.count_between
        dual = dual_code(code, self.n)
        value = 0
        for tau, dual_tau in self._pairs:
            value += count_between(0, code & tau) * count_between(0, dual & dual_tau)
        return value, len(self._pairs), None


class NPlus3Formula(Formula):
    """D(n+3) as a sum over alpha, three right hand sides beta_12, beta_13, beta_23 above alpha
    and gamma above their join of P3 |[bot, alpha]| |[beta_12, gamma]| |[beta_13, gamma]| |[beta_23, gamma]|.

    With details, the terms are grouped in rows by alpha and the multiset of the right
    hand sides.
    """

    method = ComputationMethod.NPlus3

    @classmethod
    def default_collect_details(cls, n: int) -> bool:
        return n <= 1

    def _prepare(self):
        self._gamma_sums: Dict[Tuple[int, ...], Tuple[int, int]] = {}

    def gamma_sum(self, beta_codes: Tuple[int, int, int]) -> Tuple[int, int]:
        """The sum over gamma above the join of the right hand sides of the product of
        the interval sizes, and the number of gammas.
        """
        key = tuple(sorted(beta_codes))
        cached = self._gamma_sums.get(key)
        if cached is not None:
            return cached

        count_between = self.counter.count_between
        join = key[0] | key[1] | key[2]
        value = 0
        count = 0
        for gamma in iter_interval_codes(join, self.top_code, self.n):
            value += count_between(key[0], gamma) * count_between(key[1], gamma) * count_between(key[2], gamma)
            count += 1
        self._gamma_sums[key] = (value, count)
        return value, count

    def evaluate_item(self, code: int) -> ItemValue:
        members = list(iter_interval_codes(code, self.top_code, self.n))
        eta_alpha = self.counter.count_between(0, code)
        total = 0
        terms = 0
        rows: Dict[Tuple[int, ...], dict] = {}
        for beta_codes in product(members, repeat=3):
            p = p_general_codes(code, beta_codes, 3)
            if p == 0:
                continue
            inner, gammas = self.gamma_sum(beta_codes)
            total += p * inner
            terms += gammas
            if self.collect_details:
                key = tuple(sorted(beta_codes, reverse=True))
                if key not in rows:
                    rows[key] = {
                        "alpha": self.text(code),
                        "betas": [self.text(b) for b in key],
                        "eq": 0,
                        "p": p,
                        "weight": eta_alpha * inner,
                        "total": 0,
                    }
                rows[key]["eq"] += 1
                rows[key]["total"] += p * eta_alpha * inner

        details = {"rows": list(rows.values())} if self.collect_details else None
        return eta_alpha * total, terms, details


class NPlus4Formula(Formula):
    """D(n+4) as the product of two four variable systems, the lower one over alpha and the
    six beta_kl, the upper one over epsilon and the six delta_kl:

        P4(alpha, beta) P4(dual epsilon, dual delta') |[bot, alpha]| prod |[beta_kl, delta_kl]| |[epsilon, top]|

    where delta'_kl is delta of the complementary pair. The upper factor is summed over epsilon
    once per delta tuple, and then pushed down to the beta tuples one coordinate at a time.
    """

    method = ComputationMethod.NPlus4

    @classmethod
    def default_collect_details(cls, n: int) -> bool:
        return n == 0

    def _prepare(self):
        n = self.n
        count_between = self.counter.count_between
        codes = list(iter_antichain_codes(n))
        size = len(codes)
        between = [[count_between(codes[i], codes[j]) for j in range(size)] for i in range(size)]
        below = [[i for i in range(size) if between[i][j] > 0] for j in range(size)]
        duals = [dual_code(c, n) for c in codes]
        complement = complement_pair_positions(4)

        self._codes = codes
        self._index = {c: i for i, c in enumerate(codes)}
        self._between = between
        self._upper_terms: Dict[Tuple[int, ...], List[Tuple[int, int, int]]] = {}

        upper: Dict[Tuple[int, ...], Tuple[int, int]] = {}
        for deltas in product(range(size), repeat=6):
            join = 0
            for d in deltas:
                join |= codes[d]
            dual_betas = tuple(duals[deltas[complement[i]]] for i in range(6))
            value = 0
            count = 0
            found = []
            for epsilon in iter_interval_codes(join, self.top_code, n):
                p = p_general_codes(dual_code(epsilon, n), dual_betas, 4)
                if p == 0:
                    continue
                top_size = count_between(epsilon, self.top_code)
                value += p * top_size
                count += 1
                if self.collect_details:
                    found.append((epsilon, p, top_size))
            if count > 0:
                upper[deltas] = (value, count)
                if self.collect_details:
                    self._upper_terms[deltas] = found

        engine_logger.debug(f"nplus4(n={n}): {len(upper)} delta tuples with a nonzero upper system")

        weights = upper
        for axis in range(6):
            moved: Dict[Tuple[int, ...], Tuple[int, int]] = {}
            for key, (value, count) in weights.items():
                j = key[axis]
                for i in below[j]:
                    shifted = key[:axis] + (i,) + key[axis + 1 :]
                    prev_value, prev_count = moved.get(shifted, (0, 0))
                    moved[shifted] = (prev_value + between[i][j] * value, prev_count + count)
            weights = moved
        self._lower_weights = weights

    def evaluate_item(self, code: int) -> ItemValue:
        codes = self._codes
        members = [self._index[c] for c in iter_interval_codes(code, self.top_code, self.n)]
        eta_alpha = self.counter.count_between(0, code)
        total = 0
        terms = 0
        details = {"combinations": [], "histogram": {}} if self.collect_details else None
        for betas in product(members, repeat=6):
            weight = self._lower_weights.get(betas)
            if weight is None:
                continue
            beta_codes = tuple(codes[b] for b in betas)
            p = p_general_codes(code, beta_codes, 4)
            if p == 0:
                continue
            total += p * weight[0]
            terms += weight[1]
            if details is not None:
                self._collect_combinations(details, code, eta_alpha, betas, p)
        return eta_alpha * total, terms, details

    def _collect_combinations(self, details: dict, code: int, eta_alpha: int, betas: Tuple[int, ...], p: int):
        histogram: Counter = Counter()
        for deltas, found in self._upper_terms.items():
            between = 1
            for b, d in zip(betas, deltas):
                between *= self._between[b][d]
                if between == 0:
                    break
            if between == 0:
                continue
            for epsilon, p_upper, top_size in found:
                interval_product = eta_alpha * between * top_size
                details["combinations"].append(
                    {
                        "alpha": self.text(code),
                        "betas": [self.text(self._codes[b]) for b in betas],
                        "deltas": [self.text(self._codes[d]) for d in deltas],
                        "epsilon": self.text(epsilon),
                        "p_lower": p,
                        "p_upper": p_upper,
                        "product": interval_product,
                    }
                )
                histogram[str(interval_product)] += p * p_upper
        merge_details(details, {"histogram": dict(histogram)})


FORMULAS: Dict[ComputationMethod, Type[Formula]] = {
    ComputationMethod.BruteForce: BruteForceFormula,
    ComputationMethod.NPlus2: NPlus2Formula,
    ComputationMethod.NPlus3: NPlus3Formula,
    ComputationMethod.NPlus4: NPlus4Formula,
    ComputationMethod.Wiedemann: WiedemannFormula,
}


def create_formula(
    method: ComputationMethod,
    n: int,
    reduce_symmetry: bool = False,
    counter: IntervalCounter = None,
    collect_details: bool = None,
) -> Formula:
    assert method in FORMULAS, ValueError(f"Unknown computation method {method}")
    return FORMULAS[method](n, reduce_symmetry=reduce_symmetry, counter=counter, collect_details=collect_details)
