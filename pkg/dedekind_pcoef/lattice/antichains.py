import re
from typing import Iterable, Iterator, List, Tuple, Union

from dedekind_pcoef.lattice.exceptions import (
    BaseSetMismatchException,
    InvalidAntichainException,
    LatticePreconditionException,
)
from dedekind_pcoef.lattice.utils import (
    MAX_BASE_SET_SIZE,
    downset_of,
    dual_code,
    iter_bits,
    maximal_sets,
    popcount,
    set_sort_key,
    subset_tables,
)

ANTICHAIN_TEXT_PATTERN = re.compile(r"^\{\s*(?P<body>[0-9,\s]*)\}$")


def validate_base_set_size(n: int):
    if not isinstance(n, int) or n < 0 or n > MAX_BASE_SET_SIZE:
        raise InvalidAntichainException(f"Base set size must be an integer in 0..{MAX_BASE_SET_SIZE}, got {n}")


class ElementSet:
    __slots__ = ("_bits", "_n")

    def __init__(self, bits: int, n: int):
        """A subset of the base set {1..n}, bit i-1 is set iff element i is present.

        Args:
            bits (int): The bitmask.
            n (int): The base set size.
        """
        validate_base_set_size(n)
        if not isinstance(bits, int) or bits < 0 or bits >> n:
            raise InvalidAntichainException(f"Set bits {bits} are out of range for base set size {n}")
        self._bits = bits
        self._n = n

    @property
    def bits(self) -> int:
        return self._bits

    @property
    def n(self) -> int:
        return self._n

    @property
    def elements(self) -> Tuple[int, ...]:
        return tuple(i + 1 for i in iter_bits(self._bits))

    @classmethod
    def from_elements(cls, elements: Iterable[int], n: int) -> "ElementSet":
        bits = 0
        for e in elements:
            if not isinstance(e, int) or e < 1 or e > n:
                raise InvalidAntichainException(f"Element {e} is not in the base set {{1..{n}}}")
            bits |= 1 << (e - 1)
        return cls(bits, n)

    @classmethod
    def parse(cls, text: str, n: int) -> "ElementSet":
        """Parses the digit abbreviation of a set, '0' is the empty set, '123' is {1,2,3}.

        Args:
            text (str): The set text.
            n (int): The base set size.

        Returns:
            ElementSet: The set.
        """
        text = text.strip()
        if text == "0":
            return cls(0, n)
        if len(text) == 0 or not text.isdigit():
            raise InvalidAntichainException(f"Invalid set '{text}', expected digits or '0'")
        digits = [int(c) for c in text]
        if any(b <= a for a, b in zip(digits, digits[1:])):
            raise InvalidAntichainException(f"Invalid set '{text}', digits must be strictly increasing")
        return cls.from_elements(digits, n)

    def issubset(self, other: "ElementSet") -> bool:
        return self._bits & ~other._bits == 0

    def __contains__(self, element: int) -> bool:
        return 1 <= element <= self._n and (self._bits >> (element - 1)) & 1 == 1

    def __eq__(self, other) -> bool:
        return isinstance(other, ElementSet) and self._bits == other._bits and self._n == other._n

    def __hash__(self) -> int:
        return hash((self._bits, self._n))

    def __str__(self) -> str:
        return format_set(self._bits)

    def __repr__(self) -> str:
        return f"ElementSet({str(self)}, n={self._n})"


def format_set(bits: int) -> str:
    if bits == 0:
        return "0"
    return "".join(str(i + 1) for i in iter_bits(bits))


SetLike = Union[ElementSet, int]


def to_set_bits(value: SetLike, n: int) -> int:
    if isinstance(value, ElementSet):
        if value.n != n:
            raise BaseSetMismatchException(
                f"Set {value} is over base set size {value.n}, expected {n}", left_n=value.n, right_n=n
            )
        return value.bits
    if not isinstance(value, int) or value < 0 or value >> n:
        raise InvalidAntichainException(f"Set bits {value} are out of range for base set size {n}")
    return value


class Antichain:
    __slots__ = ("_sets", "_n", "_code")

    def __init__(self, sets: Iterable[SetLike], n: int, validate: bool = True):
        """An antichain over the base set {1..n}, stored as the canonically sorted tuple
        of its set bitmasks, (popcount, bits) ascending.

        Args:
            sets (Iterable[SetLike]): The member sets, as ElementSet or bitmasks.
            n (int): The base set size.
            validate (bool, optional): If true, verifies the sets are in range and pairwise
                incomparable. Defaults to True.
        """
        validate_base_set_size(n)
        masks = sorted(set(to_set_bits(s, n) for s in sets), key=set_sort_key)
        if validate:
            for i, x in enumerate(masks):
                for y in masks[i + 1 :]:  # noqa: E203
                    if x & ~y == 0 or y & ~x == 0:
                        raise InvalidAntichainException(
                            f"Sets {format_set(x)} and {format_set(y)} are comparable, not an antichain"
                        )
        self._sets: Tuple[int, ...] = tuple(masks)
        self._n = n
        self._code: int = None

    # ------------------------------
    # constructors

    @classmethod
    def bottom(cls, n: int) -> "Antichain":
        return cls((), n, validate=False)

    @classmethod
    def top(cls, n: int) -> "Antichain":
        return cls(((1 << n) - 1,), n, validate=False)

    @classmethod
    def normalize(cls, raw: Iterable[SetLike], n: int) -> "Antichain":
        """Returns max(raw), the maximal sets of a collection w.r.t. inclusion.

        Args:
            raw (Iterable[SetLike]): The sets.
            n (int): The base set size.

        Returns:
            Antichain: The normalized antichain.
        """
        validate_base_set_size(n)
        masks = sorted(set(to_set_bits(s, n) for s in raw), key=set_sort_key, reverse=True)
        kept: List[int] = []
        for x in masks:
            if not any(x & ~y == 0 for y in kept):
                kept.append(x)
        return cls(kept, n, validate=False)

    @classmethod
    def from_code(cls, code: int, n: int) -> "Antichain":
        """Creates the antichain of maximal sets of a downset code (no validation of closure)"""
        antichain = cls(maximal_sets(code, n), n, validate=False)
        antichain._code = code
        return antichain

    @classmethod
    def parse(cls, text: str, n: int, normalize: bool = False) -> "Antichain":
        """Parses the antichain text grammar, '{}' is bottom, '{0}' is {empty set},
        '{12,13}' is {{1,2},{1,3}}.

        Args:
            text (str): The text.
            n (int): The base set size.
            normalize (bool, optional): If true, comparable sets are absorbed instead
                of rejected. Defaults to False.

        Returns:
            Antichain: The antichain.
        """
        match = ANTICHAIN_TEXT_PATTERN.match(text.strip())
        if match is None:
            raise InvalidAntichainException(f"Invalid antichain text '{text}', expected e.g. '{{12,13}}'")
        body = match.group("body").strip()
        sets = [] if len(body) == 0 else [ElementSet.parse(part, n) for part in body.split(",")]
        if normalize:
            return cls.normalize(sets, n)
        return cls(sets, n)

    # ------------------------------
    # properties

    @property
    def n(self) -> int:
        return self._n

    @property
    def sets(self) -> Tuple[int, ...]:
        """The canonically sorted set bitmasks"""
        return self._sets

    @property
    def element_sets(self) -> Tuple[ElementSet, ...]:
        return tuple(ElementSet(x, self._n) for x in self._sets)

    @property
    def code(self) -> int:
        """The downset code, bit X is set iff the set X is dominated"""
        if self._code is None:
            self._code = downset_of(self._sets, self._n)
        return self._code

    @property
    def is_bottom(self) -> bool:
        return len(self._sets) == 0

    # ------------------------------
    # order and lattice operations

    def check_same_base(self, other: "Antichain"):
        if not isinstance(other, Antichain):
            raise InvalidAntichainException(f"Expected an Antichain, got {type(other).__name__}")
        if other._n != self._n:
            raise BaseSetMismatchException(
                f"Cannot combine antichains over base set sizes {self._n} and {other._n}",
                left_n=self._n,
                right_n=other._n,
            )

    def le(self, other: "Antichain") -> bool:
        """True iff every set of self is dominated by other"""
        self.check_same_base(other)
        return self.code & ~other.code == 0

    def __le__(self, other: "Antichain") -> bool:
        return self.le(other)

    def __ge__(self, other: "Antichain") -> bool:
        return other.le(self)

    def join(self, other: "Antichain") -> "Antichain":
        """max(self ∪ other)"""
        self.check_same_base(other)
        return Antichain.normalize(self._sets + other._sets, self._n)

    def meet(self, other: "Antichain") -> "Antichain":
        """max({X ∩ Y | X in self, Y in other})"""
        self.check_same_base(other)
        return Antichain.normalize([x & y for x in self._sets for y in other._sets], self._n)

    def __or__(self, other: "Antichain") -> "Antichain":
        return self.join(other)

    def __and__(self, other: "Antichain") -> "Antichain":
        return self.meet(other)

    def dominates(self, value: SetLike) -> bool:
        x = to_set_bits(value, self._n)
        return (self.code >> x) & 1 == 1

    def span(self) -> ElementSet:
        bits = 0
        for x in self._sets:
            bits |= x
        return ElementSet(bits, self._n)

    def direct_product(self, other: "Antichain") -> "Antichain":
        """{X ∪ Y | X in self, Y in other}, defined for non overlapping spans"""
        self.check_same_base(other)
        if self.span().bits & other.span().bits:
            raise LatticePreconditionException(
                f"Direct product requires disjoint spans, {self} and {other} overlap on "
                + format_set(self.span().bits & other.span().bits)
            )
        return Antichain([x | y for x in self._sets for y in other._sets], self._n, validate=False)

    def dual(self) -> "Antichain":
        """The antichain of the dual monotone function, the complement of the set of complements"""
        return Antichain.from_code(dual_code(self.code, self._n), self._n)

    def to_downset(self) -> "Downset":
        return Downset(self.code, self._n, validate=False)

    @classmethod
    def from_downset(cls, downset: "Downset") -> "Antichain":
        return cls.from_code(downset.member, downset.n)

    # ------------------------------
    # python protocol

    def __len__(self) -> int:
        return len(self._sets)

    def __iter__(self) -> Iterator[ElementSet]:
        return iter(self.element_sets)

    def __contains__(self, value: SetLike) -> bool:
        return to_set_bits(value, self._n) in self._sets

    def __eq__(self, other) -> bool:
        return isinstance(other, Antichain) and self._n == other._n and self._sets == other._sets

    def __hash__(self) -> int:
        return hash((self._n, self._sets))

    def __str__(self) -> str:
        return format_antichain(self._sets)

    def __repr__(self) -> str:
        return f"Antichain({str(self)}, n={self._n})"


def format_antichain(sets: Iterable[int]) -> str:
    return "{" + ",".join(format_set(x) for x in sets) + "}"


class Downset:
    __slots__ = ("_member", "_n")

    def __init__(self, member: int, n: int, validate: bool = True):
        """A family of subsets of {1..n} closed under taking subsets, stored as a
        bitset of length 2^n indexed by the set bitmask.

        Args:
            member (int): The bitset.
            n (int): The base set size.
            validate (bool, optional): If true, verifies downward closure. Defaults to True.
        """
        validate_base_set_size(n)
        tables = subset_tables(n)
        if not isinstance(member, int) or member < 0 or member & ~tables.universe:
            raise InvalidAntichainException(f"Downset bitset is out of range for base set size {n}")
        if validate:
            for x in iter_bits(member):
                if tables.down[x] & ~member:
                    raise InvalidAntichainException(
                        f"Bitset is not downward closed, {format_set(x)} is present but not all its subsets"
                    )
        self._member = member
        self._n = n

    @property
    def member(self) -> int:
        return self._member

    @property
    def n(self) -> int:
        return self._n

    def to_antichain(self) -> Antichain:
        return Antichain.from_downset(self)

    @classmethod
    def from_antichain(cls, antichain: Antichain) -> "Downset":
        return antichain.to_downset()

    def __contains__(self, value: SetLike) -> bool:
        return (self._member >> to_set_bits(value, self._n)) & 1 == 1

    def __len__(self) -> int:
        return popcount(self._member)

    def __eq__(self, other) -> bool:
        return isinstance(other, Downset) and self._n == other._n and self._member == other._member

    def __hash__(self) -> int:
        return hash((self._n, self._member))

    def __repr__(self) -> str:
        return f"Downset({format_antichain(maximal_sets(self._member, self._n))}, n={self._n})"


# ------------------------------
# module level operations


def normalize(raw: Iterable[SetLike], n: int) -> Antichain:
    return Antichain.normalize(raw, n)


def le(a: Antichain, b: Antichain) -> bool:
    return a.le(b)


def join(a: Antichain, b: Antichain) -> Antichain:
    return a.join(b)


def meet(a: Antichain, b: Antichain) -> Antichain:
    return a.meet(b)


def dominates(a: Antichain, x: SetLike) -> bool:
    return a.dominates(x)


def span(a: Antichain) -> ElementSet:
    return a.span()


def direct_product(a: Antichain, b: Antichain) -> Antichain:
    return a.direct_product(b)


def dual(a: Antichain) -> Antichain:
    return a.dual()


def to_downset(a: Antichain) -> Downset:
    return a.to_downset()


def from_downset(d: Downset) -> Antichain:
    return d.to_antichain()
