from functools import lru_cache
from itertools import permutations
from math import factorial
from typing import Iterator, List, NamedTuple, Sequence, Tuple

from dedekind_pcoef.lattice.antichains import Antichain, validate_base_set_size
from dedekind_pcoef.lattice.exceptions import (
    BaseSetMismatchException,
    InvalidAntichainException,
    OracleCapabilityException,
)
from dedekind_pcoef.lattice.oracle import iter_interval_codes
from dedekind_pcoef.lattice.utils import iter_bits, lattice_logger

# Permuted codes are assembled from per byte lookup tables up to this base set size.
MAX_TABLED_BASE_SET_SIZE = 6
MAX_CLASS_ENUMERATION_BASE_SET_SIZE = 6


class Permutation:
    __slots__ = ("_image",)

    def __init__(self, image: Sequence[int]):
        """A permutation of the base set {1..n}, element i is mapped to image[i-1].

        Args:
            image (Sequence[int]): The images of 1..n.
        """
        image = tuple(image)
        if sorted(image) != list(range(1, len(image) + 1)):
            raise InvalidAntichainException(f"{image} is not a permutation of 1..{len(image)}")
        validate_base_set_size(len(image))
        self._image = image

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def all(cls, n: int) -> List["Permutation"]:
        return [cls(p) for p in permutations(range(1, n + 1))]

    @property
    def n(self) -> int:
        return len(self._image)

    @property
    def image(self) -> Tuple[int, ...]:
        return self._image

    def apply_to_set(self, bits: int) -> int:
        result = 0
        for i in iter_bits(bits):
            result |= 1 << (self._image[i] - 1)
        return result

    def apply(self, a: Antichain) -> Antichain:
        if a.n != self.n:
            raise BaseSetMismatchException(
                f"Cannot apply a permutation of {self.n} elements to {a} over {a.n}", left_n=self.n, right_n=a.n
            )
        return Antichain([self.apply_to_set(x) for x in a.sets], a.n, validate=False)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self._image == other._image

    def __hash__(self) -> int:
        return hash(self._image)

    def __repr__(self) -> str:
        return f"Permutation{self._image}"


class CanonicalClass(NamedTuple):
    representative: Antichain
    orbit_size: int


class CodePermuter:
    def __init__(self, n: int):
        """Applies every permutation of {1..n} to downset codes. A code has 2^n bits, the
        image of bit X is bit perm(X). Images are assembled from per byte tables.

        Args:
            n (int): The base set size.
        """
        validate_base_set_size(n)
        self.n = n
        self.size = 1 << n
        self.permutations: List[Permutation] = Permutation.all(n)
        self.set_maps: List[List[int]] = [[p.apply_to_set(x) for x in range(self.size)] for p in self.permutations]
        self._byte_tables: List[List[List[int]]] = None
        if n <= MAX_TABLED_BASE_SET_SIZE:
            self._byte_tables = [self._build_byte_tables(set_map) for set_map in self.set_maps]

    def _build_byte_tables(self, set_map: List[int]) -> List[List[int]]:
        tables = []
        for offset in range(0, self.size, 8):
            width = min(8, self.size - offset)
            table = [0] * (1 << width)
            for value in range(1, 1 << width):
                low = value & -value
                table[value] = table[value ^ low] | (1 << set_map[offset + low.bit_length() - 1])
            tables.append(table)
        return tables

    def apply_code(self, index: int, code: int) -> int:
        """Returns the image of the code under the permutation at index"""
        if self._byte_tables is None:
            set_map = self.set_maps[index]
            image = 0
            for x in iter_bits(code):
                image |= 1 << set_map[x]
            return image
        image = 0
        for table in self._byte_tables[index]:
            image |= table[code & 0xFF]
            code >>= 8
        return image

    def images(self, code: int) -> Iterator[int]:
        for index in range(len(self.permutations)):
            yield self.apply_code(index, code)

    def is_canonical(self, code: int) -> bool:
        """True if no permutation maps the code to a smaller one"""
        for index in range(1, len(self.permutations)):
            if self.apply_code(index, code) < code:
                return False
        return True

    def stabilizer_size(self, code: int) -> int:
        return sum(1 for image in self.images(code) if image == code)

    def orbit_size(self, code: int) -> int:
        return factorial(self.n) // self.stabilizer_size(code)

    def canonical_code(self, code: int) -> int:
        return min(self.images(code))


@lru_cache(maxsize=None)
def code_permuter(n: int) -> CodePermuter:
    return CodePermuter(n)


def apply(perm: Permutation, a: Antichain) -> Antichain:
    return perm.apply(a)


def canonical_form(a: Antichain) -> Tuple[Antichain, int]:
    """Returns the representative of the orbit of a under base set permutations, the member
    with the smallest downset code, and the orbit size n!/|stabilizer|.

    Args:
        a (Antichain): The antichain.

    Returns:
        Tuple[Antichain, int]: The representative and the orbit size.
    """
    permuter = code_permuter(a.n)
    images = list(permuter.images(a.code))
    return Antichain.from_code(min(images), a.n), len(set(images))


def is_canonical(a: Antichain) -> bool:
    return code_permuter(a.n).is_canonical(a.code)


def iter_canonical_codes(n: int) -> Iterator[Tuple[int, int]]:
    """Yields (code, orbit size) for every canonical downset code over n elements, in
    enumeration order.
    """
    permuter = code_permuter(n)
    top_code = (1 << (1 << n)) - 1
    for code in iter_interval_codes(0, top_code, n):
        if permuter.is_canonical(code):
            yield code, permuter.orbit_size(code)


def enumerate_classes(n: int, max_n: int = MAX_CLASS_ENUMERATION_BASE_SET_SIZE) -> List[CanonicalClass]:
    """Returns one CanonicalClass per orbit of D_n under base set permutations, sorted by
    the representative downset code.

    Args:
        n (int): The base set size.
        max_n (int, optional): The capability cap. Defaults to MAX_CLASS_ENUMERATION_BASE_SET_SIZE.

    Returns:
        List[CanonicalClass]: The classes.
    """
    validate_base_set_size(n)
    if n > max_n:
        raise OracleCapabilityException(
            f"Class enumeration is capped at n <= {max_n}, got n={n}", cap_name="classes", cap_value=max_n
        )
    classes = sorted(iter_canonical_codes(n))
    lattice_logger.debug(f"Enumerated {len(classes)} classes for n={n}")
    return [CanonicalClass(Antichain.from_code(code, n), orbit) for code, orbit in classes]
