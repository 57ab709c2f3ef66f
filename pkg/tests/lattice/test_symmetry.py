import math

import pytest

from tests.utils import all_antichains
from dedekind_pcoef.collections import KNOWN_CLASS_COUNTS, KNOWN_DEDEKIND_NUMBERS
from dedekind_pcoef.lattice import (
    Antichain,
    InvalidAntichainException,
    OracleCapabilityException,
    Permutation,
    apply,
    canonical_form,
    code_permuter,
    enumerate_classes,
    eta,
    interval_size,
    is_canonical,
)


def test_apply_examples():
    x = Antichain.parse("{1,23}", 3)
    assert apply(Permutation.identity(3), x) == x
    assert apply(Permutation((2, 1)), Antichain.parse("{1}", 2)) == Antichain.parse("{2}", 2)
    for perm in Permutation.all(3):
        assert apply(perm, Antichain.bottom(3)) == Antichain.bottom(3)
        assert apply(perm, Antichain.top(3)) == Antichain.top(3)


def test_permutation_validation():
    with pytest.raises(InvalidAntichainException):
        Permutation((1, 1))
    with pytest.raises(InvalidAntichainException):
        Permutation((0, 1))


def test_canonical_form_examples():
    assert canonical_form(Antichain.parse("{2}", 2)) == (Antichain.parse("{1}", 2), 2)
    assert canonical_form(Antichain.top(3)) == (Antichain.top(3), 1)


def test_canonical_form_is_orbit_invariant():
    for x in all_antichains(3):
        representative, orbit = canonical_form(x)
        assert is_canonical(representative)
        assert canonical_form(representative) == (representative, orbit)
        assert math.factorial(3) % orbit == 0
        images = {apply(perm, x) for perm in Permutation.all(3)}
        assert len(images) == orbit
        assert all(canonical_form(image)[0] == representative for image in images)


def test_code_permuter_matches_permutations():
    permuter = code_permuter(3)
    for x in all_antichains(3):
        images = sorted(permuter.images(x.code))
        assert images == sorted(apply(perm, x).code for perm in Permutation.all(3))
        assert permuter.orbit_size(x.code) * permuter.stabilizer_size(x.code) == 6


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4, 5])
def test_class_counts(n):
    classes = enumerate_classes(n)
    assert len(classes) == KNOWN_CLASS_COUNTS[n]
    assert sum(c.orbit_size for c in classes) == KNOWN_DEDEKIND_NUMBERS[n]
    codes = [c.representative.code for c in classes]
    assert codes == sorted(codes)


@pytest.mark.slow
def test_class_count_at_six():
    assert len(enumerate_classes(6)) == 16353


def test_class_enumeration_cap():
    with pytest.raises(OracleCapabilityException) as err:
        enumerate_classes(4, max_n=3)
    assert err.value.cap_name == "classes"
    assert err.value.cap_value == 3


def test_interval_sizes_are_constant_on_orbits():
    antichains = all_antichains(3)
    for bottom in antichains:
        for top in antichains:
            size = interval_size(bottom, top)
            for perm in Permutation.all(3):
                assert interval_size(apply(perm, bottom), apply(perm, top)) == size


def test_eta_is_constant_on_orbits():
    for x in all_antichains(4):
        representative, _ = canonical_form(x)
        assert eta(x) == eta(representative)
