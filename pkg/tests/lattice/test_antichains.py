import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tests.utils import all_antichains
from dedekind_pcoef.exceptions import InvalidInputException, PreconditionException
from dedekind_pcoef.lattice import (
    Antichain,
    BaseSetMismatchException,
    Downset,
    ElementSet,
    InvalidAntichainException,
    LatticePreconditionException,
    dominates,
    direct_product,
    dual,
    from_downset,
    iter_antichain_codes,
    join,
    le,
    meet,
    normalize,
    span,
    to_downset,
)

CODES_3 = list(iter_antichain_codes(3))


def a(text: str, n: int) -> Antichain:
    return Antichain.parse(text, n)


def s(text: str, n: int) -> ElementSet:
    return ElementSet.parse(text, n)


def antichains(n: int):
    return st.sampled_from(list(iter_antichain_codes(n))).map(lambda code: Antichain.from_code(code, n))


def test_parse_and_format():
    assert str(a("{12,3}", 3)) == "{3,12}"
    assert str(a("{}", 2)) == "{}"
    assert str(a("{0}", 2)) == "{0}"
    assert a("{}", 2) == Antichain.bottom(2)
    assert a("{123}", 3) == Antichain.top(3)
    assert len(a("{1,23}", 3)) == 2


def test_parse_rejects_comparable_sets():
    with pytest.raises(InvalidAntichainException):
        a("{1,12}", 2)
    assert Antichain.parse("{1,12}", 2, normalize=True) == a("{12}", 2)


def test_parse_rejects_malformed_text():
    for text in ["12", "{1;2}", "{a}", "{4}"]:
        with pytest.raises(InvalidInputException):
            Antichain.parse(text, 3)


def test_invalid_base_set_size():
    with pytest.raises(InvalidAntichainException):
        Antichain.bottom(8)
    with pytest.raises(InvalidAntichainException):
        Antichain.bottom(-1)


def test_normalize():
    assert normalize([s("0", 1), s("1", 1)], 1) == a("{1}", 1)
    assert normalize([], 3) == Antichain.bottom(3)
    assert normalize([s("12", 3), s("1", 3), s("23", 3)], 3) == a("{12,23}", 3)


def test_le():
    for x in all_antichains(3):
        assert le(Antichain.bottom(3), x)
        assert le(x, Antichain.top(3))
    assert le(a("{1}", 2), a("{12}", 2))
    assert not le(a("{1,2}", 2), a("{1}", 2))
    assert a("{1}", 2) <= a("{12}", 2)
    assert a("{12}", 2) >= a("{1}", 2)


def test_join_and_meet():
    x = a("{1,23}", 3)
    assert join(x, Antichain.bottom(3)) == x
    assert join(a("{1}", 2), a("{2}", 2)) == a("{1,2}", 2)
    assert join(a("{1}", 2), a("{12}", 2)) == a("{12}", 2)
    assert meet(x, Antichain.top(3)) == x
    assert meet(a("{12}", 3), a("{23}", 3)) == a("{2}", 3)
    assert meet(a("{1}", 2), a("{2}", 2)) == a("{0}", 2)
    assert meet(a("{1}", 2), a("{2}", 2)) != Antichain.bottom(2)
    assert (a("{1}", 2) | a("{2}", 2)) == join(a("{1}", 2), a("{2}", 2))
    assert (a("{12}", 3) & a("{23}", 3)) == meet(a("{12}", 3), a("{23}", 3))


def test_dominates_and_span():
    assert not dominates(Antichain.bottom(2), s("0", 2))
    assert dominates(a("{0}", 2), s("0", 2))
    assert dominates(a("{12}", 2), s("1", 2))
    assert span(Antichain.bottom(3)) == s("0", 3)
    assert span(a("{1,23}", 3)) == s("123", 3)
    assert span(a("{0}", 3)) == s("0", 3)


def test_direct_product():
    x = a("{1,23}", 4)
    assert direct_product(a("{1}", 2), a("{2}", 2)) == a("{12}", 2)
    assert direct_product(x, a("{0}", 4)) == x
    assert direct_product(Antichain.bottom(4), x) == Antichain.bottom(4)
    assert direct_product(a("{1,2}", 4), a("{3}", 4)) == a("{13,23}", 4)


def test_direct_product_requires_disjoint_spans():
    with pytest.raises(LatticePreconditionException):
        direct_product(a("{12}", 3), a("{2}", 3))
    assert issubclass(LatticePreconditionException, PreconditionException)


def test_base_set_mismatch():
    with pytest.raises(BaseSetMismatchException):
        join(a("{1}", 2), a("{1}", 3))
    with pytest.raises(BaseSetMismatchException):
        le(a("{1}", 2), a("{1}", 3))


def test_dual_examples():
    for n in range(4):
        assert dual(Antichain.bottom(n)) == Antichain.top(n)
        assert dual(Antichain.top(n)) == Antichain.bottom(n)
    assert dual(a("{0}", 1)) == a("{0}", 1)
    assert dual(a("{1}", 2)) == a("{1}", 2)
    assert [x for x in all_antichains(1) if dual(x) == x] == [a("{0}", 1)]


def test_downset_round_trip():
    assert to_downset(Antichain.bottom(2)).member == 0
    assert to_downset(a("{0}", 2)).member == 1
    assert len(to_downset(a("{12}", 2))) == 4
    assert from_downset(Downset((1 << 8) - 1, 3)) == Antichain.top(3)
    for x in all_antichains(3):
        assert from_downset(to_downset(x)) == x
        assert Antichain.from_code(x.code, 3) == x


def test_downset_rejects_non_closed_bitsets():
    with pytest.raises(InvalidAntichainException):
        Downset(0b10, 1)


@settings(max_examples=200, deadline=None)
@given(antichains(3), antichains(3), antichains(3))
def test_lattice_axioms(x, y, z):
    assert join(x, y) == join(y, x)
    assert meet(x, y) == meet(y, x)
    assert join(join(x, y), z) == join(x, join(y, z))
    assert meet(meet(x, y), z) == meet(x, meet(y, z))
    assert join(x, meet(x, y)) == x
    assert meet(x, join(x, y)) == x
    assert le(x, y) == (join(x, y) == y)
    assert le(x, y) == (meet(x, y) == x)
    # distributive
    assert meet(x, join(y, z)) == join(meet(x, y), meet(x, z))


@settings(max_examples=200, deadline=None)
@given(antichains(4), antichains(4))
def test_dual_is_an_involutive_anti_isomorphism(x, y):
    assert dual(dual(x)) == x
    assert le(x, y) == le(dual(y), dual(x))
    assert dual(join(x, y)) == meet(dual(x), dual(y))
    assert dual(meet(x, y)) == join(dual(x), dual(y))


def test_codes_match_downsets():
    for code in CODES_3:
        x = Antichain.from_code(code, 3)
        for bits in range(8):
            assert x.dominates(bits) == any(bits & ~m == 0 for m in x.sets)


@settings(max_examples=300, deadline=None)
@given(antichains(4), antichains(4))
def test_meet_and_join_by_codes(x, y):
    assert meet(x, y) == Antichain.from_code(x.code & y.code, 4)
    assert join(x, y) == Antichain.from_code(x.code | y.code, 4)
    assert meet(x, y).code == x.code & y.code


def test_meet_by_codes_exhaustive():
    for left in CODES_3:
        x = Antichain.from_code(left, 3)
        for right in CODES_3:
            assert meet(x, Antichain.from_code(right, 3)).code == left & right


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=15), max_size=10), st.randoms())
def test_normalize_is_idempotent_and_order_free(raw, rnd):
    once = normalize(raw, 4)
    assert normalize(once.sets, 4) == once
    shuffled = list(raw)
    rnd.shuffle(shuffled)
    assert normalize(shuffled, 4) == once
    assert normalize(raw + raw, 4) == once
    # every raw set is dominated by the result
    assert all(once.dominates(x) for x in raw)
