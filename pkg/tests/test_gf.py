import pytest
from hypothesis import given, settings, strategies as st

from agcodes.gf import (GF, FieldError, embed_into_extension, min_field_degree,
                        smallest_irreducible, trace_to_subfield)

FIELDS = [(2, 1, None), (7, 1, None), (2, 2, "a^2+a+1"), (3, 2, "a^2+1"), (2, 3, "a^3+a+1"),
          (5, 2, None), (2, 6, None)]


def _field(i):
    p, m, mod = FIELDS[i]
    return GF(p, m, mod)


field_and_elems = st.integers(0, len(FIELDS) - 1).flatmap(
    lambda i: st.tuples(st.just(_field(i)),
                        *[st.integers(0, _field(i).q - 1)] * 3))


def test_gf4_tables(gf4):
    a = gf4.gen
    assert a * a == a + 1
    assert a ** 3 == 1
    assert a.inverse() == a + 1
    assert [str(x) for x in gf4.elements()] == ["0", "1", "a", "a+1"]


def test_gf9_arithmetic(gf9):
    a = gf9.gen
    assert a * a == gf9(-1)
    assert (1 + a) ** 8 == 1
    assert gf9.parse("2*a+1") == 2 * a + 1
    assert str(gf9.parse("2*a+1")) == "2*a+1"


def test_prime_field_reduction():
    F = GF(7)
    assert F(10) == F(3)
    assert F(-1) == F(6)
    assert F(3) / F(5) * F(5) == F(3)


def test_reducible_modulus_rejected():
    with pytest.raises(FieldError, match="reducible"):
        GF(2, 2, "a^2+1")


def test_nonprime_characteristic_rejected():
    with pytest.raises(FieldError):
        GF(4)


def test_wrong_degree_rejected():
    with pytest.raises(FieldError):
        GF(2, 3, "a^2+a+1")


def test_zero_has_no_inverse(gf4):
    with pytest.raises(ZeroDivisionError):
        gf4.zero.inverse()


def test_smallest_irreducible_is_irreducible():
    for p, m in [(2, 2), (2, 4), (3, 3), (5, 2)]:
        F = GF(p, m, smallest_irreducible(p, m))
        assert F.q == p ** m


def test_frobenius_fixes_prime_field(gf9):
    for x in gf9.elements():
        assert (x.frobenius() == x) == (x ** 3 == x)
        assert x.frobenius(2) == x


def test_extension_embedding_and_trace(gf4):
    K = gf4.extension(3)
    assert K.q == 64 and K.base is gf4
    for x in gf4.elements():
        y = K.embed(x)
        assert K.pullback(y) == x
        assert min_field_degree(y) == 1
        # the trace of a base element is 3x = x in characteristic 2
        assert trace_to_subfield(y, 3) == x
    assert min_field_degree(K.gen) == 3


def test_trace_is_additive_and_lands_in_base(gf4):
    K, emb = embed_into_extension(gf4, 2)
    els = K.elements()
    for x in els[:16]:
        for y in els[16:24]:
            assert trace_to_subfield(x + y, 2) == trace_to_subfield(x, 2) + trace_to_subfield(y, 2)
        assert trace_to_subfield(x, 2).field is gf4


@settings(max_examples=200, deadline=None)
@given(field_and_elems)
def test_field_axioms(t):
    F, i, j, k = t
    x, y, z = F.elem(i), F.elem(j), F.elem(k)
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x - x == F.zero
    assert x + (-x) == F.zero
    if y:
        assert (x / y) * y == x
        assert y * y.inverse() == F.one
    assert x ** F.q == x
    assert x.frobenius(F.m) == x
