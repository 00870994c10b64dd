import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crjet import I, Jet, VariableSet, divide, s_factor, s_order
from crjet.division import AtLeast
from crjet.errors import FlatInput, NotAUnit, NotDivisible

from _util import random_jet, seeded

V = VariableSet(1)


def jv(name, K=5):
    return Jet.var(V, name, K)


z, s = jv("z1"), jv("s")


class TestExamples:
    def test_s_order(self):
        assert s_order(s ** 3 * z + s ** 4) == 3
        assert s_order(1 + s) == 0
        flat = s_order(Jet.zero(V, 5))
        assert isinstance(flat, AtLeast) and flat == 6 and str(flat) == ">=6"

    def test_s_factor(self):
        fac = s_factor(-2 * I * s)
        assert (fac.k, fac.unit0, fac.is_unit) == (1, -2 * I, True)
        fac = s_factor(s ** 2 * (1 + z))
        assert fac.k == 2 and fac.unit.agrees(1 + z.with_order(3))
        fac = s_factor(s * z)
        assert fac.k == 1 and not fac.is_unit
        with pytest.raises(FlatInput):
            s_factor(Jet.zero(V, 4))

    def test_divide(self):
        z3, s3 = jv("z1", 3), jv("s", 3)
        u = divide(s3 ** 2 * (1 + z3), s3 ** 2 * (1 + s3))
        expected = ((1 + z3) * (1 - s3 + s3 ** 2 - s3 ** 3)).with_order(u.order)
        assert u.identical(expected)
        with pytest.raises(NotDivisible):
            divide(s3, s3 ** 2)
        lam = s ** 2 * (3 + z)
        assert divide(lam, lam) == 1
        with pytest.raises(NotAUnit):
            divide(s * z, s * z)


def random_unit_times_power(rng, K):
    k = rng.randint(0, 2)
    unit = random_jet(rng, V, K, unit=True)
    return Jet.var(V, "s", K) ** k * unit


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_round_trip(seed):
    rng = seeded(seed)
    K = 6
    lam = random_unit_times_power(rng, K)
    u = random_jet(rng, V, K)
    out = divide(lam * u, lam)
    assert out.agrees(u)
    assert out.order == K - s_order(lam)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_s_order_additive(seed):
    rng = seeded(seed)
    # degrees <= 4 at order 8: the product loses nothing to truncation
    f, g = random_jet(rng, V, 8, max_degree=4), random_jet(rng, V, 8, max_degree=4)
    if f.is_zero() or g.is_zero() or (f * g).is_zero():
        return
    assert s_order(f * g) == s_order(f) + s_order(g)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_factor_reassembles(seed):
    f = random_jet(seeded(seed), V, 6)
    if f.is_zero():
        return
    fac = s_factor(f)
    assert (Jet.var(V, "s", 6) ** fac.k * fac.unit).agrees(f)
    shifted = {e[:-1] + (e[-1] + fac.k,): c for e, c in fac.unit.items()}
    assert shifted == dict(f.items())
    assert fac.unit.order == f.order - fac.k
