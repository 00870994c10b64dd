from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crjet import (
    ClassicalSymbol,
    GaussianRational,
    HomogeneousTerm,
    I,
    Jet,
    RationalForm,
    VariableSet,
    build_cr_system_symbol,
    build_hypersurface_frame,
    char_determinant,
    compose,
    identity_symbol,
    is_elliptic_at,
    parametrix,
)
from crjet.errors import DepthExceeded, NotElliptic, PoleAtXi, SizeMismatch
from crjet.symbols import remainder_vanishes

from _util import random_gaussian, random_jet, seeded

X1 = VariableSet(0, 1, ["x"])
X2 = VariableSet(0, 2, ["x1", "x2"])


def xi(V, k):
    return RationalForm.xi(V, k)


def fn(jet):
    return RationalForm.from_jet(jet)


def scalar(order, *terms, depth=None):
    return ClassicalSymbol(order, [[[t]] for t in terms], depth)


class TestRationalForms:
    def test_cancellation_and_sum(self):
        a = xi(X2, 0) / (xi(X2, 0) * xi(X2, 1))
        assert a.agrees(RationalForm.const(X2, 1) / xi(X2, 1))
        total = xi(X2, 0).invert() + xi(X2, 1).invert()
        assert (total * xi(X2, 0) * xi(X2, 1)).agrees(xi(X2, 0) + xi(X2, 1))

    def test_invert_with_x_dependence(self):
        x = Jet.var(X1, "x", 4)
        p = xi(X1, 0) + fn(x) * xi(X1, 0)
        assert (p * p.invert()).agrees(1)

    def test_homogeneity(self):
        f = (xi(X2, 0) ** 2 + fn(Jet.var(X2, "x1", 3)) * xi(X2, 1) ** 2) / (xi(X2, 0) + I * xi(X2, 1))
        assert f.is_homogeneous(1)
        assert not f.is_homogeneous(2)
        with pytest.raises(ValueError):
            HomogeneousTerm(1, [[xi(X2, 0) + 1]])

    def test_evaluate(self):
        f = fn(Jet.var(X1, "x", 3)) / xi(X1, 0)
        assert f.evaluate((2,), (4,)) == GaussianRational(Fraction(1, 2))
        with pytest.raises(PoleAtXi):
            f.evaluate((1,), (0,))


class TestCompose:
    def test_xi_then_x(self):
        c = compose(scalar(1, xi(X1, 0)), scalar(0, fn(Jet.var(X1, "x", 5))), 2)
        assert c.order == 1
        assert c.term(0).entries[0][0].agrees(fn(Jet.var(X1, "x", 5)) * xi(X1, 0))
        assert c.term(1).entries[0][0].agrees(-I)

    def test_identity(self):
        ident = identity_symbol(X2, 2)
        c = compose(ident, ident, 3)
        assert remainder_vanishes(c, 3)

    def test_errors(self):
        with pytest.raises(SizeMismatch):
            compose(identity_symbol(X1, 1), identity_symbol(X1, 2), 1)
        with pytest.raises(DepthExceeded):
            compose(scalar(1, xi(X1, 0), depth=1), identity_symbol(X1, 1), 2)

    def test_principal_is_product(self):
        rng = seeded(4)
        a, b = random_elliptic_diag(rng), random_elliptic_diag(rng)
        c = compose(a, b, 1)
        for i in range(2):
            assert c.term(0).entries[i][i].agrees(a.term(0).entries[i][i] * b.term(0).entries[i][i])


class TestEllipticity:
    def test_diag(self):
        p = ClassicalSymbol(1, [[[xi(X2, 0), 0 * xi(X2, 0)], [0 * xi(X2, 0), xi(X2, 1)]]])
        assert is_elliptic_at(p, (0, 0), (1, 1))
        assert not is_elliptic_at(p, (0, 0), (1, 0))
        assert char_determinant(p).agrees(xi(X2, 0) * xi(X2, 1))

    def test_scalar(self):
        p = scalar(1, xi(X1, 0) * I)
        assert is_elliptic_at(p, (3,), (-2,))
        assert char_determinant(p).agrees(xi(X1, 0) * I)

    def test_pole(self):
        p = scalar(-1, xi(X2, 0).invert())
        with pytest.raises(PoleAtXi):
            is_elliptic_at(p, (0, 0), (0, 1))

    def test_flat_cr_system(self):
        V = VariableSet(1)
        P = build_cr_system_symbol(build_hypersurface_frame(1, 1, Jet.zero(V, 4)))
        block = xi(V, 0) * (I / 2) + xi(V, 1) * (I / 2) * I
        assert char_determinant(P).agrees(block * block)


class TestParametrix:
    def test_i_xi(self):
        p = scalar(1, xi(X1, 0) * I)
        q = parametrix(p, 3)
        assert q.term(0).entries[0][0].agrees((xi(X1, 0) * I).invert())
        assert q.term(1).entries[0][0].is_zero() and q.term(2).entries[0][0].is_zero()
        assert remainder_vanishes(compose(q, p, 3), 3)

    def test_identity(self):
        q = parametrix(identity_symbol(X1, 2), 2)
        assert remainder_vanishes(q, 2)

    def test_xi_plus_x(self):
        x = Jet.var(X1, "x", 6)
        p = scalar(1, xi(X1, 0), fn(x))
        q = parametrix(p, 2)
        assert q.term(0).entries[0][0].agrees(xi(X1, 0).invert())
        assert q.term(1).entries[0][0].agrees(-fn(x) / (xi(X1, 0) * xi(X1, 0)))
        assert remainder_vanishes(compose(q, p, 2), 2)

    def test_not_elliptic(self):
        with pytest.raises(NotElliptic):
            parametrix(ClassicalSymbol(1, [[[xi(X2, 0), xi(X2, 0)], [xi(X2, 0), xi(X2, 0)]]]), 1)
        x = Jet.var(X1, "x", 4)
        with pytest.raises(NotElliptic) as info:
            parametrix(scalar(1, fn(x) * xi(X1, 0)), 1)
        assert info.value.witness is not None
        x0, xi0 = info.value.witness
        assert is_elliptic_at(scalar(1, fn(x) * xi(X1, 0)), x0, xi0)

    def test_depth_exceeded(self):
        with pytest.raises(DepthExceeded):
            parametrix(scalar(1, xi(X1, 0), depth=1), 2)


def random_elliptic_diag(rng, depth=3, K=5):
    entries_top, entries_low = [], []
    for i in range(2):
        a = random_jet(rng, X2, K, terms=2, max_degree=2) + random_gaussian(rng, 1, 2)
        b = random_gaussian(rng, 1, 2)
        entries_top.append(fn(a) * xi(X2, 0) + xi(X2, 1) * (b * I))
        entries_low.append(fn(random_jet(rng, X2, K, terms=2, max_degree=2)))
    zero = RationalForm.const(X2, 0)
    top = [[entries_top[0], zero], [zero, entries_top[1]]]
    low = [[entries_low[0], zero], [zero, entries_low[1]]]
    return ClassicalSymbol(1, [top, low])


@settings(max_examples=5, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_parametrix_remainder_and_two_sided(seed):
    p = random_elliptic_diag(seeded(seed))
    q = parametrix(p, 3)
    assert remainder_vanishes(compose(q, p, 3), 3)
    r = parametrix(p, 3, side="right")
    for j in range(3):
        for row_a, row_b in zip(q.term(j).entries, r.term(j).entries):
            assert all(a.agrees(b) for a, b in zip(row_a, row_b))
        assert q.term(j).is_homogeneous()


@settings(max_examples=4, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_associativity(seed):
    rng = seeded(seed)
    mk = lambda: scalar(1, fn(random_jet(rng, X1, 6, terms=2, max_degree=2)) * xi(X1, 0),
                        fn(random_jet(rng, X1, 6, terms=2, max_degree=2)))
    a, b, c = mk(), mk(), mk()
    left = compose(compose(a, b, 3), c, 3)
    right = compose(a, compose(b, c, 3), 3)
    assert left.order == right.order == 3
    for j in range(3):
        assert left.term(j).entries[0][0].agrees(right.term(j).entries[0][0])
        assert left.term(j).is_homogeneous()
