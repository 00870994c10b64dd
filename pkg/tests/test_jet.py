import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crjet import I, Jet, VariableSet
from crjet.errors import NotAUnit, VariableMismatch

from _util import jets

V1 = VariableSet(1)
V2 = VariableSet(2)
V3 = VariableSet(3)


def var(V, name, K):
    return Jet.var(V, name, K)


class TestExamples:
    def test_add(self):
        K = 3
        z1, s = var(V1, "z1", K), var(V1, "s", K)
        assert (z1 + s) + (-s) == z1
        assert (z1 + Jet.zero(V1, K)).identical(z1)
        zb1 = var(V1, "zb1", 2)
        f = (1 + z1.with_order(2) * zb1) + var(V1, "s", 2) ** 2
        assert f.to_expression() == "1 + z1*zb1 + s^2"
        assert f.order == 2

    def test_mul(self):
        s3 = var(V1, "s", 3)
        assert (s3 * s3).identical(Jet.monomial(V1, (0, 0, 2), 1, 3))
        s2 = var(V1, "s", 2)
        assert ((1 + s2) * (1 - s2)).identical(1 - s2 * s2)
        z, zb = var(V1, "z1", 2), var(V1, "zb1", 2)
        assert ((z + zb) ** 2).to_expression() == "z1^2 + 2*z1*zb1 + zb1^2"

    def test_derive(self):
        z, zb, s = (var(V1, x, 4) for x in ("z1", "zb1", "s"))
        assert (z * zb).derive("zb1") == z
        assert (z * zb).derive("zb1").order == 3
        assert (zb * zb).derive("z1").is_zero()
        f = 1 + z * zb + I * zb
        for m in (1, 2):
            lhs = (s ** m * f).derive("s")
            rhs = m * s ** (m - 1) * f + s ** m * f.derive("s")
            assert lhs.agrees(rhs)

    def test_invert(self):
        s = var(V1, "s", 3)
        assert (1 + s).invert().to_expression() == "1 - s + s^2 - s^3"
        assert Jet.const(V1, 2, 3).invert().eval0() == Jet.const(V1, 1, 0).eval0() / 2
        z, zb, s4 = var(V1, "z1", 4), var(V1, "zb1", 4), var(V1, "s", 4)
        f = 1 + I * s4 * z * zb
        g = f.invert()
        assert g.to_expression() == "1 - i*z1*zb1*s"
        assert (f * g).agrees(Jet.const(V1, 1, 4))
        with pytest.raises(NotAUnit):
            s.invert()

    def test_eval0_and_conj(self):
        z, s = var(V1, "z1", 2), var(V1, "s", 2)
        assert (3 + z).eval0() == 3
        assert not s.eval0()
        assert (I * z).conj().to_expression() == "-i*zb1"
        assert (z * z.conj()).is_real()
        z1, z2, zb1, zb2 = (var(V2, x, 3) for x in ("z1", "z2", "zb1", "zb2"))
        assert (z1 ** 2 * zb2 + zb1 ** 2 * z2).is_real()
        assert not (I * z1 * zb1).is_real()

    def test_variable_mismatch(self):
        with pytest.raises(VariableMismatch):
            var(V1, "s", 2) + var(V2, "s", 2)

    def test_order_bookkeeping(self):
        f = var(V1, "z1", 5)
        g = var(V1, "s", 3)
        assert (f + g).order == 3 and (f * g).order == 3
        assert f.derive("z1").order == 4
        assert f.with_order(2).order == 2
        assert Jet.zero(V1, 4).derive("s").order == 3

    def test_derivative_at0(self):
        z, zb = var(V1, "z1", 4), var(V1, "zb1", 4)
        f = 3 * z ** 2 * zb
        assert f.derivative_at0((2, 1, 0)) == 6


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_ring_axioms(data):
    V = data.draw(st.sampled_from([V1, V2, V3]))
    K = data.draw(st.integers(0, 6 if V is not V3 else 4))
    f, g, h = (data.draw(jets(V, K)) for _ in range(3))
    assert ((f * g) * h).identical(f * (g * h))
    assert (f * (g + h)).identical(f * g + f * h)
    assert (f * g).identical(g * f)
    assert (f + g).identical(g + f)
    assert (f - f).is_zero()


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_leibniz(data):
    V = data.draw(st.sampled_from([V1, V2]))
    K = data.draw(st.integers(1, 6))
    f, g = data.draw(jets(V, K)), data.draw(jets(V, K))
    for v in range(V.size):
        lhs = (f * g).derive(v)
        rhs = f.derive(v) * g + f * g.derive(v)
        assert lhs.agrees(rhs)
        assert lhs.order == K - 1


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_invert_round_trip(data):
    V = data.draw(st.sampled_from([V1, V2]))
    K = data.draw(st.integers(0, 6))
    f = data.draw(jets(V, K, unit=True))
    assert (f * f.invert()).agrees(Jet.const(V, 1, K))
    assert f.invert().order == K


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_truncation_coherence(data):
    V = data.draw(st.sampled_from([V1, V2]))
    K = data.draw(st.integers(1, 6))
    f, g = data.draw(jets(V, K)), data.draw(jets(V, K))
    t = lambda x: x.truncate(K - 1)
    assert t(f + g).identical(t(f) + t(g))
    assert t(f * g).identical(t(f) * t(g))
    assert t(f.conj()).identical(t(f).conj())
    for exps, c in t(f).items():
        assert f.coeff(exps) == c and sum(exps) <= K - 1


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_conj_is_ring_involution(data):
    V = data.draw(st.sampled_from([V1, V2, V3]))
    K = data.draw(st.integers(0, 5))
    f, g = data.draw(jets(V, K)), data.draw(jets(V, K))
    assert f.conj().conj().identical(f)
    assert (f + g).conj().identical(f.conj() + g.conj())
    assert (f * g).conj().identical(f.conj() * g.conj())
    assert f.conj().eval0() == f.eval0().conjugate()
    assert (f + f.conj()).is_real()
    assert f.agrees(f.real_part() + I * f.imag_part())


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_stored_terms_are_canonical(data):
    K = data.draw(st.integers(0, 5))
    f = data.draw(jets(V2, K))
    for exps, c in (f * f).items():
        assert c and sum(exps) <= K


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_expression_round_trip(data):
    from crjet import parse_expression

    K = data.draw(st.integers(0, 5))
    f = data.draw(jets(V2, K))
    assert parse_expression(f.to_expression(), V2, K).identical(f)
