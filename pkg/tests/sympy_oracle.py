"""Independent sympy computation of iterated Lie derivatives for n = 1.

For ``Im w = s^m phi`` it builds ``b``, ``L = d/dzb + b d/ds`` and
``theta = -ds + b dzb + conj(b) dz`` by series truncation, iterates the
coordinate Lie-derivative formula and reads coefficients against
``(theta, dz)``.  Nothing here uses the engine beyond jet conversion.
"""
import sympy as sp

z, zb, s, t = sp.symbols("z zb s t")


def jet_to_sympy(f):
    expr = sp.Integer(0)
    for (a, b, c), coef in f.items():
        val = sp.Rational(int(coef.re.numerator), int(coef.re.denominator)) + sp.I * sp.Rational(
            int(coef.im.numerator), int(coef.im.denominator)
        )
        expr += val * z ** a * zb ** b * s ** c
    return expr


def truncate(expr, K):
    """Drop monomials of total degree > K."""
    expr = sp.expand(expr)
    if expr == 0:
        return expr
    poly = sp.Poly(expr, z, zb, s)
    return sp.expand(sum(c * z ** a * zb ** b * s ** e for (a, b, e), c in poly.terms() if a + b + e <= K))


def truncate_series(expr, K):
    """Total-degree truncation of a rational expression via a scaling parameter."""
    scaled = sp.expand(expr.subs({z: t * z, zb: t * zb, s: t * s}, simultaneous=True))
    ser = sp.series(scaled, t, 0, K + 1).removeO()
    return sp.expand(ser.subs(t, 1))


def conj(expr):
    e = sp.expand(expr).subs({z: zb, zb: z}, simultaneous=True)
    return sp.expand(sp.conjugate(e).subs({sp.conjugate(z): z, sp.conjugate(zb): zb, sp.conjugate(s): s}))


def table_rows(phi, m, K, kmax):
    """Coefficients ``(c, rho)`` with ``L^k theta = c theta + rho dz`` for ``k <= kmax``."""
    num = -sp.I * s ** m * sp.diff(phi, zb)
    den = 1 + sp.I * sp.diff(s ** m * phi, s)
    b = truncate_series(num / den, K)
    bb = conj(b)
    Lco = {zb: 1, s: b}

    def L(f):
        return sp.expand(sp.diff(f, zb) + b * sp.diff(f, s))

    eta = {z: bb, zb: b, s: sp.Integer(-1)}
    rows = [(sp.Integer(1), sp.Integer(0))]
    for _ in range(kmax):
        new = {}
        for a in (z, zb, s):
            comp = L(eta[a])
            for c, Lc in Lco.items():
                comp += eta[c] * sp.diff(Lc, a)
            new[a] = truncate(comp, K)
        eta = new
        c = -eta[s]
        rho = truncate(eta[z] - c * bb, K)
        assert truncate(eta[zb] - c * b, K - 2) == 0
        rows.append((sp.expand(c), rho))
    return rows
