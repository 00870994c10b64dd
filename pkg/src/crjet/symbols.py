"""Formal classical matrix symbols and their calculus.

Entries of a homogeneous term are rational forms ``P(x, xi) / Q(xi)``: ``P`` is
a polynomial in the covariables with jet coefficients in ``x`` and ``Q`` is a
product of irreducible Gaussian-rational polynomials in ``xi`` (kept factored,
so sums use the lcm and common factors are cancelled).

A form whose numerator does not vanish identically at ``x = 0`` is invertible:
writing ``P = P0(xi) + P+`` with ``P+`` nilpotent in the jet ring,

    1/P = (1/P0) * sum_k (-P+/P0)^k

is a finite sum.  Denominators therefore never depend on ``x``.

Conventions: real base coordinates are ``(x_1..x_n, y_1..y_n, reals)`` for a
variable set with ``z_j = x_j + i y_j``; ``D_x = -i d/dx`` and the symbol of
``d/dx_a`` is ``i xi_a``, so ``sigma(d/dzb_j) = (i/2)(xi_{x_j} + i xi_{y_j})``.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product as iproduct
from math import factorial

import sympy

from . import linalg
from .errors import DepthExceeded, NotAUnit, NotElliptic, PoleAtXi, SizeMismatch
from .gaussian import I, ONE, ZERO, GaussianRational, as_gaussian
from .jet import MAX_ORDER, Jet

__all__ = [
    "XiPoly",
    "RationalForm",
    "HomogeneousTerm",
    "ClassicalSymbol",
    "compose",
    "is_elliptic_at",
    "char_determinant",
    "parametrix",
    "identity_symbol",
    "vector_field_symbol",
    "real_derivative",
    "real_point_to_jet_point",
]



def real_derivative(f, r):
    """Derivative of a jet along the ``r``-th real coordinate."""
    v = f.vars
    n = v.n
    if r < n:
        return f.derive(v.z(r)) + f.derive(v.zbar(r))
    if r < 2 * n:
        j = r - n
        return (f.derive(v.z(j)) - f.derive(v.zbar(j))) * I
    return f.derive(r)


def real_point_to_jet_point(vars, point):
    """Map a real point ``(x, y, reals)`` to jet variables ``(z, zb, reals)``."""
    pt = [as_gaussian(p) for p in point]
    if len(pt) != vars.size:
        raise ValueError("point has wrong dimension")
    n = vars.n
    x, y, rest = pt[:n], pt[n:2 * n], pt[2 * n:]
    z = [a + I * b for a, b in zip(x, y)]
    zb = [a - I * b for a, b in zip(x, y)]
    return z + zb + rest


def _exp_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


class XiPoly:
    """Polynomial in ``xi_1..xi_p`` with jet coefficients (``p`` = real dim)."""

    __slots__ = ("xvars", "order", "terms")
    __hash__ = None

    def __init__(self, xvars, terms, order=None):
        self.xvars = xvars
        clean = {}
        for e, c in terms.items():
            if not isinstance(c, Jet):
                c = Jet.const(xvars, c, MAX_ORDER if order is None else order)
            if not c.is_zero():
                clean[tuple(e)] = c
        orders = [c.order for c in terms.values() if isinstance(c, Jet)]
        if order is not None:
            orders.append(order)
        self.order = min(orders) if orders else MAX_ORDER
        # one trusted order per polynomial: exact division by xi-factors
        # commutes only with uniform truncation
        self.terms = {}
        for e, c in clean.items():
            c = c.with_order(self.order)
            if not c.is_zero():
                self.terms[e] = c

    @property
    def dim(self):
        return self.xvars.size

    @classmethod
    def const(cls, xvars, value, order=MAX_ORDER):
        jet = value if isinstance(value, Jet) else Jet.const(xvars, value, order)
        return cls(xvars, {(0,) * xvars.size: jet}, jet.order)

    @classmethod
    def xi(cls, xvars, k, order=MAX_ORDER):
        e = [0] * xvars.size
        e[k] = 1
        return cls(xvars, {tuple(e): Jet.const(xvars, 1, order)}, order)

    @classmethod
    def from_scalar(cls, xvars, key):
        return cls(xvars, {e: Jet.const(xvars, c, MAX_ORDER) for e, c in key})

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return XiPoly(self.xvars, terms, min(self.order, other.order))

    def __neg__(self):
        return XiPoly(self.xvars, {e: -c for e, c in self.terms.items()}, self.order)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, XiPoly):
            terms = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = _exp_add(e1, e2)
                    p = c1 * c2
                    terms[e] = terms[e] + p if e in terms else p
            return XiPoly(self.xvars, terms, min(self.order, other.order))
        if isinstance(other, Jet):
            return XiPoly(self.xvars, {e: c * other for e, c in self.terms.items()}, min(self.order, other.order))
        c = as_gaussian(other)
        return XiPoly(self.xvars, {e: x.scale(c) for e, x in self.terms.items()}, self.order)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = XiPoly.const(self.xvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def derive_xi(self, k):
        terms = {}
        for e, c in self.terms.items():
            if e[k]:
                e2 = list(e)
                e2[k] -= 1
                terms[tuple(e2)] = c.scale(e[k])
        return XiPoly(self.xvars, terms, self.order)

    def derive_x(self, r):
        return XiPoly(
            self.xvars, {e: real_derivative(c, r) for e, c in self.terms.items()}, self.order - 1
        )

    def at0(self):
        """Scalar polynomial ``P(0, xi)`` as ``{exps: GaussianRational}``."""
        return {e: c.eval0() for e, c in self.terms.items() if c.eval0()}

    def nilpotent_part(self):
        return XiPoly(self.xvars, {e: c - c.eval0() for e, c in self.terms.items()}, self.order)

    def xi_degrees(self):
        return {sum(e) for e in self.terms}

    def with_order(self, order):
        return XiPoly(self.xvars, {e: c.with_order(order) for e, c in self.terms.items()}, min(order, self.order))

    def evaluate(self, jet_point, xi0):
        total = ZERO
        for e, c in self.terms.items():
            v = c.evaluate(jet_point)
            for xv, k in zip(xi0, e):
                if k:
                    v = v * as_gaussian(xv) ** k
            total = total + v
        return total

    def divide_exact(self, key):
        """Quotient by the monic scalar factor ``key`` or ``None`` if inexact."""
        lead = key[-1][0]
        rest = key[:-1]
        r = dict(self.terms)
        q = {}
        while r:
            e = max(r)
            if any(a < b for a, b in zip(e, lead)):
                return None
            c = r.pop(e)
            t = tuple(a - b for a, b in zip(e, lead))
            q[t] = c
            for fe, fc in rest:
                g = _exp_add(fe, t)
                v = r[g] - c.scale(fc) if g in r else -c.scale(fc)
                if v.is_zero():
                    r.pop(g, None)
                else:
                    r[g] = v
        return XiPoly(self.xvars, q, self.order)

    def to_text(self, xi_names):
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(xi_names, e) if k)
            ctext = c.to_expression()
            if not mono:
                parts.append(f"({ctext})")
            elif ctext == "1":
                parts.append(mono)
            else:
                parts.append(f"({ctext})*{mono}")
        return " + ".join(parts) if parts else "0"


# -- scalar factor handling (sympy does the factoring) -----------------------

@lru_cache(maxsize=None)
def _xi_symbols(p):
    return sympy.symbols(" ".join(f"xi{k + 1}" for k in range(p)) + " _pad")[:p]


def _to_sympy(poly, p):
    syms = _xi_symbols(p)
    expr = sympy.Integer(0)
    for e, c in poly.items():
        coef = sympy.Rational(int(c.re.numerator), int(c.re.denominator)) + sympy.I * sympy.Rational(
            int(c.im.numerator), int(c.im.denominator)
        )
        mono = sympy.Integer(1)
        for s, k in zip(syms, e):
            mono *= s ** k
        expr += coef * mono
    return expr


def _from_sympy_coeff(c):
    re, im = sympy.nsimplify(c).as_real_imag()
    re, im = sympy.Rational(re), sympy.Rational(im)
    return GaussianRational(_mpq(re), _mpq(im))


def _mpq(r):
    from gmpy2 import mpq

    return mpq(int(r.p), int(r.q))


def _monic(poly):
    """Split ``poly`` into (leading coefficient, monic key)."""
    lead = max(poly)
    lc = poly[lead]
    inv = lc.inverse()
    key = tuple(sorted((e, c * inv) for e, c in poly.items()))
    return lc, key


@lru_cache(maxsize=None)
def _factor_key(key, p):
    """Irreducible factorization over Q(i): (unit, ((factor_key, mult), ...))."""
    poly = dict(key)
    expr = _to_sympy(poly, p)
    unit, factors = sympy.factor_list(expr, gaussian=True)
    syms = _xi_symbols(p)
    out = []
    total_unit = _from_sympy_coeff(unit)
    for fac, mult in factors:
        fp = sympy.Poly(fac, *syms)
        d = {}
        for monom, coeff in fp.terms():
            d[tuple(int(k) for k in monom)] = _from_sympy_coeff(coeff)
        lc, fkey = _monic(d)
        total_unit = total_unit * lc ** int(mult)
        out.append((fkey, int(mult)))
    return total_unit, tuple(out)


def _factor_scalar(poly, p):
    lc, key = _monic(poly)
    unit, factors = _factor_key(key, p)
    return lc * unit, factors


def _eval_key(key, xi0):
    total = ZERO
    for e, c in key:
        v = c
        for xv, k in zip(xi0, e):
            if k:
                v = v * as_gaussian(xv) ** k
        total = total + v
    return total


class RationalForm:
    """``num / prod(factor^e)`` with irreducible, monic scalar factors."""

    __slots__ = ("num", "den")
    __hash__ = None

    def __init__(self, num, den=None):
        self.num = num
        self.den = dict(den or {})
        self._cancel()

    @property
    def xvars(self):
        return self.num.xvars

    @property
    def order(self):
        return self.num.order

    @classmethod
    def const(cls, xvars, value, order=MAX_ORDER):
        return cls(XiPoly.const(xvars, value, order))

    @classmethod
    def from_jet(cls, jet):
        return cls(XiPoly.const(jet.vars, jet))

    @classmethod
    def xi(cls, xvars, k, order=MAX_ORDER):
        return cls(XiPoly.xi(xvars, k, order))

    def _cancel(self):
        if self.num.is_zero():
            self.den = {}
            return
        for key in list(self.den):
            e = self.den[key]
            while e:
                q = self.num.divide_exact(key)
                if q is None:
                    break
                self.num = q
                e -= 1
            if e:
                self.den[key] = e
            else:
                del self.den[key]

    def den_poly(self, exps=None):
        out = XiPoly.const(self.xvars, 1)
        for key, e in (exps if exps is not None else self.den).items():
            f = XiPoly.from_scalar(self.xvars, key)
            for _ in range(e):
                out = out * f
        return out

    def is_zero(self):
        return self.num.is_zero()

    def _coerce(self, other):
        if isinstance(other, RationalForm):
            return other
        if isinstance(other, XiPoly):
            return RationalForm(other)
        if isinstance(other, Jet):
            return RationalForm.from_jet(other)
        return RationalForm.const(self.xvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        lcm = dict(self.den)
        for k, e in other.den.items():
            lcm[k] = max(lcm.get(k, 0), e)
        a = self.num * self.den_poly({k: e - self.den.get(k, 0) for k, e in lcm.items()})
        b = other.num * other.den_poly({k: e - other.den.get(k, 0) for k, e in lcm.items()})
        return RationalForm(a + b, lcm)

    __radd__ = __add__

    def __neg__(self):
        return RationalForm(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, (RationalForm, XiPoly, Jet)):
            return RationalForm(self.num * as_gaussian(other), self.den)
        other = self._coerce(other)
        den = dict(self.den)
        for k, e in other.den.items():
            den[k] = den.get(k, 0) + e
        return RationalForm(self.num * other.num, den)

    __rmul__ = __mul__

    def invert(self):
        """Inverse in the localized jet ring; requires ``num(0, xi) != 0``."""
        p0 = self.num.at0()
        if not p0:
            raise NotAUnit("numerator vanishes identically at x = 0")
        unit, factors = _factor_scalar(p0, self.num.dim)
        inv_p0 = RationalForm(
            XiPoly.const(self.xvars, unit.inverse()), {k: e for k, e in factors}
        )
        t = inv_p0 * RationalForm(self.num.nilpotent_part())
        series = RationalForm.const(self.xvars, 1)
        power = RationalForm.const(self.xvars, 1)
        while True:
            power = power * (-t)
            if power.is_zero():
                break
            series = series + power
        return RationalForm(self.den_poly()) * inv_p0 * series

    def __truediv__(self, other):
        return self * self._coerce(other).invert()

    def __pow__(self, k):
        base = self if k >= 0 else self.invert()
        out = RationalForm.const(self.xvars, 1)
        for _ in range(abs(k)):
            out = out * base
        return out

    def __rtruediv__(self, other):
        return self._coerce(other) * self.invert()

    def derive_xi(self, k):
        if not self.den:
            return RationalForm(self.num.derive_xi(k))
        keys = list(self.den)
        polys = {key: XiPoly.from_scalar(self.xvars, key) for key in keys}
        prod_all = XiPoly.const(self.xvars, 1)
        for key in keys:
            prod_all = prod_all * polys[key]
        num = self.num.derive_xi(k) * prod_all
        for key in keys:
            others = XiPoly.const(self.xvars, 1)
            for other in keys:
                if other != key:
                    others = others * polys[other]
            num = num - self.num * polys[key].derive_xi(k) * others * self.den[key]
        den = {key: e + 1 for key, e in self.den.items()}
        return RationalForm(num, den)

    def derive_x(self, r):
        return RationalForm(self.num.derive_x(r), self.den)

    def with_order(self, order):
        return RationalForm(self.num.with_order(order), self.den)

    def evaluate(self, x0, xi0):
        """Exact value at a real base point ``x0`` and covector ``xi0``."""
        q = ONE
        for key, e in self.den.items():
            v = _eval_key(key, xi0)
            if not v:
                raise PoleAtXi(f"denominator vanishes at xi = {tuple(map(str, xi0))}")
            q = q * v ** e
        jp = real_point_to_jet_point(self.xvars, x0)
        return self.num.evaluate(jp, xi0) / q

    def agrees(self, other):
        return (self - self._coerce(other)).is_zero()

    def __eq__(self, other):
        if isinstance(other, (RationalForm, XiPoly, Jet, int, GaussianRational)):
            return self.agrees(other)
        return NotImplemented

    def is_homogeneous(self, degree):
        """Euler relation ``sum xi_k d/dxi_k f = degree * f``, checked exactly."""
        total = self * (-degree)
        for k in range(self.num.dim):
            total = total + RationalForm.xi(self.xvars, k) * self.derive_xi(k)
        return total.is_zero()

    def to_text(self, xi_names=None):
        p = self.num.dim
        xi_names = xi_names or [f"xi{k + 1}" for k in range(p)]
        text = self.num.to_text(xi_names)
        if not self.den:
            return text
        parts = []
        for key, e in sorted(self.den.items()):
            f = XiPoly.from_scalar(self.xvars, key).to_text(xi_names)
            f = f.replace("(1)*", "")
            parts.append(f"({f})" + (f"^{e}" if e > 1 else ""))
        return f"({text})/({'*'.join(parts)})"

    def __repr__(self):
        return f"RationalForm({self.to_text()})"


def _matmul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    if len(A[0]) != k:
        raise SizeMismatch("matrix sizes do not match")
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            total = None
            for l in range(k):
                if A[i][l].is_zero() or B[l][j].is_zero():
                    continue
                t = A[i][l] * B[l][j]
                total = t if total is None else total + t
            if total is None:
                total = RationalForm.const(A[0][0].xvars, 0)
            row.append(total)
        out.append(row)
    return out


def _matadd(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def _matmap(A, fn):
    return [[fn(a) for a in row] for row in A]


def _zero_matrix(xvars, n):
    return [[RationalForm.const(xvars, 0) for _ in range(n)] for _ in range(n)]


class HomogeneousTerm:
    """A square matrix of rational forms homogeneous of one degree in ``xi``."""

    __slots__ = ("degree", "entries")

    def __init__(self, degree, entries, check=True):
        self.degree = degree
        self.entries = [list(row) for row in entries]
        if any(len(row) != len(self.entries) for row in self.entries):
            raise SizeMismatch("homogeneous term must be a square matrix")
        if check:
            for row in self.entries:
                for e in row:
                    if not e.is_zero() and not e.is_homogeneous(degree):
                        raise ValueError(f"entry {e.to_text()} is not homogeneous of degree {degree}")

    @property
    def size(self):
        return len(self.entries)

    @property
    def xvars(self):
        return self.entries[0][0].xvars

    def is_zero(self):
        return all(e.is_zero() for row in self.entries for e in row)

    def is_homogeneous(self):
        return all(e.is_zero() or e.is_homogeneous(self.degree) for row in self.entries for e in row)

    def __repr__(self):
        rows = "; ".join(", ".join(e.to_text() for e in row) for row in self.entries)
        return f"HomogeneousTerm(degree={self.degree}, [{rows}])"


class ClassicalSymbol:
    """``p ~ p_m + p_{m-1} + ...``; ``depth`` homogeneous terms are known.

    ``depth=None`` marks an exact symbol (a differential operator, say) whose
    terms beyond the stored ones are zero.
    """

    __slots__ = ("order", "terms", "depth")

    def __init__(self, order, terms, depth=None):
        terms = [
            t if isinstance(t, HomogeneousTerm) else HomogeneousTerm(order - j, t)
            for j, t in enumerate(terms)
        ]
        for j, t in enumerate(terms):
            if t.degree != order - j:
                raise ValueError(f"term {j} has degree {t.degree}, expected {order - j}")
        if len({t.size for t in terms}) > 1:
            raise SizeMismatch("terms of different matrix sizes")
        if depth is not None and depth < len(terms):
            raise ValueError("depth smaller than the number of stored terms")
        self.order = order
        self.terms = terms
        self.depth = depth

    @property
    def size(self):
        return self.terms[0].size

    @property
    def xvars(self):
        return self.terms[0].xvars

    @property
    def principal(self):
        return self.terms[0]

    def term(self, j):
        """The term of degree ``order - j`` (zero past the stored ones)."""
        if self.depth is not None and j >= self.depth:
            raise DepthExceeded(f"term {j} requested, symbol known to depth {self.depth}")
        if j < len(self.terms):
            return self.terms[j]
        return HomogeneousTerm(self.order - j, _zero_matrix(self.xvars, self.size), check=False)

    def available_depth(self):
        return float("inf") if self.depth is None else self.depth

    def __repr__(self):
        return f"ClassicalSymbol(order={self.order}, depth={self.depth}, terms={self.terms})"


def identity_symbol(xvars, size):
    ident = [[RationalForm.const(xvars, 1 if i == j else 0) for j in range(size)] for i in range(size)]
    return ClassicalSymbol(0, [ident])


@lru_cache(maxsize=None)
def _multi_indices(dim, total):
    if dim == 0:
        return ((),) if total == 0 else ()
    out = []
    for first in range(total, -1, -1):
        for rest in _multi_indices(dim - 1, total - first):
            out.append((first,) + rest)
    return tuple(out)


def _d_xi(A, alpha):
    for k, a in enumerate(alpha):
        for _ in range(a):
            A = _matmap(A, lambda e, k=k: e.derive_xi(k))
    return A


def _D_x(B, alpha):
    """``D_x^alpha = (-i)^|alpha| d_x^alpha`` entrywise."""
    for r, a in enumerate(alpha):
        for _ in range(a):
            B = _matmap(B, lambda e, r=r: e.derive_x(r) * GaussianRational(0, -1))
    return B


def _alpha_factorial(alpha):
    out = 1
    for a in alpha:
        out *= factorial(a)
    return out


def _sharp_term(A, B, alpha):
    """``(1/alpha!) d_xi^alpha A . D_x^alpha B``."""
    prod = _matmul(_d_xi(A, alpha), _D_x(B, alpha))
    f = _alpha_factorial(alpha)
    if f != 1:
        inv = GaussianRational(1) / f
        prod = _matmap(prod, lambda e: e * inv)
    return prod


def compose(a, b, depth):
    """Symbol of the composition, ``depth`` homogeneous terms."""
    if a.size != b.size:
        raise SizeMismatch(f"sizes {a.size} and {b.size}")
    if depth < 1:
        raise ValueError("depth must be positive")
    if depth > min(a.available_depth(), b.available_depth()):
        raise DepthExceeded(f"depth {depth} exceeds input depths")
    dim = a.xvars.size
    terms = []
    for ell in range(depth):
        acc = _zero_matrix(a.xvars, a.size)
        for j in range(ell + 1):
            for k in range(ell + 1 - j):
                for alpha in _multi_indices(dim, ell - j - k):
                    acc = _matadd(acc, _sharp_term(a.term(j).entries, b.term(k).entries, alpha))
        terms.append(HomogeneousTerm(a.order + b.order - ell, acc, check=False))
    return ClassicalSymbol(a.order + b.order, terms, depth)


def _eval_matrix(M, x0, xi0):
    return [[e.evaluate(x0, xi0) for e in row] for row in M]


def is_elliptic_at(p, x0, xi0):
    """``det p_m(x0, xi0) != 0``, exactly."""
    if not any(as_gaussian(v) for v in xi0):
        raise ValueError("xi0 must be nonzero")
    values = _eval_matrix(p.principal.entries, x0, xi0)
    return bool(linalg.det(values))


def char_determinant(p):
    """Determinant of the principal term as a rational form; its zeros are Char."""
    return linalg.det(p.principal.entries)


def _principal_inverse(p):
    pm = p.principal.entries
    d = linalg.det(pm)
    if d.is_zero():
        raise NotElliptic("principal symbol is singular as a rational matrix")
    try:
        dinv = d.invert()
    except NotAUnit:
        raise NotElliptic(
            "principal determinant vanishes identically at x = 0; invertible only pointwise",
            witness=_ellipticity_witness(p),
        ) from None
    adj = linalg.adjugate(pm)
    return _matmap(adj, lambda e: e * dinv)


def _ellipticity_witness(p):
    dim = p.xvars.size
    for x0 in iproduct((0, 1, -1, 2), repeat=dim):
        for xi0 in iproduct((1, 0, -1, 2), repeat=dim):
            if not any(xi0):
                continue
            try:
                if is_elliptic_at(p, x0, xi0):
                    return (x0, xi0)
            except PoleAtXi:
                continue
    return None


def parametrix(p, depth, side="left", verify=True):
    """Parametrix ``q`` of order ``-m`` with ``q # p = Id + r`` (``side='left'``)
    or ``p # q = Id + r`` (``side='right'``), ``r`` vanishing in degrees
    ``0 .. -(depth-1)``."""
    if depth < 1:
        raise ValueError("depth must be positive")
    if depth > p.available_depth():
        raise DepthExceeded(f"depth {depth} exceeds symbol depth {p.depth}")
    m = p.order
    dim = p.xvars.size
    pinv = _principal_inverse(p)
    q = [pinv]
    for N in range(1, depth):
        acc = _zero_matrix(p.xvars, p.size)
        for j in range(N):
            for k in range(N + 1 - j):
                for alpha in _multi_indices(dim, N - j - k):
                    if side == "left":
                        # q_{-m-j} # p_{m-k}
                        acc = _matadd(acc, _sharp_term(q[j], p.term(k).entries, alpha))
                    else:
                        # p_{m-k} # q_{-m-j}
                        acc = _matadd(acc, _sharp_term(p.term(k).entries, q[j], alpha))
        minus = _matmap(acc, lambda e: -e)
        q.append(_matmul(pinv, minus) if side == "left" else _matmul(minus, pinv))
    result = ClassicalSymbol(
        -m, [HomogeneousTerm(-m - j, t, check=False) for j, t in enumerate(q)], depth
    )
    if verify:
        prod = compose(result, p, depth) if side == "left" else compose(p, result, depth)
        if not remainder_vanishes(prod, depth):
            raise AssertionError("parametrix remainder does not vanish")
    return result


def remainder_vanishes(prod, depth):
    """``prod - Id`` has zero terms in degrees ``0 .. -(depth-1)``."""
    if prod.order != 0:
        return False
    for j in range(depth):
        for r, row in enumerate(prod.term(j).entries):
            for c, e in enumerate(row):
                target = 1 if (j == 0 and r == c) else 0
                if not e.agrees(target):
                    return False
    return True


def vector_field_symbol(U):
    """Principal symbol of a vector field on the complex coordinate frame."""
    v = U.vars
    n = v.n
    half = GaussianRational(ONE.re / 2)
    total = RationalForm.const(v, 0)
    for a, c in enumerate(U.coeffs):
        if c.is_zero():
            continue
        if a < n:  # d/dz = (d/dx - i d/dy)/2
            sym = (XiPoly.xi(v, a) * (I * half)) + (XiPoly.xi(v, n + a) * half)
        elif a < 2 * n:  # d/dzb = (d/dx + i d/dy)/2
            j = a - n
            sym = (XiPoly.xi(v, j) * (I * half)) - (XiPoly.xi(v, n + j) * half)
        else:
            sym = XiPoly.xi(v, a) * I
        total = total + RationalForm(sym * c)
    return total
