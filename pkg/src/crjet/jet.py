"""Truncated multivariate power series (jets) over the Gaussian rationals.

A :class:`Jet` is a polynomial in the formal variables of a
:class:`VariableSet` together with a *trusted order* ``K``: every coefficient
of total degree ``<= K`` is exact, nothing is known beyond.  Binary operations
take the minimum order of their operands, derivatives lower it by one.

Monomials are stored as packed integers (``_BITS`` bits per exponent) so that
multiplying monomials is integer addition.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from gmpy2 import mpq

from .errors import NotAUnit, VariableMismatch
from .gaussian import ONE, ZERO, GaussianRational, as_gaussian

__all__ = ["VariableSet", "Jet"]

_BITS = 8
_MASK = (1 << _BITS) - 1
MAX_ORDER = _MASK


@dataclass(frozen=True)
class VariableSet:
    """Formal variables ``z_1..z_n, zb_1..zb_n`` followed by ``d`` real ones.

    ``zb_j`` stands for the conjugate of ``z_j``; conjugation swaps the two
    blocks and fixes the real variables.  With ``n = 0`` the set is purely
    real, which is what the symbol calculus uses for base variables.
    """

    n: int
    d: int = 1
    real_names: tuple = None

    def __post_init__(self):
        if self.n < 0 or self.d < 0 or self.n + self.d == 0:
            raise ValueError("need at least one variable")
        if self.real_names is None:
            names = ("s",) if self.d == 1 else tuple(f"s{k + 1}" for k in range(self.d))
            object.__setattr__(self, "real_names", names)
        elif len(self.real_names) != self.d:
            raise ValueError("real_names must have length d")
        else:
            object.__setattr__(self, "real_names", tuple(self.real_names))

    @property
    def size(self):
        return 2 * self.n + self.d

    @property
    def names(self):
        return (
            tuple(f"z{j + 1}" for j in range(self.n))
            + tuple(f"zb{j + 1}" for j in range(self.n))
            + self.real_names
        )

    def index(self, name):
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(name) from None

    def z(self, j):
        """Index of ``z_j`` (0-based ``j``)."""
        return j

    def zbar(self, j):
        return self.n + j

    def real(self, k=0):
        return 2 * self.n + k

    @property
    def s(self):
        return 2 * self.n

    def conj_index(self, a):
        if a < self.n:
            return a + self.n
        if a < 2 * self.n:
            return a - self.n
        return a

    def is_real_index(self, a):
        return a >= 2 * self.n


def _pack(exps):
    key = 0
    for k, e in enumerate(exps):
        if e < 0 or e > _MASK:
            raise ValueError(f"exponent {e} out of range")
        key |= e << (_BITS * k)
    return key


def _unpack(key, size):
    return tuple((key >> (_BITS * k)) & _MASK for k in range(size))


def _degree(key):
    d = 0
    while key:
        d += key & _MASK
        key >>= _BITS
    return d


def _exponent(key, v):
    return (key >> (_BITS * v)) & _MASK


def _coerce_scalar(value):
    if isinstance(value, Jet):
        return None
    return as_gaussian(value, strict=False)


class Jet:
    """Immutable truncated power series.

    Equality between jets compares coefficients up to the smaller of the two
    trusted orders (the usual convention for power series with precision);
    :meth:`identical` also demands equal orders.  Comparing with a scalar
    compares against the constant jet.
    """

    __slots__ = ("vars", "order", "_terms")
    __hash__ = None

    def __init__(self, vars, order, terms=None):
        if order > MAX_ORDER:
            raise ValueError(f"order above {MAX_ORDER} not supported")
        self.vars = vars
        self.order = order
        clean = {}
        if terms:
            for exps, c in terms.items():
                key = exps if isinstance(exps, int) else _pack(exps)
                c = as_gaussian(c)
                if c and _degree(key) <= order:
                    clean[key] = clean.get(key, ZERO) + c
            clean = {k: c for k, c in clean.items() if c}
        self._terms = clean

    @classmethod
    def _make(cls, vars, order, terms):
        # trusted constructor: keys packed, coefficients nonzero, degrees <= order
        obj = object.__new__(cls)
        obj.vars = vars
        obj.order = order
        obj._terms = terms
        return obj

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, vars, order):
        return cls._make(vars, order, {})

    @classmethod
    def const(cls, vars, value, order):
        c = as_gaussian(value)
        return cls._make(vars, order, {0: c} if c and order >= 0 else {})

    @classmethod
    def var(cls, vars, which, order):
        v = vars.index(which) if isinstance(which, str) else which
        if order < 1:
            return cls.zero(vars, order)
        return cls._make(vars, order, {1 << (_BITS * v): ONE})

    @classmethod
    def monomial(cls, vars, exps, coeff, order):
        return cls(vars, order, {tuple(exps): coeff})

    # -- inspection -------------------------------------------------------
    def items(self):
        """Yield ``(exponent_tuple, coefficient)`` in graded-lex order."""
        size = self.vars.size
        for key in sorted(self._terms, key=lambda k: (_degree(k), _unpack(k, size)[::-1])):
            yield _unpack(key, size), self._terms[key]

    def coeff(self, exps):
        return self._terms.get(_pack(exps), ZERO)

    def __len__(self):
        return len(self._terms)

    def is_zero(self):
        return not self._terms

    def valuation(self):
        """Lowest total degree present, or ``None`` for the zero jet."""
        if not self._terms:
            return None
        return min(_degree(k) for k in self._terms)

    def max_degree(self):
        return max((_degree(k) for k in self._terms), default=-1)

    def eval0(self):
        return self._terms.get(0, ZERO)

    def is_unit(self):
        return bool(self._terms.get(0))

    def derivative_at0(self, exps):
        """``d^exps f (0)``, i.e. ``exps! * coefficient``."""
        c = self.coeff(exps)
        scale = 1
        for e in exps:
            scale *= factorial(e)
        return c * scale

    def _check(self, other):
        if other.vars != self.vars:
            raise VariableMismatch(f"{self.vars.names} vs {other.vars.names}")

    # -- ring operations --------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Jet):
            c = _coerce_scalar(other)
            if c is None:
                return NotImplemented
            if not c or self.order < 0:
                return self
            terms = dict(self._terms)
            v = terms.get(0, ZERO) + c
            if v:
                terms[0] = v
            else:
                terms.pop(0, None)
            return Jet._make(self.vars, self.order, terms)
        self._check(other)
        K = min(self.order, other.order)
        terms = {k: c for k, c in self._terms.items() if _degree(k) <= K} if K < self.order else dict(self._terms)
        for k, c in other._terms.items():
            if K < other.order and _degree(k) > K:
                continue
            v = terms.get(k)
            if v is None:
                terms[k] = c
            else:
                v = v + c
                if v:
                    terms[k] = v
                else:
                    del terms[k]
        return Jet._make(self.vars, K, terms)

    __radd__ = __add__

    def __neg__(self):
        return Jet._make(self.vars, self.order, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Jet):
            c = _coerce_scalar(other)
            if c is None:
                return NotImplemented
            return self + (-c)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = as_gaussian(c)
        if not c:
            return Jet.zero(self.vars, self.order)
        return Jet._make(self.vars, self.order, {k: v * c for k, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Jet):
            c = _coerce_scalar(other)
            if c is None:
                return NotImplemented
            return self.scale(c)
        self._check(other)
        K = min(self.order, other.order)
        return Jet._make(self.vars, K, _mul_terms(self._terms, other._terms, K))

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.invert() ** (-k)
        result = Jet.const(self.vars, 1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def invert(self):
        """Multiplicative inverse of a unit, exact through ``self.order``."""
        c0 = self._terms.get(0)
        if not c0:
            raise NotAUnit("constant term is zero")
        K = self.order
        inv0 = c0.inverse()
        f_layers = _layers(self._terms, K)
        g_layers = [{0: inv0}]
        for deg in range(1, K + 1):
            acc = {}
            for j in range(1, deg + 1):
                fj = f_layers.get(j)
                if not fj or not g_layers[deg - j]:
                    continue
                _accumulate_product(acc, fj, g_layers[deg - j])
            g_layers.append({k: -(v * inv0) for k, v in acc.items() if v})
        terms = {}
        for layer in g_layers:
            terms.update(layer)
        return Jet._make(self.vars, K, terms)

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * other.invert()
        c = _coerce_scalar(other)
        if c is None:
            return NotImplemented
        return self.scale(c.inverse())

    def __rtruediv__(self, other):
        c = _coerce_scalar(other)
        if c is None:
            return NotImplemented
        return self.invert().scale(c)

    # -- calculus and involution -----------------------------------------
    def derive(self, v):
        """Formal partial derivative in variable ``v`` (index or name)."""
        if isinstance(v, str):
            v = self.vars.index(v)
        shift = _BITS * v
        unit = 1 << shift
        terms = {}
        for key, c in self._terms.items():
            e = (key >> shift) & _MASK
            if e:
                terms[key - unit] = c * e
        K = self.order - 1
        if K < 0:
            terms = {}
        else:
            terms = {k: c for k, c in terms.items() if _degree(k) <= K}
        return Jet._make(self.vars, K, terms)

    def conj(self):
        n = self.vars.n
        size = self.vars.size
        terms = {}
        for key, c in self._terms.items():
            if n:
                e = list(_unpack(key, size))
                e[:n], e[n:2 * n] = e[n:2 * n], e[:n]
                key = _pack(e)
            terms[key] = c.conjugate()
        return Jet._make(self.vars, self.order, terms)

    def is_real(self):
        return self.identical(self.conj())

    def real_part(self):
        return (self + self.conj()).scale(GaussianRational(mpq(1, 2)))

    def imag_part(self):
        """``(f - conj f) / 2i``; real-valued when the variables are."""
        return (self - self.conj()).scale(GaussianRational(0, mpq(-1, 2)))

    def truncate(self, order):
        if order > self.order:
            raise ValueError(f"cannot raise trusted order {self.order} to {order}")
        return Jet._make(self.vars, order, {k: c for k, c in self._terms.items() if _degree(k) <= order})

    def with_order(self, order):
        """Truncate down to ``order``; no-op when ``order >= self.order``."""
        return self if order >= self.order else self.truncate(order)

    def evaluate(self, point):
        """Evaluate the stored polynomial at ``point`` (one value per variable)."""
        pt = [as_gaussian(p) for p in point]
        if len(pt) != self.vars.size:
            raise ValueError("point has wrong dimension")
        total = ZERO
        for exps, c in self.items():
            term = c
            for p, e in zip(pt, exps):
                if e:
                    term = term * p ** e
            total = total + term
        return total

    # -- comparison -------------------------------------------------------
    def agrees(self, other, order=None):
        """Coefficientwise agreement through ``order`` (default: min order)."""
        if not isinstance(other, Jet):
            other = Jet.const(self.vars, other, self.order)
        self._check(other)
        K = min(self.order, other.order) if order is None else order
        a = {k: c for k, c in self._terms.items() if _degree(k) <= K}
        b = {k: c for k, c in other._terms.items() if _degree(k) <= K}
        return a == b

    def identical(self, other):
        return (
            isinstance(other, Jet)
            and other.vars == self.vars
            and other.order == self.order
            and other._terms == self._terms
        )

    def __eq__(self, other):
        if isinstance(other, Jet):
            if other.vars != self.vars:
                return False
            return self.agrees(other)
        c = _coerce_scalar(other)
        if c is None:
            return NotImplemented
        return self.agrees(Jet.const(self.vars, c, self.order))

    # -- text -------------------------------------------------------------
    def to_expression(self):
        """Canonical text accepted back by :func:`crjet.parser.parse_expression`."""
        names = self.vars.names
        parts = []
        for exps, c in self.items():
            mono = "*".join(
                name if e == 1 else f"{name}^{e}" for name, e in zip(names, exps) if e
            )
            coef = _coef_text(c)
            if not mono:
                parts.append(coef)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{coef}*{mono}")
        if not parts:
            return "0"
        text = parts[0]
        for p in parts[1:]:
            text += " - " + p[1:] if p.startswith("-") and not p.startswith("-(") else " + " + p
        return text

    def __str__(self):
        return f"{self.to_expression()} + O({self.order + 1})"

    def __repr__(self):
        return f"Jet({self.to_expression()!r}, order={self.order})"


def _coef_text(c):
    if not c.im:
        return str(c.re)
    if not c.re:
        if c.im == 1:
            return "i"
        if c.im == -1:
            return "-i"
        return f"{c.im}*i"
    return f"({c})"


def _layers(terms, K):
    layers = {}
    for key, c in terms.items():
        d = _degree(key)
        if d <= K:
            layers.setdefault(d, {})[key] = c
    return layers


def _accumulate_product(acc, f, g):
    for k1, c1 in f.items():
        a, b = c1.re, c1.im
        for k2, c2 in g.items():
            c, d = c2.re, c2.im
            k = k1 + k2
            if b:
                if d:
                    p = GaussianRational._raw(a * c - b * d, a * d + b * c)
                else:
                    p = GaussianRational._raw(a * c, b * c)
            elif d:
                p = GaussianRational._raw(a * c, a * d)
            else:
                p = GaussianRational._raw(a * c, b)
            v = acc.get(k)
            acc[k] = p if v is None else v + p


def _mul_terms(f, g, K):
    if not f or not g:
        return {}
    fl = _layers(f, K)
    gl = _layers(g, K)
    acc = {}
    for d1, f1 in fl.items():
        for d2, g2 in gl.items():
            if d1 + d2 <= K:
                _accumulate_product(acc, f1, g2)
    return {k: c for k, c in acc.items() if c}
