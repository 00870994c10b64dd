"""Vector fields, 1-forms and 2-forms with jet coefficients.

Everything is expressed on the coordinate frame of a :class:`VariableSet`:
``d/dz_j, d/dzb_j`` and the real directions.  Two-forms use the convention
``dx^a ^ dx^b (U, V) = U^a V^b - U^b V^a`` (no 1/2), so that

    d eta(U, V) = U eta(V) - V eta(U) - eta([U, V]).
"""
from __future__ import annotations

from .errors import VariableMismatch
from .jet import Jet

__all__ = [
    "VectorField",
    "OneForm",
    "TwoForm",
    "lie_bracket",
    "exterior_derivative",
    "contract",
    "pair",
    "differential",
    "lie_derivative_general",
]


def _as_jet(vars, value, order):
    if isinstance(value, Jet):
        return value
    return Jet.const(vars, value, order)


class _Covariant:
    """Shared plumbing for objects with one jet per coordinate direction."""

    __slots__ = ("vars", "coeffs")
    __hash__ = None

    def __init__(self, vars, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != vars.size:
            raise ValueError(f"expected {vars.size} coefficients, got {len(coeffs)}")
        for c in coeffs:
            if c.vars != vars:
                raise VariableMismatch("coefficient over a different variable set")
        self.vars = vars
        self.coeffs = coeffs

    @classmethod
    def from_dict(cls, vars, order, entries):
        """Build from ``{coordinate name or index: jet or scalar}``."""
        coeffs = [Jet.zero(vars, order) for _ in range(vars.size)]
        for key, value in entries.items():
            a = vars.index(key) if isinstance(key, str) else key
            coeffs[a] = _as_jet(vars, value, order)
        return cls(vars, coeffs)

    @classmethod
    def basis(cls, vars, which, order):
        a = vars.index(which) if isinstance(which, str) else which
        return cls.from_dict(vars, order, {a: 1})

    @classmethod
    def zero(cls, vars, order):
        return cls.from_dict(vars, order, {})

    @property
    def order(self):
        return min(c.order for c in self.coeffs)

    def __getitem__(self, key):
        if isinstance(key, str):
            key = self.vars.index(key)
        return self.coeffs[key]

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return type(self)(self.vars, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return type(self)(self.vars, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return type(self)(self.vars, [-a for a in self.coeffs])

    def __mul__(self, f):
        """Multiplication by a jet or scalar function."""
        if isinstance(f, _Covariant):
            return NotImplemented
        return type(self)(self.vars, [a * f for a in self.coeffs])

    __rmul__ = __mul__

    def with_order(self, order):
        return type(self)(self.vars, [c.with_order(order) for c in self.coeffs])

    def conj(self):
        """Complex conjugate: conjugate coefficients and swap z / zb slots."""
        v = self.vars
        return type(self)(v, [self.coeffs[v.conj_index(a)].conj() for a in range(v.size)])

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def agrees(self, other):
        return all(a.agrees(b) for a, b in zip(self.coeffs, other.coeffs))

    def __eq__(self, other):
        if type(other) is not type(self) or other.vars != self.vars:
            return NotImplemented
        return self.agrees(other)

    def _describe(self, prefix):
        names = self.vars.names
        parts = [
            f"({c.to_expression()}){prefix}{name}"
            for c, name in zip(self.coeffs, names)
            if not c.is_zero()
        ]
        return " + ".join(parts) if parts else "0"


class VectorField(_Covariant):
    """``sum_a U^a d/dx^a`` over the complex coordinate frame."""

    __slots__ = ()

    def __call__(self, f):
        """Apply the field as a derivation to a jet."""
        total = None
        for a, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            term = c * f.derive(a)
            total = term if total is None else total + term
        if total is None:
            return Jet.zero(f.vars, min(f.order - 1, self.order))
        return total.with_order(min(f.order - 1, self.order))

    def is_real(self):
        """Coefficient test for reality: ``U = conj(U)`` as a field."""
        return self.conj().agrees(self)

    def __repr__(self):
        return f"VectorField({self._describe('*d/d')})"


class OneForm(_Covariant):
    """``sum_a eta_a dx^a``."""

    __slots__ = ()

    def __call__(self, U):
        return pair(self, U)

    def __repr__(self):
        return f"OneForm({self._describe('*d')})"


class TwoForm:
    """Antisymmetric 2-form stored on ordered pairs ``a < b``."""

    __slots__ = ("vars", "coeffs", "_order")
    __hash__ = None

    def __init__(self, vars, coeffs, order):
        self.vars = vars
        self.coeffs = {k: v for k, v in coeffs.items() if not v.is_zero()}
        self._order = min([order] + [v.order for v in coeffs.values()])

    @property
    def order(self):
        return self._order

    def __getitem__(self, pair_):
        a, b = pair_
        if a == b:
            return Jet.zero(self.vars, self._order)
        if a < b:
            return self.coeffs.get((a, b), Jet.zero(self.vars, self._order))
        return -self.coeffs.get((b, a), Jet.zero(self.vars, self._order))

    def __call__(self, U, V):
        total = Jet.zero(self.vars, min(self._order, U.order, V.order))
        for (a, b), c in self.coeffs.items():
            total = total + c * (U.coeffs[a] * V.coeffs[b] - U.coeffs[b] * V.coeffs[a])
        return total

    def is_zero(self):
        return not self.coeffs

    def __repr__(self):
        names = self.vars.names
        parts = [f"({c.to_expression()})d{names[a]}^d{names[b]}" for (a, b), c in sorted(self.coeffs.items())]
        return f"TwoForm({' + '.join(parts) if parts else '0'})"


def pair(eta, U):
    """``eta(U) = sum_a eta_a U^a``."""
    total = None
    for e, u in zip(eta.coeffs, U.coeffs):
        if e.is_zero() or u.is_zero():
            continue
        term = e * u
        total = term if total is None else total + term
    order = min(eta.order, U.order)
    if total is None:
        return Jet.zero(eta.vars, order)
    return total.with_order(order)


def lie_bracket(U, V):
    """``[U, V]^a = sum_b U^b d_b V^a - V^b d_b U^a``; order drops by one."""
    if U.vars != V.vars:
        raise VariableMismatch("fields over different variable sets")
    return VectorField(U.vars, [U(V.coeffs[a]) - V(U.coeffs[a]) for a in range(U.vars.size)])


def differential(f):
    """``df`` as a one-form."""
    return OneForm(f.vars, [f.derive(a) for a in range(f.vars.size)])


def exterior_derivative(eta):
    vars = eta.vars
    coeffs = {}
    for a, fa in enumerate(eta.coeffs):
        if fa.is_zero():
            continue
        for b in range(vars.size):
            if a == b:
                continue
            dfa = fa.derive(b)
            if dfa.is_zero():
                continue
            # d_b f_a dx^b ^ dx^a
            key, term = ((b, a), dfa) if b < a else ((a, b), -dfa)
            coeffs[key] = coeffs[key] + term if key in coeffs else term
    return TwoForm(vars, coeffs, eta.order - 1)


def contract(w, U):
    """Interior product ``w(U, .)``."""
    vars = w.vars
    order = min(w.order, U.order)
    out = [Jet.zero(vars, order) for _ in range(vars.size)]
    for (a, b), c in w.coeffs.items():
        if not U.coeffs[a].is_zero():
            out[b] = out[b] + c * U.coeffs[a]
        if not U.coeffs[b].is_zero():
            out[a] = out[a] - c * U.coeffs[b]
    return OneForm(vars, out)


def lie_derivative_general(U, eta):
    """The one-form ``K -> U(eta(K)) - eta([U, K])`` with no side condition.

    On coordinate fields ``[U, d_a] = -sum_b (d_a U^b) d_b``, so the component
    along ``dx^a`` is ``U(eta_a) + sum_b eta_b d_a U^b``.
    """
    vars = eta.vars
    out = []
    for a in range(vars.size):
        comp = U(eta.coeffs[a])
        for b in range(vars.size):
            if eta.coeffs[b].is_zero() or U.coeffs[b].is_zero():
                continue
            comp = comp + eta.coeffs[b] * U.coeffs[b].derive(a)
        out.append(comp.with_order(min(eta.order, U.order) - 1))
    return OneForm(vars, out)
