"""Division by functions vanishing to finite order along ``s = 0``.

Works in normalized coordinates only: the zero set of the divisor is the
hypersurface ``s = 0`` (the last real variable).  Flatness cannot be seen on a
jet, so the zero jet reports an :class:`AtLeast` sentinel instead of an order.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import FlatInput, NotAUnit, NotDivisible
from .gaussian import GaussianRational
from .jet import Jet

__all__ = ["AtLeast", "SFactorization", "s_order", "s_factor", "divide", "s_power"]


class AtLeast(int):
    """Lower bound returned for the zero jet: its s-order is at least this."""

    def __repr__(self):
        return f"AtLeast({int(self)})"

    def __str__(self):
        return f">={int(self)}"


def _s_index(f, var):
    return f.vars.s if var is None else var


def s_order(f, var=None):
    """Smallest s-exponent among the monomials of ``f``."""
    v = _s_index(f, var)
    if f.is_zero():
        return AtLeast(f.order + 1)
    return min(exps[v] for exps, _ in f.items())


def s_power(vars, k, order, var=None):
    v = vars.s if var is None else var
    exps = [0] * vars.size
    exps[v] = k
    return Jet.monomial(vars, exps, 1, order)


def _shift_down(f, k, v):
    """``f / s^k`` for ``f`` whose monomials all carry ``s^k``; order drops by ``k``."""
    terms = {}
    for exps, c in f.items():
        e = list(exps)
        e[v] -= k
        terms[tuple(e)] = c
    return Jet(f.vars, f.order - k, terms)


@dataclass(frozen=True, eq=False)
class SFactorization:
    """``f = s^k * unit`` through ``certified_to`` (the input's order)."""

    k: int
    unit: Jet
    is_unit: bool
    certified_to: int

    @property
    def unit0(self) -> GaussianRational:
        return self.unit.eval0()


def s_factor(f, var=None):
    v = _s_index(f, var)
    if f.is_zero():
        raise FlatInput("zero jet: s-order is not determined at this truncation")
    k = s_order(f, v)
    unit = _shift_down(f, k, v)
    return SFactorization(k=k, unit=unit, is_unit=unit.is_unit(), certified_to=f.order)


def divide(f, lam, var=None):
    """Solve ``lam * u = f`` for ``u`` in the jet class.

    ``lam = s^k psi`` with ``psi(0) != 0`` is required (``NotAUnit``), and
    ``f`` must carry ``s^k`` (``NotDivisible`` otherwise).
    """
    v = _s_index(lam, var)
    fac = s_factor(lam, v)
    if not fac.is_unit:
        raise NotAUnit(
            "divisor is s^k times a non-unit; its zero set is not the hypersurface s = 0"
        )
    if f.is_zero():
        return Jet.zero(f.vars, min(f.order, lam.order) - fac.k)
    if s_order(f, v) < fac.k:
        raise NotDivisible(
            f"numerator has s-order {s_order(f, v)} < {fac.k}, the s-order of the divisor"
        )
    return _shift_down(f, fac.k, v) * fac.unit.invert()
