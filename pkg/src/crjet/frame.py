"""CR frames: CR fields, characteristic forms and a holomorphic coframe.

Two builders are provided.  :func:`build_hypersurface_frame` produces the
frame of the model ``Im w = (Re w)^m phi(z, zb, Re w)`` in the coordinates
``(z, zb, s = Re w)``; :func:`build_abstract_frame` validates user-supplied
fields and forms.  In both cases the coframe is ordered characteristic forms
first, so coefficient vectors read ``(theta^1..theta^d, omega^{d+1}..omega^N)``.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from . import linalg
from .errors import (
    DegenerateCoframe,
    NotAnnihilated,
    NotAUnit,
    NotCharacteristic,
    NotHolomorphic,
    NotReal,
    OrderTooLow,
    InputError,
)
from .forms import (
    OneForm,
    VectorField,
    contract,
    exterior_derivative,
    lie_bracket,
    lie_derivative_general,
    pair,
)
from .gaussian import I
from .jet import Jet, VariableSet

__all__ = [
    "CRFrame",
    "IntegrabilityWarning",
    "CRCheck",
    "build_hypersurface_frame",
    "build_abstract_frame",
    "lie_derivative_form",
    "expand_in_coframe",
    "structure_coefficients",
    "is_symbolic_infinitesimal_cr",
]


class IntegrabilityWarning(UserWarning):
    """Bracket closure of the CR bundle fails below the working order."""


@dataclass(frozen=True, eq=False)
class CRFrame:
    vars: VariableSet
    n: int
    d: int
    K: int
    L: tuple
    theta: tuple
    omega: tuple
    pivots: tuple
    dual: tuple
    kind: str = "abstract"
    m: int = None
    phi: Jet = None
    b: tuple = ()
    integrable_through: int = None
    notes: tuple = field(default=())

    @property
    def N(self):
        return self.n + self.d

    @property
    def order(self):
        """Smallest trusted order over all frame data."""
        items = list(self.L) + list(self.omega)
        return min(x.order for x in items)

    def coframe_matrix(self):
        """The ``N x (2n+d)`` coefficient matrix of the coframe."""
        return [list(form.coeffs) for form in self.omega]


def _validate_and_finish(vars, n, d, L, theta, omega_rest, K, **extra):
    N = n + d
    if len(L) != n:
        raise InputError(f"expected {n} CR fields, got {len(L)}")
    if len(theta) != d:
        raise InputError(f"expected {d} characteristic forms, got {len(theta)}")
    if len(omega_rest) != n:
        raise InputError(f"expected {n} further holomorphic forms, got {len(omega_rest)}")

    for j, th in enumerate(theta):
        if not th.conj().agrees(th):
            raise NotReal(f"theta^{j + 1} is not real: conj(theta) != theta")
    for j, th in enumerate(theta):
        for k, Lk in enumerate(L):
            if not pair(th, Lk).is_zero():
                raise NotCharacteristic(f"theta^{j + 1}(L_{k + 1}) != 0")
            if not pair(th, Lk.conj()).is_zero():
                raise NotCharacteristic(f"theta^{j + 1}(conj L_{k + 1}) != 0")
    for j, om in enumerate(omega_rest):
        for k, Lk in enumerate(L):
            if not pair(om, Lk).is_zero():
                raise NotHolomorphic(f"omega^{d + j + 1}(L_{k + 1}) != 0")

    coframe = tuple(theta) + tuple(omega_rest)
    at0 = [[c.eval0() for c in form.coeffs] for form in coframe]
    pivots = linalg.pivot_columns(at0)
    if len(pivots) < N:
        raise DegenerateCoframe(
            f"coframe has rank {len(pivots)} < {N} at the origin"
        )
    minor = [[form.coeffs[p] for p in pivots] for form in coframe]
    try:
        dual = linalg.inverse(minor, Jet.invert)
    except NotAUnit:
        raise DegenerateCoframe("coframe minor is not a unit") from None

    integrable_through = None
    if n >= 2:
        integrable_through = _bracket_closure(L, coframe)
        if integrable_through is not None:
            warnings.warn(
                f"CR bundle closes under brackets only through degree {integrable_through}",
                IntegrabilityWarning,
                stacklevel=3,
            )
    return CRFrame(
        vars=vars,
        n=n,
        d=d,
        K=K,
        L=tuple(L),
        theta=tuple(theta),
        omega=coframe,
        pivots=tuple(pivots),
        dual=tuple(tuple(row) for row in dual),
        integrable_through=integrable_through,
        **extra,
    )


def _bracket_closure(L, coframe):
    """Lowest degree minus one at which some ``omega([L_j, L_k])`` fails to vanish.

    ``None`` means closure holds through the full trusted order.
    """
    worst = None
    for j in range(len(L)):
        for k in range(j + 1, len(L)):
            br = lie_bracket(L[j], L[k])
            for om in coframe:
                v = pair(om, br).valuation()
                if v is not None and (worst is None or v - 1 < worst):
                    worst = v - 1
    return worst


def build_hypersurface_frame(n, m, phi, K=None):
    """Frame of ``Im w = s^m phi`` with ``s = Re w``.

    ``L_j = d/dzb_j + b^j d/ds`` and ``theta = -ds + sum b^j dzb_j + conj(b^j) dz_j``
    where ``b^j = -i s^m phi_{zb_j} / (1 + i (s^m phi)_s)``; the coframe is
    ``(theta, dz_1, ..., dz_n)``.
    """
    vars = phi.vars
    if vars.n != n or vars.d != 1:
        raise InputError(f"phi must be a jet in z1..z{n}, zb1..zb{n}, s")
    if m < 1:
        raise InputError("m must be at least 1")
    K = phi.order if K is None else K
    if K > phi.order:
        raise OrderTooLow(K, phi.order, "phi order")
    if K < m + 1:
        raise OrderTooLow(m + 1, K)
    phi = phi.with_order(K)
    if not phi.is_real():
        raise NotReal("phi is not real: conj(phi) != phi")

    s = Jet.var(vars, vars.s, K)
    smphi = s ** m * phi
    den_inv = (1 + I * smphi.derive(vars.s)).invert()
    b = tuple((-I) * (s ** m) * phi.derive(vars.zbar(j)) * den_inv for j in range(n))
    order = min(x.order for x in b)

    L = [VectorField.from_dict(vars, order, {vars.zbar(j): 1, vars.s: b[j]}) for j in range(n)]
    entries = {vars.s: -1}
    for j in range(n):
        entries[vars.zbar(j)] = b[j]
        entries[vars.z(j)] = b[j].conj()
    theta = OneForm.from_dict(vars, order, entries)
    omega_rest = [OneForm.basis(vars, vars.z(j), order) for j in range(n)]
    return _validate_and_finish(
        vars, n, 1, L, [theta], omega_rest, K, kind="hypersurface", m=m, phi=phi, b=b
    )


def build_abstract_frame(n, d, L, theta, omega_rest, K=None):
    """Validate user-supplied CR fields and forms and assemble a frame.

    Raises ``NotReal``, ``NotCharacteristic``, ``NotHolomorphic`` or
    ``DegenerateCoframe`` naming the violated invariant.  For ``n >= 2`` the
    bracket closure of the fields is checked and a failure is reported as an
    :class:`IntegrabilityWarning` only.
    """
    L = list(L)
    theta = list(theta)
    omega_rest = list(omega_rest)
    if not L and not theta:
        raise InputError("empty frame")
    vars = (L or theta)[0].vars
    if vars.n != n or vars.d != d:
        raise InputError(f"variables {vars.names} do not match n={n}, d={d}")
    orders = [x.order for x in L + theta + omega_rest]
    if K is None:
        K = min(orders)
    elif K > min(orders):
        raise OrderTooLow(K, min(orders), "frame order")
    L = [x.with_order(K) for x in L]
    theta = [x.with_order(K) for x in theta]
    omega_rest = [x.with_order(K) for x in omega_rest]
    return _validate_and_finish(vars, n, d, L, theta, omega_rest, K)


def _field(frame, L):
    return frame.L[L] if isinstance(L, int) else L


def lie_derivative_form(frame, L, eta, check=True):
    """Lie derivative of a one-form annihilating ``L``: the form ``d eta(L, .)``.

    ``L`` is a frame field index or a field.  With ``check`` the result is
    compared with the bracket formula ``K -> L eta(K) - eta([L, K])``.
    """
    L = _field(frame, L)
    if not pair(eta, L).is_zero():
        raise NotAnnihilated("eta(L) != 0; the Lie derivative is only taken on forms annihilating L")
    result = contract(exterior_derivative(eta), L)
    if check:
        other = lie_derivative_general(L, eta)
        if not other.agrees(result):
            raise AssertionError("Cartan identity violated")
    return result


def expand_in_coframe(frame, eta):
    """Coefficients ``c`` with ``eta = sum_l c_l omega^l`` (theta block first)."""
    for k, Lk in enumerate(frame.L):
        if not pair(eta, Lk).is_zero():
            raise NotHolomorphic(f"form does not annihilate L_{k + 1}")
    restricted = [eta.coeffs[p] for p in frame.pivots]
    coeffs = linalg.solve_row(restricted, frame.dual)
    recombined = None
    for c, form in zip(coeffs, frame.omega):
        term = form * c
        recombined = term if recombined is None else recombined + term
    if not recombined.agrees(eta):
        raise NotHolomorphic("form is not in the span of the coframe")
    return coeffs


def structure_coefficients(frame):
    """``B[j][k][l]`` with ``d omega^j(L_k, .) = sum_l B[j][k][l] omega^l``."""
    B = []
    for om in frame.omega:
        d_om = exterior_derivative(om)
        B.append([expand_in_coframe(frame, contract(d_om, Lk)) for Lk in frame.L])
    return B


@dataclass(frozen=True)
class CRCheck:
    ok: bool
    witness: str = None

    def __bool__(self):
        return self.ok


def is_symbolic_infinitesimal_cr(frame, X):
    """Test the CR equations ``omega([L_k, X]) = 0``, reality of every
    ``theta(X)`` and reality of ``X`` itself; the witness names the first
    failure."""
    for k, Lk in enumerate(frame.L):
        br = lie_bracket(Lk, X)
        for j, om in enumerate(frame.omega):
            if not pair(om, br).is_zero():
                return CRCheck(False, f"omega^{j + 1}([L_{k + 1}, X]) != 0")
    for j, th in enumerate(frame.theta):
        v = pair(th, X)
        if not v.is_real():
            return CRCheck(False, f"theta^{j + 1}(X) is not real")
    conjX = X.conj()
    for a, name in enumerate(frame.vars.names):
        if not conjX.coeffs[a].agrees(X.coeffs[a]):
            return CRCheck(False, f"X is not a real vector field (d/d{name} component)")
    return CRCheck(True)
