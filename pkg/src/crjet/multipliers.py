"""Iterated Lie derivatives of characteristic forms and their multipliers.

Rows of an :class:`ExpansionTable` are the coframe coefficients of
``L^alpha theta^j``.  The operator ``L^alpha = L_1^{a_1} ... L_n^{a_n}`` is
applied right to left, so the chain towards ``alpha`` first spends the ``L_n``
steps and ends with the ``L_1`` steps; the row of ``alpha`` is the Lie
derivative along ``L_q`` of the row of ``alpha - e_q`` with ``q`` the first
nonzero slot.

Multi-indices are tuples, ``r`` values are 1-based.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from . import linalg
from .division import s_factor
from .errors import FlatInput, InputError, OrderTooLow, OutOfTable
from .frame import expand_in_coframe, lie_derivative_form, structure_coefficients
from .gaussian import GaussianRational
from .jet import Jet
from .symbols import ClassicalSymbol, HomogeneousTerm, RationalForm, vector_field_symbol

__all__ = [
    "multi_indices",
    "chain_steps",
    "ExpansionTable",
    "MultiplierReport",
    "CRRegular",
    "build_expansion_table",
    "multiplier_determinant",
    "finite_nondegeneracy_order",
    "weak_nondegeneracy_order",
    "cr_regularity_check",
    "adjoint_expansion_crosscheck",
    "build_cr_system_symbol",
    "analyze",
]


@lru_cache(maxsize=None)
def _exact_degree(n, total):
    if n == 0:
        return ((),) if total == 0 else ()
    out = []
    for first in range(total, -1, -1):
        for rest in _exact_degree(n - 1, total - first):
            out.append((first,) + rest)
    return tuple(out)


def multi_indices(n, k):
    """All ``alpha`` in ``N^n`` with ``|alpha| <= k`` in graded-lex order."""
    out = []
    for total in range(k + 1):
        out.extend(_exact_degree(n, total))
    return out


def chain_steps(alpha):
    """Field indices (0-based) in application order for ``L^alpha``."""
    steps = []
    for q in reversed(range(len(alpha))):
        steps.extend([q] * alpha[q])
    return steps


def _first_slot(alpha):
    return next(q for q, a in enumerate(alpha) if a)


@dataclass(eq=False)
class ExpansionTable:
    frame: object
    max_k: int
    rows: dict
    forms: dict = field(repr=False, default_factory=dict)

    def keys(self):
        """Table keys ``(alpha, r)`` in enumeration order."""
        return [(a, r) for a in multi_indices(self.frame.n, self.max_k) for r in range(1, self.frame.d + 1)]

    def row(self, alpha, r):
        alpha = tuple(alpha)
        if len(alpha) != self.frame.n or sum(alpha) > self.max_k:
            raise OutOfTable(f"multi-index {alpha} beyond table depth {self.max_k}")
        if not 1 <= r <= self.frame.d:
            raise OutOfTable(f"r = {r} outside 1..{self.frame.d}")
        return self.rows[(alpha, r)]


def build_expansion_table(frame, k):
    if k < 0:
        raise InputError("k must be non-negative")
    if frame.order - k < 1:
        raise OrderTooLow(k + 1, frame.order, "frame order")
    n, d, N = frame.n, frame.d, frame.N
    rows, forms = {}, {}
    zero = (0,) * n
    for r in range(1, d + 1):
        forms[(zero, r)] = frame.theta[r - 1]
        rows[(zero, r)] = [
            Jet.const(frame.vars, 1 if l == r - 1 else 0, frame.order) for l in range(N)
        ]
    for alpha in multi_indices(n, k)[1:]:
        q = _first_slot(alpha)
        prev = tuple(a - (i == q) for i, a in enumerate(alpha))
        for r in range(1, d + 1):
            eta = lie_derivative_form(frame, q, forms[(prev, r)], check=False)
            forms[(alpha, r)] = eta
            rows[(alpha, r)] = expand_in_coframe(frame, eta)
    return ExpansionTable(frame=frame, max_k=k, rows=rows, forms=forms)


def multiplier_determinant(table, alphas, r):
    N = table.frame.N
    if len(alphas) != N or len(r) != N:
        raise InputError(f"need {N} multi-indices and {N} r values")
    return linalg.det([table.row(a, rr) for a, rr in zip(alphas, r)])


def finite_nondegeneracy_order(table):
    N = table.frame.N
    for k in range(table.max_k + 1):
        const_rows = [
            [c.eval0() for c in table.rows[(a, r)]]
            for a in multi_indices(table.frame.n, k)
            for r in range(1, table.frame.d + 1)
        ]
        if linalg.rank(const_rows) == N:
            return k
    return None


def weak_nondegeneracy_order(phi, n, k_max):
    """Smallest ``k <= k_max`` at which ``phi`` is weakly ``k``-nondegenerate.

    Pure-derivative vanishing covers ``|alpha| <= k`` including ``phi(0)``; the
    span test uses ``0 < |alpha| <= k`` (``alpha = 0`` adds the zero gradient).
    """
    v = phi.vars
    if v.n != n:
        raise InputError(f"phi has {v.n} complex variables, expected {n}")
    rows = []
    for k in range(1, k_max + 1):
        if phi.order < k + 1:
            raise OrderTooLow(k + 1, phi.order, "phi order")
        for alpha in (multi_indices(n, k) if k == 1 else _exact_degree(n, k)):
            for block in (v.z, v.zbar):
                e = [0] * v.size
                for j, a in enumerate(alpha):
                    e[block(j)] = a
                if phi.derivative_at0(e):
                    return None
        for alpha in _exact_degree(n, k):
            row = []
            for nu in range(n):
                e = [0] * v.size
                e[v.z(nu)] = 1
                for j, a in enumerate(alpha):
                    e[v.zbar(j)] += a
                row.append(phi.derivative_at0(e))
            rows.append(row)
        if linalg.rank(rows) == n:
            return k
    return None


@dataclass(frozen=True)
class CRRegular:
    ell: int
    alphas: tuple
    r: tuple
    psi0: GaussianRational


def _det_task(args):
    table_rows, keys = args
    return linalg.det([table_rows[key] for key in keys])


def _all_determinants(table, workers=None):
    keys = table.keys()
    combos = list(combinations(keys, table.frame.N))
    if workers and workers > 1 and len(combos) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(_det_task, [(table.rows, c) for c in combos], chunksize=8))
    else:
        values = [linalg.det([table.rows[key] for key in c]) for c in combos]
    out = {}
    for combo, value in zip(combos, values):
        alphas = tuple(a for a, _ in combo)
        rs = tuple(r for _, r in combo)
        out[(alphas, rs)] = value
    return out


def cr_regularity_check(table, determinants=None, workers=None):
    """First multiplier of the form ``s^l * unit``: smallest ``l``, then
    enumeration order.  Row permutations only change signs, so each row set is
    visited once, as an increasing sequence of table keys."""
    if determinants is None:
        determinants = _all_determinants(table, workers)
    best = None
    for (alphas, rs), D in determinants.items():
        try:
            fac = s_factor(D)
        except FlatInput:
            continue
        if fac.is_unit and (best is None or fac.k < best.ell):
            best = CRRegular(ell=fac.k, alphas=alphas, r=rs, psi0=fac.unit0)
    return best


def adjoint_expansion_crosscheck(frame, alpha):
    """Compare the table row of ``alpha`` with the closed form.

    With ``L_q^t = -d/dzb_q - b^q d/ds - b^q_s`` the theta-coefficient is
    ``(-L^t)^alpha 1`` along the chain, and the ``dz_j``-coefficient is

        sum_nu  L^{(steps after nu)} [ ((-L^t)^{alpha(nu-1)} 1)
                                       (L_{q_nu} conj(b^j) - conj(L_j) b^{q_nu}) ]
    """
    if frame.kind != "hypersurface":
        raise InputError("closed form applies to hypersurface frames only")
    alpha = tuple(alpha)
    n, v = frame.n, frame.vars
    steps = chain_steps(alpha)
    table = build_expansion_table(frame, len(steps))
    expected = table.row(alpha, 1)

    b = frame.b
    bbar = [x.conj() for x in b]
    Lbar = [L.conj() for L in frame.L]
    K = frame.order

    def minus_transpose(q, f):
        return frame.L[q](f) + b[q].derive(v.s) * f

    sigmas = [Jet.const(v, 1, K)]
    for q in steps:
        sigmas.append(minus_transpose(q, sigmas[-1]))
    rho = []
    for j in range(n):
        total = Jet.zero(v, K)
        for nu, q in enumerate(steps):
            term = sigmas[nu] * (frame.L[q](bbar[j]) - Lbar[j](b[q]))
            for later in steps[nu + 1:]:
                term = frame.L[later](term)
            total = total + term
        rho.append(total)
    closed = [sigmas[-1]] + rho
    return all(a.agrees(c) for a, c in zip(expected, closed))


def build_cr_system_symbol(frame):
    """Symbol of ``P - K`` acting on ``(X_1 x n, ..., X_N x n)``.

    Row ``(j, k)`` of ``P`` is ``L_k`` on the ``k``-th copy of ``X_j``; row
    ``(j, k)`` of ``K`` carries ``B[j][k][l]`` in the first copy of ``X_l``,
    from ``L_k omega^j(X) = d omega^j(L_k, X)``.
    """
    n, N, v = frame.n, frame.N, frame.vars
    size = N * n
    zero = lambda: RationalForm.const(v, 0)
    sig = [vector_field_symbol(L) for L in frame.L]
    top = [[zero() for _ in range(size)] for _ in range(size)]
    for j in range(N):
        for k in range(n):
            top[j * n + k][j * n + k] = sig[k]
    B = structure_coefficients(frame)
    low = [[zero() for _ in range(size)] for _ in range(size)]
    for j in range(N):
        for k in range(n):
            for l in range(N):
                c = B[j][k][l]
                if not c.is_zero():
                    low[j * n + k][l * n] = RationalForm.from_jet(-c)
    return ClassicalSymbol(1, [HomogeneousTerm(1, top), HomogeneousTerm(0, low)])


@dataclass(eq=False)
class MultiplierReport:
    determinants: dict
    finite_nondeg_order: int = None
    weak_nondeg_order: int = None
    cr_regular: CRRegular = None
    searched_k: int = 0


def analyze(frame, k_max, workers=None):
    """Build the table through ``k_max`` and run every classification."""
    table = build_expansion_table(frame, k_max)
    dets = _all_determinants(table, workers)
    weak = None
    if frame.kind == "hypersurface":
        weak = weak_nondegeneracy_order(frame.phi, frame.n, k_max)
    return MultiplierReport(
        determinants=dets,
        finite_nondeg_order=finite_nondegeneracy_order(table),
        weak_nondeg_order=weak,
        cr_regular=cr_regularity_check(table, dets),
        searched_k=k_max,
    )
