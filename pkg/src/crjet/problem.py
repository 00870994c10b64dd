"""Problem files, report assembly and serialization.

A problem file is INI-style::

    [problem]
    kind = hypersurface        # or abstract
    n = 1
    m = 1
    K = 6
    k_max = 2

    [hypersurface]
    phi = z1*zb1

Abstract frames list coefficients by coordinate name in sections ``[L1]``,
``[theta1]`` and optionally ``[omega1]`` (default ``dz_j``).  Symbol files use
``[symbol]`` (``real_names``, ``K``) and one section per symbol with ``order``,
optional ``depth`` and ``term0``, ``term1``, ... given as matrix rows split by
``;`` and entries split by ``,``.
"""
from __future__ import annotations

import configparser
import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .errors import InputError, OrderTooLow, ParseError
from .forms import OneForm, VectorField
from .frame import build_abstract_frame, build_hypersurface_frame
from .jet import VariableSet
from .multipliers import (
    analyze,
    build_expansion_table,
    chain_steps,
    multiplier_determinant,
)
from .division import s_factor
from .parser import JetContext, evaluate, parse
from .symbols import ClassicalSymbol, HomogeneousTerm, RationalForm, compose, parametrix

__all__ = ["ProblemSpec", "Report", "load_problem", "run", "emit", "parse_multi_indices", "parse_int_list"]


@dataclass
class ProblemSpec:
    kind: str
    n: int
    d: int
    m: int
    K: int
    k_max: int
    sections: dict
    digest: str
    source: str = ""
    real_names: tuple = None


@dataclass
class Report:
    command: str
    spec: ProblemSpec
    result: dict = field(default_factory=dict)


def _int(section, key, value):
    try:
        return int(value)
    except ValueError:
        raise InputError(f"[{section}] {key}: expected an integer, got {value!r}") from None


def load_problem(path, k_max=None):
    text = Path(path).read_text()
    return loads_problem(text, k_max=k_max, source=str(path))


def loads_problem(text, k_max=None, source="<string>"):
    cp = configparser.ConfigParser(inline_comment_prefixes=("#",), interpolation=None)
    cp.optionxform = str
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise InputError(f"{source}: {exc}") from None
    sections = {name: dict(cp[name]) for name in cp.sections()}
    digest = hashlib.sha256(text.encode()).hexdigest()
    head_name = "problem" if "problem" in sections else "symbol" if "symbol" in sections else None
    if head_name is None:
        raise InputError(f"{source}: missing [problem] or [symbol] section")
    head = sections[head_name]
    kind = head.get("kind", "symbol" if head_name == "symbol" else "hypersurface")
    if kind not in ("hypersurface", "abstract", "symbol"):
        raise InputError(f"[{head_name}] kind: unknown kind {kind!r}")
    get = lambda key, default: _int(head_name, key, head.get(key, default))
    real_names = tuple(x.strip() for x in head["real_names"].split(",")) if "real_names" in head else None
    n = get("n", 1 if kind != "symbol" else 0)
    d = len(real_names) if real_names else get("d", 1)
    m = get("m", 1 if kind == "hypersurface" else 0)
    K = get("K", 6)
    km = get("k_max", 1) if k_max is None else k_max
    if kind != "symbol" and K < m + km + 1:
        raise OrderTooLow(m + km + 1, K, "[problem] K (needs m + k_max + 1)")
    return ProblemSpec(kind, n, d, m, K, km, sections, digest, source, real_names)


def _vars(spec):
    return VariableSet(spec.n, spec.d, list(spec.real_names) if spec.real_names else None)


def _expr(spec, section, key, ctx):
    try:
        src = spec.sections[section][key]
    except KeyError:
        raise InputError(f"missing [{section}] {key}") from None
    try:
        return evaluate(parse(src), ctx)
    except ParseError as exc:
        raise InputError(f"[{section}] {key}: {exc}") from exc


def _covariant(spec, cls, section, vars, ctx):
    if section not in spec.sections:
        raise InputError(f"missing section [{section}]")
    entries = {}
    for key in spec.sections[section]:
        if key not in vars.names:
            raise InputError(f"[{section}] {key}: not a coordinate name ({', '.join(vars.names)})")
        entries[key] = _expr(spec, section, key, ctx)
    return cls.from_dict(vars, spec.K, entries)


def build_frame(spec):
    vars = _vars(spec)
    ctx = JetContext(vars, spec.K)
    if spec.kind == "hypersurface":
        if spec.d != 1:
            raise InputError("hypersurface problems have d = 1")
        phi = _expr(spec, "hypersurface", "phi", ctx)
        return build_hypersurface_frame(spec.n, spec.m, phi, spec.K)
    if spec.kind == "abstract":
        L = [_covariant(spec, VectorField, f"L{k + 1}", vars, ctx) for k in range(spec.n)]
        theta = [_covariant(spec, OneForm, f"theta{j + 1}", vars, ctx) for j in range(spec.d)]
        omega = []
        for j in range(spec.n):
            sec = f"omega{spec.d + j + 1}"
            if sec in spec.sections:
                omega.append(_covariant(spec, OneForm, sec, vars, ctx))
            else:
                omega.append(OneForm.basis(vars, vars.z(j), spec.K))
        return build_abstract_frame(spec.n, spec.d, L, theta, omega, spec.K)
    raise InputError("this command needs a [problem] file")


class _SymbolContext(JetContext):
    def __init__(self, vars, K):
        super().__init__(vars, K)
        self.xi_names = [f"xi{k + 1}" for k in range(vars.size)]

    def const(self, value):
        return RationalForm.const(self.vars, value)

    def var(self, name, node):
        if name in self.xi_names:
            return RationalForm.xi(self.vars, self.xi_names.index(name))
        return RationalForm.from_jet(super().var(name, node))

    def conj(self, value):
        raise InputError("conj is not available in symbol entries")


def build_symbol(spec, section):
    if section not in spec.sections:
        raise InputError(f"missing section [{section}]")
    sec = spec.sections[section]
    vars = _vars(spec)
    ctx = _SymbolContext(vars, spec.K)
    order = _int(section, "order", sec.get("order", "0"))
    depth = _int(section, "depth", sec["depth"]) if "depth" in sec else None
    terms = []
    j = 0
    while f"term{j}" in sec:
        key = f"term{j}"
        rows = []
        for row_text in sec[key].split(";"):
            row = []
            for entry in row_text.split(","):
                try:
                    row.append(evaluate(parse(entry), ctx))
                except ParseError as exc:
                    raise InputError(f"[{section}] {key}: {exc}") from exc
            rows.append(row)
        try:
            terms.append(HomogeneousTerm(order - j, rows))
        except ValueError as exc:
            raise InputError(f"[{section}] {key}: {exc}") from exc
        j += 1
    if not terms:
        raise InputError(f"[{section}] has no term0")
    return ClassicalSymbol(order, terms, depth)


def parse_multi_indices(text, n):
    out = []
    for part in text.split(";"):
        alpha = parse_int_list(part)
        if len(alpha) == 1 and n > 1 and alpha == [0]:
            alpha = [0] * n
        if len(alpha) != n:
            raise InputError(f"multi-index {part.strip()!r} needs {n} entries")
        if any(a < 0 for a in alpha):
            raise InputError(f"multi-index {part.strip()!r} has a negative entry")
        out.append(tuple(alpha))
    return out


def parse_int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None


def _jet_json(f):
    return {"expression": f.to_expression(), "order": f.order}


def _factor_json(D):
    if D.is_zero():
        return None
    fac = s_factor(D)
    return {"s_order": fac.k, "unit": fac.is_unit, "psi0": str(fac.unit0)}


def run(spec, command="check", **opts):
    """Execute ``command`` and return a :class:`Report`."""
    if command == "check":
        frame = build_frame(spec)
        rep = analyze(frame, spec.k_max, workers=opts.get("workers"))
        dets = []
        for (alphas, rs), D in rep.determinants.items():
            if D.is_zero():
                continue
            dets.append({"alphas": [list(a) for a in alphas], "r": list(rs), "value": _jet_json(D), "factor": _factor_json(D)})
        cr = None
        if rep.cr_regular is not None:
            c = rep.cr_regular
            cr = {"ell": c.ell, "alphas": [list(a) for a in c.alphas], "r": list(c.r), "psi0": str(c.psi0)}
        result = {
            "frame": {"kind": frame.kind, "n": frame.n, "d": frame.d, "m": frame.m, "order": frame.order},
            "finite_nondeg_order": rep.finite_nondeg_order,
            "weak_nondeg_order": rep.weak_nondeg_order,
            "cr_regular": cr,
            "searched_k": rep.searched_k,
            "determinants_total": len(rep.determinants),
            "determinants": dets,
        }
        return Report(command, spec, result)
    if command == "multiplier":
        frame = build_frame(spec)
        alphas = opts["alphas"]
        rs = opts["r"]
        table = build_expansion_table(frame, max(sum(a) for a in alphas))
        D = multiplier_determinant(table, alphas, rs)
        return Report(command, spec, {
            "alphas": [list(a) for a in alphas], "r": list(rs), "value": _jet_json(D), "factor": _factor_json(D),
        })
    if command == "lieder":
        frame = build_frame(spec)
        alpha = opts["alpha"]
        j = opts["j"]
        table = build_expansion_table(frame, sum(alpha))
        row = table.row(alpha, j)
        form = table.forms[(tuple(alpha), j)]
        return Report(command, spec, {
            "alpha": list(alpha),
            "j": j,
            "chain": [q + 1 for q in chain_steps(alpha)],
            "form": {name: _jet_json(c) for name, c in zip(frame.vars.names, form.coeffs) if not c.is_zero()},
            "expansion": [_jet_json(c) for c in row],
        })
    if command in ("compose", "parametrix"):
        depth = opts["depth"]
        if command == "compose":
            out = compose(build_symbol(spec, "a"), build_symbol(spec, "b"), depth)
        else:
            out = parametrix(build_symbol(spec, "p"), depth, side=opts.get("side", "left"))
        return Report(command, spec, {"symbol": _symbol_json(out)})
    raise InputError(f"unknown command {command!r}")


def _symbol_json(sym):
    return {
        "order": sym.order,
        "depth": sym.depth,
        "terms": [
            {"degree": t.degree, "entries": [[e.to_text() for e in row] for row in t.entries]}
            for t in sym.terms
        ],
    }


def _header(report):
    spec = report.spec
    return {
        "tool": "crjet",
        "version": __version__,
        "input_sha256": spec.digest,
        "K": spec.K,
        "k_max": spec.k_max,
        "command": report.command,
    }


def emit(report, format="text"):
    if format == "json":
        return json.dumps({**_header(report), "result": report.result}, indent=2) + "\n"
    if format != "text":
        raise InputError(f"unknown format {format!r}")
    h = _header(report)
    lines = [f"crjet {h['version']}  {report.command}  K={h['K']}  k_max={h['k_max']}  sha256={h['input_sha256'][:16]}"]
    r = report.result
    absent = lambda v: "absent" if v is None else str(v)
    if report.command == "check":
        f = r["frame"]
        lines.append(f"frame: {f['kind']}  n={f['n']}  d={f['d']}" + (f"  m={f['m']}" if f["m"] is not None else ""))
        lines.append(f"finite nondegeneracy order: {absent(r['finite_nondeg_order'])} (searched k <= {r['searched_k']})")
        if f["kind"] == "hypersurface":
            lines.append(f"weak nondegeneracy order: {absent(r['weak_nondeg_order'])}")
        cr = r["cr_regular"]
        if cr is None:
            lines.append("CR-regular: absent")
        else:
            lines.append(
                f"CR-regular: l={cr['ell']}  alphas={_alphas_text(cr['alphas'])}  r={_ints(cr['r'])}  psi(0)={cr['psi0']}"
            )
        lines.append(f"nonzero multipliers: {len(r['determinants'])} of {r['determinants_total']}")
        for item in r["determinants"]:
            lines.append(f"  D({_alphas_text(item['alphas'])}; r={_ints(item['r'])}) = {_jet_text(item['value'])}")
    elif report.command == "multiplier":
        lines.append(f"D({_alphas_text(r['alphas'])}; r={_ints(r['r'])}) = {_jet_text(r['value'])}")
        fac = r["factor"]
        lines.append("s-factorization: zero jet" if fac is None else
                     f"s-factorization: s^{fac['s_order']} * psi, psi(0) = {fac['psi0']}, unit = {fac['unit']}")
    elif report.command == "lieder":
        lines.append(f"L^({_ints(r['alpha'])}) theta{r['j']}  (fields applied: {_ints(r['chain']) or 'none'})")
        for name, c in r["form"].items():
            lines.append(f"  d{name}: {_jet_text(c)}")
        lines.append("coframe expansion:")
        for k, c in enumerate(r["expansion"]):
            lines.append(f"  [{k + 1}] {_jet_text(c)}")
    else:
        sym = r["symbol"]
        lines.append(f"order {sym['order']}, depth {absent(sym['depth'])}")
        for t in sym["terms"]:
            lines.append(f"  degree {t['degree']}:")
            for row in t["entries"]:
                lines.append("    [" + ", ".join(row) + "]")
    return "\n".join(lines) + "\n"


def _ints(xs):
    return ",".join(str(x) for x in xs)


def _alphas_text(alphas):
    return ";".join("(" + _ints(a) + ")" for a in alphas)


def _jet_text(j):
    return f"{j['expression']} + O({j['order'] + 1})"
