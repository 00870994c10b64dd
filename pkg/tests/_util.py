"""Random structure generators shared by the property and acceptance suites."""
import random

from hypothesis import strategies as st

from crjet import GaussianRational, Jet, OneForm, VectorField, VariableSet
from crjet.multipliers import multi_indices


def gaussian_ints(lo=-3, hi=3):
    return st.builds(GaussianRational, st.integers(lo, hi), st.integers(lo, hi))


def gaussian_rationals():
    from fractions import Fraction

    q = st.fractions(min_value=-5, max_value=5, max_denominator=7)
    return st.builds(lambda a, b: GaussianRational(a, b), q, q)


@st.composite
def jets(draw, vars, K, max_terms=6, unit=False, real=False):
    exps = st.tuples(*[st.integers(0, K)] * vars.size).filter(lambda e: sum(e) <= K)
    terms = draw(st.dictionaries(exps, gaussian_ints(), max_size=max_terms))
    if unit:
        terms[(0,) * vars.size] = draw(gaussian_ints(1, 3))
    f = Jet(vars, K, terms)
    if real:
        f = f + f.conj()
    return f


def random_gaussian(rng, lo=-3, hi=3):
    return GaussianRational(rng.randint(lo, hi), rng.randint(lo, hi))


def random_jet(rng, vars, K, terms=5, max_degree=None, unit=False):
    top = K if max_degree is None else min(K, max_degree)
    out = {}
    for _ in range(terms):
        e = [0] * vars.size
        for _ in range(rng.randint(0, top)):
            e[rng.randrange(vars.size)] += 1
        out[tuple(e)] = random_gaussian(rng)
    if unit:
        c = random_gaussian(rng, 1, 3)
        out[(0,) * vars.size] = c
    return Jet(vars, K, out)


def random_real_jet(rng, vars, K, **kw):
    f = random_jet(rng, vars, K, **kw)
    return f + f.conj()


def random_field(rng, vars, K, terms=3):
    return VectorField(vars, [random_jet(rng, vars, K, terms) for _ in range(vars.size)])


def random_form(rng, vars, K, terms=3):
    return OneForm(vars, [random_jet(rng, vars, K, terms) for _ in range(vars.size)])


def random_phi(rng, n, K, vanish_pure=1, terms=4):
    """Real polynomial with ``phi_{z^a}(0) = phi_{zb^a}(0) = 0`` for ``|a| <= vanish_pure``."""
    vars = VariableSet(n)
    out = {}
    for _ in range(terms):
        e = [0] * vars.size
        deg = rng.randint(2, max(2, K - 1))
        for _ in range(deg):
            e[rng.randrange(vars.size)] += 1
        zpart, zbpart, s = e[:n], e[n:2 * n], e[2 * n]
        pure = s == 0 and (sum(zpart) == 0 or sum(zbpart) == 0)
        if pure and sum(e) <= vanish_pure:
            continue
        out[tuple(e)] = random_gaussian(rng)
    f = Jet(vars, K, out)
    return f + f.conj()


def seeded(seed):
    return random.Random(seed)


__all__ = [
    "gaussian_ints",
    "gaussian_rationals",
    "jets",
    "random_jet",
    "random_real_jet",
    "random_field",
    "random_form",
    "random_phi",
    "random_gaussian",
    "seeded",
    "multi_indices",
]
