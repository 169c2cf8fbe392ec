"""Random well-formed inputs shared by the property and acceptance tests."""

import random

from hypothesis import strategies as st

from hkcover.arrangements import (
    ArrangementCombinatorics,
    HirzebruchSurface,
    NefEffectiveCanonical,
    ProjectivePlaneDeg,
    max_multiplicity,
    surface_parameters,
)


def fill_counts(surface, k, pick):
    """Histogram satisfying the counting identity; ``pick(hi)`` chooses each t_r in [0, hi]."""
    a = surface_parameters(surface).a
    rest = a * (k * k - k)
    t = {}
    for r in range(max_multiplicity(surface, k), 2, -1):
        w = r * (r - 1)
        t[r] = pick(rest // w)
        rest -= w * t[r]
    t[2] = rest // 2
    return ArrangementCombinatorics(k, t)


def random_surface(rng: random.Random, family=None):
    family = family or rng.choice(["hirzebruch", "nef", "plane"])
    if family == "hirzebruch":
        return HirzebruchSurface(rng.randint(0, 8))
    if family == "plane":
        return ProjectivePlaneDeg(rng.randint(2, 6))
    a, b = rng.randint(1, 6), rng.randint(0, 6)
    euler = rng.randint(0, 30)
    ksq = rng.randint(0, 3 * euler)
    return NefEffectiveCanonical(euler, ksq, a, b)


def random_combo(rng: random.Random, surface, k_lo=5, k_hi=12):
    k = rng.randint(k_lo, k_hi)
    # skew towards small counts so higher multiplicities survive
    return fill_counts(surface, k, lambda hi: rng.randint(0, hi // rng.randint(1, 4)))


surfaces = st.one_of(
    st.builds(HirzebruchSurface, st.integers(0, 8)),
    st.builds(ProjectivePlaneDeg, st.integers(2, 6)),
    st.tuples(st.integers(0, 30), st.integers(1, 6), st.integers(0, 6)).flatmap(
        lambda x: st.builds(NefEffectiveCanonical, st.just(x[0]), st.integers(0, 3 * x[0]), st.just(x[1]), st.just(x[2]))
    ),
)


@st.composite
def arrangements(draw, surface_strategy=surfaces, k_min=5, k_max=12):
    surface = draw(surface_strategy)
    k = draw(st.integers(k_min, k_max))
    combo = fill_counts(surface, k, lambda hi: draw(st.integers(0, hi)))
    return surface, combo
