"""Seeded random valid families with nontrivial bubbling trees."""

import random
from fractions import Fraction

from k3bubble import intlin
from k3bubble.exact import GaussianRational, Poly
from k3bubble.pbt import (
    FamilyError,
    FamilyInput,
    build_pbt,
    reflect_family,
    tree_signature,
    validate_family,
    weyl_transport,
)
from k3bubble.rootsys import build_root_system

SYSTEM_LABELS = ("A1", "A2", "A3", "A4", "A5", "A6", "D4", "D5", "D6")
_SCALARS = (1, -1, 2, -2, 3, Fraction(1, 2), Fraction(-3, 2))


def _perp_vector(rng, system, roots):
    """Random integer vector orthogonal to ``roots`` (generic if none)."""
    n = system.rank
    if roots:
        rows = [intlin.matvec(system.gram, r) for r in roots]
        basis = intlin.integer_kernel(rows, n)
    else:
        basis = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    if not basis:
        return None
    v = [0] * n
    for b in basis:
        c = rng.randint(-3, 3)
        v = [x + c * y for x, y in zip(v, b)]
    return v


def random_family(rng: random.Random, labels=SYSTEM_LABELS, max_terms=4) -> FamilyInput:
    """Sum of ``t^j w_j`` where early ``w_j`` annihilate shrinking root subsets."""
    while True:
        system = build_root_system(rng.choice(labels))
        pos = system.positive_roots()
        nterms = rng.randint(1, max_terms)
        zeta = [Poly() for _ in range(system.rank)]
        constraint = rng.sample(pos, min(len(pos), rng.randint(0, system.rank)))
        exponent = 0
        for j in range(nterms):
            exponent += rng.randint(1, 2)
            if j == nterms - 1:
                constraint = []
            w = _perp_vector(rng, system, constraint)
            if w is None or not any(w):
                w = [rng.randint(-2, 2) for _ in range(system.rank)]
            scale = GaussianRational(rng.choice(_SCALARS), rng.choice((0, 0, 1, Fraction(1, 2))))
            for i, x in enumerate(w):
                if x:
                    zeta[i] = zeta[i] + Poly.monomial(exponent, scale * x)
            if constraint:
                constraint = constraint[: rng.randint(0, len(constraint) - 1)]
        f = FamilyInput(system, tuple(zeta))
        try:
            return validate_family(f)
        except FamilyError:
            continue


def random_families(n: int, seed: int, **kw):
    rng = random.Random(seed)
    return [random_family(rng, **kw) for _ in range(n)]


_NONZERO = (GaussianRational(2), GaussianRational(-1), GaussianRational(Fraction(1, 3)),
            GaussianRational(1, 1), GaussianRational(0, -2), GaussianRational(Fraction(3, 2), 1))


def scaled_family(f: FamilyInput, c) -> FamilyInput:
    return FamilyInput(f.system, tuple(z * c for z in f.zeta))


def reparametrized_family(f: FamilyInput, s) -> FamilyInput:
    st = Poly((0, s))
    return FamilyInput(f.system, tuple(z.compose(st) for z in f.zeta))


def invariance_failures(f: FamilyInput, rng: random.Random) -> list:
    """Names of the invariances (scale, reparam, weyl) that fail for ``f``."""
    base = build_pbt(f).root
    sig = tree_signature(base)
    bad = []
    if tree_signature(build_pbt(scaled_family(f, rng.choice(_NONZERO))).root) != sig:
        bad.append("scale")
    if tree_signature(build_pbt(reparametrized_family(f, rng.choice(_NONZERO))).root) != sig:
        bad.append("reparam")
    theta = rng.choice(f.system.roots)
    moved = build_pbt(reflect_family(theta, f)).root
    if tree_signature(base, rep_map=weyl_transport(theta, f.system)) != tree_signature(moved):
        bad.append("weyl")
    return bad
