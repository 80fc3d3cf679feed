"""Period bubbling trees of a localized period curve.

A family is a polynomial curve ``zeta(t)`` in the complexified Cartan space of
an ADE root system, written in the simple-root basis.  The tree is built top
down: the leading term of the curve gives the minimal bubble, roots
perpendicular to it give its singularities, and each irreducible singularity
is refined by projecting the curve onto its span.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import intlin
from .exact import GaussianRational, Poly
from .rootsys import (
    ADEType,
    RootSystem,
    SubRootSystem,
    irreducible_components,
    perp_roots,
    reflect,
)

__all__ = [
    "FamilyError",
    "FamilyInput",
    "PBTNode",
    "PBTree",
    "InstantonLabel",
    "validate_family",
    "leading_data",
    "project_to_component",
    "build_pbt",
    "node_label",
    "cycle_diameter_exponent",
    "odaka_rescale",
    "normalize_rep",
    "tree_signature",
    "trees_isomorphic",
]


class FamilyError(ValueError):
    """Invalid family data.  ``code`` is a stable diagnostic tag."""

    def __init__(self, code: str, message: str, roots: Sequence = ()):
        super().__init__(message)
        self.code = code
        self.roots = tuple(roots)


@dataclass(frozen=True)
class FamilyInput:
    system: RootSystem
    zeta: tuple[Poly, ...]

    def __post_init__(self):
        if len(self.zeta) != self.system.rank:
            raise FamilyError(
                "dimension",
                f"zeta has {len(self.zeta)} coordinates, system {self.system.ade} has rank {self.system.rank}",
            )
        object.__setattr__(self, "zeta", tuple(Poly.coerce(z) for z in self.zeta))


def validate_family(f: FamilyInput) -> FamilyInput:
    """Check that ``zeta(0) = 0`` and no root pairs identically to zero with zeta."""
    if any(z.coeff(0) for z in f.zeta):
        raise FamilyError("no-degeneration", "family does not degenerate at t=0")
    simple = simple_pairings(f.system, f.zeta)
    bad = [r for r in f.system.positive_roots() if root_pairing(r, simple).is_zero()]
    if bad:
        shown = ", ".join(str(list(r)) for r in bad)
        raise FamilyError(
            "singular-general-fiber",
            f"general fiber singular along root(s) {shown}",
            roots=bad,
        )
    return f


def simple_pairings(system: RootSystem, zeta: Sequence[Poly]) -> list[Poly]:
    """``<theta_i, zeta>`` for each simple root."""
    out = []
    for row in system.gram:
        acc = Poly()
        for g, z in zip(row, zeta):
            if g:
                acc = acc + z * g
        out.append(acc)
    return out


def root_pairing(root: Sequence[int], simple: Sequence[Poly]) -> Poly:
    """``<root, zeta>`` from the simple-root pairings (integer combination)."""
    acc = Poly()
    for c, s in zip(root, simple):
        if c:
            acc = acc + s * c
    return acc


def leading_data(zeta_proj: Sequence[Poly]) -> tuple[int, tuple[GaussianRational, ...]]:
    """``(k, w)`` with ``zeta_proj(t) = t^k w + O(t^{k+1})``."""
    k = min((z.ord() for z in zeta_proj), default=float("inf"))
    if k == float("inf"):
        raise FamilyError("vanishing-projection", "projection vanishes identically")
    return k, tuple(z.coeff(k) for z in zeta_proj)


def normalize_rep(v: Sequence[GaussianRational]) -> tuple[GaussianRational, ...]:
    """Scale so that the first nonzero coordinate is 1."""
    lead = next((c for c in v if c), None)
    if lead is None:
        raise ValueError("cannot normalize the zero vector")
    inv = GaussianRational.coerce(lead).inverse()
    return tuple(GaussianRational.coerce(c) * inv for c in v)


def project_to_component(zeta: Sequence[Poly], comp: SubRootSystem) -> tuple[Poly, ...]:
    """Orthogonal projection of a curve onto the span of ``comp``."""
    g = comp.ambient.gram
    base = comp.simple_base
    gb = comp.gram()
    ginv = intlin.inverse(gb)
    rhs = [intlin.bilinear(b, g, zeta) for b in base]
    coeffs = []
    for row in ginv:
        acc = Poly()
        for gij, r in zip(row, rhs):
            if gij and r:
                acc = acc + Poly.coerce(r) * GaussianRational(gij)
        coeffs.append(acc)
    n = comp.ambient.rank
    out = [Poly() for _ in range(n)]
    for c, b in zip(coeffs, base):
        if c.is_zero():
            continue
        for i, x in enumerate(b):
            if x:
                out[i] = out[i] + c * GaussianRational(x)
    residual = [Poly.coerce(z) - p for z, p in zip(zeta, out)]
    for b in base:
        if intlin.bilinear(b, g, residual):
            raise AssertionError("projection residual is not orthogonal to the component")
    return tuple(out)


@dataclass(frozen=True)
class PBTNode:
    """One bubble.  ``leading`` is the raw coefficient of ``t^order`` of the
    projected curve; ``rep`` is its normalized projective representative."""

    rep: tuple[GaussianRational, ...]
    order: int
    cumulative_exponent: Fraction
    subspace: SubRootSystem
    singularities: tuple[SubRootSystem, ...]
    children: tuple["PBTNode", ...] = field(default=())
    leading: tuple[GaussianRational, ...] = field(default=(), compare=False)

    @property
    def is_leaf(self) -> bool:
        return not self.singularities

    def walk(self):
        """Pre-order traversal yielding ``(path, node)``; path is a tuple of child indices."""
        stack = [((), self)]
        while stack:
            path, node = stack.pop()
            yield path, node
            for i in reversed(range(len(node.children))):
                stack.append((path + (i,), node.children[i]))

    def depth(self) -> int:
        return 1 + max((c.depth() for c in self.children), default=0)

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)


@dataclass(frozen=True)
class PBTree:
    family: FamilyInput
    root: PBTNode

    def nodes(self) -> list[PBTNode]:
        return [n for _, n in self.root.walk()]


def _build_node(zeta, sub: SubRootSystem, curve, parent_exponent: Fraction) -> PBTNode:
    try:
        k, w = leading_data(curve)
    except FamilyError:
        raise AssertionError(
            f"insufficient data: projection vanishes identically on component {sub.ade}"
        ) from None
    rep = normalize_rep(w)
    perp = perp_roots(sub, rep)
    sings = tuple(irreducible_components(perp))
    exponent = parent_exponent + Fraction(k, 2)
    children = tuple(
        _build_node(zeta, comp, project_to_component(zeta, comp), exponent)
        for comp in sings
    )
    return PBTNode(
        rep=rep,
        order=k,
        cumulative_exponent=exponent,
        subspace=sub,
        singularities=sings,
        children=children,
        leading=w,
    )


def build_pbt(f: FamilyInput, validate: bool = True) -> PBTree:
    """Construct the period bubbling tree of a validated family.

    Every child is obtained by projecting the original curve onto the span of
    one irreducible singularity of its parent; exponents accumulate ``k/2``.
    """
    if validate:
        validate_family(f)
    root = _build_node(f.zeta, f.system.whole(), f.zeta, Fraction(0))
    return PBTree(family=f, root=root)


@dataclass(frozen=True)
class InstantonLabel:
    ambient: ADEType
    rep: tuple[GaussianRational, ...]
    singularities: tuple[ADEType, ...]
    smooth: bool
    cumulative_exponent: Fraction


def node_label(n: PBTNode) -> InstantonLabel:
    return InstantonLabel(
        ambient=n.subspace.ade,
        rep=n.rep,
        singularities=tuple(s.ade for s in n.singularities),
        smooth=not n.singularities,
        cumulative_exponent=n.cumulative_exponent,
    )


def cycle_diameter_exponent(theta: Sequence[int], f: FamilyInput) -> Fraction:
    """Half the vanishing order of ``<theta, zeta(t)>``."""
    theta = tuple(theta)
    if theta not in set(f.system.roots):
        raise ValueError(f"{list(theta)} is not a root of {f.system.ade}")
    a = Poly.coerce(f.system.pair(theta, f.zeta))
    if a.is_zero():
        raise FamilyError(
            "singular-general-fiber",
            f"<theta, zeta> vanishes identically for theta = {list(theta)}",
            roots=[theta],
        )
    return Fraction(a.ord(), 2)


def odaka_rescale(f: FamilyInput) -> tuple[tuple[Poly, ...], tuple[ADEType, ...]]:
    """Divide the curve by ``t^k`` and read the singularities of its central fiber."""
    validate_family(f)
    k, _ = leading_data(f.zeta)
    rescaled = tuple(z.shift_down(k) for z in f.zeta)
    zeta0 = tuple(z.coeff(0) for z in rescaled)
    comps = irreducible_components(perp_roots(f.system, zeta0))
    return rescaled, tuple(c.ade for c in comps)


# -- comparison ---------------------------------------------------------------


def _rep_key(rep) -> tuple:
    return tuple((c.re, c.im) for c in rep)


def tree_signature(node: PBTNode, rep_map=None, with_reps: bool = True):
    """Canonical nested tuple for a PBT, insensitive to child order.

    ``rep_map`` transforms representatives (e.g. a Weyl reflection) before
    normalization so that transported trees can be compared directly.
    """
    rep = node.rep
    if rep_map is not None:
        rep = normalize_rep(rep_map(rep))
    kids = sorted(tree_signature(c, rep_map, with_reps) for c in node.children)
    return (
        str(node.subspace.ade),
        tuple(sorted(str(s.ade) for s in node.singularities)),
        node.order,
        node.cumulative_exponent,
        _rep_key(rep) if with_reps else (),
        tuple(kids),
    )


def trees_isomorphic(a: PBTNode, b: PBTNode, rep_map=None, with_reps: bool = True) -> bool:
    return tree_signature(a, rep_map, with_reps) == tree_signature(b, None, with_reps)


def weyl_transport(theta: Sequence[int], system: RootSystem):
    """The reflection in ``theta`` as a map on coefficient vectors."""
    g = system.gram

    def apply(v):
        return tuple(GaussianRational.coerce(x) if not isinstance(x, Poly) else x
                     for x in reflect(theta, v, g))

    return apply


def reflect_family(theta: Sequence[int], f: FamilyInput) -> FamilyInput:
    zeta = reflect(theta, f.zeta, f.system.gram)
    return FamilyInput(f.system, tuple(Poly.coerce(z) for z in zeta))
