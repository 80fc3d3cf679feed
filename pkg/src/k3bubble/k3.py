"""The K3 lattice E8(-1)^2 + U^3, its polarized sublattice, and localization.

Coordinates are fixed: indices 0-7 and 8-15 are the two E8(-1) blocks
(Bourbaki labels), then (e1, f1), (e2, f2), (e3, f3) for the three hyperbolic
planes.  The polarization is ``lambda = e1 + d f1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import intlin
from .exact import GaussianRational, Poly
from .rootsys import ADEType, ClassificationError, cartan_gram, classify_gram

__all__ = [
    "K3Lattice",
    "PolarizedLattice",
    "EmbeddedCartan",
    "EmbeddingError",
    "PeriodCheck",
    "build_k3_lattice",
    "polarize",
    "validate_period_point",
    "embed_cartan",
    "localize",
    "embed",
    "projection",
    "RANK",
]

RANK = 22
E8_BLOCKS = (0, 8)
U_BLOCKS = (16, 18, 20)


def basis_labels() -> tuple[str, ...]:
    labels = [f"a{i + 1}" for i in range(8)] + [f"b{i + 1}" for i in range(8)]
    for k in range(1, 4):
        labels += [f"e{k}", f"f{k}"]
    return tuple(labels)


def unit(i: int) -> tuple[int, ...]:
    return tuple(int(j == i) for j in range(RANK))


def e(k: int) -> tuple[int, ...]:
    """Isotropic vector ``e_k`` of the k-th hyperbolic plane (1-based)."""
    return unit(U_BLOCKS[k - 1])


def f(k: int) -> tuple[int, ...]:
    return unit(U_BLOCKS[k - 1] + 1)


@dataclass(frozen=True)
class K3Lattice:
    gram: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]

    def pair(self, u, v):
        return intlin.bilinear(u, self.gram, v)


_K3: K3Lattice | None = None


def build_k3_lattice() -> K3Lattice:
    global _K3
    if _K3 is None:
        g = [[0] * RANK for _ in range(RANK)]
        e8 = cartan_gram(ADEType("E", 8))
        for off in E8_BLOCKS:
            for i in range(8):
                for j in range(8):
                    g[off + i][off + j] = e8[i][j]
        for off in U_BLOCKS:
            g[off][off + 1] = g[off + 1][off] = 1
        _K3 = K3Lattice(gram=tuple(tuple(r) for r in g), labels=basis_labels())
    return _K3


@dataclass(frozen=True)
class PolarizedLattice:
    d: int
    lam: tuple[int, ...]
    basis: tuple[tuple[int, ...], ...]
    gram21: tuple[tuple[int, ...], ...]


def polarize(d: int) -> PolarizedLattice:
    """``lambda = e1 + d f1`` and a saturated basis of its orthogonal complement."""
    if not isinstance(d, int) or d <= 0:
        raise ValueError(f"polarization degree must be a positive integer, got {d!r}")
    L = build_k3_lattice()
    lam = tuple(a + d * b for a, b in zip(e(1), f(1)))
    row = intlin.matvec(L.gram, lam)
    basis = tuple(tuple(v) for v in intlin.integer_kernel([row], RANK))
    gram21 = tuple(tuple(L.pair(u, v) for v in basis) for u in basis)
    return PolarizedLattice(d=d, lam=lam, basis=basis, gram21=gram21)


@dataclass(frozen=True)
class PeriodCheck:
    ok: bool
    reasons: tuple[str, ...]
    square: GaussianRational
    hermitian_norm: Fraction

    def __bool__(self):
        return self.ok


def validate_period_point(x: Sequence) -> PeriodCheck:
    """Check ``<x,x> = 0`` and ``<x, conj x> > 0`` exactly."""
    L = build_k3_lattice()
    x = [GaussianRational.coerce(c) for c in x]
    if len(x) != RANK:
        raise ValueError(f"expected a {RANK}-vector, got length {len(x)}")
    sq = GaussianRational.coerce(L.pair(x, x))
    herm = GaussianRational.coerce(L.pair(x, [c.conj() for c in x]))
    reasons = []
    if sq:
        reasons.append("isotropy")
    if herm.im != 0:
        raise AssertionError("hermitian pairing has an imaginary part")
    if not herm.re > 0:
        reasons.append("positivity")
    return PeriodCheck(ok=not reasons, reasons=tuple(reasons), square=sq, hermitian_norm=herm.re)


class EmbeddingError(ValueError):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class EmbeddedCartan:
    ade: ADEType
    classes: tuple[tuple[int, ...], ...]
    gram_check: tuple[tuple[int, ...], ...]
    polarization: PolarizedLattice


def embed_cartan(classes: Sequence[Sequence[int]], pol: PolarizedLattice) -> EmbeddedCartan:
    """Validate exceptional classes as an ADE Cartan sublattice of ``lambda^perp``."""
    L = build_k3_lattice()
    cls = []
    for c in classes:
        if len(c) != RANK:
            raise EmbeddingError("dimension", f"class of length {len(c)}, expected {RANK}")
        if any(not isinstance(x, int) for x in c):
            raise EmbeddingError("not-integral", "classes must be integer vectors")
        cls.append(tuple(c))
    if not cls:
        raise EmbeddingError("empty", "no classes given")
    for j, c in enumerate(cls):
        if L.pair(c, pol.lam) != 0:
            raise EmbeddingError("not-in-lambda-perp", f"class {j + 1} is not in lambda^perp")
    g = tuple(tuple(L.pair(a, b) for b in cls) for a in cls)
    try:
        ade = classify_gram(g)
    except ClassificationError as exc:
        raise EmbeddingError(
            "not-ade", f"Gram is not a negated ADE Cartan matrix ({exc})"
        ) from exc
    return EmbeddedCartan(ade=ade, classes=tuple(cls), gram_check=g, polarization=pol)


def localize(P: Sequence, h: EmbeddedCartan) -> tuple:
    """theta-coordinates of the orthogonal projection of ``P`` onto ``h``.

    Works for vectors of Poly or of scalars.  The residual ``sum a_j theta_j - P``
    is checked to pair to zero with every class.
    """
    L = build_k3_lattice()
    if len(P) != RANK:
        raise ValueError(f"dimension mismatch: period of length {len(P)}, expected {RANK}")
    rhs = [L.pair(P, c) for c in h.classes]
    ginv = intlin.inverse(h.gram_check)
    coords = []
    for row in ginv:
        acc = 0
        for gij, r in zip(row, rhs):
            if gij and r:
                acc = r * GaussianRational(gij) + acc
        coords.append(acc)
    poly_mode = any(isinstance(x, Poly) for x in P)
    if poly_mode:
        coords = [Poly.coerce(a) if not isinstance(a, Poly) else a for a in coords]
    else:
        coords = [GaussianRational.coerce(a) for a in coords]
    residual = [a - b for a, b in zip(embed(coords, h), P)]
    for c in h.classes:
        if L.pair(residual, c):
            raise AssertionError("localization residual is not orthogonal to h")
    return tuple(coords)


def embed(coords: Sequence, h: EmbeddedCartan) -> list:
    """Re-express theta-coordinates as a vector in L."""
    out = [0] * RANK
    for a, c in zip(coords, h.classes):
        for i, x in enumerate(c):
            if x:
                out[i] = a * GaussianRational(x) + out[i]
    return out


def projection(v: Sequence, h: EmbeddedCartan) -> list:
    """Orthogonal projection onto span(h) as a vector in L."""
    return embed(localize(v, h), h)
