"""Constant-coefficient difference cohomology of finite simplicial complexes.

The model: ordered simplicial cochains C*(X; A) stand in for a resolution of
the constant sheaf; a self-map sigma (a vertex map, or a validated cochain
self-map) and a coefficient endomorphism f produce the two-row bicomplex
with vertical id - f o sigma*, whose total cohomology is the difference
cohomology.  For sigma of mapping-class d on a circle this computes the
cohomology of the mapping torus (torus, Klein bottle, ...).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .abelian import DirectSum, FgAbGroup, GroupHom, direct_sum, identity_hom, zero_hom
from .complexes import (
    ChainMap,
    CochainComplex,
    SesReport,
    TwoRowBicomplex,
    extract_ses,
    total_cohomology,
)
from .sigma import SigmaModule


@dataclass(frozen=True)
class SimplicialComplex:
    """Vertices with a fixed order; simplices as downward-closed vertex sets."""

    vertices: tuple[str, ...]
    simplices: frozenset[frozenset[int]]

    @staticmethod
    def build(vertices: Sequence[str], maximal: Sequence[Sequence[int]]) -> "SimplicialComplex":
        simp: set[frozenset[int]] = set()
        nv = len(vertices)
        for s in maximal:
            s = frozenset(int(v) for v in s)
            if any(not 0 <= v < nv for v in s):
                raise ValueError("simplex vertex out of range")
            # add all nonempty faces
            items = sorted(s)
            for mask in range(1, 1 << len(items)):
                simp.add(frozenset(items[i] for i in range(len(items)) if mask >> i & 1))
        return SimplicialComplex(tuple(str(v) for v in vertices), frozenset(simp))

    def __post_init__(self):
        for s in self.simplices:
            if not s:
                raise ValueError("empty simplex")
            for v in s:
                if not 0 <= v < len(self.vertices):
                    raise ValueError("simplex vertex out of range")
            items = sorted(s)
            for mask in range(1, 1 << len(items)):
                face = frozenset(items[i] for i in range(len(items)) if mask >> i & 1)
                if face not in self.simplices:
                    raise ValueError("simplices are not downward closed")

    def simplices_of_dim(self, n: int) -> list[tuple[int, ...]]:
        out = [tuple(sorted(s)) for s in self.simplices if len(s) == n + 1]
        out.sort()
        return out

    def dimension(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)


def polygon(n: int) -> SimplicialComplex:
    """Triangulated circle with n vertices (n >= 3)."""
    if n < 3:
        raise ValueError("polygon needs at least 3 vertices")
    edges = [[i, (i + 1) % n] for i in range(n)]
    return SimplicialComplex.build([str(i) for i in range(n)], edges)


def full_simplex(n: int) -> SimplicialComplex:
    return SimplicialComplex.build([str(i) for i in range(n + 1)], [list(range(n + 1))])


def _perm_sign(seq: Sequence[int]) -> int:
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


@dataclass
class SimplicialCochains:
    """Cochain complex C^n = A^{#n-simplices} with per-simplex witnesses."""

    space: SimplicialComplex
    coeff: FgAbGroup
    complex: CochainComplex
    sums: dict[int, DirectSum]
    index: dict[int, dict[tuple[int, ...], int]]


def cochain_complex(space: SimplicialComplex, coeff: FgAbGroup) -> SimplicialCochains:
    dim = space.dimension()
    sums: dict[int, DirectSum] = {}
    index: dict[int, dict[tuple[int, ...], int]] = {}
    for n in range(dim + 1):
        simps = space.simplices_of_dim(n)
        sums[n] = direct_sum([coeff] * len(simps))
        index[n] = {s: i for i, s in enumerate(simps)}
    levels = {n: ds.group for n, ds in sums.items()}
    diffs = {}
    for n in range(dim):
        d = zero_hom(sums[n].group, sums[n + 1].group)
        for tau, ti in index[n + 1].items():
            for i in range(len(tau)):
                face = tau[:i] + tau[i + 1 :]
                fi = index[n][face]
                term = sums[n + 1].injections[ti].compose(sums[n].projections[fi])
                d = d + (term if i % 2 == 0 else term.scale(-1))
        diffs[n] = d
    return SimplicialCochains(space, coeff, CochainComplex(levels, diffs), sums, index)


def vertex_map_pullback(cochains: SimplicialCochains, vertex_map: Mapping[int, int]) -> ChainMap:
    """Cochain pullback of a simplicial self-map given on vertices.

    The map must send simplices to simplices (possibly collapsing them);
    collapsed simplices contribute zero.
    """
    space = cochains.space
    vm = {int(k): int(v) for k, v in vertex_map.items()}
    for v in range(len(space.vertices)):
        if v not in vm:
            raise ValueError(f"vertex {v} has no image")
    for s in space.simplices:
        img = frozenset(vm[v] for v in s)
        if img not in space.simplices:
            raise ValueError("vertex map does not send simplices to simplices")
    comps = {}
    for n, ds in cochains.sums.items():
        h = zero_hom(ds.group, ds.group)
        for tau, ti in cochains.index[n].items():
            images = [vm[v] for v in tau]
            if len(set(images)) < len(images):
                continue  # collapsed
            sign = _perm_sign(images)
            img_sorted = tuple(sorted(images))
            si = cochains.index[n][img_sorted]
            term = ds.injections[ti].compose(ds.projections[si])
            h = h + (term if sign == 1 else term.scale(-1))
        comps[n] = h
    return ChainMap(cochains.complex, cochains.complex, comps)


def coefficient_endo_map(cochains: SimplicialCochains, endo: GroupHom) -> ChainMap:
    """f applied coefficientwise on every simplex."""
    comps = {}
    for n, ds in cochains.sums.items():
        h = zero_hom(ds.group, ds.group)
        for i in range(len(ds.summands)):
            h = h + ds.injections[i].compose(endo).compose(ds.projections[i])
        comps[n] = h
    return ChainMap(cochains.complex, cochains.complex, comps)


@dataclass(frozen=True)
class SelfMapSpec:
    """Either a vertex map inducing a simplicial self-map, or an explicit
    cochain self-map (validated as a chain map on construction)."""

    vertex_map: Mapping[int, int] | None = None
    chain_components: Mapping[int, GroupHom] | None = None

    def realize(self, cochains: SimplicialCochains) -> ChainMap:
        if (self.vertex_map is None) == (self.chain_components is None):
            raise ValueError("specify exactly one of vertex_map, chain_components")
        if self.vertex_map is not None:
            return vertex_map_pullback(cochains, self.vertex_map)
        return ChainMap(cochains.complex, cochains.complex, dict(self.chain_components))


def difference_bicomplex(
    space: SimplicialComplex, sigma: SelfMapSpec, coeff: SigmaModule
) -> TwoRowBicomplex:
    cochains = cochain_complex(space, coeff.carrier)
    pullback = sigma.realize(cochains)
    f_map = coefficient_endo_map(cochains, coeff.endo)
    c = cochains.complex
    vertical = ChainMap(
        c,
        c,
        {
            n: identity_hom(c.level(n)) - f_map.component(n).compose(pullback.component(n))
            for n in c.degrees()
        },
    )
    return TwoRowBicomplex(c, c, vertical)


def difference_cohomology(
    space: SimplicialComplex, sigma: SelfMapSpec, coeff: SigmaModule
) -> dict[int, FgAbGroup]:
    """Total cohomology of the two-row model: H^*_sigma of (X, sigma) with (A, f)."""
    return total_cohomology(difference_bicomplex(space, sigma, coeff))


def mainss_report(
    space: SimplicialComplex, sigma: SelfMapSpec, coeff: SigmaModule
) -> dict[int, SesReport]:
    """The degreewise SES through coinvariants and invariants, checked exactly."""
    return extract_ses(difference_bicomplex(space, sigma, coeff))


def circle_degree_map_components(cochains: SimplicialCochains, d: int) -> dict[int, GroupHom]:
    """Cochain self-map of a polygon modelling a degree-d circle map.

    Identity on 0-cochains; on 1-cochains adds (d-1) times the winding number
    along the edge (0, 1), so the induced maps are id on H^0 and d on H^1.
    """
    space = cochains.space
    nv = len(space.vertices)
    t0 = identity_hom(cochains.complex.level(0))
    ds1 = cochains.sums[1]
    # winding functional: +1 on forward edges (i, i+1), -1 on the closing edge
    h1 = identity_hom(cochains.complex.level(1))
    if d != 1:
        base = cochains.index[1][(0, 1)]
        w = ds1.injections[base]
        phi = zero_hom(ds1.group, cochains.coeff)
        for tau, ti in cochains.index[1].items():
            a, b = tau
            orient = 1 if (b - a) % nv == 1 else -1
            phi = phi + ds1.projections[ti].scale(orient)
        h1 = h1 + w.compose(phi).scale(d - 1)
    return {0: t0, 1: h1}
