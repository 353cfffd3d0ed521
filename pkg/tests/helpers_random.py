"""Shared randomized generators for property suites.

Complexes are assembled from split two-term pieces and lone summands, which
makes d o d = 0 and the chain-map conditions hold by construction while the
assembled matrices stay dense and unstructured.
"""

import math
import random

from diffcoh.abelian import (
    FgAbGroup,
    GroupHom,
    direct_sum,
    group_from_factors,
    hom_from_images,
    identity_hom,
    zero_hom,
)
from diffcoh.complexes import ChainMap, CochainComplex, TwoRowBicomplex


def random_finite_group(rng: random.Random, max_order: int = 64) -> FgAbGroup:
    factors = []
    order = 1
    for _ in range(rng.randint(0, 3)):
        f = rng.choice([2, 2, 3, 4, 5, 8, 9])
        if order * f > max_order:
            break
        factors.append(f)
        order *= f
    return group_from_factors(factors)


def random_hom_between(rng: random.Random, source: FgAbGroup, target: FgAbGroup) -> GroupHom:
    cols = []
    for d in list(source.torsion) + [0] * source.free_rank:
        col = []
        for j in range(target.ncoords):
            if j < len(target.torsion):
                dj = target.torsion[j]
                if d == 0:
                    col.append(rng.randrange(dj))
                else:
                    step = dj // math.gcd(d, dj)
                    nsteps = dj // step
                    col.append(step * rng.randrange(nsteps) if nsteps else 0)
            else:
                col.append(rng.randint(-3, 3) if d == 0 else 0)
        cols.append(col)
    return hom_from_images(source, target, cols)


class _Row:
    """A complex assembled from pieces [G -> H] at (n, n+1) and lone groups."""

    def __init__(self, rng, max_degree=3, max_order=64):
        self.pieces = {}  # degree n -> list of (G, H, f)
        self.lones = {}  # degree n -> list of G
        for n in range(max_degree):
            self.pieces[n] = []
            for _ in range(rng.randint(0, 1)):
                g = random_finite_group(rng, max_order)
                h = random_finite_group(rng, max_order)
                self.pieces[n].append((g, h, random_hom_between(rng, g, h)))
        for n in range(max_degree + 1):
            self.lones[n] = []
            if rng.random() < 0.6:
                self.lones[n].append(random_finite_group(rng, max_order))
        self.sums = {}
        self.slots = {}  # degree -> list of tags identifying summands
        max_n = max_degree + 1
        for n in range(max_n + 1):
            summands = []
            tags = []
            for idx, (g, h, f) in enumerate(self.pieces.get(n - 1, [])):
                summands.append(h)
                tags.append(("end", n - 1, idx))
            for idx, (g, h, f) in enumerate(self.pieces.get(n, [])):
                summands.append(g)
                tags.append(("start", n, idx))
            for idx, g in enumerate(self.lones.get(n, [])):
                summands.append(g)
                tags.append(("lone", n, idx))
            self.sums[n] = direct_sum(summands)
            self.slots[n] = tags
        levels = {n: ds.group for n, ds in self.sums.items()}
        diffs = {}
        for n in range(max_n):
            d = zero_hom(self.sums[n].group, self.sums[n + 1].group)
            for idx, (g, h, f) in enumerate(self.pieces.get(n, [])):
                src_i = self.slots[n].index(("start", n, idx))
                tgt_i = self.slots[n + 1].index(("end", n, idx))
                d = d + self.sums[n + 1].injections[tgt_i].compose(f).compose(
                    self.sums[n].projections[src_i]
                )
            diffs[n] = d
        self.complex = CochainComplex(levels, diffs)

    def slot_proj(self, n, tag):
        return self.sums[n].projections[self.slots[n].index(tag)]

    def slot_inj(self, n, tag):
        return self.sums[n].injections[self.slots[n].index(tag)]


def random_two_row_bicomplex(rng: random.Random, max_degree: int = 3, max_order: int = 64) -> TwoRowBicomplex:
    r0 = _Row(rng, max_degree, max_order)
    r1 = _Row(rng, max_degree, max_order)
    degs = sorted(set(r0.sums) | set(r1.sums))
    comps = {n: zero_hom(r0.complex.level(n), r1.complex.level(n)) for n in degs}

    # piece-to-piece maps (t: H_p -> G_q gives the chain pair (t f, g t))
    for n in r0.pieces:
        for i, (g0, h0, f0) in enumerate(r0.pieces[n]):
            for j, (g1, h1, f1) in enumerate(r1.pieces.get(n, [])):
                if rng.random() < 0.7:
                    t = random_hom_between(rng, h0, g1)
                    u = t.compose(f0)
                    w = f1.compose(t)
                    comps[n] = comps[n] + r1.slot_inj(n, ("start", n, j)).compose(u).compose(
                        r0.slot_proj(n, ("start", n, i))
                    )
                    comps[n + 1] = comps[n + 1] + r1.slot_inj(n + 1, ("end", n, j)).compose(
                        w
                    ).compose(r0.slot_proj(n + 1, ("end", n, i)))

    # lone-to-lone maps: free components of the chain map
    for n in r0.lones:
        for i, g0 in enumerate(r0.lones[n]):
            for j, g1 in enumerate(r1.lones.get(n, [])):
                if rng.random() < 0.7:
                    comps[n] = comps[n] + r1.slot_inj(n, ("lone", n, j)).compose(
                        random_hom_between(rng, g0, g1)
                    ).compose(r0.slot_proj(n, ("lone", n, i)))

    # homotopy-shaped terms d h + h d for random h of degree -1
    hmaps = {
        n: random_hom_between(rng, r0.complex.level(n), r1.complex.level(n - 1))
        for n in degs
        if rng.random() < 0.5
    }
    for n in degs:
        h_n = hmaps.get(n, zero_hom(r0.complex.level(n), r1.complex.level(n - 1)))
        h_n1 = hmaps.get(n + 1, zero_hom(r0.complex.level(n + 1), r1.complex.level(n)))
        comps[n] = comps[n] + r1.complex.differential(n - 1).compose(h_n) + h_n1.compose(
            r0.complex.differential(n)
        )

    vertical = ChainMap(r0.complex, r1.complex, comps)
    return TwoRowBicomplex(r0.complex, r1.complex, vertical)


def random_endo_bicomplex(rng: random.Random, max_degree: int = 2) -> TwoRowBicomplex:
    """row1 = row0 with vertical = id - (scalar + homotopy) endomorphism."""
    r0 = _Row(rng, max_degree)
    c = r0.complex
    degs = sorted(r0.sums)
    m = rng.randint(-2, 2)
    comps = {n: identity_hom(c.level(n)) - identity_hom(c.level(n)).scale(m) for n in degs}
    hmaps = {
        n: random_hom_between(rng, c.level(n), c.level(n - 1))
        for n in degs
        if rng.random() < 0.5
    }
    for n in degs:
        h_n = hmaps.get(n, zero_hom(c.level(n), c.level(n - 1)))
        h_n1 = hmaps.get(n + 1, zero_hom(c.level(n + 1), c.level(n)))
        comps[n] = comps[n] - (
            c.differential(n - 1).compose(h_n) + h_n1.compose(c.differential(n))
        )
    vertical = ChainMap(c, c, comps)
    return TwoRowBicomplex(c, c, vertical)
