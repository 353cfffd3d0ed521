"""Bounded cochain complexes of f.g. abelian groups and two-row bicomplexes.

The central objects: cohomology with representative witnesses, chain maps
and their induced maps on cohomology, the total (cone) cohomology of a
two-row bicomplex with vertical differential, and the degreewise short
exact sequence

    0 -> coker(H^{n-1}(vertical)) -> H^n_tot -> ker(H^n(vertical)) -> 0

extracted with explicit connecting homomorphisms and verified exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .abelian import (
    DirectSum,
    FgAbGroup,
    GroupHom,
    TRIVIAL_GROUP,
    coker_of_hom,
    direct_sum,
    factor_through_inclusion,
    hom_from_images,
    identity_hom,
    kernel,
    relation_matrix,
    subgroups_equal,
    zero_hom,
)
from .linalg import Rows, mat_vec, solve_integer


class CochainComplex:
    """Bounded complex: degree -> group, with differentials d^n: C^n -> C^{n+1}.

    Degrees not listed carry the trivial group; d o d = 0 is checked at
    construction.
    """

    def __init__(self, levels: Mapping[int, FgAbGroup], differentials: Mapping[int, GroupHom]):
        self.levels = {d: g for d, g in levels.items() if not g.is_trivial()}
        self.differentials = {}
        for n, h in differentials.items():
            if h.source != self.level(n) or h.target != self.level(n + 1):
                raise ValueError(f"differential at degree {n} has wrong endpoints")
            if not h.is_zero():
                self.differentials[n] = h
        for n in list(self.differentials):
            nxt = self.differential(n + 1)
            comp = nxt.compose(self.differentials[n])
            if not comp.is_zero():
                raise ValueError(f"d o d != 0 at degree {n}")

    def level(self, n: int) -> FgAbGroup:
        return self.levels.get(n, TRIVIAL_GROUP)

    def differential(self, n: int) -> GroupHom:
        h = self.differentials.get(n)
        if h is not None:
            return h
        return zero_hom(self.level(n), self.level(n + 1))

    def degrees(self) -> list[int]:
        return sorted(self.levels)

    def min_degree(self) -> int:
        return min(self.levels, default=0)

    def max_degree(self) -> int:
        return max(self.levels, default=0)


class ChainMap:
    """Degreewise map of complexes commuting with the differentials."""

    def __init__(self, source: CochainComplex, target: CochainComplex, components: Mapping[int, GroupHom]):
        self.source = source
        self.target = target
        self.components = {}
        for n, h in components.items():
            if h.source != source.level(n) or h.target != target.level(n):
                raise ValueError(f"chain map component at degree {n} has wrong endpoints")
            if not h.is_zero():
                self.components[n] = h
        degs = set(source.levels) | set(target.levels)
        for n in degs:
            lhs = target.differential(n).compose(self.component(n))
            rhs = self.component(n + 1).compose(source.differential(n))
            if lhs != rhs:
                raise ValueError(f"does not commute with differentials at degree {n}")

    def component(self, n: int) -> GroupHom:
        h = self.components.get(n)
        if h is not None:
            return h
        return zero_hom(self.source.level(n), self.target.level(n))


def identity_chain_map(c: CochainComplex) -> ChainMap:
    return ChainMap(c, c, {n: identity_hom(c.level(n)) for n in c.degrees()})


def zero_chain_map(source: CochainComplex, target: CochainComplex) -> ChainMap:
    return ChainMap(source, target, {})


@dataclass
class DegreeCohomology:
    """H^n = ker(d^n)/im(d^{n-1}) together with lifting witnesses.

    ``rep`` is a raw coordinate section H^n -> level^n (a linear choice of
    cocycle representatives, not a homomorphism).
    """

    group: FgAbGroup
    cocycles: FgAbGroup
    incl: GroupHom          # cocycles -> level^n
    proj: GroupHom          # cocycles -> H^n
    rep: Rows               # level-coordinates of canonical H^n generators

    def classify(self, level: FgAbGroup, vec: Sequence[int]) -> tuple[int, ...]:
        """Class of a cocycle coordinate vector in canonical H^n coordinates."""
        m = self.incl.mat_rows()
        rel = relation_matrix(level)
        aug = [m[i] + rel[i] for i in range(level.ncoords)]
        sol = solve_integer(aug, list(vec), cols=self.cocycles.ncoords + len(level.torsion))
        if sol is None:
            raise ValueError("vector is not a cocycle")
        return self.proj.apply_coords(sol[: self.cocycles.ncoords])


def cohomology_with_witnesses(c: CochainComplex) -> dict[int, DegreeCohomology]:
    out: dict[int, DegreeCohomology] = {}
    if not c.levels:
        return out
    lo, hi = c.min_degree(), c.max_degree()
    for n in range(lo, hi + 1):
        zn, incl = kernel(c.differential(n))
        dprev = c.differential(n - 1)
        boundary = factor_through_inclusion(incl, dprev)
        hn, proj = coker_of_hom(boundary)
        # representative section: H^n coords -> cocycle coords -> level coords
        rep_cols = []
        for i in range(hn.ncoords):
            unit = [1 if j == i else 0 for j in range(hn.ncoords)]
            zcoords = hn.witness.lift(unit)
            rep_cols.append(mat_vec(incl.mat_rows(), zcoords))
        rep = [[col[i] for col in rep_cols] for i in range(c.level(n).ncoords)]
        out[n] = DegreeCohomology(group=hn, cocycles=zn, incl=incl, proj=proj, rep=rep)
    return out


def cohomology(c: CochainComplex) -> dict[int, FgAbGroup]:
    """H^n in canonical form for every degree in the support of the complex."""
    return {n: data.group for n, data in cohomology_with_witnesses(c).items()}


def induced_on_cohomology(
    f: ChainMap,
    source_coh: dict[int, DegreeCohomology] | None = None,
    target_coh: dict[int, DegreeCohomology] | None = None,
) -> dict[int, GroupHom]:
    """Well-defined maps H^n(source) -> H^n(target) via representative lifting."""
    if source_coh is None:
        source_coh = cohomology_with_witnesses(f.source)
    if target_coh is None:
        target_coh = cohomology_with_witnesses(f.target)
    out = {}
    degs = sorted(set(source_coh) | set(target_coh))
    for n in degs:
        hs = source_coh[n].group if n in source_coh else TRIVIAL_GROUP
        ht = target_coh[n].group if n in target_coh else TRIVIAL_GROUP
        if hs.is_trivial() or ht.is_trivial():
            out[n] = zero_hom(hs, ht)
            continue
        cols = []
        comp = f.component(n)
        for i in range(hs.ncoords):
            unit = [1 if j == i else 0 for j in range(hs.ncoords)]
            level_vec = mat_vec(source_coh[n].rep, unit)
            img = mat_vec(comp.mat_rows(), level_vec)
            cols.append(target_coh[n].classify(f.target.level(n), img))
        out[n] = hom_from_images(hs, ht, cols)
    return out


class TwoRowBicomplex:
    """Rows row0, row1 joined by a vertical chain map (res - sigma shape).

    Total complex convention: Tot^n = row1^{n-1} (+) row0^n with
    d(a, b) = (d_row1(a) + (-1)^n vertical(b), d_row0(b)).
    """

    def __init__(self, row0: CochainComplex, row1: CochainComplex, vertical: ChainMap):
        if vertical.source is not row0 and (vertical.source.levels != row0.levels):
            raise ValueError("vertical must start at row0")
        if vertical.target is not row1 and (vertical.target.levels != row1.levels):
            raise ValueError("vertical must end at row1")
        self.row0 = row0
        self.row1 = row1
        self.vertical = vertical
        self._total: tuple[CochainComplex, dict[int, DirectSum]] | None = None

    def total_complex(self, sign: int = 1) -> tuple[CochainComplex, dict[int, DirectSum]]:
        """The explicit total complex and per-degree direct-sum witnesses.

        ``sign=-1`` flips the (-1)^n decoration to (-1)^{n+1}; the cohomology
        must not change (tested invariant).
        """
        if sign == 1 and self._total is not None:
            return self._total
        degs = set()
        for n in self.row0.degrees():
            degs.add(n)
        for n in self.row1.degrees():
            degs.add(n + 1)
        if not degs:
            c = CochainComplex({}, {})
            return c, {}
        lo, hi = min(degs), max(degs)
        sums: dict[int, DirectSum] = {}
        for n in range(lo, hi + 2):
            sums[n] = direct_sum([self.row1.level(n - 1), self.row0.level(n)])
        levels = {n: ds.group for n, ds in sums.items()}
        diffs = {}
        for n in range(lo, hi + 1):
            src, tgt = sums[n], sums[n + 1]
            inj_a, inj_b = tgt.injections  # row1^n, row0^{n+1}
            proj_a, proj_b = src.projections  # row1^{n-1}, row0^n
            eps = sign * (1 if n % 2 == 0 else -1)
            d = (
                inj_a.compose(self.row1.differential(n - 1)).compose(proj_a)
                + inj_a.compose(self.vertical.component(n)).compose(proj_b).scale(eps)
                + inj_b.compose(self.row0.differential(n)).compose(proj_b)
            )
            diffs[n] = d
        total = CochainComplex(levels, diffs)
        if sign == 1:
            self._total = (total, sums)
        return total, sums


def total_cohomology(b: TwoRowBicomplex, sign: int = 1) -> dict[int, FgAbGroup]:
    total, _ = b.total_complex(sign=sign)
    coh = cohomology(total)
    return coh


@dataclass
class SesReport:
    """0 -> left -> middle -> right -> 0 with explicit maps and exactness flag."""

    left: FgAbGroup
    middle: FgAbGroup
    right: FgAbGroup
    inject: GroupHom
    surject: GroupHom
    exact: bool

    def orders_multiply(self) -> bool:
        if not (self.left.is_finite() and self.middle.is_finite() and self.right.is_finite()):
            return True
        return self.middle.order() == self.left.order() * self.right.order()


def _verify_exact(report_left, report_middle, report_right, inject, surject) -> bool:
    from .abelian import is_epic, is_monic

    if not is_monic(inject):
        return False
    if not is_epic(surject):
        return False
    img_gens = [
        [inject.matrix[i][j] for i in range(report_middle.ncoords)]
        for j in range(report_left.ncoords)
    ]
    ker_group, ker_incl = kernel(surject)
    ker_gens = [
        [ker_incl.matrix[i][j] for i in range(report_middle.ncoords)]
        for j in range(ker_group.ncoords)
    ]
    return subgroups_equal(report_middle, img_gens, ker_gens)


def extract_ses(b: TwoRowBicomplex) -> dict[int, SesReport]:
    """The degreewise SES of the two-row bicomplex, built and checked exactly."""
    coh0 = cohomology_with_witnesses(b.row0)
    coh1 = cohomology_with_witnesses(b.row1)
    induced = induced_on_cohomology(b.vertical, coh0, coh1)
    total, sums = b.total_complex()
    coh_tot = cohomology_with_witnesses(total)
    degs = sorted(set(coh_tot) | set(n for n in induced) | set(n + 1 for n in induced))
    out: dict[int, SesReport] = {}
    for n in degs:
        h_tot = coh_tot[n].group if n in coh_tot else TRIVIAL_GROUP
        prev = induced.get(n - 1)
        if prev is None:
            prev = zero_hom(
                coh0[n - 1].group if n - 1 in coh0 else TRIVIAL_GROUP,
                coh1[n - 1].group if n - 1 in coh1 else TRIVIAL_GROUP,
            )
        cur = induced.get(n)
        if cur is None:
            cur = zero_hom(
                coh0[n].group if n in coh0 else TRIVIAL_GROUP,
                coh1[n].group if n in coh1 else TRIVIAL_GROUP,
            )
        left, left_proj = coker_of_hom(prev)
        right, right_incl = kernel(cur)

        # inject: lift a left class to a row1^{n-1} cocycle a; (a, 0) is a
        # total cocycle since d(a) = 0 and the vertical term vanishes.
        inj_cols = []
        if not left.is_trivial() and n in sums:
            inj_first = sums[n].injections[0]
            for i in range(left.ncoords):
                unit = [1 if j == i else 0 for j in range(left.ncoords)]
                h1_coords = left.witness.lift(unit)
                level_vec = mat_vec(coh1[n - 1].rep, h1_coords) if n - 1 in coh1 else []
                tot_vec = mat_vec(inj_first.mat_rows(), level_vec)
                inj_cols.append(coh_tot[n].classify(total.level(n), tot_vec))
            inject = hom_from_images(left, h_tot, inj_cols)
        else:
            inject = zero_hom(left, h_tot)

        # surject: represent a total class, project to row0^n, classify the
        # cocycle in H^n(row0), then factor through ker(H^n(vertical)).
        if not h_tot.is_trivial() and n in sums:
            proj_second = sums[n].projections[1]
            cols = []
            for i in range(h_tot.ncoords):
                unit = [1 if j == i else 0 for j in range(h_tot.ncoords)]
                tot_vec = mat_vec(coh_tot[n].rep, unit)
                b_vec = mat_vec(proj_second.mat_rows(), tot_vec)
                if n in coh0:
                    cls = coh0[n].classify(b.row0.level(n), b_vec)
                else:
                    cls = ()
                cols.append(cls)
            to_h0 = hom_from_images(
                h_tot, coh0[n].group if n in coh0 else TRIVIAL_GROUP, cols
            )
            surject = factor_through_inclusion(right_incl, to_h0)
        else:
            surject = zero_hom(h_tot, right)

        exact = _verify_exact(left, h_tot, right, inject, surject)
        report = SesReport(left=left, middle=h_tot, right=right, inject=inject, surject=surject, exact=exact)
        if report.left.is_trivial() and report.middle.is_trivial() and report.right.is_trivial():
            continue
        out[n] = report
    return out


def bicomplex_map_induced(
    b1: TwoRowBicomplex, b2: TwoRowBicomplex, comp0: ChainMap, comp1: ChainMap
) -> dict[int, GroupHom]:
    """Map induced on total cohomology by a morphism of two-row bicomplexes.

    ``comp0``/``comp1`` are the row components; they must intertwine the
    verticals: vertical2 o comp0 = comp1 o vertical1 (checked).
    """
    for n in set(b1.row0.degrees()) | set(b2.row0.degrees()):
        lhs = b2.vertical.component(n).compose(comp0.component(n))
        rhs = comp1.component(n).compose(b1.vertical.component(n))
        if lhs != rhs:
            raise ValueError(f"row maps do not intertwine the verticals at degree {n}")
    total1, sums1 = b1.total_complex()
    total2, sums2 = b2.total_complex()
    comps = {}
    for n in sorted(set(sums1) & set(sums2)):
        inj_a2, inj_b2 = sums2[n].injections
        proj_a1, proj_b1 = sums1[n].projections
        comps[n] = inj_a2.compose(comp1.component(n - 1)).compose(proj_a1) + inj_b2.compose(
            comp0.component(n)
        ).compose(proj_b1)
    f = ChainMap(total1, total2, comps)
    return induced_on_cohomology(f)
