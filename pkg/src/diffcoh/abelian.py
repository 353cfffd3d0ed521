"""Finitely generated abelian groups in invariant-factor form.

A group is always stored canonically: torsion coordinates first (invariant
factors d_1 | d_2 | ... , each >= 2), then free coordinates.  Two groups are
equal iff their invariant data coincide, so isomorphism testing is ``==``.

Groups obtained as cokernels carry a :class:`CokernelWitness` so that
elements of the ambient presentation can be projected to canonical
coordinates and canonical coordinates lifted back to representatives.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .linalg import (
    Rows,
    kernel_basis,
    mat_identity,
    mat_mul,
    mat_vec,
    smith_normal_form,
    solve_integer,
)


@dataclass(frozen=True)
class CokernelWitness:
    """Change-of-basis data for G = Z^ambient / column-lattice(presentation).

    ``project`` maps an ambient vector to canonical coordinates; ``lift``
    picks the standard representative of a canonical coordinate vector.
    """

    ambient: int
    presentation: tuple[tuple[int, ...], ...]  # ambient x r relation matrix
    u: tuple[tuple[int, ...], ...]             # unimodular, rows index new basis
    uinv: tuple[tuple[int, ...], ...]
    kept: tuple[int, ...]                      # indices of retained coordinates

    def project(self, vec: Sequence[int]) -> list[int]:
        y = mat_vec([list(r) for r in self.u], list(vec))
        return [y[i] for i in self.kept]

    def lift(self, coords: Sequence[int]) -> list[int]:
        out = [0] * self.ambient
        for c, i in zip(coords, self.kept):
            if c:
                for row in range(self.ambient):
                    out[row] += c * self.uinv[row][i]
        return out


@dataclass(frozen=True, eq=False)
class FgAbGroup:
    free_rank: int
    torsion: tuple[int, ...] = ()
    witness: CokernelWitness | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError("invariant factors must form a divisibility chain")
        if any(d < 2 for d in self.torsion):
            raise ValueError("invariant factors must be >= 2")

    # Structural equality: the canonical form is the isomorphism type.
    def __eq__(self, other):
        if not isinstance(other, FgAbGroup):
            return NotImplemented
        return self.free_rank == other.free_rank and self.torsion == other.torsion

    def __hash__(self):
        return hash((self.free_rank, self.torsion))

    def __repr__(self):
        return f"FgAbGroup({self.notation()})"

    @property
    def ncoords(self) -> int:
        return len(self.torsion) + self.free_rank

    def is_trivial(self) -> bool:
        return self.ncoords == 0

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int:
        if not self.is_finite():
            raise ValueError("infinite group")
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def reduce(self, coords: Sequence[int]) -> tuple[int, ...]:
        if len(coords) != self.ncoords:
            raise ValueError("coordinate length mismatch")
        out = []
        for i, c in enumerate(coords):
            out.append(c % self.torsion[i] if i < len(self.torsion) else c)
        return tuple(out)

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.ncoords)

    def element(self, coords: Sequence[int]) -> "GroupElement":
        return GroupElement(self, self.reduce(coords))

    def generators(self) -> list["GroupElement"]:
        n = self.ncoords
        return [self.element([1 if j == i else 0 for j in range(n)]) for i in range(n)]

    def notation(self) -> str:
        """Human notation 'Z^r + Z/d1 + Z/d2' with the divisibility chain."""
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


TRIVIAL_GROUP = FgAbGroup(0, ())


def free_group(rank: int) -> FgAbGroup:
    return FgAbGroup(rank, ())


def cyclic_group(n: int) -> FgAbGroup:
    if n == 0:
        return FgAbGroup(1, ())
    if n == 1:
        return TRIVIAL_GROUP
    return FgAbGroup(0, (n,))


def group_from_factors(factors: Sequence[int]) -> FgAbGroup:
    """Canonical form of a direct sum of cyclic groups Z/f (f=0 means Z)."""
    diag = [[0] * len(factors) for _ in range(len(factors))]
    for i, f in enumerate(factors):
        diag[i][i] = f
    return cokernel(diag, ambient=len(factors))


@dataclass(frozen=True)
class GroupElement:
    group: FgAbGroup
    coords: tuple[int, ...]

    def __post_init__(self):
        if self.coords != self.group.reduce(self.coords):
            raise ValueError("coordinates not reduced")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        if self.group != other.group:
            raise ValueError("elements of different groups")
        return self.group.element([a + b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> "GroupElement":
        return self.group.element([-a for a in self.coords])

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def scale(self, n: int) -> "GroupElement":
        return self.group.element([n * a for a in self.coords])

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)


def element_equal(a: GroupElement, b: GroupElement) -> bool:
    return a.group == b.group and a.group.reduce(a.coords) == b.group.reduce(b.coords)


def enumerate_elements(group: FgAbGroup) -> Iterator[GroupElement]:
    """All elements of a finite group in lexicographic coordinate order."""
    if not group.is_finite():
        raise ValueError("infinite group")
    ranges = [range(d) for d in group.torsion]
    for coords in itertools.product(*ranges):
        yield GroupElement(group, tuple(coords))


class GroupHom:
    """Homomorphism on canonical coordinates, well-definedness checked eagerly.

    The matrix has shape (target.ncoords, source.ncoords) and acts on column
    vectors; torsion rows are stored reduced mod the target invariant factor.
    """

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: FgAbGroup, target: FgAbGroup, matrix: Sequence[Sequence[int]]):
        rows = [list(map(int, r)) for r in matrix]
        if len(rows) != target.ncoords or any(len(r) != source.ncoords for r in rows):
            raise ValueError("hom matrix shape mismatch")
        nt = len(target.torsion)
        for i in range(nt):
            d = target.torsion[i]
            rows[i] = [x % d for x in rows[i]]
        # Well-definedness: d_i * column_i must vanish in the target.
        for j, d in enumerate(source.torsion):
            for i in range(target.ncoords):
                x = d * rows[i][j]
                if i < nt:
                    if x % target.torsion[i]:
                        raise ValueError("matrix does not define a homomorphism")
                elif x != 0:
                    raise ValueError("matrix does not define a homomorphism")
        self.source = source
        self.target = target
        self.matrix = tuple(tuple(r) for r in rows)

    def __call__(self, el: GroupElement) -> GroupElement:
        if el.group != self.source:
            raise ValueError("element not in source group")
        return self.target.element(mat_vec(self.mat_rows(), list(el.coords)))

    def mat_rows(self) -> Rows:
        return [list(r) for r in self.matrix]

    def apply_coords(self, coords: Sequence[int]) -> tuple[int, ...]:
        return self.target.reduce(mat_vec(self.mat_rows(), list(coords)))

    def compose(self, inner: "GroupHom") -> "GroupHom":
        """self o inner."""
        if inner.target != self.source:
            raise ValueError("composition mismatch")
        prod = mat_mul(self.mat_rows(), inner.mat_rows(), inner.source.ncoords)
        return GroupHom(inner.source, self.target, prod)

    def __add__(self, other: "GroupHom") -> "GroupHom":
        if self.source != other.source or self.target != other.target:
            raise ValueError("hom addition mismatch")
        m = [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.matrix, other.matrix)]
        return GroupHom(self.source, self.target, m)

    def __sub__(self, other: "GroupHom") -> "GroupHom":
        return self + other.scale(-1)

    def scale(self, n: int) -> "GroupHom":
        return GroupHom(self.source, self.target, [[n * x for x in r] for r in self.matrix])

    def __eq__(self, other):
        if not isinstance(other, GroupHom):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.matrix == other.matrix
        )

    def __repr__(self):
        return f"GroupHom({self.source.notation()} -> {self.target.notation()}, {self.matrix})"

    def is_zero(self) -> bool:
        return all(all(x == 0 for x in r) for r in self.matrix)


def identity_hom(group: FgAbGroup) -> GroupHom:
    return GroupHom(group, group, mat_identity(group.ncoords))


def zero_hom(source: FgAbGroup, target: FgAbGroup) -> GroupHom:
    return GroupHom(source, target, [[0] * source.ncoords for _ in range(target.ncoords)])


def relation_matrix(group: FgAbGroup) -> Rows:
    """Columns generating the relation lattice in canonical coordinates."""
    n = group.ncoords
    cols = len(group.torsion)
    rel = [[0] * cols for _ in range(n)]
    for i, d in enumerate(group.torsion):
        rel[i][i] = d
    return rel


def cokernel(M: Sequence[Sequence[int]], ambient: int | None = None) -> FgAbGroup:
    """Z^ambient modulo the column lattice of M, with projection witness.

    M has ``ambient`` rows; each column is a relation.
    """
    rows = [list(map(int, r)) for r in M]
    n = ambient if ambient is not None else len(rows)
    if len(rows) != n:
        raise ValueError("ambient dimension mismatch")
    ncols = len(rows[0]) if rows else 0
    sf = smith_normal_form(rows, cols=ncols)
    diag = sf.diagonal
    torsion = []
    kept = []
    for i in range(n):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            continue  # free coordinate, collected below
        if d >= 2:
            torsion.append(d)
            kept.append(i)
        # d == 1: coordinate dies
    free = []
    for i in range(n):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            free.append(i)
    witness = CokernelWitness(
        ambient=n,
        presentation=tuple(tuple(r) for r in rows),
        u=sf.U.entries,
        uinv=sf.Uinv.entries,
        kept=tuple(kept + free),
    )
    return FgAbGroup(len(free), tuple(torsion), witness)


def hom_from_images(source: FgAbGroup, target: FgAbGroup, images: Sequence[Sequence[int]]) -> GroupHom:
    """Hom sending the i-th canonical generator to the i-th coordinate vector."""
    cols = [list(v) for v in images]
    if len(cols) != source.ncoords:
        raise ValueError("need one image per generator")
    matrix = [[cols[j][i] for j in range(len(cols))] for i in range(target.ncoords)]
    return GroupHom(source, target, matrix)


def subgroup_from_generators(
    group: FgAbGroup, vectors: Sequence[Sequence[int]]
) -> tuple[FgAbGroup, GroupHom]:
    """Subgroup generated by coordinate vectors, with its inclusion hom.

    The subgroup is returned in canonical form; the inclusion sends its
    canonical generators to elements of ``group``.
    """
    k = group.ncoords
    gens = [list(map(int, v)) for v in vectors]
    s = len(gens)
    # Relations among the generators: y with W y = 0 in the group, i.e.
    # W y lies in the relation lattice.
    w = [[gens[j][i] for j in range(s)] for i in range(k)]  # k x s
    rel = relation_matrix(group)
    aug = [w[i] + rel[i] for i in range(k)]  # k x (s + #torsion)
    kb = kernel_basis(aug, cols=s + len(group.torsion))
    y_lattice = [[col[i] for col in kb] for i in range(s)]  # s x (#basis)
    sub = cokernel(y_lattice, ambient=s)
    # Inclusion: canonical coords of sub -> lift to generator combination -> group.
    incl_cols = []
    for i in range(sub.ncoords):
        unit = [1 if j == i else 0 for j in range(sub.ncoords)]
        ycoords = sub.witness.lift(unit)
        vec = mat_vec(w, ycoords)
        incl_cols.append(group.reduce(vec))
    incl = hom_from_images(sub, group, incl_cols)
    return sub, incl


def vector_in_subgroup(
    group: FgAbGroup, generators: Sequence[Sequence[int]], vec: Sequence[int]
) -> bool:
    """Membership of ``vec`` in the subgroup generated by ``generators``."""
    k = group.ncoords
    gens = [list(v) for v in generators]
    w = [[g[i] for g in gens] for i in range(k)]
    rel = relation_matrix(group)
    aug = [w[i] + rel[i] for i in range(k)]
    return solve_integer(aug, list(vec), cols=len(gens) + len(group.torsion)) is not None


def kernel(h: GroupHom) -> tuple[FgAbGroup, GroupHom]:
    """Kernel subgroup with explicit inclusion into the source."""
    src, tgt = h.source, h.target
    # x with h(x) in the relation lattice of the target.
    m = h.mat_rows()
    rel = relation_matrix(tgt)
    aug = [m[i] + rel[i] for i in range(tgt.ncoords)]
    ncols = src.ncoords + len(tgt.torsion)
    kb = kernel_basis(aug, cols=ncols)
    gens = []
    for col in kb:
        gens.append(src.reduce(col[: src.ncoords]))
    # Torsion relations of the source are kernel members automatically, but
    # subgroup_from_generators quotients by them; generators suffice.
    return subgroup_from_generators(src, gens)


def image(h: GroupHom) -> tuple[FgAbGroup, GroupHom]:
    """Image subgroup with inclusion into the target."""
    cols = [tuple(r[j] for r in h.matrix) for j in range(h.source.ncoords)]
    return subgroup_from_generators(h.target, [list(c) for c in cols])


def coker_of_hom(h: GroupHom) -> tuple[FgAbGroup, GroupHom]:
    """Cokernel with the canonical projection from the target."""
    tgt = h.target
    m = h.mat_rows()
    rel = relation_matrix(tgt)
    pres = [m[i] + rel[i] for i in range(tgt.ncoords)]
    cok = cokernel(pres, ambient=tgt.ncoords)
    proj_matrix = []
    for i in range(cok.ncoords):
        proj_matrix.append([0] * tgt.ncoords)
    for j in range(tgt.ncoords):
        unit = [1 if i == j else 0 for i in range(tgt.ncoords)]
        coords = cok.witness.project(unit)
        for i in range(cok.ncoords):
            proj_matrix[i][j] = coords[i]
    proj = GroupHom(tgt, cok, proj_matrix)
    return cok, proj


def is_monic(h: GroupHom) -> bool:
    k, _ = kernel(h)
    return k.is_trivial()


def is_epic(h: GroupHom) -> bool:
    c, _ = coker_of_hom(h)
    return c.is_trivial()


def factor_through_inclusion(incl: GroupHom, h: GroupHom) -> GroupHom:
    """Given h with image inside the subgroup im(incl), the hom g with incl o g = h.

    Raises ValueError when some generator image does not lie in the subgroup.
    """
    if incl.target != h.target:
        raise ValueError("target mismatch")
    sub = incl.source
    tgt = incl.target
    m = incl.mat_rows()
    rel = relation_matrix(tgt)
    aug = [m[i] + rel[i] for i in range(tgt.ncoords)]
    ncols = sub.ncoords + len(tgt.torsion)
    cols = []
    for j in range(h.source.ncoords):
        target_vec = [h.matrix[i][j] for i in range(tgt.ncoords)]
        sol = solve_integer(aug, target_vec, cols=ncols)
        if sol is None:
            raise ValueError("map does not factor through the subgroup")
        cols.append(sub.reduce(sol[: sub.ncoords]))
    return hom_from_images(h.source, sub, cols)


@dataclass(frozen=True)
class DirectSum:
    group: FgAbGroup
    injections: tuple[GroupHom, ...]
    projections: tuple[GroupHom, ...]
    summands: tuple[FgAbGroup, ...]


def direct_sum(groups: Sequence[FgAbGroup]) -> DirectSum:
    """Canonical direct sum with injection and projection witnesses."""
    groups = list(groups)
    offsets = []
    total = 0
    for g in groups:
        offsets.append(total)
        total += g.ncoords
    rel_cols: list[list[int]] = []
    for g, off in zip(groups, offsets):
        for i, d in enumerate(g.torsion):
            col = [0] * total
            col[off + i] = d
            rel_cols.append(col)
    pres = [[c[i] for c in rel_cols] for i in range(total)]
    s = cokernel(pres, ambient=total)
    injections = []
    projections = []
    for g, off in zip(groups, offsets):
        inj_cols = []
        for i in range(g.ncoords):
            vec = [0] * total
            vec[off + i] = 1
            inj_cols.append(s.witness.project(vec))
        injections.append(hom_from_images(g, s, inj_cols))
        proj_cols = []
        for i in range(s.ncoords):
            unit = [1 if j == i else 0 for j in range(s.ncoords)]
            amb = s.witness.lift(unit)
            proj_cols.append(g.reduce(amb[off : off + g.ncoords]))
        projections.append(hom_from_images(s, g, proj_cols))
    return DirectSum(s, tuple(injections), tuple(projections), tuple(groups))


def subgroups_equal(
    group: FgAbGroup, gens_a: Sequence[Sequence[int]], gens_b: Sequence[Sequence[int]]
) -> bool:
    """Equality of the subgroups generated by two coordinate-vector families."""
    return all(vector_in_subgroup(group, gens_b, v) for v in gens_a) and all(
        vector_in_subgroup(group, gens_a, v) for v in gens_b
    )
