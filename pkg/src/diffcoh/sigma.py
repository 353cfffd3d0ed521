"""Difference abelian groups (Z[sigma]-modules) and finite difference groups.

A :class:`SigmaModule` is an abelian group with an endomorphism; its
invariants/coinvariants are the kernel/cokernel of (endo - id).  Finite,
possibly nonabelian groups with an endomorphism are handled by
:class:`FiniteSigmaGroup`, whose Artin-Schreier set is the orbit partition
of g . x = s(g) x g^{-1}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .abelian import (
    FgAbGroup,
    GroupHom,
    coker_of_hom,
    enumerate_elements,
    identity_hom,
    kernel,
)

DEFAULT_ORBIT_CAP = 5040


@dataclass(frozen=True)
class SigmaModule:
    carrier: FgAbGroup
    endo: GroupHom

    def __post_init__(self):
        if self.endo.source != self.carrier or self.endo.target != self.carrier:
            raise ValueError("endomorphism must be a self-map of the carrier")

    def difference_map(self) -> GroupHom:
        """endo - id, the Artin-Schreier map of the module."""
        return self.endo - identity_hom(self.carrier)


def invariants(module: SigmaModule) -> tuple[FgAbGroup, GroupHom]:
    """ker(endo - id) with its inclusion."""
    return kernel(module.difference_map())


def coinvariants(module: SigmaModule) -> tuple[FgAbGroup, GroupHom]:
    """coker(endo - id) with its projection."""
    return coker_of_hom(module.difference_map())


def point_difference_cohomology(module: SigmaModule, top_degree: int = 2) -> list[FgAbGroup]:
    """[H^0, H^1, 0, ...]: invariants, coinvariants, then zero."""
    h0, _ = invariants(module)
    h1, _ = coinvariants(module)
    from .abelian import TRIVIAL_GROUP

    return [h0, h1] + [TRIVIAL_GROUP] * max(0, top_degree - 1)


class FiniteGroup:
    """Finite group given by labels and a multiplication table of indices."""

    __slots__ = ("labels", "table", "identity", "inverse")

    def __init__(self, labels: Sequence[str], table: Sequence[Sequence[int]], check: bool = True):
        n = len(labels)
        self.labels = tuple(str(x) for x in labels)
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise ValueError("multiplication table shape mismatch")
        ident = None
        for e in range(n):
            if all(self.table[e][x] == x and self.table[x][e] == x for x in range(n)):
                ident = e
                break
        if ident is None:
            raise ValueError("no identity element")
        self.identity = ident
        inv = [None] * n
        for x in range(n):
            for y in range(n):
                if self.table[x][y] == ident and self.table[y][x] == ident:
                    inv[x] = y
                    break
            if inv[x] is None:
                raise ValueError("element without inverse")
        self.inverse = tuple(inv)
        if check and n <= 200:
            for a in range(n):
                for b in range(n):
                    ab = self.table[a][b]
                    for c in range(n):
                        if self.table[ab][c] != self.table[a][self.table[b][c]]:
                            raise ValueError("table is not associative")

    def __len__(self):
        return len(self.labels)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def is_abelian(self) -> bool:
        n = len(self.labels)
        return all(self.table[a][b] == self.table[b][a] for a in range(n) for b in range(n))


def check_endo(group: FiniteGroup, endo: Sequence[int]) -> tuple[int, ...]:
    endo = tuple(int(x) for x in endo)
    n = len(group)
    if len(endo) != n or any(not 0 <= e < n for e in endo):
        raise ValueError("endomorphism map shape mismatch")
    for a in range(n):
        for b in range(n):
            if endo[group.mul(a, b)] != group.mul(endo[a], endo[b]):
                raise ValueError("self-map is not a homomorphism")
    return endo


@dataclass(frozen=True)
class FiniteSigmaGroup:
    group: FiniteGroup
    endo: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "endo", check_endo(self.group, self.endo))


def as_orbits(sg: FiniteSigmaGroup, cap: int = DEFAULT_ORBIT_CAP) -> list[list[int]]:
    """Orbits of g . x = s(g) x g^{-1}; the orbit of the identity comes first.

    Orbits are sorted by least member, members ascending; deterministic.
    """
    g = sg.group
    n = len(g)
    if n > cap:
        raise ValueError(f"group order {n} exceeds orbit enumeration cap {cap}")
    seen = [False] * n
    orbits = []
    for start in range(n):
        if seen[start]:
            continue
        orbit = []
        stack = [start]
        seen[start] = True
        while stack:
            x = stack.pop()
            orbit.append(x)
            for a in range(n):
                y = g.mul(g.mul(sg.endo[a], x), g.inv(a))
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
        orbits.append(sorted(orbit))
    orbits.sort(key=lambda o: o[0])
    ident_orbit = next(o for o in orbits if g.identity in o)
    orbits.remove(ident_orbit)
    return [ident_orbit] + orbits


def cyclic_table(n: int) -> FiniteGroup:
    labels = [str(i) for i in range(n)]
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup(labels, table, check=False)


def symmetric_group_s3() -> FiniteGroup:
    """S3 as permutations of (0,1,2), composition s1*s2 = s1 after s2."""
    perms = list(itertools.permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    table = [
        [index[tuple(p1[p2[k]] for k in range(3))] for p2 in perms]
        for p1 in perms
    ]
    labels = ["".join(map(str, p)) for p in perms]
    return FiniteGroup(labels, table)


def product_group(groups: Sequence[FiniteGroup]) -> tuple[FiniteGroup, list[tuple[int, ...]]]:
    """Direct product; returns the group and the tuple coordinates per index."""
    tuples = list(itertools.product(*[range(len(g)) for g in groups]))
    index = {t: i for i, t in enumerate(tuples)}
    table = []
    for t1 in tuples:
        row = []
        for t2 in tuples:
            row.append(index[tuple(g.mul(a, b) for g, a, b in zip(groups, t1, t2))])
        table.append(row)
    labels = ["(" + ",".join(groups[i].labels[t[i]] for i in range(len(groups))) + ")" for t in tuples]
    return FiniteGroup(labels, table, check=False), tuples


def finite_group_from_module(group: FgAbGroup) -> tuple[FiniteGroup, dict]:
    """Multiplication table of a finite FgAbGroup; returns coordinate index maps."""
    els = [e.coords for e in enumerate_elements(group)]
    index = {c: i for i, c in enumerate(els)}
    table = []
    for a in els:
        row = []
        for b in els:
            row.append(index[group.reduce([x + y for x, y in zip(a, b)])])
        table.append(row)
    labels = [",".join(map(str, c)) for c in els]
    return FiniteGroup(labels, table, check=False), {"coords": els, "index": index}


def sigma_group_from_module(module: SigmaModule) -> tuple[FiniteSigmaGroup, dict]:
    """Finite sigma-group view of a finite SigmaModule (for orbit oracles)."""
    fg, maps = finite_group_from_module(module.carrier)
    endo = [maps["index"][module.endo.apply_coords(c)] for c in maps["coords"]]
    return FiniteSigmaGroup(fg, tuple(endo)), maps
