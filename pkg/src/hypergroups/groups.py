"""Finite groups as verified multiplication tables, plus subgroup machinery.

Groups enter the library two ways: as explicit tables (verified) or as
permutation sets (closed under composition). Subgroups are bit masks over
the parent's carrier. Everything here feeds the coset constructions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .core import CapExceeded, Multistructure, mask_of, members

DEFAULT_GROUP_CAP = 120


class GroupError(ValueError):
    """A would-be group fails some axiom; kind names the first failure."""

    def __init__(self, kind: str, witness=None):
        self.kind = kind
        self.witness = witness
        msg = kind if witness is None else f"{kind} at {witness}"
        super().__init__(msg)


@dataclass(frozen=True)
class GroupTable:
    """A verified finite group: table[x][y] is the index of x*y."""

    names: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]
    perms: Optional[tuple[tuple[int, ...], ...]] = field(default=None, compare=False)

    @property
    def n(self) -> int:
        return len(self.names)

    def mult(self, x: int, y: int) -> int:
        return self.table[x][y]

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1


def verify_group(table: Sequence[Sequence[int]],
                 names: Optional[Sequence[str]] = None) -> GroupTable:
    """Check a univalent table for the group axioms.

    Failure order: shape, entry range, associativity (lexicographically
    first bad triple), two-sided identity, inverses.
    """
    n = len(table)
    if n == 0 or any(len(row) != n for row in table):
        raise GroupError("shape")
    for x in range(n):
        for y in range(n):
            if not (0 <= table[x][y] < n):
                raise GroupError("range", (x, y))
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if table[table[x][y]][z] != table[x][table[y][z]]:
                    raise GroupError("associativity", (x, y, z))
    identity = None
    for e in range(n):
        if all(table[e][x] == x and table[x][e] == x for x in range(n)):
            identity = e
            break
    if identity is None:
        raise GroupError("identity")
    inverse = [-1] * n
    for x in range(n):
        for y in range(n):
            if table[x][y] == identity and table[y][x] == identity:
                inverse[x] = y
                break
        if inverse[x] == -1:
            raise GroupError("inverse", x)
    if names is None:
        names = tuple(f"g{i}" for i in range(n))
    else:
        names = tuple(names)
        if len(names) != n:
            raise GroupError("names")
    rows = tuple(tuple(row) for row in table)
    return GroupTable(names, rows, identity, tuple(inverse))


def _perm_name(p: tuple[int, ...]) -> str:
    if len(p) <= 10:
        return "".join(str(i) for i in p)
    return ",".join(str(i) for i in p)


def from_permutations(perms: Sequence[Sequence[int]]) -> GroupTable:
    """Build a group from a set of permutations closed under composition.

    Composition is (p*q)[i] = p[q[i]]. Elements are sorted
    lexicographically, which puts the identity first.
    """
    ps = sorted({tuple(p) for p in perms})
    if not ps:
        raise GroupError("shape")
    deg = len(ps[0])
    for p in ps:
        if len(p) != deg or sorted(p) != list(range(deg)):
            raise GroupError("range", p)
    index = {p: i for i, p in enumerate(ps)}
    n = len(ps)
    table = []
    for p in ps:
        row = []
        for q in ps:
            r = tuple(p[q[i]] for i in range(deg))
            if r not in index:
                raise GroupError("closure", (p, q))
            row.append(index[r])
        table.append(tuple(row))
    g = verify_group(table, tuple(_perm_name(p) for p in ps))
    object.__setattr__(g, "perms", tuple(ps))
    return g


def symmetric_group(m: int, cap: int = DEFAULT_GROUP_CAP) -> GroupTable:
    import math
    if m < 1:
        raise ValueError("degree must be >= 1")
    order = math.factorial(m)
    if order > cap:
        raise CapExceeded(f"group order {order} exceeds cap {cap}")
    return from_permutations(list(itertools.permutations(range(m))))


def cyclic_group(m: int) -> GroupTable:
    if m < 1:
        raise ValueError("order must be >= 1")
    table = [[(x + y) % m for y in range(m)] for x in range(m)]
    return verify_group(table, tuple(str(i) for i in range(m)))


def dihedral_group(m: int) -> GroupTable:
    """Symmetries of the regular m-gon, order 2m; element i*2+j is r^i s^j."""
    if m < 1:
        raise ValueError("need m >= 1")

    def idx(i, j):
        return i * 2 + j

    table = []
    for i in range(m):
        for j in range(2):
            row = []
            for k in range(m):
                for l in range(2):
                    # (r^i s^j)(r^k s^l) = r^(i + k*(-1)^j) s^(j xor l)
                    ii = (i + (k if j == 0 else -k)) % m
                    row.append(idx(ii, j ^ l))
            table.append(row)
    names = tuple(f"r{i}" if j == 0 else f"r{i}s" for i in range(m) for j in range(2))
    return verify_group(table, names)


def as_hypergroup(g: GroupTable):
    """The group as a univalent hypergroup on the same carrier."""
    from .core import Hypergroup
    rows = tuple(tuple(1 << g.table[x][y] for y in range(g.n)) for x in range(g.n))
    return Hypergroup.certify(Multistructure(g.names, rows))


@dataclass(frozen=True)
class Subgroup:
    parent: GroupTable
    mask: int

    def __post_init__(self):
        g, m = self.parent, self.mask
        if not (m >> g.identity & 1):
            raise GroupError("identity not in subgroup")
        for x in members(m):
            if not (m >> g.inverse[x] & 1):
                raise GroupError("inverse", x)
            for y in members(m):
                if not (m >> g.table[x][y] & 1):
                    raise GroupError("closure", (x, y))

    @property
    def order(self) -> int:
        return self.mask.bit_count()


def stabilizer_subgroup(g: GroupTable, point: int) -> Subgroup:
    if g.perms is None:
        raise ValueError("stabilizer needs a permutation realization")
    deg = len(g.perms[0])
    if not (0 <= point < deg):
        raise ValueError(f"point {point} out of range for degree {deg}")
    m = mask_of(i for i, p in enumerate(g.perms) if p[point] == point)
    return Subgroup(g, m)


def set_mult(g: GroupTable, amask: int, bmask: int) -> int:
    out = 0
    for a in members(amask):
        row = g.table[a]
        for b in members(bmask):
            out |= 1 << row[b]
    return out


def coset_mask(g: GroupTable, hmask: int, x: int, side: str) -> int:
    """side "right": the coset xH; side "left": the coset Hx."""
    if side == "right":
        return set_mult(g, 1 << x, hmask)
    if side == "left":
        return set_mult(g, hmask, 1 << x)
    raise ValueError(f"side must be 'right' or 'left', got {side!r}")


def generated(g: GroupTable, gens: int) -> int:
    """Mask of the subgroup generated by the masked elements."""
    acc = 1 << g.identity
    frontier = acc
    gens |= mask_of(g.inverse[x] for x in members(gens))
    while frontier:
        new = 0
        for x in members(frontier):
            for s in members(gens):
                y = g.table[x][s]
                if not (acc >> y & 1):
                    new |= 1 << y
        acc |= new
        frontier = new
    return acc


def subgroups(g: GroupTable, cap: int = DEFAULT_GROUP_CAP) -> tuple[Subgroup, ...]:
    """All subgroups, by cyclic extension; sorted by (order, mask)."""
    if g.n > cap:
        raise CapExceeded(f"group order {g.n} exceeds cap {cap}")
    found = {1 << g.identity}
    frontier = [1 << g.identity]
    while frontier:
        nxt = []
        for hm in frontier:
            for x in range(g.n):
                if hm >> x & 1:
                    continue
                ext = generated(g, hm | 1 << x)
                if ext not in found:
                    found.add(ext)
                    nxt.append(ext)
        frontier = nxt
    masks = sorted(found, key=lambda m: (m.bit_count(), m))
    return tuple(Subgroup(g, m) for m in masks)


def is_normal(g: GroupTable, hmask: int) -> bool:
    return all(coset_mask(g, hmask, x, "right") == coset_mask(g, hmask, x, "left")
               for x in range(g.n))


def is_maximal(g: GroupTable, hmask: int, cap: int = DEFAULT_GROUP_CAP) -> bool:
    """Proper, and no subgroup sits strictly between it and the group."""
    if hmask == g.full_mask:
        return False
    for s in subgroups(g, cap):
        if s.mask != hmask and s.mask != g.full_mask and (s.mask & hmask) == hmask:
            return False
    return True


def is_invariant_modulo(g: GroupTable, hmask: int, kmask: int) -> bool:
    """K is invariant modulo H: KxK = HxK = KxH for every x.

    Computed both from the definition and from the equivalent reduction
    (H contained in K, and Kx contained in HxK for all x); the two must
    agree, which guards each against drift.
    """
    direct = True
    for x in range(g.n):
        kxk = set_mult(g, kmask, set_mult(g, 1 << x, kmask))
        hxk = set_mult(g, hmask, set_mult(g, 1 << x, kmask))
        kxh = set_mult(g, kmask, set_mult(g, 1 << x, hmask))
        if not (kxk == hxk == kxh):
            direct = False
            break
    reduced = (hmask & kmask) == hmask
    if reduced:
        for x in range(g.n):
            kx = set_mult(g, kmask, 1 << x)
            hxk = set_mult(g, hmask, set_mult(g, 1 << x, kmask))
            if kx & ~hxk:
                reduced = False
                break
    assert direct == reduced, (hmask, kmask)
    return direct
