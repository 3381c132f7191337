"""Ways of making hypergroups.

Four families live here: coset structures on a group modulo an arbitrary
subgroup, the stabilizer tables they specialize to, the one-parameter
S(n, sizes) family interpolating beyond them, and the Utumi sum built
from a hypergroup plus a partition of its carrier. The canonical
presentation closes the loop: any multistructure is exhibited as a
quotient of a partial univalent operation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from .core import (
    CapExceeded,
    Hypergroup,
    Multistructure,
    EquivalenceRelation,
    as_multistructure,
    members,
    product_of_sets,
)
from .groups import (
    DEFAULT_GROUP_CAP,
    GroupTable,
    Subgroup,
    coset_mask,
    from_permutations,
)
from .presentations import Presentation, Trame, coset_relation


def _coset_structure(g: GroupTable, hmask: int, side: str) -> Hypergroup:
    # discover cosets by scanning representatives in index order
    labels = coset_relation(g, hmask, side)
    k = max(labels) + 1
    reps = [-1] * k
    for x in range(g.n):
        if reps[labels[x]] == -1:
            reps[labels[x]] = x
    if side == "right":
        names = tuple(g.names[reps[c]] + "H" for c in range(k))
    else:
        names = tuple("H" + g.names[reps[c]] for c in range(k))
    table = [[0] * k for _ in range(k)]
    for a in range(k):
        for b in range(k):
            # products of whole cosets, re-read as cosets
            am = coset_mask(g, hmask, reps[a], side)
            bm = coset_mask(g, hmask, reps[b], side)
            prod = 0
            for x in members(am):
                for y in members(bm):
                    prod |= 1 << g.table[x][y]
            mask = 0
            for z in members(prod):
                mask |= 1 << labels[z]
            table[a][b] = mask
    return Hypergroup.certify(Multistructure(names, tuple(tuple(r) for r in table)))


def right_coset_hypergroup(g: GroupTable, h: Subgroup) -> Hypergroup:
    """Classes xH with (xH).(yH) = set of cosets meeting xHyH."""
    if h.parent is not g:
        raise ValueError("subgroup belongs to a different group")
    return _coset_structure(g, h.mask, "right")


def left_coset_hypergroup(g: GroupTable, h: Subgroup) -> Hypergroup:
    """Classes Hx; the opposite of the right-coset structure."""
    if h.parent is not g:
        raise ValueError("subgroup belongs to a different group")
    return _coset_structure(g, h.mask, "left")


def stabilizer_hypergroup(alpha: int) -> Hypergroup:
    """The alpha-element table of a point stabilizer coset space:
    e is neutral on the right and x.y = K minus {x} for every y != e,
    so x.x.x is everything once alpha >= 3.

    Coincides with s_family((alpha,)) after certification.
    """
    if alpha < 1:
        raise ValueError("alpha must be >= 1")
    m = s_family((alpha,))
    return Hypergroup.certify(m)


def s_family(sizes: Sequence[int]) -> Multistructure:
    """The table S(n, p_1..p_b) on K = A_0 + A_1 + ... (disjoint blocks).

    A_0 has size n and carries the distinguished element e = first of
    A_0. Products: x.e = {x}; for y in A_0 minus e, x.y = (block of x)
    minus {x}; for y = a_j in a later block A_j (j >= 1) and x in A_i,
    x.y = K minus A_i. Blocks A_i for i >= 1 may have any size p_i; the
    table is a multistructure, not always a hypergroup.
    """
    sizes = tuple(sizes)
    if not sizes or sizes[0] < 1:
        raise ValueError("need a first block of size >= 1")
    if any(p < 1 for p in sizes[1:]):
        raise ValueError("block sizes must be >= 1")
    n = sizes[0]
    total = sum(sizes)
    names = ["e"] + [f"y{i}" for i in range(1, n)]
    for b, p in enumerate(sizes[1:], start=1):
        names += [f"a{b}_{j}" for j in range(1, p + 1)]
    starts = [0]
    for p in sizes:
        starts.append(starts[-1] + p)
    block_of = []
    for b, p in enumerate(sizes):
        block_of += [b] * p
    block_mask = [0] * len(sizes)
    for x in range(total):
        block_mask[block_of[x]] |= 1 << x
    full = (1 << total) - 1

    table = []
    for x in range(total):
        row = []
        for y in range(total):
            if y == 0:
                row.append(1 << x)
            elif block_of[y] == 0:
                row.append(block_mask[block_of[x]] & ~(1 << x))
            else:
                row.append(full & ~block_mask[block_of[x]])
        table.append(tuple(row))
    return Multistructure(tuple(names), tuple(table))


class SFamilyClass(Enum):
    DHypergroup = "coset-realizable hypergroup"
    HypergroupNotD = "hypergroup but not a coset structure"
    EmptyProduct = "has an empty product"
    NotAssociative = "not associative"


def s_family_class(sizes: Sequence[int]) -> SFamilyClass:
    """Which of the four regimes the parameters fall in.

    In order: all blocks of size n (coset-realizable); n >= 3 with all
    sizes >= 3 and some size differing from n (hypergroup, never a coset
    structure); n >= 2 with some later block a singleton (an empty
    product appears); everything else (associativity fails).
    """
    sizes = tuple(sizes)
    n = sizes[0]
    rest = sizes[1:]
    if all(p == n for p in rest):
        return SFamilyClass.DHypergroup
    if n >= 3 and all(p >= 3 for p in rest):
        return SFamilyClass.HypergroupNotD
    if n >= 2 and any(p == 1 for p in rest):
        return SFamilyClass.EmptyProduct
    return SFamilyClass.NotAssociative


def s_family_group_realization(sizes: Sequence[int],
                               cap: int = DEFAULT_GROUP_CAP
                               ) -> tuple[GroupTable, Subgroup]:
    """A group G and subgroup H with G/H isomorphic to S(n, n,..,n).

    Only the all-blocks-equal case is realizable. G is the group of
    permutations of the b*n carrier points that map blocks onto blocks
    (order (n!)^b * b!), H the stabilizer of the first point.
    """
    sizes = tuple(sizes)
    if s_family_class(sizes) is not SFamilyClass.DHypergroup:
        raise ValueError("only the all-equal-sizes tables are coset structures")
    n = sizes[0]
    b = len(sizes)
    order = math.factorial(n) ** b * math.factorial(b)
    if order > cap:
        raise CapExceeded(f"realization order {order} exceeds cap {cap}")
    points = list(range(n * b))
    perms = []
    for blockperm in itertools.permutations(range(b)):
        for within in itertools.product(itertools.permutations(range(n)), repeat=b):
            p = [0] * (n * b)
            for src_block in range(b):
                dst_block = blockperm[src_block]
                w = within[src_block]
                for i in range(n):
                    p[src_block * n + i] = dst_block * n + w[i]
            perms.append(tuple(p))
    g = from_permutations(perms)
    del points
    from .groups import stabilizer_subgroup
    return g, stabilizer_subgroup(g, 0)


class UtumiInputError(ValueError):
    """The base structure, partition and zero fail a compatibility clause."""


@dataclass(frozen=True)
class UtumiInput:
    """Data for the sum x.y = x + (class of y).

    base: hypergroup written additively. partition: equivalence on the
    carrier. zero: element whose class is the singleton {zero} and which
    is right-neutral; additionally zero + x must contain x and stay
    inside the class of x.
    """

    base: Hypergroup
    partition: EquivalenceRelation
    zero: int

    def __post_init__(self):
        h, eq, z = self.base, self.partition, self.zero
        if eq.n != h.n:
            raise UtumiInputError("partition carrier differs from base carrier")
        if not (0 <= z < h.n):
            raise UtumiInputError("zero out of range")
        if eq.class_mask(z) != 1 << z:
            raise UtumiInputError("class of zero must be the singleton {zero}")
        for x in range(h.n):
            if h.table[x][z] != 1 << x:
                raise UtumiInputError("zero must be right-neutral: x + 0 = {x}")
            zx = h.table[z][x]
            if not (zx >> x & 1):
                raise UtumiInputError("0 + x must contain x")
            if zx & ~eq.class_mask(x):
                raise UtumiInputError("0 + x must stay inside the class of x")


def utumi(data: UtumiInput) -> Multistructure:
    """The table x.y = x + ybar (sum over the class of y).

    Always reproductive; associative exactly when class sums saturate
    (see utumi_is_associative).
    """
    m, eq = as_multistructure(data.base), data.partition
    n = m.n
    rows = []
    for x in range(n):
        row = []
        for y in range(n):
            row.append(product_of_sets(m, 1 << x, eq.class_mask(y)))
        rows.append(tuple(row))
    return Multistructure(m.names, tuple(rows))


@dataclass(frozen=True)
class UtumiAssociativity:
    associative: bool
    witness: Optional[tuple[int, int]] = None  # (x, class representative)

    def __bool__(self) -> bool:
        return self.associative


def utumi_is_associative(data: UtumiInput) -> UtumiAssociativity:
    """Associativity of the derived table.

    Holds iff for every x and class ybar: xbar + ybar equals the
    saturation of x + ybar. The first failing (x, least class member)
    in index order is the witness.
    """
    m, eq = as_multistructure(data.base), data.partition
    for x in range(m.n):
        xbar = eq.class_mask(x)
        for cm in eq.class_masks:
            both = product_of_sets(m, xbar, cm)
            single = eq.sat(product_of_sets(m, 1 << x, cm))
            if both != single:
                return UtumiAssociativity(False, (x, members(cm)[0]))
    return UtumiAssociativity(True)


def utumi_simplicity_criterion(data: UtumiInput) -> bool:
    """Sufficient condition for simplicity of the derived hypergroup.

    Requires the base to be a group (univalent, associative). True when
    every class other than {zero} has some iterated sum (1..n terms)
    equal to the whole carrier. Sufficient only: a derived structure can
    be simple without passing this test.
    """
    from .core import is_group, verify_axioms
    m = as_multistructure(data.base)
    if not is_group(m):
        raise ValueError("criterion applies to a univalent base only")
    if not verify_axioms(m).associative:
        raise ValueError("criterion applies to an associative base only")
    full = m.full_mask
    for cm in data.partition.class_masks:
        if cm == 1 << data.zero:
            continue
        acc = cm
        ok = acc == full
        for _ in range(m.n - 1):
            if ok:
                break
            acc = product_of_sets(m, acc, cm)
            ok = acc == full
        if not ok:
            return False
    return True


def canonical_presentation(h, cap: int = 65536) -> Presentation:
    """Exhibit any multistructure as a quotient of a partial operation.

    The carrier is H x H^3 with one composable pair per witness triple:
    for each (a, b, c) with c in a.b, the pair ((a,t),(b,t)) with
    t = (a,b,c) composes to (c,t). Collapsing the copies of each element
    gives back the original table exactly.
    """
    m = as_multistructure(h)
    n = m.n
    t_n = n * n ** 3
    if t_n > cap:
        raise CapExceeded(f"presentation carrier {t_n} exceeds cap {cap}")

    def idx(v: int, t3: int) -> int:
        return v * n ** 3 + t3

    names = []
    for v in range(n):
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    names.append(f"{m.names[v]}|{m.names[a]},{m.names[b]},{m.names[c]}")
    op = {}
    for a in range(n):
        for b in range(n):
            for c in members(m.table[a][b]):
                t3 = a * n * n + b * n + c
                op[idx(a, t3), idx(b, t3)] = idx(c, t3)
    r = tuple(v for v in range(n) for _ in range(n ** 3))
    return Presentation(Trame(tuple(names), op), r)
