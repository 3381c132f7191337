"""Reflector congruences, reflets, and simplicity deciders.

A reflector congruence on a hypergroup is an equivalence whose class
projection pulls products back coherently; the quotient is then again a
hypergroup (a reflet). Simplicity means exactly two reflets up to
isomorphism, which for a non-trivial carrier is equivalent to having no
congruence strictly between identity and total. Everything here is
exhaustive search over partitions, pruned, plus the independent
subgroup-side decider for coset structures.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    CapExceeded,
    EquivalenceRelation,
    Hypergroup,
    Mapping,
    Multistructure,
    find_isomorphism,
    is_reflector,
    members,
)
from .groups import (
    DEFAULT_GROUP_CAP,
    GroupTable,
    Subgroup,
    is_invariant_modulo,
    subgroups,
)

DEFAULT_SIMPLICITY_CAP = 12


def is_reflector_congruence(h: Hypergroup, eq: EquivalenceRelation) -> bool:
    """The three-way saturation identity at every pair.

    For all x, y: sat(x.y) = union of x.y' over y' equivalent to y
    = union of x'.y over x' equivalent to x, where sat closes a subset
    under the equivalence. When this holds the class projection onto
    quotient_by(h, .) satisfies the four pulled-back product identities.
    """
    if eq.n != h.n:
        raise ValueError("relation carrier differs from hypergroup carrier")
    n = h.n
    table = h.table
    k = eq.k
    # rowsum[x][c] = union of x.y' over y' in class c; colsum[y][c] dual
    rowsum = [[0] * k for _ in range(n)]
    colsum = [[0] * k for _ in range(n)]
    for x in range(n):
        for y in range(n):
            e = table[x][y]
            rowsum[x][eq.class_of[y]] |= e
            colsum[y][eq.class_of[x]] |= e
    for x in range(n):
        for y in range(n):
            s = eq.sat(table[x][y])
            if rowsum[x][eq.class_of[y]] != s or colsum[y][eq.class_of[x]] != s:
                return False
    return True


@dataclass(frozen=True)
class ReflectorCongruence:
    over: Hypergroup
    eq: EquivalenceRelation

    def __post_init__(self):
        if not is_reflector_congruence(self.over, self.eq):
            raise ValueError("equivalence fails the saturation identity")


def quotient_by(h: Hypergroup, c: ReflectorCongruence) -> Hypergroup:
    """The reflet: classes, with [x].[y] = classes meeting x.y.

    Any representatives give the same class set, so the table reads off
    one representative pair per class pair. Class names are the names of
    least members, so the identity congruence reproduces h itself.
    """
    if c.over is not h and c.over.m != h.m:
        raise ValueError("congruence was validated over a different hypergroup")
    eq = c.eq
    k = eq.k
    reps = [members(cm)[0] for cm in eq.class_masks]
    names = tuple(h.names[r] for r in reps)
    table = []
    for a in range(k):
        row = []
        for b in range(k):
            prod = h.table[reps[a]][reps[b]]
            mask = 0
            for cidx, cm in enumerate(eq.class_masks):
                if cm & prod:
                    mask |= 1 << cidx
            row.append(mask)
        table.append(tuple(row))
    q = Hypergroup.certify(Multistructure(names, tuple(table)))
    f = Mapping(h.m, q.m, tuple(eq.class_of))
    assert is_reflector(f), "class projection fails the pullback identities"
    return q


def _suffix_unions(table, n):
    sufrow = [[0] * (n + 1) for _ in range(n)]
    sufcol = [[0] * (n + 1) for _ in range(n)]
    for x in range(n):
        for j in range(n - 1, -1, -1):
            sufrow[x][j] = sufrow[x][j + 1] | table[x][j]
            sufcol[x][j] = sufcol[x][j + 1] | table[j][x]
    return sufrow, sufcol


def reflector_congruences(h: Hypergroup,
                          cap: int = DEFAULT_SIMPLICITY_CAP,
                          limit: int | None = None) -> list[ReflectorCongruence]:
    """All reflector congruences, in restricted-growth-string order.

    Backtracking over class labels for elements 0..n-1. At a node with
    elements 0..i labeled, each pair (x, y) of labeled elements yields
    three quantities that must ultimately coincide: the saturation of
    x.y, the row union over the class of y, and the column union over
    the class of x. For each we track the bits already forced (req) and
    the bits still attainable (pos); the node dies when some req escapes
    another's pos. With no elements left the req/pos pairs collapse and
    the test is exactly the final identity, so leaves need no recheck.

    limit, when given, stops the search after that many congruences
    (is_simple uses 3: any third congruence settles the verdict).
    """
    n = h.n
    if n > cap:
        raise CapExceeded(f"carrier size {n} exceeds simplicity cap {cap}")
    table = h.table
    full = h.m.full_mask
    sufrow, sufcol = _suffix_unions(table, n)
    labels = [0] * n
    out: list[ReflectorCongruence] = []

    def node_ok(i: int) -> bool:
        # elements 0..i are labeled
        pm = (1 << (i + 1)) - 1
        free = full & ~pm
        k = max(labels[j] for j in range(i + 1)) + 1
        cmask = [0] * k
        for j in range(i + 1):
            cmask[labels[j]] |= 1 << j
        rowsum = [[0] * k for _ in range(i + 1)]
        colsum = [[0] * k for _ in range(i + 1)]
        for x in range(i + 1):
            tx = table[x]
            for y in range(i + 1):
                e = tx[y]
                rowsum[x][labels[y]] |= e
                colsum[y][labels[x]] |= e
        nextrow = [sr[i + 1] for sr in sufrow]
        nextcol = [sc[i + 1] for sc in sufcol]
        for x in range(i + 1):
            for y in range(i + 1):
                e = table[x][y]
                ep = e & pm
                s1req = 0
                for cm in cmask:
                    if cm & ep:
                        s1req |= cm
                if e & free:
                    s1pos = pm | free
                elif e:
                    s1pos = s1req | free
                else:
                    s1pos = 0
                s2req = rowsum[x][labels[y]]
                s2pos = s2req | nextrow[x]
                s3req = colsum[y][labels[x]]
                s3pos = s3req | nextcol[y]
                if (s2req & ~s1pos or s3req & ~s1pos
                        or s1req & ~s2pos or s1req & ~s3pos
                        or s2req & ~s3pos or s3req & ~s2pos):
                    return False
        return True

    def rec(i: int, top: int) -> bool:
        if i == n:
            eq = EquivalenceRelation(tuple(labels))
            out.append(ReflectorCongruence(h, eq))
            return limit is not None and len(out) >= limit
        for lab in range(top + 1):
            labels[i] = lab
            if node_ok(i) and rec(i + 1, max(top, lab + 1)):
                return True
        return False

    labels[0] = 0
    if n == 1:
        return [ReflectorCongruence(h, EquivalenceRelation((0,)))]
    rec(1, 1)
    return out


def reflets(h: Hypergroup, cap: int = DEFAULT_SIMPLICITY_CAP) -> list[Hypergroup]:
    """Quotients by all reflector congruences, one per isomorphism class.

    Sorted by carrier size, then by the table read as a tuple of rows of
    masks (a canonical tiebreak independent of names).
    """
    quotients = [quotient_by(h, c) for c in reflector_congruences(h, cap)]
    kept: list[Hypergroup] = []
    for q in quotients:
        if all(find_isomorphism(q, other) is None for other in kept):
            kept.append(q)
    kept.sort(key=lambda q: (q.n, q.table))
    return kept


def is_simple(h: Hypergroup, cap: int = DEFAULT_SIMPLICITY_CAP) -> bool:
    """Exactly two reflets: the structure itself and the trivial one.

    Equivalent to having no reflector congruence besides identity and
    total, since a congruence with k classes yields a k-element reflet
    and 1 < k < n gives a third isomorphism type. The trivial hypergroup
    has one reflet, not two, so it is not simple. The search stops at
    the third congruence found.
    """
    if h.n == 1:
        return False
    found = reflector_congruences(h, cap, limit=3)
    return len(found) == 2


def bell_number(n: int) -> int:
    """Number of partitions of an n-set."""
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


def invariant_modulo_subgroups(g: GroupTable, h: Subgroup,
                               cap: int = DEFAULT_GROUP_CAP) -> list[Subgroup]:
    """All subgroups K with KxK = HxK = KxH for every x.

    Always contains h itself and the whole group.
    """
    return [k for k in subgroups(g, cap) if is_invariant_modulo(g, h.mask, k.mask)]


def is_simple_coset(g: GroupTable, h: Subgroup,
                    cap: int = DEFAULT_GROUP_CAP) -> bool:
    """Simplicity of the coset structure, decided on the subgroup side.

    True iff the only subgroups invariant modulo h are h and g. The
    whole-group case gives the trivial one-element structure, which is
    not simple.
    """
    if h.mask == g.full_mask:
        return False
    inv = invariant_modulo_subgroups(g, h, cap)
    return len(inv) == 2
