"""Finite multivalued binary structures.

Carriers are index sets {0..n-1}. Subsets of a carrier are plain ints used
as bit masks, so set algebra is word algebra throughout. Element names are
display labels only and never affect semantics.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence, Union

MAX_ELEMENTS = 64  # mask-width contract for carriers


class CapExceeded(Exception):
    """A size cap was exceeded (carrier width, group order, trame size)."""


class ParseError(ValueError):
    """Malformed textual input (structure JSON, trame DSL, partition literals)."""


class NotAHypergroup(ValueError):
    """Raised when certifying a multistructure that fails an axiom."""

    def __init__(self, report: "AxiomReport"):
        self.report = report
        super().__init__(f"axioms fail: {report.summary()}")


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def members(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


@dataclass(frozen=True)
class Multistructure:
    """A finite set with a multivalued binary operation.

    table[x][y] is the bit mask of the product x.y; empty products are 0.
    """

    names: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.names)
        if n < 1:
            raise ValueError("carrier must be non-empty")
        if n > MAX_ELEMENTS:
            raise CapExceeded(f"carrier size {n} exceeds mask width {MAX_ELEMENTS}")
        if len(set(self.names)) != n or any(not s for s in self.names):
            raise ValueError("element names must be unique non-empty strings")
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise ValueError("table must be n x n")
        top = 1 << n
        for row in self.table:
            for e in row:
                if not (0 <= e < top):
                    raise ValueError("table entry out of range for carrier")

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @classmethod
    def from_sets(cls, names: Sequence[str],
                  table: Sequence[Sequence[Iterable[int]]]) -> "Multistructure":
        rows = tuple(tuple(mask_of(e) for e in row) for row in table)
        return cls(tuple(names), rows)


def product_of_sets(m: Multistructure, xmask: int, ymask: int) -> int:
    """Set extension of the operation: union of x.y over x in X, y in Y."""
    out = 0
    table = m.table
    for x in members(xmask):
        row = table[x]
        for y in members(ymask):
            out |= row[y]
    return out


@dataclass(frozen=True)
class AxiomReport:
    associative: bool
    reproductive: bool
    all_products_nonempty: bool
    assoc_witness: Optional[tuple[int, int, int]] = None
    repro_witness: Optional[int] = None
    empty_witness: Optional[tuple[int, int]] = None

    @property
    def is_hypergroup(self) -> bool:
        return self.associative and self.reproductive and self.all_products_nonempty

    def summary(self) -> str:
        bad = []
        if not self.associative:
            bad.append(f"associativity at {self.assoc_witness}")
        if not self.reproductive:
            bad.append(f"reproductivity at {self.repro_witness}")
        if not self.all_products_nonempty:
            bad.append(f"empty product at {self.empty_witness}")
        return "; ".join(bad) if bad else "all axioms hold"


def verify_axioms(m: Multistructure) -> AxiomReport:
    """Check associativity, reproductivity and non-empty products.

    Each failed axiom reports the lexicographically first witness
    (triples (x,y,z) for associativity, x for reproductivity, pairs (x,y)
    for empty products), scanning in index order.
    """
    n = m.n
    full = m.full_mask
    table = m.table

    associative = True
    assoc_witness = None
    for x in range(n):
        for y in range(n):
            left_base = table[x][y]
            for z in range(n):
                lhs = product_of_sets(m, left_base, 1 << z)
                rhs = product_of_sets(m, 1 << x, table[y][z])
                if lhs != rhs:
                    associative, assoc_witness = False, (x, y, z)
                    break
            if not associative:
                break
        if not associative:
            break

    reproductive = True
    repro_witness = None
    for x in range(n):
        row = 0
        col = 0
        for y in range(n):
            row |= table[x][y]
            col |= table[y][x]
        if row != full or col != full:
            reproductive, repro_witness = False, x
            break

    nonempty = True
    empty_witness = None
    for x in range(n):
        for y in range(n):
            if not table[x][y]:
                nonempty, empty_witness = False, (x, y)
                break
        if not nonempty:
            break

    return AxiomReport(associative, reproductive, nonempty,
                       assoc_witness, repro_witness, empty_witness)


@dataclass(frozen=True)
class Hypergroup:
    """A multistructure together with its verification certificate."""

    m: Multistructure
    report: AxiomReport

    def __post_init__(self):
        if not self.report.is_hypergroup:
            raise NotAHypergroup(self.report)

    @classmethod
    def certify(cls, m: Multistructure) -> "Hypergroup":
        return cls(m, verify_axioms(m))

    @property
    def n(self) -> int:
        return self.m.n

    @property
    def names(self) -> tuple[str, ...]:
        return self.m.names

    @property
    def table(self) -> tuple[tuple[int, ...], ...]:
        return self.m.table


Structure = Union[Multistructure, Hypergroup]


def as_multistructure(x: Structure) -> Multistructure:
    return x.m if isinstance(x, Hypergroup) else x


def opposite(m: Multistructure) -> Multistructure:
    """Transpose the operation: x.y in the opposite is y.x in m."""
    m = as_multistructure(m)
    n = m.n
    rows = tuple(tuple(m.table[y][x] for y in range(n)) for x in range(n))
    return Multistructure(m.names, rows)


def is_group(m: Structure) -> bool:
    """True when every product is a singleton (a univalent hypergroup).

    Only meaningful on structures that already pass verify_axioms.
    """
    m = as_multistructure(m)
    return all(e.bit_count() == 1 for row in m.table for e in row)


def power(h: Structure, x: int, k: int) -> int:
    """Left-folded k-th power: x.x.....x with k factors, as a mask."""
    m = as_multistructure(h)
    if k < 1:
        raise ValueError("power needs k >= 1")
    acc = 1 << x
    for _ in range(k - 1):
        acc = product_of_sets(m, acc, 1 << x)
    return acc


@dataclass(frozen=True)
class Mapping:
    """A total map between two carriers, image[x] = f(x)."""

    dom: Multistructure
    cod: Multistructure
    image: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "dom", as_multistructure(self.dom))
        object.__setattr__(self, "cod", as_multistructure(self.cod))
        if len(self.image) != self.dom.n:
            raise ValueError("image must assign every domain element")
        if any(not (0 <= v < self.cod.n) for v in self.image):
            raise ValueError("image value out of codomain range")

    def img(self, dmask: int) -> int:
        out = 0
        for x in members(dmask):
            out |= 1 << self.image[x]
        return out

    def pre(self, cmask: int) -> int:
        out = 0
        for x, v in enumerate(self.image):
            if cmask >> v & 1:
                out |= 1 << x
        return out

    @property
    def surjective(self) -> bool:
        return self.img(self.dom.full_mask) == self.cod.full_mask


def is_morphism(f: Mapping) -> bool:
    """f(x.y) == f(x).f(y) element-wise."""
    dom, cod = f.dom, f.cod
    for x in range(dom.n):
        for y in range(dom.n):
            if f.img(dom.table[x][y]) != cod.table[f.image[x]][f.image[y]]:
                return False
    return True


def is_reflector(f: Mapping) -> bool:
    """Surjective f whose four pulled-back product sets coincide.

    For all x, y the sets f^-1 f(x.y), f^-1(f(x).f(y)), x.f^-1 f(y) and
    f^-1 f(x).y must be equal.
    """
    if not f.surjective:
        return False
    dom, cod = f.dom, f.cod
    for x in range(dom.n):
        for y in range(dom.n):
            a = f.pre(f.img(dom.table[x][y]))
            b = f.pre(product_of_sets(cod, 1 << f.image[x], 1 << f.image[y]))
            c = product_of_sets(dom, 1 << x, f.pre(f.img(1 << y)))
            d = product_of_sets(dom, f.pre(f.img(1 << x)), 1 << y)
            if not (a == b == c == d):
                return False
    return True


def _element_invariant(m: Multistructure, x: int):
    row = tuple(sorted(e.bit_count() for e in m.table[x]))
    col = tuple(sorted(m.table[y][x].bit_count() for y in range(m.n)))
    diag = m.table[x][x]
    return (row, col, diag.bit_count(), bool(diag >> x & 1))


def find_isomorphism(a: Structure, b: Structure) -> Optional[tuple[int, ...]]:
    """Search for a bijection g with g(x.y) = g(x).g(y), or None.

    Backtracking assigns domain elements in index order and tries codomain
    candidates in index order, so the result is the first bijection in
    lexicographic backtracking order. Candidates are pruned by per-element
    invariants (sorted row/column product-size profiles, |x.x|, x in x.x)
    and by product-membership consistency over the assigned prefix.
    """
    a = as_multistructure(a)
    b = as_multistructure(b)
    n = a.n
    if n != b.n:
        return None
    inv_a = [_element_invariant(a, x) for x in range(n)]
    inv_b = [_element_invariant(b, x) for x in range(n)]
    if sorted(inv_a) != sorted(inv_b):
        return None
    candidates = [tuple(v for v in range(n) if inv_b[v] == inv_a[x]) for x in range(n)]

    g = [-1] * n
    used = [False] * n

    def consistent(k: int) -> bool:
        # products among assigned elements must agree on size and on
        # membership of assigned elements; checks the pairs touching k
        # plus membership of k in older pairs.
        for p in range(k + 1):
            for (s, t) in ((p, k), (k, p)):
                ae = a.table[s][t]
                be = b.table[g[s]][g[t]]
                if ae.bit_count() != be.bit_count():
                    return False
                for z in range(k + 1):
                    if (ae >> z & 1) != (be >> g[z] & 1):
                        return False
        for p in range(k):
            for q in range(k):
                if (a.table[p][q] >> k & 1) != (b.table[g[p]][g[q]] >> g[k] & 1):
                    return False
        return True

    def assign(k: int) -> bool:
        if k == n:
            return True
        for v in candidates[k]:
            if used[v]:
                continue
            g[k] = v
            used[v] = True
            if consistent(k) and assign(k + 1):
                return True
            used[v] = False
            g[k] = -1
        return False

    return tuple(g) if assign(0) else None


@dataclass(frozen=True)
class CogroupReport:
    """Row-family structure of a multistructure.

    blocks_partition: for every fixed x the distinct products {x.y : y}
    form a partition of the carrier. blocks_equipotent: those products all
    have the same size. columns_equipotent: for every fixed y the sizes
    |x.y| agree across x (a necessary trait of coset structures).
    """

    blocks_partition: bool
    blocks_equipotent: bool
    columns_equipotent: bool

    def __bool__(self) -> bool:
        return self.blocks_partition and self.blocks_equipotent


def cogroup_report(m: Structure) -> CogroupReport:
    m = as_multistructure(m)
    n, full = m.n, m.full_mask
    partition = True
    equipotent = True
    for x in range(n):
        blocks = sorted(set(m.table[x]))
        if 0 in blocks:
            partition = False
        cover = 0
        for e in blocks:
            if cover & e:
                partition = False
            cover |= e
        if cover != full:
            partition = False
        sizes = {e.bit_count() for e in m.table[x]}
        if len(sizes) != 1:
            equipotent = False
    columns = all(
        len({m.table[x][y].bit_count() for x in range(n)}) == 1
        for y in range(n)
    )
    return CogroupReport(partition, equipotent, columns)


def is_cogroup(h: Structure) -> bool:
    """Every row family partitions the carrier into equal-size blocks."""
    return bool(cogroup_report(h))


@dataclass(frozen=True)
class EquivalenceRelation:
    """An equivalence on {0..n-1}, stored as canonical class labels.

    class_of uses restricted-growth labeling: class indices appear in the
    order of their first occurrence (class_of[0] == 0, each new label is
    the previous maximum plus one).
    """

    class_of: tuple[int, ...]
    class_masks: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.class_of:
            raise ValueError("relation over an empty carrier")
        nxt = 0
        for lab in self.class_of:
            if lab > nxt or lab < 0:
                raise ValueError("class labels must be in restricted-growth order")
            if lab == nxt:
                nxt += 1
        masks = [0] * nxt
        for i, lab in enumerate(self.class_of):
            masks[lab] |= 1 << i
        object.__setattr__(self, "class_masks", tuple(masks))

    @property
    def n(self) -> int:
        return len(self.class_of)

    @property
    def k(self) -> int:
        return len(self.class_masks)

    @classmethod
    def identity(cls, n: int) -> "EquivalenceRelation":
        return cls(tuple(range(n)))

    @classmethod
    def total(cls, n: int) -> "EquivalenceRelation":
        return cls((0,) * n)

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "EquivalenceRelation":
        """Relabel an arbitrary labeling into canonical form."""
        seen: dict[int, int] = {}
        out = []
        for lab in labels:
            if lab not in seen:
                seen[lab] = len(seen)
            out.append(seen[lab])
        return cls(tuple(out))

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[int]]) -> "EquivalenceRelation":
        labels = [-1] * n
        for b, block in enumerate(blocks):
            for i in block:
                if not (0 <= i < n):
                    raise ValueError(f"block element {i} out of range")
                if labels[i] != -1:
                    raise ValueError(f"element {i} appears in two blocks")
                labels[i] = b
        if -1 in labels:
            raise ValueError(f"element {labels.index(-1)} missing from blocks")
        return cls.from_labels(labels)

    def class_mask(self, x: int) -> int:
        return self.class_masks[self.class_of[x]]

    def sat(self, mask: int) -> int:
        """Union of the classes meeting mask."""
        out = 0
        for cm in self.class_masks:
            if cm & mask:
                out |= cm
        return out

    def refines(self, other: "EquivalenceRelation") -> bool:
        """True when every class of self lies inside a class of other."""
        if self.n != other.n:
            return False
        image: dict[int, int] = {}
        for i, lab in enumerate(self.class_of):
            want = other.class_of[i]
            if image.setdefault(lab, want) != want:
                return False
        return True

    def blocks(self) -> tuple[tuple[int, ...], ...]:
        return tuple(members(cm) for cm in self.class_masks)


def all_equivalences(n: int) -> Iterator[EquivalenceRelation]:
    """All equivalences on {0..n-1} in restricted-growth string order."""
    labels = [0] * n

    def rec(i: int, top: int) -> Iterator[EquivalenceRelation]:
        if i == n:
            yield EquivalenceRelation(tuple(labels))
            return
        for lab in range(top + 1):
            labels[i] = lab
            yield from rec(i + 1, max(top, lab + 1))

    if n == 0:
        return iter(())
    return rec(1, 1) if n > 0 else iter(())


# --- canonical JSON form ---------------------------------------------------


def to_json(m: Structure) -> str:
    """Canonical JSON: fixed key order, product entries in carrier order."""
    m = as_multistructure(m)
    obj = {
        "elements": list(m.names),
        "table": [[[m.names[z] for z in members(e)] for e in row] for row in m.table],
    }
    return json.dumps(obj, separators=(",", ":"))


def from_json(text: str) -> Multistructure:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}") from None
    if not isinstance(obj, dict) or set(obj) != {"elements", "table"}:
        raise ParseError('structure JSON needs exactly the keys "elements" and "table"')
    names = obj["elements"]
    if (not isinstance(names, list) or not names
            or any(not isinstance(s, str) for s in names)):
        raise ParseError('"elements" must be a non-empty list of strings')
    if len(set(names)) != len(names):
        raise ParseError("duplicate element name")
    n = len(names)
    index = {s: i for i, s in enumerate(names)}
    rows = obj["table"]
    if not isinstance(rows, list) or len(rows) != n:
        raise ParseError(f"table must have {n} rows")
    table = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"table row {i} must have {n} entries")
        out_row = []
        for j, entry in enumerate(row):
            if not isinstance(entry, list):
                raise ParseError(f"table entry ({i},{j}) must be a list of names")
            mask = 0
            for s in entry:
                if s not in index:
                    raise ParseError(f"unknown element name {s!r} in entry ({i},{j})")
                mask |= 1 << index[s]
            out_row.append(mask)
        table.append(tuple(out_row))
    return Multistructure(tuple(names), tuple(table))
