"""Command-line front end.

Verbs: gen, verify, simple, simple-coset, reflets, iso, opposite,
classify-s, trame. Structures travel as canonical JSON on stdout; all
diagnostics go to stderr. Exit codes: 0 computed (or positive verdict),
1 negative verdict from a predicate verb, 2 malformed input, 3 a size
cap was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .core import (
    CapExceeded,
    EquivalenceRelation,
    Hypergroup,
    Multistructure,
    NotAHypergroup,
    ParseError,
    as_multistructure,
    find_isomorphism,
    from_json,
    mask_of,
    members,
    opposite,
    verify_axioms,
)
from .groups import (
    DEFAULT_GROUP_CAP,
    GroupError,
    GroupTable,
    Subgroup,
    as_hypergroup,
    cyclic_group,
    stabilizer_subgroup,
    symmetric_group,
    verify_group,
)
from .constructions import (
    UtumiInput,
    UtumiInputError,
    canonical_presentation,
    left_coset_hypergroup,
    right_coset_hypergroup,
    s_family,
    s_family_class,
    stabilizer_hypergroup,
    utumi,
)
from .presentations import (
    DEFAULT_TRAME_CAP,
    Presentation,
    Trame,
    is_adequate,
    is_invariant_modulo_equiv,
    quotient,
)
from .simplicity import (
    DEFAULT_SIMPLICITY_CAP,
    bell_number,
    invariant_modulo_subgroups,
    is_simple_coset,
    reflector_congruences,
    reflets,
)


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, separators=(",", ":")) + "\n")


def _ms_obj(m) -> dict:
    m = as_multistructure(m)
    return {
        "elements": list(m.names),
        "table": [[[m.names[z] for z in members(e)] for e in row] for row in m.table],
    }


def _read_structure(path: str) -> Multistructure:
    with open(path, "r", encoding="utf-8") as fh:
        return from_json(fh.read())


def _parse_brace_list(token: str) -> list[str]:
    token = token.strip()
    if not (token.startswith("{") and token.endswith("}")):
        raise ParseError(f"expected a brace list like {{a,b}}, got {token!r}")
    inner = token[1:-1].strip()
    if not inner:
        raise ParseError("empty brace list")
    parts = [p.strip() for p in inner.replace(",", " ").split()]
    if any(not p for p in parts):
        raise ParseError(f"empty entry in brace list {token!r}")
    return parts


def _parse_partition(literal: str, names: Sequence[str]) -> EquivalenceRelation:
    """Blocks like {0}|{1,4,7}|{2,3,5,6} over element names."""
    index = {s: i for i, s in enumerate(names)}
    blocks = []
    for chunk in literal.split("|"):
        block = []
        for name in _parse_brace_list(chunk):
            if name not in index:
                raise ParseError(f"unknown element name {name!r} in partition")
            block.append(index[name])
        blocks.append(block)
    try:
        return EquivalenceRelation.from_blocks(len(names), blocks)
    except ValueError as e:
        raise ParseError(f"bad partition: {e}") from None


def _load_group(arg: str, cap: int) -> GroupTable:
    """sym:M, cyc:M, or a path to a univalent structure in JSON."""
    if arg.startswith("sym:"):
        return symmetric_group(int(arg[4:]), cap)
    if arg.startswith("cyc:"):
        m = cyclic_group(int(arg[4:]))
        if m.n > cap:
            raise CapExceeded(f"group order {m.n} exceeds cap {cap}")
        return m
    ms = _read_structure(arg)
    if any(e.bit_count() != 1 for row in ms.table for e in row):
        raise GroupError("range", "file structure is not univalent")
    table = [[e.bit_length() - 1 for e in row] for row in ms.table]
    g = verify_group(table, ms.names)
    if g.n > cap:
        raise CapExceeded(f"group order {g.n} exceeds cap {cap}")
    return g


def _load_subgroup(g: GroupTable, arg: str) -> Subgroup:
    """stab:P (permutation groups only) or an explicit list {names}."""
    if arg.startswith("stab:"):
        return stabilizer_subgroup(g, int(arg[5:]))
    index = {s: i for i, s in enumerate(g.names)}
    elems = []
    for name in _parse_brace_list(arg):
        if name not in index:
            raise ParseError(f"unknown group element {name!r}")
        elems.append(index[name])
    return Subgroup(g, mask_of(elems))


# --- trame DSL ---------------------------------------------------------------


def parse_trame(text: str) -> tuple[Trame, tuple[int, ...]]:
    """Line-oriented trame files.

    elements: a b c
    compose: a b -> c
    classes: {a b} {c}

    Blank lines and lines starting with # are skipped. The classes line
    defines the presentation's equivalence.
    """
    names: Optional[list[str]] = None
    index: dict[str, int] = {}
    op: dict[tuple[int, int], int] = {}
    labels: Optional[list[int]] = None
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("elements:"):
            if names is not None:
                raise ParseError(f"line {ln}: duplicate elements line")
            names = line[len("elements:"):].split()
            if not names:
                raise ParseError(f"line {ln}: no element names")
            if len(set(names)) != len(names):
                raise ParseError(f"line {ln}: duplicate element name")
            index = {s: i for i, s in enumerate(names)}
        elif line.startswith("compose:"):
            if names is None:
                raise ParseError(f"line {ln}: compose before elements")
            body = line[len("compose:"):]
            if "->" not in body:
                raise ParseError(f"line {ln}: compose needs 'u v -> w'")
            left, _, right = body.partition("->")
            args = left.split()
            target = right.split()
            if len(args) != 2 or len(target) != 1:
                raise ParseError(f"line {ln}: compose needs 'u v -> w'")
            for s in args + target:
                if s not in index:
                    raise ParseError(f"line {ln}: unknown element name {s!r}")
            u, v, w = index[args[0]], index[args[1]], index[target[0]]
            if (u, v) in op and op[u, v] != w:
                raise ParseError(f"line {ln}: conflicting product for "
                                 f"{args[0]} {args[1]}")
            op[u, v] = w
        elif line.startswith("classes:"):
            if names is None:
                raise ParseError(f"line {ln}: classes before elements")
            if labels is not None:
                raise ParseError(f"line {ln}: duplicate classes line")
            body = line[len("classes:"):].strip()
            labels = [-1] * len(names)
            block_no = 0
            pos = 0
            while pos < len(body):
                if body[pos].isspace():
                    pos += 1
                    continue
                if body[pos] != "{":
                    raise ParseError(f"line {ln}: expected '{{' in classes")
                end = body.find("}", pos)
                if end == -1:
                    raise ParseError(f"line {ln}: unterminated block")
                for s in body[pos + 1:end].replace(",", " ").split():
                    if s not in index:
                        raise ParseError(f"line {ln}: unknown element name {s!r}")
                    if labels[index[s]] != -1:
                        raise ParseError(f"line {ln}: element {s!r} in two blocks")
                    labels[index[s]] = block_no
                block_no += 1
                pos = end + 1
            missing = [names[i] for i, lab in enumerate(labels) if lab == -1]
            if missing:
                raise ParseError(f"line {ln}: elements missing from classes: "
                                 + " ".join(missing))
        else:
            raise ParseError(f"line {ln}: unrecognized line {line.split(':')[0]!r}")
    if names is None:
        raise ParseError("no elements line")
    if labels is None:
        raise ParseError("no classes line")
    canon = EquivalenceRelation.from_labels(labels) if len(names) <= 64 else None
    if canon is not None:
        r = canon.class_of
    else:
        seen: dict[int, int] = {}
        out = []
        for lab in labels:
            if lab not in seen:
                seen[lab] = len(seen)
            out.append(seen[lab])
        r = tuple(out)
    return Trame(tuple(names), op), r


def format_trame(t: Trame, r: Sequence[int]) -> str:
    """Canonical text form; parse_trame inverts it exactly."""
    lines = ["elements: " + " ".join(t.names)]
    for u, v, w in t.pairs():
        lines.append(f"compose: {t.names[u]} {t.names[v]} -> {t.names[w]}")
    k = max(r) + 1
    blocks = [[] for _ in range(k)]
    for i, lab in enumerate(r):
        blocks[lab].append(t.names[i])
    lines.append("classes: " + " ".join("{" + " ".join(b) + "}" for b in blocks))
    return "\n".join(lines) + "\n"


def _read_trame(path: str) -> tuple[Trame, tuple[int, ...]]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_trame(fh.read())


# --- verb handlers -----------------------------------------------------------


def _cmd_gen(args) -> int:
    kind = args.kind
    if kind == "sym":
        m = as_hypergroup(symmetric_group(int(args.args[0]), args.cap_group))
    elif kind == "cyc":
        m = as_hypergroup(cyclic_group(int(args.args[0])))
    elif kind == "stab":
        m = stabilizer_hypergroup(int(args.args[0]))
    elif kind == "coset":
        g = _load_group(args.args[0], args.cap_group)
        h = _load_subgroup(g, args.args[1])
        build = right_coset_hypergroup if args.side == "right" else left_coset_hypergroup
        m = build(g, h)
    elif kind == "s-family":
        m = s_family([int(p) for p in args.args])
    elif kind == "utumi":
        g = _load_group(args.args[0], args.cap_group)
        base = as_hypergroup(g)
        part = _parse_partition(args.args[1], g.names)
        zname = args.args[2]
        if zname not in g.names:
            raise ParseError(f"unknown zero element {zname!r}")
        m = utumi(UtumiInput(base, part, g.names.index(zname)))
    elif kind == "canon":
        ms = _read_structure(args.args[0])
        m = quotient(canonical_presentation(ms, args.cap_trame))
    else:
        raise ParseError(f"unknown generator {kind!r}")
    _emit(_ms_obj(m))
    return 0


def _cmd_verify(args) -> int:
    m = _read_structure(args.file)
    rep = verify_axioms(m)
    nm = m.names
    _emit({
        "is_hypergroup": rep.is_hypergroup,
        "associative": rep.associative,
        "reproductive": rep.reproductive,
        "all_products_nonempty": rep.all_products_nonempty,
        "assoc_witness": [nm[i] for i in rep.assoc_witness] if rep.assoc_witness else None,
        "repro_witness": nm[rep.repro_witness] if rep.repro_witness is not None else None,
        "empty_witness": [nm[i] for i in rep.empty_witness] if rep.empty_witness else None,
    })
    return 0 if rep.is_hypergroup else 1


def _cmd_simple(args) -> int:
    m = _read_structure(args.file)
    h = Hypergroup.certify(m)
    congruences = reflector_congruences(h, args.cap_n)
    simple = h.n > 1 and len(congruences) == 2
    witness = None
    for c in congruences:
        if 1 < c.eq.k < h.n:
            witness = [[m.names[i] for i in members(cm)] for cm in c.eq.class_masks]
            break
    _emit({
        "simple": simple,
        "n": h.n,
        "partition_space": bell_number(h.n),
        "congruences": len(congruences),
        "witness": witness,
    })
    return 0 if simple else 1


def _cmd_simple_coset(args) -> int:
    g = _load_group(args.group, args.cap_group)
    h = _load_subgroup(g, args.subgroup)
    inv = invariant_modulo_subgroups(g, h, args.cap_group)
    simple = is_simple_coset(g, h, args.cap_group)
    witness = None
    for k in inv:
        if k.mask not in (h.mask, g.full_mask):
            witness = [g.names[i] for i in members(k.mask)]
            break
    _emit({
        "simple": simple,
        "subgroups_invariant": len(inv),
        "witness": witness,
    })
    return 0 if simple else 1


def _cmd_reflets(args) -> int:
    m = _read_structure(args.file)
    h = Hypergroup.certify(m)
    rs = reflets(h, args.cap_n)
    _emit({"count": len(rs), "reflets": [_ms_obj(q) for q in rs]})
    return 0


def _cmd_iso(args) -> int:
    a = _read_structure(args.file1)
    b = _read_structure(args.file2)
    g = find_isomorphism(a, b)
    _emit({
        "isomorphic": g is not None,
        "bijection": [b.names[v] for v in g] if g is not None else None,
    })
    return 0 if g is not None else 1


def _cmd_opposite(args) -> int:
    m = _read_structure(args.file)
    _emit(_ms_obj(opposite(m)))
    return 0


def _cmd_classify_s(args) -> int:
    sizes = [int(p) for p in args.sizes]
    cls = s_family_class(sizes)
    m = s_family(sizes)
    rep = verify_axioms(m)
    witness = None
    if rep.empty_witness is not None:
        witness = [m.names[i] for i in rep.empty_witness]
    elif rep.assoc_witness is not None:
        witness = [m.names[i] for i in rep.assoc_witness]
    _emit({"class": cls.name, "sizes": sizes, "witness": witness})
    return 0


def _cmd_trame(args) -> int:
    t, r = _read_trame(args.file)
    if t.t_n > args.cap_trame:
        raise CapExceeded(f"trame size {t.t_n} exceeds cap {args.cap_trame}")
    p = Presentation(t, r)
    if args.action == "quotient":
        _emit(_ms_obj(quotient(p)))
        return 0
    if args.action == "adequate":
        rep = is_adequate(p)
        names = quotient(p).names
        _emit({
            "adequate": bool(rep),
            "reproductive": rep.reproductive,
            "associative": rep.associative,
            "repro_witness": [names[i] for i in rep.repro_witness] if rep.repro_witness else None,
            "assoc_witness": [names[i] for i in rep.assoc_witness] if rep.assoc_witness else None,
        })
        return 0 if rep else 1
    if args.action == "invariant":
        if args.s is None:
            raise ParseError("trame invariant needs --s CLASSES")
        part = _parse_partition(args.s, t.names)
        ok = is_invariant_modulo_equiv(t, r, tuple(part.class_of))
        _emit({"invariant": ok})
        return 0 if ok else 1
    raise ParseError(f"unknown trame action {args.action!r}")


def build_parser() -> argparse.ArgumentParser:
    caps = argparse.ArgumentParser(add_help=False)
    caps.add_argument("--cap-n", type=int, default=DEFAULT_SIMPLICITY_CAP,
                      help="carrier cap for congruence search (default 12)")
    caps.add_argument("--cap-group", type=int, default=DEFAULT_GROUP_CAP,
                      help="group order cap (default 120)")
    caps.add_argument("--cap-trame", type=int, default=DEFAULT_TRAME_CAP,
                      help="trame carrier cap (default 65536)")

    ap = argparse.ArgumentParser(
        prog="hypergroups",
        description="finite hypergroups: generators, verifiers, simplicity deciders")
    sub = ap.add_subparsers(dest="verb", required=True)

    g = sub.add_parser("gen", parents=[caps], help="emit a structure as JSON")
    g.add_argument("kind", choices=["sym", "cyc", "coset", "stab",
                                    "s-family", "utumi", "canon"])
    g.add_argument("args", nargs="+")
    g.add_argument("--side", choices=["right", "left"], default="right")
    g.set_defaults(fn=_cmd_gen)

    v = sub.add_parser("verify", parents=[caps], help="check the hypergroup axioms")
    v.add_argument("file")
    v.set_defaults(fn=_cmd_verify)

    s = sub.add_parser("simple", parents=[caps], help="decide simplicity by search")
    s.add_argument("file")
    s.add_argument("--method", choices=["brute"], default="brute")
    s.set_defaults(fn=_cmd_simple)

    sc = sub.add_parser("simple-coset", parents=[caps],
                        help="decide coset-structure simplicity on the subgroup side")
    sc.add_argument("group")
    sc.add_argument("subgroup")
    sc.set_defaults(fn=_cmd_simple_coset)

    rf = sub.add_parser("reflets", parents=[caps],
                        help="list quotients by all reflector congruences")
    rf.add_argument("file")
    rf.set_defaults(fn=_cmd_reflets)

    i = sub.add_parser("iso", parents=[caps], help="search for an isomorphism")
    i.add_argument("file1")
    i.add_argument("file2")
    i.set_defaults(fn=_cmd_iso)

    o = sub.add_parser("opposite", parents=[caps], help="transpose the operation")
    o.add_argument("file")
    o.set_defaults(fn=_cmd_opposite)

    c = sub.add_parser("classify-s", parents=[caps],
                       help="classify S(n, sizes) parameters")
    c.add_argument("sizes", nargs="+")
    c.set_defaults(fn=_cmd_classify_s)

    t = sub.add_parser("trame", parents=[caps], help="partial-operation files")
    t.add_argument("action", choices=["quotient", "adequate", "invariant"])
    t.add_argument("file")
    t.add_argument("--s", default=None,
                   help="coarser partition literal for 'invariant'")
    t.set_defaults(fn=_cmd_trame)

    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except CapExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except (ParseError, NotAHypergroup, GroupError, UtumiInputError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
