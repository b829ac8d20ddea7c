"""Presentation export and import: JSON and a line-oriented text format.

Text grammar (UTF-8, lines end in a single newline)::

    file       := header-line family-line [diagram-line] field-line gens-line
                  count-line relator-line*
    header-line:= "# chevpres presentation v1"
    family-line:= "family " NAME
    diagram-line := "diagram " LETTER " " RANK                   (affine families only)
    field-line := "field " P " " A " " M0 " " M1 ... " " Ma     (modulus, low to high)
    gens-line  := "generators" (" " GEN)*
    count-line := "relators " R
    relator-line := "1" | TOKEN (" " TOKEN)*
    TOKEN      := GEN "^" INT                                    (INT nonzero, e.g. -3)
    GEN        := "x" NODE "_" K                                 (K = 1..a)

NODE is the diagram node number for affine presentations, and 1 / 2 for the
alpha / beta roles of the rank-2 families.  The diagram line names the
completed diagram of an affine presentation (e.g. "diagram B 3").  A relator line lists the word's
syllables left to right; the relator is the identity word when the line is "1".
"""

from __future__ import annotations

import json
import re

from .ffield import field_from_json, make_field
from .presentations import ALPHA, BETA, GeneratorSymbol, Presentation, RelatorInfo
from .rootsys import (DynkinDiagram, Rank2Type, build_affine_diagram, classify_pair,
                      short_node)
from .words import Word

TEXT_HEADER = "# chevpres presentation v1"
_ROLE_INDEX = {ALPHA: 1, BETA: 2}
_INDEX_ROLE = {1: ALPHA, 2: BETA}
_TOKEN = re.compile(r"x(\d+)_(\d+)\^(-?\d+)\Z")


def _node_to_json(node):
    return list(_node_to_json(n) for n in node) if isinstance(node, tuple) else node


def _node_from_json(node):
    return tuple(_node_from_json(n) for n in node) if isinstance(node, list) else node


def _field(d: dict):
    F = make_field(int(d["p"]), int(d["a"]))
    if list(F.modulus) != [int(c) for c in d["modulus"]]:
        return field_from_json(d)
    return F


def presentation_to_dict(pres: Presentation) -> dict:
    return {
        "family": pres.family,
        "field": pres.field.describe() if pres.field else None,
        "generators": [{"node": _node_to_json(g.node), "k": g.k} for g in pres.generators],
        "relators": [[[f"g{g}", e] for g, e in w] for w in pres.relators],
        "info": [{"tag": i.tag, "kind": i.kind, "nodes": _node_to_json(i.nodes)} for i in pres.info],
        "diagram": pres.diagram.to_json() if pres.diagram else None,
        "meta": pres.meta,
    }


def presentation_from_dict(d: dict) -> Presentation:
    gens = tuple(GeneratorSymbol(_node_from_json(g["node"]), int(g["k"])) for g in d["generators"])
    rels = []
    for rel in d["relators"]:
        syl = []
        for name, e in rel:
            if not (isinstance(name, str) and name.startswith("g") and name[1:].isdigit()):
                raise ValueError(f"bad generator name {name!r}")
            syl.append((int(name[1:]), int(e)))
        rels.append(Word(syl))
    info = tuple(RelatorInfo(i["tag"], i["kind"], _node_from_json(i["nodes"]))
                 for i in d.get("info") or ())
    diagram = DynkinDiagram.from_json(d["diagram"]) if d.get("diagram") else None
    F = _field(d["field"]) if d.get("field") else None
    return Presentation(d["family"], F, gens, tuple(rels), info, diagram, dict(d.get("meta") or {}))


def dumps_json(pres: Presentation) -> str:
    return json.dumps(presentation_to_dict(pres), indent=1, sort_keys=True) + "\n"


def loads_json(s: str) -> Presentation:
    return presentation_from_dict(json.loads(s))


def _gen_name(sym: GeneratorSymbol) -> str:
    if isinstance(sym.node, str) and sym.node in _ROLE_INDEX:
        i = _ROLE_INDEX[sym.node]
    elif isinstance(sym.node, int) and sym.node >= 0:
        i = sym.node
    else:
        raise ValueError(f"generator {sym} has no text-format name")
    return f"x{i}_{sym.k}"


def dumps_text(pres: Presentation) -> str:
    if pres.field is None:
        raise ValueError("text format needs a field")
    names = [_gen_name(g) for g in pres.generators]
    F = pres.field
    lines = [
        TEXT_HEADER,
        f"family {pres.family}",
        *([f"diagram {pres.diagram.base} {pres.diagram.rank}"] if pres.diagram else []),
        "field " + " ".join(str(x) for x in (F.p, F.a, *F.modulus)),
        " ".join(["generators", *names]),
        f"relators {pres.r_count}",
    ]
    for w in pres.relators:
        lines.append(" ".join(f"{names[g]}^{e}" for g, e in w) if len(w) else "1")
    return "\n".join(lines) + "\n"


def loads_text(s: str) -> Presentation:
    lines = s.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if len(lines) < 5 or lines[0] != TEXT_HEADER:
        raise ValueError("not a chevpres text presentation")
    diagram = None
    if lines[2].startswith("diagram "):
        _, letter, rank = lines.pop(2).split(" ")
        diagram = build_affine_diagram(letter, int(rank))
    key = lambda line, word: line.split(" ", 1)[1] if line.startswith(word + " ") else None
    family = key(lines[1], "family")
    field_part = key(lines[2], "field")
    count = key(lines[4], "relators")
    if family is None or field_part is None or count is None or not lines[3].startswith("generators"):
        raise ValueError("malformed header")
    nums = [int(x) for x in field_part.split(" ")]
    F = _field({"p": nums[0], "a": nums[1], "modulus": nums[2:]})
    names = lines[3].split(" ")[1:]
    affine = diagram is not None
    gens = []
    for nm in names:
        m = re.fullmatch(r"x(\d+)_(\d+)", nm)
        if not m:
            raise ValueError(f"bad generator name {nm!r}")
        i, k = int(m.group(1)), int(m.group(2))
        gens.append(GeneratorSymbol(i if affine else _INDEX_ROLE[i], k))
    index = {nm: n for n, nm in enumerate(names)}
    body = lines[5:]
    if len(body) != int(count):
        raise ValueError(f"expected {count} relators, found {len(body)}")
    rels = []
    for line in body:
        if line == "1":
            rels.append(Word())
            continue
        syl = []
        for tok in line.split(" "):
            m = _TOKEN.match(tok)
            if not m or int(m.group(3)) == 0:
                raise ValueError(f"bad token {tok!r}")
            syl.append((index[f"x{m.group(1)}_{m.group(2)}"], int(m.group(3))))
        rels.append(Word(syl))
    info = infer_info(diagram, tuple(gens), rels) if diagram else ()
    return Presentation(family, F, tuple(gens), tuple(rels), info, diagram)


def infer_info(diagram, gens, rels) -> tuple[RelatorInfo, ...]:
    """Rebuild where each relator lives from the nodes it mentions."""
    out = []
    for w in rels:
        nodes = sorted({gens[g].node for g, _ in w})
        if len(nodes) == 1:
            out.append(RelatorInfo("text", "A1", (nodes[0],)))
        elif len(nodes) == 2:
            i, j = nodes
            kind = classify_pair(diagram, i, j)
            if kind == Rank2Type.C2:
                s = short_node(diagram, i, j)
                i, j = s, (j if s == i else i)
            out.append(RelatorInfo("text", kind.value, (i, j)))
        else:
            raise ValueError(f"relator {w!r} spans {len(nodes)} nodes")
    return tuple(out)


def dumps(pres: Presentation, fmt: str = "json") -> str:
    return {"json": dumps_json, "text": dumps_text}[fmt](pres)


def loads(s: str, fmt: str | None = None) -> Presentation:
    if fmt is None:
        fmt = "text" if s.startswith(TEXT_HEADER) else "json"
    return {"json": loads_json, "text": loads_text}[fmt](s)
