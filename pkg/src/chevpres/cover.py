"""Three-part covers of rank >= 6 Dynkin diagrams and their checker.

Conditions checked on a cover (parts Phi_1, Phi_2, Phi_3):

* P1: every part has at most two components, each of type A_m (m >= 2) or
  of rank at most 5.  Isolated nodes are accepted but reported.
* P2: every pair of nodes lies in some part.
* P3: every pairwise intersection has at most two components, each of type
  A_m (m >= 2), B3 or C3.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .rootsys import DynkinDiagram, build_finite_diagram, components, finite_type, normalize_type

COVER_TYPES = {"B": range(6, 10**9), "C": range(6, 10**9), "D": range(6, 10**9), "E": (6, 7, 8)}


@dataclass(frozen=True)
class CoverSpec:
    diagram: DynkinDiagram
    parts: tuple[frozenset[int], frozenset[int], frozenset[int]]

    def __post_init__(self):
        if len(self.parts) != 3:
            raise ValueError("a cover has exactly three parts")
        for part in self.parts:
            if not set(part) <= set(self.diagram.nodes):
                raise ValueError("part mentions a node outside the diagram")

    def to_json(self, check: dict | None = None) -> dict:
        out = {
            "type": self.diagram.base,
            "rank": self.diagram.rank,
            "parts": [sorted(p) for p in self.parts],
        }
        if check is not None:
            out["check"] = {k: check[k] for k in ("P1", "P2", "P3")}
        return out


def _is_type_a(name: str | None, min_rank: int = 2) -> bool:
    return name is not None and name[0] == "A" and int(name[1:]) >= min_rank


def _rank(name: str) -> int:
    return int(name[1:])


def check_cover(spec: CoverSpec) -> dict:
    """Evaluate P1-P3.  The report carries the component types of every part
    and intersection, a witness pair when P2 fails, and any A1 components."""
    D = spec.diagram
    part_types, a1_parts = [], []
    p1 = True
    for n, part in enumerate(spec.parts):
        types = [finite_type(D, c) for c in components(D, part)]
        part_types.append(types)
        if len(types) > 2 or any(t is None or not (_is_type_a(t) or _rank(t) <= 5) for t in types):
            p1 = False
        if "A1" in types:
            a1_parts.append(n)
    witness = None
    for i, j in itertools.combinations(sorted(D.nodes), 2):
        if not any(i in part and j in part for part in spec.parts):
            witness = (i, j)
            break
    inter_types = {}
    p3 = True
    for x, y in itertools.combinations(range(3), 2):
        types = [finite_type(D, c) for c in components(D, spec.parts[x] & spec.parts[y])]
        inter_types[f"{x + 1}{y + 1}"] = types
        if len(types) > 2 or any(not (_is_type_a(t) or t in ("B3", "C3")) for t in types):
            p3 = False
    return {
        "P1": p1,
        "P2": witness is None,
        "P3": p3,
        "witness": list(witness) if witness else None,
        "a1_components": a1_parts,
        "part_types": part_types,
        "intersection_types": inter_types,
    }


def cover_ok(report: dict) -> bool:
    return report["P1"] and report["P2"] and report["P3"]


def _check_scope(letter: str, l: int) -> None:
    if letter not in COVER_TYPES or l not in COVER_TYPES[letter]:
        raise ValueError(f"no three-part cover is defined for {letter}{l}; "
                         "supported: B, C, D with l >= 6 and E6, E7, E8")


def literal_bc_cover(letter: str, l: int) -> CoverSpec:
    """The B/C cover with an empty third part: A_{l-1}, and B3 (or C3)
    together with A_{l-4}.  It misses the pair (l-3, l)."""
    letter, l = normalize_type(letter, l)
    if letter not in "BC":
        raise ValueError("literal_bc_cover is for types B and C")
    _check_scope(letter, l)
    D = build_finite_diagram(letter, l)
    return CoverSpec(D, (frozenset(range(1, l)),
                         frozenset(range(1, l - 3)) | {l - 2, l - 1, l},
                         frozenset()))


def _e_cover(D: DynkinDiagram) -> tuple[frozenset[int], ...]:
    # Phi_1 is the A_{l-1} chain 1-3-4-...-l missing node 2.  Phi_2 (A4) and
    # Phi_3 (A_{l-2}) each contain node 2 and an end node; the lexicographically
    # least passing choice is taken.
    l = D.rank
    phi1 = frozenset(n for n in D.nodes if n != 2)
    ends = [n for n in phi1 if len([m for m in D.neighbours(n) if m in phi1]) == 1]

    def chains(size):
        out = []
        for nodes in itertools.combinations(sorted(D.nodes), size):
            s = frozenset(nodes)
            if 2 in s and len(components(D, s)) == 1 and finite_type(D, s) == f"A{size}":
                out.append(s)
        return sorted(out, key=sorted)

    for phi2 in chains(4):
        for phi3 in chains(l - 2):
            e2 = [e for e in ends if e in phi2]
            e3 = [e for e in ends if e in phi3]
            if not e2 or not e3 or set(e2) == set(e3):
                continue
            if cover_ok(check_cover(CoverSpec(D, (phi1, phi2, phi3)))):
                return phi1, phi2, phi3
    raise AssertionError("no E cover found")  # unreachable for E6-E8


def standard_cover(type_: str, l: int | None = None) -> CoverSpec:
    """The three-part cover under Bourbaki numbering.

    B_l / C_l: A_{l-1} = {1..l-1}; B3/C3 on {l-2, l-1, l} with A_{l-4} on
    {1..l-4}; third part {l-3, .., l} (B4/C4), which covers the pair (l-3, l)
    left out by the other two.
    D_l: {1..l-1}, {1..l-2, l} and the fork {l-2, l-1, l}.
    E_l: see _e_cover.
    """
    letter, l = normalize_type(type_, l)
    _check_scope(letter, l)
    D = build_finite_diagram(letter, l)
    if letter in "BC":
        parts = literal_bc_cover(letter, l).parts[:2] + (frozenset(range(l - 3, l + 1)),)
    elif letter == "D":
        parts = (frozenset(range(1, l)), frozenset(range(1, l - 1)) | {l},
                 frozenset({l - 2, l - 1, l}))
    else:
        parts = _e_cover(D)
    return CoverSpec(D, parts)


def drop_part(spec: CoverSpec, index: int) -> CoverSpec:
    """The same cover with one part emptied (negative controls)."""
    parts = list(spec.parts)
    parts[index] = frozenset()
    return CoverSpec(spec.diagram, tuple(parts))
