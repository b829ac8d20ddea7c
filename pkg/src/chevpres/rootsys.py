"""Dynkin diagrams (finite and untwisted affine), finite-type recognition,
rank-2 pair classification and small root systems.

Nodes follow Bourbaki numbering 1..l; the affine node is 0.  A double or
triple bond records the node its arrow points to, i.e. the shorter root.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, NamedTuple

import numpy as np


class Rank2Type(str, Enum):
    A1xA1 = "A1xA1"
    A2 = "A2"
    C2 = "C2"
    G2 = "G2"


class Edge(NamedTuple):
    i: int
    j: int
    multiplicity: int          # 1, 2, 3; 4 marks the infinite bond of affine A1
    short: int | None = None   # arrow target for multiple bonds

    @property
    def label(self) -> str:
        if self.multiplicity == 1:
            return "single"
        if self.multiplicity == 4:
            return "infinite"
        return f"{'double' if self.multiplicity == 2 else 'triple'}>{self.short}"

    @classmethod
    def from_label(cls, i: int, j: int, label: str) -> "Edge":
        if label == "single":
            return cls(i, j, 1)
        if label == "infinite":
            return cls(i, j, 4)
        kind, _, target = label.partition(">")
        mult = {"double": 2, "triple": 3}[kind]
        target = int(target)
        if target not in (i, j):
            raise ValueError(f"arrow target {target} is not an end of edge ({i}, {j})")
        return cls(i, j, mult, target)


_FINITE_RANKS = {
    "A": lambda l: l >= 1,
    "B": lambda l: l >= 2,
    "C": lambda l: l >= 2,
    "D": lambda l: l >= 4,
    "E": lambda l: l in (6, 7, 8),
    "F": lambda l: l == 4,
    "G": lambda l: l == 2,
}

_AFFINE_RANKS = {
    "A": lambda l: l >= 1,
    "B": lambda l: l >= 3,
    "C": lambda l: l >= 2,
    "D": lambda l: l >= 4,
    "E": lambda l: l in (6, 7, 8),
    "F": lambda l: l == 4,
    "G": lambda l: l == 2,
}


def normalize_type(base: str, l: int | None = None) -> tuple[str, int]:
    """Accept "B", "E7", "F4", ... and return (letter, rank)."""
    base = base.strip().upper()
    letter, digits = base[0], base[1:]
    if letter not in _FINITE_RANKS:
        raise ValueError(f"unknown Dynkin type {base!r}")
    if digits:
        if l is not None and int(digits) != l:
            raise ValueError(f"type {base} conflicts with rank {l}")
        l = int(digits)
    if l is None:
        raise ValueError(f"rank missing for type {base}")
    return letter, int(l)


def _bourbaki_edges(letter: str, l: int) -> list[Edge]:
    chain = lambda lo, hi: [Edge(k, k + 1, 1) for k in range(lo, hi)]
    if letter == "A":
        return chain(1, l)
    if letter == "B":
        return chain(1, l - 1) + [Edge(l - 1, l, 2, l)]
    if letter == "C":
        return chain(1, l - 1) + [Edge(l - 1, l, 2, l - 1)]
    if letter == "D":
        return chain(1, l - 2) + [Edge(l - 2, l - 1, 1), Edge(l - 2, l, 1)]
    if letter == "E":
        return [Edge(1, 3, 1), Edge(2, 4, 1)] + chain(3, l)
    if letter == "F":
        return [Edge(1, 2, 1), Edge(2, 3, 2, 3), Edge(3, 4, 1)]
    if letter == "G":
        return [Edge(1, 2, 3, 1)]
    raise ValueError(letter)


def _affine_extra_edges(letter: str, l: int) -> list[Edge]:
    if letter == "A":
        return [Edge(0, 1, 4)] if l == 1 else [Edge(0, 1, 1), Edge(0, l, 1)]
    if letter == "B":
        return [Edge(0, 2, 1)]
    if letter == "C":
        return [Edge(0, 1, 2, 1)]
    if letter == "D":
        return [Edge(0, 2, 1)]
    if letter == "E":
        return [Edge(0, {6: 2, 7: 1, 8: 8}[l], 1)]
    if letter == "F":
        return [Edge(0, 1, 1)]
    if letter == "G":
        return [Edge(0, 2, 1)]
    raise ValueError(letter)


@dataclass(frozen=True)
class DynkinDiagram:
    base: str
    rank: int
    affine: bool
    nodes: tuple[int, ...]
    edges: tuple[Edge, ...]

    @property
    def kind(self) -> str:
        return "affine" if self.affine else "finite"

    @property
    def name(self) -> str:
        sub = f"{self.base}{self.rank}"
        return f"~{sub}" if self.affine else sub

    def edge(self, i: int, j: int) -> Edge | None:
        for e in self.edges:
            if {e.i, e.j} == {i, j}:
                return e
        return None

    def neighbours(self, v: int, within: Iterable[int] | None = None) -> list[int]:
        allowed = set(self.nodes if within is None else within)
        out = []
        for e in self.edges:
            if e.i == v and e.j in allowed:
                out.append(e.j)
            elif e.j == v and e.i in allowed:
                out.append(e.i)
        return sorted(out)

    def to_json(self) -> dict:
        return {
            "base": self.base,
            "rank": self.rank,
            "affine": self.affine,
            "nodes": list(self.nodes),
            "edges": [[e.i, e.j, e.label] for e in self.edges],
        }

    @classmethod
    def from_json(cls, d: dict | str) -> "DynkinDiagram":
        if isinstance(d, str):
            d = json.loads(d)
        edges = tuple(Edge.from_label(int(i), int(j), lab) for i, j, lab in d["edges"])
        return cls(d["base"], int(d["rank"]), bool(d["affine"]),
                   tuple(int(n) for n in d["nodes"]), edges)


def build_finite_diagram(base: str, l: int | None = None) -> DynkinDiagram:
    letter, l = normalize_type(base, l)
    if not _FINITE_RANKS[letter](l):
        raise ValueError(f"no finite diagram of type {letter}{l}")
    return DynkinDiagram(letter, l, False, tuple(range(1, l + 1)),
                         tuple(_bourbaki_edges(letter, l)))


def build_affine_diagram(base: str, l: int | None = None) -> DynkinDiagram:
    """Completed (untwisted affine) Dynkin diagram; node 0 is the affine node."""
    letter, l = normalize_type(base, l)
    if not _AFFINE_RANKS[letter](l):
        raise ValueError(f"no untwisted affine diagram of type {letter}{l} "
                         "(need A l>=1, B l>=3, C l>=2, D l>=4, E6-8, F4, G2)")
    edges = _affine_extra_edges(letter, l) + _bourbaki_edges(letter, l)
    return DynkinDiagram(letter, l, True, tuple(range(0, l + 1)), tuple(edges))


# -- structure of (sub)diagrams ----------------------------------------------

def components(diag: DynkinDiagram, nodes: Iterable[int] | None = None) -> list[frozenset[int]]:
    """Connected components of the subdiagram induced on ``nodes``."""
    remaining = set(diag.nodes if nodes is None else nodes)
    comps = []
    while remaining:
        start = min(remaining)
        seen, stack = {start}, [start]
        while stack:
            v = stack.pop()
            for w in diag.neighbours(v, remaining):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        remaining -= seen
        comps.append(frozenset(seen))
    return sorted(comps, key=min)


def finite_type(diag: DynkinDiagram, nodes: Iterable[int]) -> str | None:
    """Name ("A3", "B3", "C2", "D5", "E6", "F4", "G2", ...) of the connected
    subdiagram induced on ``nodes``, or None when it is not of finite type.
    B2 and C2 are reported as "C2"."""
    nodes = set(nodes)
    if not nodes:
        raise ValueError("empty subdiagram")
    if len(components(diag, nodes)) != 1:
        raise ValueError("finite_type expects a connected subdiagram")
    edges = [e for e in diag.edges if e.i in nodes and e.j in nodes]
    n = len(nodes)
    if n == 1:
        return "A1"
    if len(edges) != n - 1 or any(e.multiplicity == 4 for e in edges):
        return None
    degree = Counter()
    for e in edges:
        degree[e.i] += 1
        degree[e.j] += 1
    multiple = [e for e in edges if e.multiplicity > 1]
    if any(e.multiplicity == 3 for e in multiple):
        return "G2" if n == 2 else None
    if len(multiple) > 1:
        return None
    if multiple:
        if max(degree.values()) > 2:
            return None
        if n == 2:
            return "C2"
        (e,) = multiple
        ends = {v for v in nodes if degree[v] == 1}
        end = e.i if e.i in ends else e.j if e.j in ends else None
        if end is None:
            if n != 4:
                return None
            return "F4"
        return f"B{n}" if e.short == end else f"C{n}"
    branch = [v for v in nodes if degree[v] >= 3]
    if not branch:
        return f"A{n}"
    if len(branch) > 1 or degree[branch[0]] > 3:
        return None
    centre = branch[0]
    arms = []
    for start in diag.neighbours(centre, nodes):
        length, prev, cur = 1, centre, start
        while True:
            nxt = [w for w in diag.neighbours(cur, nodes) if w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[:2] == [1, 1]:
        return f"D{n}"
    if arms == [1, 2, 2]:
        return "E6"
    if arms == [1, 2, 3]:
        return "E7"
    if arms == [1, 2, 4]:
        return "E8"
    return None


def component_types(diag: DynkinDiagram, nodes: Iterable[int]) -> list[str | None]:
    return [finite_type(diag, c) for c in components(diag, nodes)]


def is_l_spherical(diag: DynkinDiagram) -> bool:
    """Removing any single node leaves only finite-type components."""
    return all(
        all(t is not None for t in component_types(diag, set(diag.nodes) - {v}))
        for v in diag.nodes
    )


def classify_pair(diag: DynkinDiagram, i: int, j: int) -> Rank2Type:
    if i == j:
        raise ValueError("classify_pair needs two distinct nodes")
    if i not in diag.nodes or j not in diag.nodes:
        raise ValueError(f"nodes {i}, {j} not both in {diag.name}")
    e = diag.edge(i, j)
    if e is None:
        return Rank2Type.A1xA1
    if e.multiplicity == 4:
        raise ValueError("infinite bond: the pair generates no finite root system")
    return (Rank2Type.A2, Rank2Type.C2, Rank2Type.G2)[e.multiplicity - 1]


def short_node(diag: DynkinDiagram, i: int, j: int) -> int:
    """For a double/triple bond, the node carrying the short root."""
    e = diag.edge(i, j)
    if e is None or e.short is None:
        raise ValueError(f"({i}, {j}) is not a multiple bond")
    return e.short


def node_pairs(diag: DynkinDiagram):
    return itertools.combinations(diag.nodes, 2)


def count_pairs_by_type(diag: DynkinDiagram) -> dict[Rank2Type, int]:
    if not diag.affine:
        raise ValueError("pair counting is defined for affine diagrams")
    if diag.rank < 3:
        raise ValueError("base rank l >= 3 required")
    counts = {t: 0 for t in (Rank2Type.A1xA1, Rank2Type.A2, Rank2Type.C2)}
    for i, j in node_pairs(diag):
        t = classify_pair(diag, i, j)
        if t is Rank2Type.G2:
            raise ValueError("G2 pairs are not supported")
        counts[t] += 1
    return counts


# -- root systems -------------------------------------------------------------

def cartan_matrix(diag: DynkinDiagram) -> np.ndarray:
    """Generalized Cartan matrix a_ij = <alpha_i^vee, alpha_j> in node order."""
    idx = {v: n for n, v in enumerate(diag.nodes)}
    A = 2 * np.eye(len(diag.nodes), dtype=np.int64)
    for e in diag.edges:
        i, j = idx[e.i], idx[e.j]
        if e.multiplicity == 1:
            A[i, j] = A[j, i] = -1
        elif e.multiplicity == 4:
            A[i, j] = A[j, i] = -2
        else:
            s, lg = (i, j) if e.short == e.i else (j, i)
            A[s, lg] = -e.multiplicity
            A[lg, s] = -1
    return A


@dataclass(frozen=True)
class RootSystem:
    name: str
    rank: int
    cartan: np.ndarray
    positive_roots: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        assert all(self.cartan[i, i] == 2 for i in range(self.rank))


def _positive_roots_from_cartan(A: np.ndarray) -> list[tuple[int, ...]]:
    n = A.shape[0]
    simple = [tuple(int(i == k) for i in range(n)) for k in range(n)]
    roots = list(simple)
    known = set(roots)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                # alpha_i-string through beta: beta - p*alpha_i, ..., beta + q*alpha_i
                p = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in known:
                        p += 1
                    else:
                        break
                pairing = sum(beta[j] * int(A[i, j]) for j in range(n))
                if p - pairing > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in known:
                        known.add(up)
                        nxt.append(up)
        roots.extend(sorted(nxt))
        layer = nxt
    return roots


_SMALL_SYSTEMS = {
    "A1": np.array([[2]]),
    "A1XA1": np.array([[2, 0], [0, 2]]),
    "A2": np.array([[2, -1], [-1, 2]]),
    # alpha (index 0) short, beta long
    "C2": np.array([[2, -2], [-1, 2]]),
    "B2": np.array([[2, -2], [-1, 2]]),
    "G2": np.array([[2, -3], [-1, 2]]),
}


def positive_roots(type_: str | Rank2Type, rank: int | None = None) -> RootSystem:
    """Positive roots, in simple-root coordinates, of a rank <= 2 system.

    For C2 the first simple root is short: roots alpha, beta, alpha+beta,
    2alpha+beta.
    """
    key = (type_.value if isinstance(type_, Rank2Type) else str(type_)).upper().replace("×", "X")
    if key not in _SMALL_SYSTEMS:
        raise ValueError(f"unsupported root system {type_!r}")
    A = _SMALL_SYSTEMS[key].astype(np.int64)
    if rank is not None and rank != A.shape[0]:
        raise ValueError(f"{type_} has rank {A.shape[0]}, not {rank}")
    name = "C2" if key == "B2" else key.replace("X", "x")
    return RootSystem(name, A.shape[0], A, tuple(_positive_roots_from_cartan(A)))
