"""Matrix realizations of rank-2 unipotent groups over F_q.

A matrix over F_q is stored through the regular representation of F_q over
F_p: each entry becomes the a x a matrix of multiplication by it, so products
are plain integer matmuls mod p and equality is exact byte comparison.

Sp4 preserves the antidiagonal form with entries (+1, +1, -1, -1) read top to
bottom; with alpha short and beta long the positive root elements are

    x_alpha(s)      = I + s (E12 - E34)     x_beta(t)        = I + t E23
    x_{alpha+beta}(u) = I + u (E13 + E24)   x_{2alpha+beta}(w) = I + w E14
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping

from functools import lru_cache

import numpy as np

from ..ffield import FFElement, FiniteField
from ..linalg import row_echelon_mod_p
from ..presentations import ALPHA, BETA, Presentation
from ..words import Word

# symplectic form used by the C2 model (rows of J)
SP4_FORM = ((0, 0, 0, 1), (0, 0, 1, 0), (0, -1, 0, 0), (-1, 0, 0, 0))


@lru_cache(maxsize=None)
def _lower_block_mask(n: int, a: int) -> tuple[np.ndarray, np.ndarray]:
    """Positions on or below the block diagonal, and the identity's values there."""
    block_row = np.repeat(np.arange(n), a)
    mask = block_row[:, None] >= block_row[None, :]
    return mask, np.eye(n * a, dtype=np.int64)[mask]


class MatrixGF:
    __slots__ = ("field", "n", "blocks", "_key")

    def __init__(self, F: FiniteField, n: int, blocks: np.ndarray):
        self.field = F
        self.n = n
        self.blocks = blocks
        self._key = None

    @classmethod
    def from_entries(cls, F: FiniteField, entries) -> "MatrixGF":
        codes = np.array([[F.element(x).code if isinstance(x, FFElement) else int(x)
                           for x in row] for row in entries], dtype=np.int64)
        n, a = codes.shape[0], F.a
        blocks = np.zeros((n * a, n * a), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                if codes[i, j]:
                    blocks[i * a:(i + 1) * a, j * a:(j + 1) * a] = F.regular_matrix(int(codes[i, j]))
        return cls(F, n, blocks)

    @classmethod
    def identity(cls, F: FiniteField, n: int) -> "MatrixGF":
        return cls(F, n, np.eye(n * F.a, dtype=np.int64))

    @property
    def entries(self) -> list[list[FFElement]]:
        F, a = self.field, self.field.a
        return [[FFElement(F, F.encode(self.blocks[i * a:(i + 1) * a, j * a]))
                 for j in range(self.n)] for i in range(self.n)]

    def entry(self, i: int, j: int) -> FFElement:
        a = self.field.a
        return FFElement(self.field, self.field.encode(self.blocks[i * a:(i + 1) * a, j * a]))

    def __matmul__(self, other: "MatrixGF") -> "MatrixGF":
        return MatrixGF(self.field, self.n, (self.blocks @ other.blocks) % self.field.p)

    __mul__ = __matmul__

    def _is_block_unitriangular(self) -> bool:
        mask, eye = _lower_block_mask(self.n, self.field.a)
        return bool(np.array_equal(self.blocks[mask], eye))

    def inverse(self) -> "MatrixGF":
        m = self.blocks.shape[0]
        if self._is_block_unitriangular():
            # N = M - I is block strictly upper triangular, so N^n = 0 and
            # M^-1 = I - N + N^2 - ... +- N^(n-1)
            p = self.field.p
            negN = (np.eye(m, dtype=np.int64) - self.blocks) % p
            out = np.eye(m, dtype=np.int64)
            term = out
            for _ in range(self.n - 1):
                term = term @ negN % p
                out = out + term
            return MatrixGF(self.field, self.n, out % p)
        R, pivots = row_echelon_mod_p(np.hstack([self.blocks, np.eye(m, dtype=np.int64)]),
                                      self.field.p)
        if pivots[:m] != list(range(m)):
            raise ZeroDivisionError("singular matrix")
        return MatrixGF(self.field, self.n, np.ascontiguousarray(R[:, m:]))

    def __pow__(self, e: int) -> "MatrixGF":
        if e < 0:
            return self.inverse() ** (-e)
        out = MatrixGF.identity(self.field, self.n)
        base = self
        while e:
            if e & 1:
                out = out @ base
            base = base @ base
            e >>= 1
        return out

    def key(self) -> bytes:
        if self._key is None:
            self._key = self.blocks.astype(np.uint8 if self.field.p < 256 else np.int64).tobytes()
        return self._key

    def __eq__(self, other):
        return isinstance(other, MatrixGF) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def is_identity(self) -> bool:
        return np.array_equal(self.blocks, np.eye(self.blocks.shape[0], dtype=np.int64))

    def __repr__(self):
        return "MatrixGF(" + "; ".join(", ".join(map(repr, r)) for r in self.entries) + ")"


def comm_m(x: MatrixGF, y: MatrixGF) -> MatrixGF:
    return x @ y @ x.inverse() @ y.inverse()


@dataclass(frozen=True)
class StructureConstant:
    """[x_first(s), x_second(t)] = prod over terms of x_root(N s^i t^j),
    in the listed order."""

    first: str
    second: str
    terms: tuple[tuple[str, int, int, int], ...]


@dataclass(eq=False)
class MatrixModel:
    kind: str
    field: FiniteField
    n: int
    roots: tuple[str, ...]
    root_matrix: Callable[[str, FFElement], MatrixGF]
    structure: tuple[StructureConstant, ...]
    _cache: dict = field(default_factory=dict, repr=False)

    def x(self, root: str, u) -> MatrixGF:
        u = self.field.element(u)
        key = (root, u.code)
        if key not in self._cache:
            if root not in self.roots:
                raise KeyError(f"{self.kind} model has no root {root!r}")
            self._cache[key] = self.root_matrix(root, u)
        return self._cache[key]

    def identity(self) -> MatrixGF:
        return MatrixGF.identity(self.field, self.n)

    def generators(self) -> list[MatrixGF]:
        """x_alpha(v_k), x_beta(v_k) (alpha only for A1)."""
        simple = [r for r in (ALPHA, BETA) if r in self.roots]
        return [self.x(r, v) for r in simple for v in self.field.basis]

    def random_element(self, rng: np.random.Generator) -> MatrixGF:
        out = self.identity()
        for r in self.roots:
            out = out @ self.x(r, FFElement(self.field, int(rng.integers(self.field.q))))
        return out


def _unit(F, n, cells, u: FFElement) -> MatrixGF:
    """I + sum(sign * u * E_ij) over cells (i, j, sign), 1-based."""
    entries = [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]
    for i, j, sign in cells:
        entries[i - 1][j - 1] = u if sign > 0 else -u
    return MatrixGF.from_entries(F, entries)


_CELLS = {
    "A1": (2, {ALPHA: [(1, 2, 1)]}),
    "A1xA1": (4, {ALPHA: [(1, 2, 1)], BETA: [(3, 4, 1)]}),
    "A2": (3, {ALPHA: [(1, 2, 1)], BETA: [(2, 3, 1)], "alpha+beta": [(1, 3, 1)]}),
    "C2": (4, {ALPHA: [(1, 2, 1), (3, 4, -1)], BETA: [(2, 3, 1)],
               "alpha+beta": [(1, 3, 1), (2, 4, 1)], "2alpha+beta": [(1, 4, 1)]}),
}

_STRUCTURE = {
    "A1": (),
    "A1xA1": (),
    "A2": (StructureConstant(ALPHA, BETA, (("alpha+beta", 1, 1, 1),)),),
    "C2": (
        StructureConstant(ALPHA, BETA, (("alpha+beta", 1, 1, 1), ("2alpha+beta", 2, 1, 1))),
        StructureConstant(ALPHA, "alpha+beta", (("2alpha+beta", 1, 1, 2),)),
    ),
}


def build_model(kind: str, F: FiniteField) -> MatrixModel:
    kind = str(getattr(kind, "value", kind))
    kind = {"A1XA1": "A1xA1", "B2": "C2"}.get(kind.upper(), kind.upper())
    if kind not in _CELLS:
        raise ValueError(f"unsupported model kind {kind!r}")
    n, cells = _CELLS[kind]
    return MatrixModel(kind, F, n, tuple(cells),
                       lambda root, u: _unit(F, n, cells[root], u), _STRUCTURE[kind])


# -- relator evaluation ---------------------------------------------------------

def _generator_matrix(model: MatrixModel, pres: Presentation, g: int,
                      roles: Mapping | None) -> MatrixGF:
    sym = pres.generators[g]
    root = sym.node if roles is None else roles.get(sym.node)
    if root not in (ALPHA, BETA) or root not in model.roots:
        raise KeyError(f"generator {sym} does not map into the {model.kind} model")
    return model.x(root, model.field.basis[sym.k - 1])


def eval_word(model: MatrixModel, pres: Presentation, w: Word,
              roles: Mapping | None = None) -> MatrixGF:
    """Left-to-right product of root elements; ``roles`` maps presentation
    nodes to "alpha"/"beta" (identity for the rank-2 families)."""
    p = model.field.p
    cache: dict[tuple[int, int], np.ndarray] = {}
    acc = np.eye(model.n * model.field.a, dtype=np.int64)
    for g, e in w:
        key = (g, e)
        if key not in cache:
            cache[key] = (_generator_matrix(model, pres, g, roles) ** e).blocks
        acc = (acc @ cache[key]) % p
    return MatrixGF(model.field, model.n, acc)


@dataclass
class VerifyReport:
    checked: int
    failures: list[int]

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_presentation(model: MatrixModel | Mapping[str, MatrixModel],
                        pres: Presentation) -> VerifyReport:
    """Evaluate every relator in the matrix model where it lives.

    For the rank-2 families pass the single model; for amalgam presentations
    pass a mapping kind -> model (a missing "A1" entry falls back to any
    model, since node relators only involve the alpha role).
    """
    failures = []
    single = isinstance(model, MatrixModel)
    for idx, w in enumerate(pres.relators):
        info = pres.info[idx] if pres.info else None
        if single:
            m, roles = model, None
            if info is not None and info.kind not in (model.kind, "A1"):
                raise ValueError(f"relator {idx} lives in {info.kind}, model is {model.kind}")
            if info is not None and isinstance(info.nodes[0], int):
                roles = dict(zip(info.nodes, (ALPHA, BETA)))
        else:
            if info is None:
                raise ValueError("amalgam verification needs relator info")
            m = model.get(info.kind) or (next(iter(model.values())) if info.kind == "A1" else None)
            if m is None:
                raise ValueError(f"no model for relator kind {info.kind}")
            roles = dict(zip(info.nodes, (ALPHA, BETA)))
        if not eval_word(m, pres, w, roles).is_identity():
            failures.append(idx)
    return VerifyReport(len(pres.relators), failures)
