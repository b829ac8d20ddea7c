"""Breadth-first enumeration of matrix groups and Frattini quotients."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from .models import MatrixGF


class CapExceeded(RuntimeError):
    pass


@dataclass
class GroupEnumeration:
    generators: list[MatrixGF]
    elements: dict[bytes, MatrixGF]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: MatrixGF) -> bool:
        return g.key() in self.elements


def _close(seeds: list[MatrixGF], cap: int, start: list[MatrixGF] | None = None) -> dict[bytes, MatrixGF]:
    if not seeds and not start:
        raise ValueError("closure needs at least one generator")
    ref = (seeds or start)[0]
    F, n = ref.field, ref.n
    p = F.p
    ident = MatrixGF.identity(F, n)
    elements: dict[bytes, MatrixGF] = {ident.key(): ident}
    for g in start or ():
        elements.setdefault(g.key(), g)
    queue = deque(elements.values())
    gen_blocks = [g.blocks for g in seeds]
    while queue:
        x = queue.popleft()
        for gb in gen_blocks:
            y = MatrixGF(F, n, (gb @ x.blocks) % p)
            k = y.key()
            if k not in elements:
                if len(elements) >= cap:
                    raise CapExceeded(f"closure exceeded cap {cap}")
                elements[k] = y
                queue.append(y)
    return elements


def closure(generators: list[MatrixGF], cap: int | None = None) -> GroupEnumeration:
    """All products of the generators (finite group, so no inverses needed).
    Default cap 2 q^4."""
    if not generators:
        raise ValueError("closure needs at least one generator")
    if cap is None:
        cap = 2 * generators[0].field.q ** 4
    return GroupEnumeration(list(generators), _close(list(generators), cap))


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def frattini_generator_count(enum: GroupEnumeration, p: int) -> int:
    """log_p |G / [G,G] G^p| for an enumerated p-group G.

    The Frattini subgroup is the normal closure of the commutators and p-th
    powers of the generators; it is built by alternating subgroup closure and
    conjugation by the generators until stable.
    """
    if not _is_power_of(enum.order, p):
        raise ValueError(f"group order {enum.order} is not a power of {p}")
    gens = enum.generators
    seeds = [g ** p for g in gens]
    seeds += [x @ y @ x.inverse() @ y.inverse() for i, x in enumerate(gens) for y in gens[i + 1:]]
    seeds = [s for s in seeds if not s.is_identity()]
    if not seeds:
        sub = {MatrixGF.identity(gens[0].field, gens[0].n).key(): None}
    else:
        while True:
            sub = _close(seeds, enum.order)
            inv = [g.inverse() for g in gens]
            new = []
            for s in seeds:
                for g, gi in zip(gens, inv):
                    c = g @ s @ gi
                    if c.key() not in sub:
                        new.append(c)
            if not new:
                break
            seeds += new
    ratio = enum.order // len(sub)
    return round(math.log(ratio, p)) if ratio > 1 else 0
