"""Sp4 Sylow subgroup (p odd) rebuilt as N x| H and glued by the
extension recipe: N = <x_alpha, x_{alpha+beta}, x_{2alpha+beta}>, which has
the same shape as the SL3 Sylow subgroup, and H = x_beta(F_q)."""

from __future__ import annotations

from dataclasses import dataclass

from ..ffield import FiniteField
from ..presentations import (ALPHA, ExtensionData, Presentation, hall_glue,
                             present_abelian_rootgroup, present_sl3_sylow)
from ..words import Word, comm, product
from .models import MatrixGF, MatrixModel, build_model


@dataclass(frozen=True)
class Sp4Extension:
    data: ExtensionData
    glued: Presentation
    model: MatrixModel
    matrices: tuple[MatrixGF, ...]  # image of each glued generator

    def evaluate(self, w: Word) -> MatrixGF:
        out = self.model.identity()
        for g, e in w:
            out = out @ self.matrices[g] ** e
        return out

    def failures(self) -> list[int]:
        return [i for i, w in enumerate(self.glued.relators) if not self.evaluate(w).is_identity()]


def _normal_form_word(F: FiniteField, model: MatrixModel, g: MatrixGF) -> Word:
    """Word over N's generators for g = x_a(s) x_{a+b}(t) x_{2a+b}(u)."""
    a = F.a
    s, t = g.entry(0, 1), g.entry(0, 2)
    rest = (model.x("alpha+beta", t).inverse() @ model.x(ALPHA, s).inverse()) @ g
    u = rest.entry(0, 3)
    # [x_a(1), x_{a+b}(w)] = x_{2a+b}(2w)
    w = u * F.element((F.p + 1) // 2)
    a_ = [Word.gen(k) for k in range(a)]
    e_ = [Word.gen(a + k) for k in range(a)]
    return (product(a_[k] ** c for k, c in enumerate(s.coeffs))
            * product(e_[k] ** c for k, c in enumerate(t.coeffs))
            * product(comm(a_[0], e_[k]) ** c for k, c in enumerate(w.coeffs)))


def sp4_extension(F: FiniteField) -> Sp4Extension:
    if F.p == 2:
        raise ValueError("the semidirect decomposition used here needs p odd")
    model = build_model("C2", F)
    N, H = present_sl3_sylow(F), present_abelian_rootgroup(F)
    basis = F.basis
    n_mats = [model.x(ALPHA, v) for v in basis] + [model.x("alpha+beta", v) for v in basis]
    h_mats = [model.x("beta", v) for v in basis]
    V = tuple(tuple(_normal_form_word(F, model, h @ n @ h.inverse()) for n in n_mats) for h in h_mats)
    U = tuple(tuple(_normal_form_word(F, model, h.inverse() @ n @ h) for n in n_mats) for h in h_mats)
    data = ExtensionData(N, H, V, U, tuple(Word() for _ in H.relators))
    return Sp4Extension(data, hall_glue(data), model, tuple(n_mats + h_mats))
