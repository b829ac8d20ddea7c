"""Universal commutator laws and the Sp4 commutation facts used when
reducing the glued presentation, checked inside a matrix model."""

from __future__ import annotations

import numpy as np

from ..presentations import ALPHA, BETA, _Sp4Words, present_sp4_sylow
from .models import MatrixGF, MatrixModel, comm_m, eval_word


def conj_m(x: MatrixGF, y: MatrixGF) -> MatrixGF:
    """x^y = y x y^-1."""
    return y @ x @ y.inverse()


def star_identity(a: MatrixGF, b: MatrixGF, c: MatrixGF) -> bool:
    """[a, bc] = [a, b] [a, c]^b."""
    return comm_m(a, b @ c) == comm_m(a, b) @ conj_m(comm_m(a, c), b)


def hall_witt(x: MatrixGF, y: MatrixGF, z: MatrixGF) -> bool:
    xi, yi, zi = x.inverse(), y.inverse(), z.inverse()
    w = (conj_m(comm_m(comm_m(y, xi), zi), yi)
         @ conj_m(comm_m(comm_m(z, yi), xi), zi)
         @ conj_m(comm_m(comm_m(x, zi), yi), xi))
    return w.is_identity()


def claim_checks(model: MatrixModel) -> dict[str, dict]:
    """The three commutation facts, both for the defining words of
    x_{alpha+beta}, x_{2alpha+beta} over the basis (p odd) and for the true
    root elements over every pair of field elements."""
    if model.kind != "C2":
        raise ValueError("claim checks need the C2 model")
    F = model.field
    out: dict[str, dict] = {}
    x = model.x
    els = list(F.elements())
    exhaustive = {
        "part1": all(comm_m(x(BETA, t), x("2alpha+beta", s)).is_identity() for s in els for t in els),
        "part2": all(comm_m(comm_m(x(ALPHA, s), x(BETA, 1)), x(BETA, t)).is_identity()
                     for s in els for t in els),
        "part3": all(comm_m(x("alpha+beta", s), x(BETA, t)).is_identity() for s in els for t in els),
    }
    out["field"] = {k: bool(v) for k, v in exhaustive.items()}
    if F.p != 2:
        W = _Sp4Words(F)
        pres = present_sp4_sylow(F)
        ev = lambda w: eval_word(model, pres, w)
        rng = range(F.a)
        words = {
            "part1": all(comm_m(ev(W.b_[j]), ev(W.Z[i])).is_identity() for i in rng for j in rng),
            "part2": all(comm_m(comm_m(ev(W.a_[i]), ev(W.b_[0])), ev(W.b_[j])).is_identity()
                         for i in rng for j in rng),
            "part3": all(comm_m(ev(W.X[i]), ev(W.b_[j])).is_identity() for i in rng for j in rng),
        }
        out["words"] = {k: bool(v) for k, v in words.items()}
    return out


def commutator_identity_suite(model: MatrixModel, samples: int = 1000, seed: int = 0) -> dict:
    """Check [a,bc] = [a,b][a,c]^b and Hall-Witt on seeded random triples."""
    rng = np.random.default_rng(seed)
    star_fail, hw_fail = [], []
    for n in range(samples):
        a, b, c = (model.random_element(rng) for _ in range(3))
        if not star_identity(a, b, c):
            star_fail.append(n)
        if not hall_witt(a, b, c):
            hw_fail.append(n)
    e = model.identity()
    report = {
        "kind": model.kind,
        "q": model.field.q,
        "samples": samples,
        "seed": seed,
        "star_failures": star_fail,
        "hall_witt_failures": hw_fail,
        "trivial_triple": star_identity(e, e, e) and hall_witt(e, e, e),
    }
    if model.kind == "C2":
        report["claims"] = claim_checks(model)
    report["ok"] = (not star_fail and not hw_fail and report["trivial_triple"]
                    and all(all(v.values()) for v in report.get("claims", {}).values()))
    return report
