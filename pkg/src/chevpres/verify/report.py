"""One-call verification of a presentation against its matrix group."""

from __future__ import annotations

from ..presentations import Presentation, mod_p_abelianization_rank
from .closure import CapExceeded, closure, frattini_generator_count
from .models import build_model, verify_presentation
from .todd_coxeter import todd_coxeter

# family -> (model kind, log_q of the group order)
FAMILIES = {
    "abelian-rootgroup": ("A1", 1),
    "sl3-sylow": ("A2", 3),
    "sp4-sylow": ("C2", 4),
    "sp4-sylow-even": ("C2", 4),
}


def minimality_regime(family: str, p: int, q: int) -> bool:
    """Parameters where d = 2a is asserted for the rank-2 Sylow subgroups."""
    if family == "sl3-sylow":
        return q >= 4
    if family in ("sp4-sylow", "sp4-sylow-even"):
        return p >= 3 or q >= 16
    return True


def verification_report(pres: Presentation, *, run_tc: bool = True, run_closure: bool = True,
                        max_cosets: int | None = None, closure_cap: int | None = None) -> dict:
    """Relator check, closure order, coset count and Frattini rank.

    ``ok`` requires every relator to hold and both orders (when computed) to
    equal the expected order.  Inside the minimality regime the Frattini rank
    must also equal the generator count."""
    F = pres.field
    if F is None:
        raise ValueError("presentation has no field")
    q, p = F.q, F.p
    rank, d_lower = mod_p_abelianization_rank(pres, p)
    report = {"family": pres.family, "q": q}
    if pres.family == "affine-uplus":
        models = {k: build_model(k, F) for k in ("A1xA1", "A2", "C2")}
        vr = verify_presentation(models, pres)
        report.update(relators_checked=vr.checked, failures=vr.failures,
                      order_closure=None, order_tc=None, d_frattini=None,
                      d_lower=d_lower, d_expected=F.a * len(pres.diagram.nodes))
        report["ok"] = vr.ok and d_lower == report["d_expected"]
        return report
    if pres.family not in FAMILIES:
        raise ValueError(f"no matrix model for family {pres.family!r}")
    kind, log_order = FAMILIES[pres.family]
    model = build_model(kind, F)
    vr = verify_presentation(model, pres)
    expected = q ** log_order
    report.update(relators_checked=vr.checked, failures=vr.failures,
                  order_closure=None, order_tc=None, d_frattini=None)
    ok = vr.ok
    if run_closure:
        try:
            enum = closure(model.generators(), cap=closure_cap)
            report["order_closure"] = enum.order
            report["d_frattini"] = frattini_generator_count(enum, p)
            ok = ok and enum.order == expected
        except CapExceeded:
            report["order_closure"] = "overflow"
            ok = False
    if run_tc:
        table = todd_coxeter(pres, max_cosets)
        report["order_tc"] = table.order if table.status == "closed" else "overflow"
        ok = ok and report["order_tc"] == expected
    regime = minimality_regime(pres.family, p, q)
    report.update(order_expected=expected, d_lower=d_lower, d_asserted=regime)
    if regime:
        ok = ok and d_lower == pres.d_count
        if report["d_frattini"] is not None:
            ok = ok and report["d_frattini"] == pres.d_count
    report["ok"] = ok
    return report
