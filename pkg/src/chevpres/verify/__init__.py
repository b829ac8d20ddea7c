"""Ground-truth checks: matrix models of rank-2 unipotent groups, relator
evaluation, brute-force group closure, Frattini quotients and Todd-Coxeter
coset enumeration."""

from .models import MatrixGF, MatrixModel, build_model, eval_word, verify_presentation
from .closure import GroupEnumeration, closure, frattini_generator_count
from .todd_coxeter import CosetTable, todd_coxeter
from .identities import commutator_identity_suite
from .extension import Sp4Extension, sp4_extension
from .report import verification_report

__all__ = [
    "MatrixGF", "MatrixModel", "build_model", "eval_word", "verify_presentation",
    "GroupEnumeration", "closure", "frattini_generator_count",
    "CosetTable", "todd_coxeter", "commutator_identity_suite",
    "Sp4Extension", "sp4_extension", "verification_report",
]
