"""Explicit presentations of unipotent and pro-p subgroups of Chevalley and
affine Kac-Moody groups over finite fields, with machine verification."""

__version__ = "0.1.0"
