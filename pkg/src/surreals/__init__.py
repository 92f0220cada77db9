"""Exact arithmetic on desk-scale surreal numbers."""
from __future__ import annotations

from .ordinal import Eps, Ordinal
from .core import NormalForm, SignSeq
from . import errors

__all__ = ["Eps", "Ordinal", "NormalForm", "SignSeq", "errors"]
__version__ = "0.1.0"
