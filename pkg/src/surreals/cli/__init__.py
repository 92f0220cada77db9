"""Parser, evaluator and command line front end."""
from __future__ import annotations

from .parser import parse
from .session import Session, SessionConfig, render

__all__ = ["parse", "Session", "SessionConfig", "render"]
