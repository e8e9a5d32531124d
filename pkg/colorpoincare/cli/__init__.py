"""
Command-line interface and expression parser.
"""
from .parser import parse_expr, render

__all__ = ["parse_expr", "render"]
