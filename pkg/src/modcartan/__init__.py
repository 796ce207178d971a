"""Modular representation theory of finite groups over F_p and finite chain rings."""

__version__ = "0.1.0"
