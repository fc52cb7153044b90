"""Quadratic algebras over F_p, Koszulity certificates and one-relator pro-p presentations."""

__version__ = "0.1.0"
