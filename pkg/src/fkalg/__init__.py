"""Exact computations with (deformed) Fomin-Kirillov algebras."""

__version__ = "0.1.0"
