"""Finite gradations of Kac-Moody algebras: Cartan matrix tools."""

from .gcm import GCM, classify, validate

__all__ = ["GCM", "classify", "validate"]
