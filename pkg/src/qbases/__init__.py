"""Exact computation of PBW, canonical and dual canonical bases for the
negative half of a quantized enveloping algebra of symmetric finite type,
with crystal combinatorics, preprojective-algebra module calculus and
quantum cluster mutation on top.
"""

__version__ = "0.1.0"

from .laurent import LaurentPoly, RatFunc, quantum_binomial, quantum_factorial, quantum_int

__all__ = [
    "LaurentPoly",
    "RatFunc",
    "quantum_int",
    "quantum_factorial",
    "quantum_binomial",
]
