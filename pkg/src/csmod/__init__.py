"""Exact coincidence site lattices and modules in 3-space.

Rotations with coordinates in Q, Q(sqrt(5)) or Q(sqrt(2)) are handled via
the Cayley parametrization by quaternions; coincidence indices, coset
counts and generating functions are computed with exact arithmetic over
the corresponding rings of integers.
"""

from .rings import FieldElem, FieldTag, RingElem

__all__ = ["FieldElem", "FieldTag", "RingElem"]
__version__ = "0.1.0"
