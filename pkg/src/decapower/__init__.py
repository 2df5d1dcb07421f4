"""Desk-scale re-verification of the decagonal perfect-power classification.

The only decagonal number ``P10(n) = n(4n - 3)`` greater than one that is a
perfect power is ``P10(3) = 27``.  This package re-runs every finite
computation behind that statement: the 3-adic descent, the small-exponent
Thue equations, the Frey curves with their conductors and lowered levels,
newform dimensions, and the CM / inertia / rank obstructions.
"""

__version__ = "0.1.0"
