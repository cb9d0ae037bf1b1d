"""Structural analysis of chemical reaction networks.

Exact-arithmetic network invariants, independent decompositions, concordance
search, model comparison, and mass-action equilibria tooling, bundled with the
four Wnt-signaling model networks as fixtures.
"""

from __future__ import annotations

__version__ = "0.1.0"
