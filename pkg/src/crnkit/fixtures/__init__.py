"""Bundled Wnt-signaling model networks, addressable by short name."""

from __future__ import annotations

from importlib import resources

from ..core import Network, parse_network

NAMES = ("lee", "fal", "maclean", "schmitz", "schmitz-augmented", "schmitz-reduced")


def available() -> tuple[str, ...]:
    """Names accepted by :func:`load`."""
    return NAMES


def load(name: str) -> Network:
    """Load a bundled network by name."""
    if name not in NAMES:
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(NAMES)}")
    text = resources.files(__package__).joinpath(f"{name}.crn").read_text(encoding="utf-8")
    return parse_network(text)
