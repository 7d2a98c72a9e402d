"""Size caps for the exhaustive algorithms.

Everything in this package enumerates; none of it samples.  The caps bound
what we are willing to enumerate so that oversized inputs fail loudly
(SizeCapExceeded) instead of hanging.  OQLKIT_CAP, or --cap on the command
line, overrides max_elements, the cap on dense lattice tables.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Caps:
    # largest lattice for which dense meet/join tables are built
    max_elements: int = 64
    # largest lattice on which full subset enumeration (2^n) is attempted
    max_subset_exhaustive: int = 20
    # most distributive ideals enumerate_di will produce
    max_ideals: int = 1 << 16
    # most distinct actions an induction algebra closure may reach
    max_inductions: int = 128


def get_caps(cap: int | None = None) -> Caps:
    """Default caps, with max_elements overridden by `cap` or $OQLKIT_CAP."""
    base = Caps()
    env = os.environ.get("OQLKIT_CAP")
    if cap is None and env is not None:
        try:
            cap = int(env)
        except ValueError as exc:
            raise ValueError(f"OQLKIT_CAP must be an integer, got {env!r}") from exc
    if cap is not None:
        if cap < 1:
            raise ValueError("cap must be positive")
        base = replace(base, max_elements=cap)
    return base
