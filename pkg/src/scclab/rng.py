"""Deterministic random number generation.

Every stochastic routine in the package draws from a numpy Generator backed
by the Philox counter-based bit generator.  Given the same seed and the same
parameters, output is bit-identical across runs and platforms.

Replica- and component-level sub-seeds are derived with `derive_seed`, which
mixes (seed XOR golden-ratio multiple of the index) through splitmix64.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> int:
    """One round of the splitmix64 mixer (public domain reference constants)."""
    x = (x + _GOLDEN) & MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return (z ^ (z >> 31)) & MASK64


def validate_seed(seed: int) -> int:
    if not isinstance(seed, (int, np.integer)):
        raise ValueError(f"seed must be an integer, got {type(seed).__name__}")
    seed = int(seed)
    if not 0 <= seed <= MASK64:
        raise ValueError(f"seed must fit in 64 bits, got {seed}")
    return seed


def make_rng(seed: int) -> np.random.Generator:
    """Generator with the documented Philox stream for this seed."""
    return np.random.Generator(np.random.Philox(key=validate_seed(seed)))


def derive_seed(seed: int, index: int) -> int:
    """Sub-seed for replica / substream `index`, stable and collision-resistant."""
    seed = validate_seed(seed)
    if index < 0:
        raise ValueError(f"index must be non-negative, got {index}")
    return splitmix64(seed ^ ((index * _GOLDEN) & MASK64))
