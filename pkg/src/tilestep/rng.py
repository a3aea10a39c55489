"""Deterministic seed derivation.

Per-circuit seeds are derived from the master seed and the circuit's position
in the sweep, so regenerating any single circuit does not require replaying
the whole stream. Derivation uses splitmix64, which is well mixed even for
adjacent inputs; bulk sampling is then done with numpy's default Generator
seeded by the derived value.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(state: int) -> tuple[int, int]:
    """Advance a splitmix64 state once.

    Args:
        state: Current 64-bit state.

    Returns:
        Tuple of (next state, output word), both in [0, 2**64).
    """
    state = (state + _GOLDEN) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return state, z ^ (z >> 31)


def derive_seed(master_seed: int, *parts: int) -> int:
    """Derive a child seed from a master seed and a sequence of integers.

    The same (master, parts) pair always yields the same seed; distinct
    parts sequences yield independent-looking seeds.
    """
    state = master_seed & _MASK64
    out = 0
    for part in (len(parts), *parts):
        state ^= part & _MASK64
        state, out = splitmix64(state)
    return out
