"""Deterministic 64-bit seed derivation for independent random streams.

All derived streams come from chaining the SplitMix64 finalizer over the
master seed and the stream keys, so any implementation of that mixer
reproduces the same sub-seeds.
"""

_MASK = 0xFFFFFFFFFFFFFFFF


def splitmix64(x: int) -> int:
    """One SplitMix64 step: advance by the golden-ratio increment and mix."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def derive_seed(master: int, *keys: int) -> int:
    """Mix a master seed with integer keys into an independent 64-bit seed."""
    h = splitmix64(master & _MASK)
    for key in keys:
        h = splitmix64(h ^ (key & _MASK))
    return h
