"""Seedable, portable pseudo-random generator (splitmix64).

Every randomized feature of the package draws from this generator rather
than the platform default, so identical seeds reproduce identical sets on
any machine or language.  Range reduction is plain modulo; the bias is
irrelevant at the set sizes used here.
"""

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """splitmix64 finalizer; a 64-bit bijection."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, index: int) -> int:
    """Independent child seed for work item ``index`` (schedule-free)."""
    return mix64((seed & _MASK64) ^ mix64((index + 1) * _GAMMA))


class SplitMix64:
    """The splitmix64 sequence: state += gamma; output = mix(state)."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        return mix64(self._state)

    def below(self, n: int) -> int:
        """Uniform-ish integer in [0, n)."""
        if n <= 0:
            raise ValueError("below() needs n >= 1")
        return self.next_u64() % n

    def choice(self, seq):
        return seq[self.below(len(seq))]
