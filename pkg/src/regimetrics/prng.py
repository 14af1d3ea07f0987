"""Portable deterministic pseudo-random streams.

Synthetic scenarios must reproduce bit-for-bit across runs, platforms and
reimplementations in other languages, so the generator is pinned down
completely rather than delegated to a host library. The choice is PCG32
(XSH-RR output permutation on a 64-bit linear congruential state):

    state'  = state * 6364136223846793005 + increment   (mod 2**64)
    output  = rotr32(((state >> 18) ^ state) >> 27, state >> 59)

where ``increment = 2 * stream + 1`` and ``output`` is computed from the
state *before* the step. Seeding follows the reference discipline: start
from state 0, step once, add the seed, step again.

Every scenario channel draws from its own substream: channel ``c`` of a
scenario seeded with ``s`` uses ``Pcg32(seed=s, stream=c)``, so channels
can be generated independently and in any order without changing the
result.

Doubles take the top 53 bits of two consecutive 32-bit outputs:
``((hi << 21) | (lo >> 11)) / 2**53`` which lies in [0, 1) and is exact
in IEEE-754 double precision.
"""

from __future__ import annotations

_MULTIPLIER = 6364136223846793005
_MASK64 = (1 << 64) - 1
_MASK32 = (1 << 32) - 1
_TWO53 = float(1 << 53)

SEED_MAX = _MASK64


class Pcg32:
    """PCG32 stream generator with a fixed, documented seeding discipline."""

    __slots__ = ("_state", "_inc")

    def __init__(self, seed: int, stream: int = 0):
        if not 0 <= seed <= SEED_MAX:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
        if stream < 0:
            raise ValueError(f"stream must be non-negative, got {stream}")
        self._inc = ((stream << 1) | 1) & _MASK64
        self._state = 0
        self._step()
        self._state = (self._state + seed) & _MASK64
        self._step()

    def _step(self) -> None:
        self._state = (self._state * _MULTIPLIER + self._inc) & _MASK64

    def next_uint32(self) -> int:
        old = self._state
        self._step()
        xorshifted = (((old >> 18) ^ old) >> 27) & _MASK32
        rot = old >> 59
        return ((xorshifted >> rot) | (xorshifted << ((32 - rot) & 31))) & _MASK32

    def next_double(self) -> float:
        """Next double in [0, 1), built from 53 bits of two 32-bit draws."""
        hi = self.next_uint32()
        lo = self.next_uint32()
        return ((hi << 21) | (lo >> 11)) / _TWO53

    def next_unit_interval_symmetric(self) -> float:
        """Next double in [-1, 1)."""
        return 2.0 * self.next_double() - 1.0
