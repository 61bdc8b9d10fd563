"""Counter-based, splittable random source for reproducible waveforms.

The bit stream is the Philox4x64-10 generator shipped with numpy,
keyed by ``(seed, stream)``. Output block ``i`` is the cipher applied to
counter ``i + 1`` (numpy advances the counter before encrypting); the test
suite pins this with an independent pure-Python cipher and frozen vectors.

Only raw 64-bit words are taken from numpy. The conversion to uniforms and
normals is done here with plain arithmetic, so the sample streams do not
depend on numpy's distribution algorithms.
"""

import numpy as np

MASK64 = (1 << 64) - 1
_TWO_PI = 2.0 * np.pi
_INV_2_53 = 1.0 / 9007199254740992.0


def splitmix64(x):
    """SplitMix64 finaliser; used to derive child stream ids."""
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


class CounterRNG:
    """Philox stream addressed by ``(seed, stream)``.

    ``spawn(i)`` returns an independent child whose stream id is a hash of the
    parent's stream id and ``i``; children of the same parent never share a
    key, and spawning is a pure function of its arguments.
    """

    def __init__(self, seed, stream=0):
        seed = int(seed)
        stream = int(stream)
        if not (0 <= seed <= MASK64 and 0 <= stream <= MASK64):
            raise ValueError("seed and stream must fit in an unsigned 64-bit integer")
        self.seed = seed
        self.stream = stream
        key = np.array([seed, stream], dtype=np.uint64)
        self._bitgen = np.random.Philox(key=key)

    def __repr__(self):
        return f"CounterRNG(seed={self.seed}, stream={self.stream})"

    def spawn(self, index):
        child = splitmix64((self.stream * 0x9E3779B97F4A7C15 + int(index) + 1) & MASK64)
        return CounterRNG(self.seed, child)

    def raw(self, n):
        """Next ``n`` raw 64-bit words."""
        return self._bitgen.random_raw(int(n))

    def uniform(self, n):
        """``n`` doubles on [0, 1) from the top 53 bits of each word."""
        return (self.raw(n) >> np.uint64(11)).astype(np.float64) * _INV_2_53

    def uniform_open(self, n):
        """``n`` doubles on (0, 1); never exactly 0, safe for ``log``."""
        return ((self.raw(n) >> np.uint64(11)).astype(np.float64) + 0.5) * _INV_2_53

    def phases(self, n):
        """Unit-modulus complex samples with uniform phase."""
        phi = _TWO_PI * self.uniform(n)
        return np.cos(phi) + 1j * np.sin(phi)

    def complex_normal(self, n):
        """Circular complex normal samples with ``E|z|^2 = 1`` (Box-Muller)."""
        n = int(n)
        words = self.raw(2 * n)
        u1 = ((words[0::2] >> np.uint64(11)).astype(np.float64) + 0.5) * _INV_2_53
        u2 = (words[1::2] >> np.uint64(11)).astype(np.float64) * _INV_2_53
        r = np.sqrt(-np.log(u1))
        phi = _TWO_PI * u2
        return r * np.cos(phi) + 1j * (r * np.sin(phi))
