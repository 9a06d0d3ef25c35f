"""Seeded dataset generation and the TAS1 binary dataset format.

All randomness comes from splitmix64.  :class:`Prng` is the scalar reference
stream; :meth:`Prng.below_many` draws many bounded values at once with numpy
but consumes the stream exactly as repeated :meth:`Prng.below` calls would,
so both paths produce identical datasets and leave identical state behind.
"""

from __future__ import annotations

import enum
import hashlib
import math
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import MalformedFile, SpecInvalid, ZeroBound

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB

DEFAULT_DISPLACEMENT = 0.05


def splitmix64_next(state: int) -> tuple[int, int]:
    """Advance ``state`` once; return ``(new_state, output)``."""
    state = (state + GAMMA) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return state, z ^ (z >> 31)


def _mix_array(states: np.ndarray) -> np.ndarray:
    z = states.copy()
    z ^= z >> np.uint64(30)
    z *= np.uint64(MIX1)
    z ^= z >> np.uint64(27)
    z *= np.uint64(MIX2)
    z ^= z >> np.uint64(31)
    return z


class Prng:
    """splitmix64 stream. One owner at a time; not thread-safe."""

    def __init__(self, seed: int) -> None:
        self.state = seed & MASK64

    def next(self) -> int:
        self.state, out = splitmix64_next(self.state)
        return out

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)`` by rejection sampling.

        Raw outputs below ``2**64 mod bound`` are rejected so every residue is
        equally likely.
        """
        if bound <= 0:
            raise ZeroBound("bound must be >= 1")
        if bound > 1 << 64:
            raise ValueError("bound exceeds 2**64")
        threshold = (1 << 64) % bound
        while True:
            x = self.next()
            if x >= threshold:
                return x % bound

    def raw_block(self, count: int) -> np.ndarray:
        """The next ``count`` outputs as a uint64 array, advancing the state."""
        steps = np.arange(1, count + 1, dtype=np.uint64)
        states = np.uint64(self.state) + steps * np.uint64(GAMMA)
        self.state = (self.state + count * GAMMA) & MASK64
        return _mix_array(states)

    def below_many(self, bounds: int | Sequence[int] | np.ndarray, count: int | None = None) -> np.ndarray:
        """Vectorised equivalent of ``[self.below(b) for b in bounds]``.

        ``bounds`` may be a scalar with ``count`` given.  Bounds must lie in
        ``[1, 2**64)``.  Rejections are rare (probability below ``bound / 2**64``),
        so a block is drawn assuming none and re-drawn from the first rejected
        position when one occurs.
        """
        if np.isscalar(bounds):
            if count is None:
                raise TypeError("count is required with a scalar bound")
            if int(bounds) <= 0:
                raise ZeroBound("bound must be >= 1")
            b = np.full(count, int(bounds), dtype=np.uint64)
        else:
            b = np.asarray(bounds, dtype=np.uint64)
            if b.size and int(b.min()) == 0:
                raise ZeroBound("bound must be >= 1")
        out = np.empty(b.size, dtype=np.uint64)
        thresholds = (np.uint64(0) - b) % b
        pos = 0
        while pos < b.size:
            start_state = self.state
            raw = self.raw_block(b.size - pos)
            rejected = np.flatnonzero(raw < thresholds[pos:])
            take = int(rejected[0]) if rejected.size else raw.size
            out[pos:pos + take] = raw[:take] % b[pos:pos + take]
            pos += take
            if rejected.size:
                # consume the rejected output and resume the stream just after it
                self.state = (start_state + (take + 1) * GAMMA) & MASK64
        return out


def derive_seed(seed: int, index: int) -> int:
    """Seed for grid cell ``index``: the ``index``-th output of the stream from ``seed``."""
    _, out = splitmix64_next((seed + index * GAMMA) & MASK64)
    return out


class Distribution(str, enum.Enum):
    RANDOM = "random"
    REVERSED = "reversed"
    NSORTED = "nsorted"
    U_RANDOM = "u_random"
    U_REVERSED = "u_reversed"
    U_NSORTED = "u_nsorted"

    @property
    def unique(self) -> bool:
        return self.value.startswith("u_")


@dataclass(frozen=True)
class DatasetSpec:
    dist: Distribution
    n: int
    k: int
    seed: int = 0
    displacement: float = DEFAULT_DISPLACEMENT

    def __post_init__(self) -> None:
        object.__setattr__(self, "dist", Distribution(self.dist))

    def validate(self) -> None:
        if self.n < 0 or self.k < 0:
            raise SpecInvalid(f"n and k must be non-negative (n={self.n}, k={self.k})")
        if self.k > MASK64:
            raise SpecInvalid(f"k={self.k} does not fit in 64 bits")
        if not 0.0 <= self.displacement <= 1.0:
            raise SpecInvalid(f"displacement {self.displacement} outside [0, 1]")
        if self.dist.unique and self.n > self.k + 1:
            raise SpecInvalid(f"{self.dist.value} needs n <= k + 1 (n={self.n}, k={self.k})")


def swap_count(n: int, fraction: float) -> int:
    # rounding guards against 0.05 * n landing a hair above an integer
    return math.ceil(round(fraction * n / 2, 9))


def displace(sorted_input: Sequence[int], fraction: float, prng: Prng) -> list[int]:
    """Swap ``ceil(fraction * n / 2)`` uniformly chosen pairs of distinct positions."""
    a = list(sorted_input)
    n = len(a)
    if n < 2:
        return a
    for _ in range(swap_count(n, fraction)):
        i = prng.below(n)
        j = prng.below(n - 1)
        if j >= i:
            j += 1
        a[i], a[j] = a[j], a[i]
    return a


def _uniform_values(prng: Prng, n: int, k: int) -> list[int]:
    if k == MASK64:
        return prng.raw_block(n).tolist()
    return prng.below_many(k + 1, n).tolist()


def _unique_sample(prng: Prng, n: int, k: int) -> list[int]:
    # Floyd's sampling over [0, k], then a Fisher-Yates shuffle on the same stream
    universe = k + 1
    if n == 0:
        return []
    if universe > MASK64:
        draws = [prng.below(j + 1) for j in range(universe - n, universe)]
    else:
        draws = prng.below_many(np.arange(universe - n + 1, universe + 1, dtype=np.uint64)).tolist()
    seen: set[int] = set()
    sample: list[int] = []
    for j, t in zip(range(universe - n, universe), draws):
        if t in seen:
            t = j
        seen.add(t)
        sample.append(t)
    swaps = prng.below_many(np.arange(n, 1, -1, dtype=np.uint64)).tolist()
    for i, j in zip(range(n - 1, 0, -1), swaps):
        sample[i], sample[j] = sample[j], sample[i]
    return sample


def generate(spec: DatasetSpec) -> list[int]:
    """Generate the dataset described by ``spec`` (bit-identical for equal specs)."""
    spec.validate()
    prng = Prng(spec.seed)
    dist = spec.dist
    if dist.unique:
        data = _unique_sample(prng, spec.n, spec.k)
    else:
        data = _uniform_values(prng, spec.n, spec.k)
    if dist in (Distribution.REVERSED, Distribution.U_REVERSED):
        data.sort(reverse=True)
    elif dist in (Distribution.NSORTED, Distribution.U_NSORTED):
        data.sort()
        data = displace(data, spec.displacement, prng)
    # rebuild so element objects sit in list order
    return np.array(data, dtype=np.uint64).tolist() if data else []


# -- TAS1 files ------------------------------------------------------------------

MAGIC = b"TAS1"
VERSION = 1
_HEADER = struct.Struct("<4sBQQ")
HEADER_SIZE = _HEADER.size


def encode_dataset(values: Sequence[int], k: int) -> bytes:
    body = np.asarray(values, dtype="<u8").tobytes() if len(values) else b""
    return _HEADER.pack(MAGIC, VERSION, len(values), k) + body


def decode_dataset(blob: bytes) -> tuple[list[int], int]:
    """Parse a TAS1 blob into ``(values, k)``; raises :class:`MalformedFile`."""
    if len(blob) < HEADER_SIZE:
        raise MalformedFile(f"file too short for a TAS1 header ({len(blob)} bytes)")
    magic, version, n, k = _HEADER.unpack_from(blob)
    if magic != MAGIC:
        raise MalformedFile(f"bad magic {magic!r}")
    if version != VERSION:
        raise MalformedFile(f"unsupported version {version}")
    expected = HEADER_SIZE + 8 * n
    if len(blob) != expected:
        raise MalformedFile(f"expected {expected} bytes for n={n}, found {len(blob)}")
    arr = np.frombuffer(blob, dtype="<u8", offset=HEADER_SIZE, count=n)
    if n and int(arr.max()) > k:
        raise MalformedFile(f"value {int(arr.max())} exceeds header k={k}")
    return arr.tolist(), k


def write_dataset(path: str | Path, values: Sequence[int], k: int) -> bytes:
    blob = encode_dataset(values, k)
    Path(path).write_bytes(blob)
    return blob


def read_dataset(path: str | Path) -> tuple[list[int], int]:
    return decode_dataset(Path(path).read_bytes())


def content_digest(blob: bytes) -> str:
    """64-bit BLAKE2b digest of a file's bytes, as 16 hex digits."""
    return hashlib.blake2b(blob, digest_size=8).hexdigest()
