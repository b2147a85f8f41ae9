"""Permutation arithmetic on {0, ..., n-1} and the normalized Hamming metric.

Permutations are stored as immutable image arrays: ``images[x]`` is the value
at ``x``.  Composition is right-to-left throughout: ``compose(f, g)`` applies
``g`` first, so ``compose(f, g)(x) == f(g(x))``.  Conjugation ``f^t`` means
``t^-1 f t``.

Distances are exact: :func:`hamming` returns a ``fractions.Fraction``;
:func:`hamming_count` returns the raw disagreement count.  Floating point is
for display only.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Perm",
    "CycleDecomposition",
    "BigCount",
    "compose",
    "inverse",
    "power",
    "hamming",
    "hamming_count",
    "cycle_decomposition",
    "order_of",
    "order_divides",
    "project_to_order",
    "amplify",
    "count_order_dividing",
    "sample_order_k",
    "random_perm",
]

# Exact counts get big fast; plain Python ints already are arbitrary precision.
BigCount = int


class Perm:
    """A permutation of {0, ..., n-1} held as a read-only int64 image array."""

    __slots__ = ("_images", "_hash")

    def __init__(self, images: Sequence[int] | np.ndarray, *, _trusted: bool = False):
        arr = np.asarray(images, dtype=np.int64)
        if arr.ndim != 1:
            raise ValueError("images must be one-dimensional")
        if not _trusted:
            n = arr.shape[0]
            if n == 0:
                raise ValueError("degree must be positive")
            seen = np.zeros(n, dtype=bool)
            if arr.min(initial=0) < 0 or arr.max(initial=-1) >= n:
                raise ValueError("images must lie in [0, n)")
            seen[arr] = True
            if not seen.all():
                raise ValueError("images contain duplicates; not a bijection")
        if arr.base is not None or not _trusted:
            arr = arr.copy()
        arr.setflags(write=False)
        self._images = arr
        self._hash = None

    @classmethod
    def identity(cls, n: int) -> "Perm":
        if n < 1:
            raise ValueError("degree must be positive")
        return cls(np.arange(n, dtype=np.int64), _trusted=True)

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Perm":
        """Build a permutation from disjoint cycles; unlisted points are fixed."""
        images = np.arange(n, dtype=np.int64)
        seen: set[int] = set()
        for cycle in cycles:
            for x in cycle:
                if not 0 <= x < n:
                    raise ValueError(f"cycle entry {x} outside [0, {n})")
                if x in seen:
                    raise ValueError(f"point {x} appears in two cycles")
                seen.add(x)
            for i, x in enumerate(cycle):
                images[x] = cycle[(i + 1) % len(cycle)]
        return cls(images, _trusted=True)

    @property
    def n(self) -> int:
        return self._images.shape[0]

    @property
    def images(self) -> np.ndarray:
        return self._images

    def apply(self, x: int) -> int:
        return int(self._images[x])

    def __call__(self, x: int) -> int:
        return int(self._images[x])

    def __len__(self) -> int:
        return self._images.shape[0]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Perm):
            return NotImplemented
        return self._images.shape == other._images.shape and bool(
            np.array_equal(self._images, other._images)
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._images.tobytes())
        return self._hash

    def __repr__(self) -> str:
        if self.n <= 12:
            return f"Perm({self._images.tolist()})"
        return f"Perm(n={self.n}, {self._images[:8].tolist()}...)"

    def is_identity(self) -> bool:
        return bool(np.array_equal(self._images, np.arange(self.n, dtype=np.int64)))

    def tolist(self) -> list[int]:
        return self._images.tolist()


@dataclass(frozen=True)
class CycleDecomposition:
    """Disjoint cycles partitioning {0, ..., n-1}, each in application order.

    Every cycle starts at its minimum and cycles are sorted by that minimum,
    so the decomposition is canonical.  Fixed points appear as 1-cycles.
    """

    n: int
    cycles: tuple[tuple[int, ...], ...]

    def lengths(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.cycles)


def _require_same_degree(f: Perm, g: Perm) -> None:
    if f.n != g.n:
        raise ValueError(f"degree mismatch: {f.n} != {g.n}")


def compose(f: Perm, g: Perm) -> Perm:
    """Right-to-left composition: ``compose(f, g)(x) == f(g(x))``."""
    _require_same_degree(f, g)
    return Perm(f.images[g.images], _trusted=True)


def inverse(f: Perm) -> Perm:
    inv = np.empty(f.n, dtype=np.int64)
    inv[f.images] = np.arange(f.n, dtype=np.int64)
    return Perm(inv, _trusted=True)


def power(f: Perm, e: int) -> Perm:
    """``f`` composed with itself ``e`` times; negative ``e`` uses the inverse."""
    if e < 0:
        return power(inverse(f), -e)
    result = np.arange(f.n, dtype=np.int64)
    base = f.images
    while e:
        if e & 1:
            result = base[result]
        e >>= 1
        if e:
            base = base[base]
    return Perm(result, _trusted=True)


def hamming_count(f: Perm, g: Perm) -> int:
    """Number of points where ``f`` and ``g`` disagree."""
    _require_same_degree(f, g)
    return int(np.count_nonzero(f.images != g.images))


def hamming(f: Perm, g: Perm) -> Fraction:
    """Normalized Hamming distance |{x : f(x) != g(x)}| / n, exactly."""
    return Fraction(hamming_count(f, g), f.n)


def cycle_decomposition(f: Perm) -> CycleDecomposition:
    images = f.images
    seen = np.zeros(f.n, dtype=bool)
    cycles: list[tuple[int, ...]] = []
    for start in range(f.n):
        if seen[start]:
            continue
        cycle = [start]
        seen[start] = True
        x = int(images[start])
        while x != start:
            cycle.append(x)
            seen[x] = True
            x = int(images[x])
        cycles.append(tuple(cycle))
    return CycleDecomposition(f.n, tuple(cycles))


def order_of(f: Perm) -> int:
    """Multiplicative order: lcm of the cycle lengths."""
    return math.lcm(*cycle_decomposition(f).lengths())


def order_divides(f: Perm, k: int) -> bool:
    """True iff f^k = identity, i.e. every cycle length divides k."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return all(k % length == 0 for length in cycle_decomposition(f).lengths())


def project_to_order(f: Perm, k: int) -> Perm:
    """Nearest-by-construction permutation with order dividing ``k``.

    Cycles whose length divides ``k`` are kept; every point in any other
    cycle becomes a fixed point, so the distance to ``f`` is exactly the
    mass of the offending cycles.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    images = np.arange(f.n, dtype=np.int64)
    for cycle in cycle_decomposition(f).cycles:
        if k % len(cycle) == 0:
            for i, x in enumerate(cycle):
                images[x] = cycle[(i + 1) % len(cycle)]
    return Perm(images, _trusted=True)


def amplify(f: Perm, n: int) -> Perm:
    """Block-diagonal embedding into Sym(n): q = n // f.n copies of ``f``
    on consecutive blocks, identity on the remaining n - q*f.n points."""
    m = f.n
    if n < m:
        raise ValueError(f"target degree {n} smaller than {m}")
    q, r = divmod(n, m)
    offsets = np.repeat(np.arange(q, dtype=np.int64) * m, m)
    blocks = np.tile(f.images, q) + offsets
    tail = np.arange(q * m, n, dtype=np.int64)
    return Perm(np.concatenate([blocks, tail]), _trusted=True)


@lru_cache(maxsize=None)
def _order_dividing_table(n: int, k: int) -> tuple[int, ...]:
    """a[j] = #{f in Sym(j) : f^k = id} for j = 0..n, via the recurrence
    a(j) = sum over d | k, d <= j of C(j-1, d-1) * (d-1)! * a(j-d)."""
    divisors = [d for d in range(1, k + 1) if k % d == 0]
    a = [1] * (n + 1)
    for j in range(1, n + 1):
        total = 0
        for d in divisors:
            if d > j:
                break
            total += math.comb(j - 1, d - 1) * math.factorial(d - 1) * a[j - d]
        a[j] = total
    return tuple(a)


def count_order_dividing(n: int, k: int) -> BigCount:
    """Exact number of f in Sym(n) with f^k = id (identity included)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if k < 1:
        raise ValueError("k must be >= 1")
    return _order_dividing_table(n, k)[n]


def sample_order_k(n: int, k: int, seed: int) -> Perm:
    """Uniformly random f in Sym(n) with f^k = id; deterministic given seed.

    Sequential cycle construction: the smallest unplaced point opens a cycle
    whose length d | k is drawn with probability
    C(r-1, d-1) * (d-1)! * a(r-d) / a(r), where r counts unplaced points.
    The weights are exactly the number of completions, so the draw is
    uniform without rejection.
    """
    return _sample_order_k_rng(n, k, random.Random(seed))


def _sample_order_k_rng(n: int, k: int, rng: random.Random) -> Perm:
    if n < 1:
        raise ValueError("degree must be positive")
    if k < 1:
        raise ValueError("k must be >= 1")
    table = _order_dividing_table(n, k)
    divisors = [d for d in range(1, k + 1) if k % d == 0]
    images = np.empty(n, dtype=np.int64)
    free = list(range(n))  # unplaced points, ascending
    while free:
        r = len(free)
        u = rng.randrange(table[r])
        chosen = None
        acc = 0
        for d in divisors:
            if d > r:
                break
            acc += math.comb(r - 1, d - 1) * math.factorial(d - 1) * table[r - d]
            if u < acc:
                chosen = d
                break
        assert chosen is not None
        start = free.pop(0)
        # ordered (d-1)-tuple of partners, uniform among remaining points
        cycle = [start]
        for _ in range(chosen - 1):
            cycle.append(free.pop(rng.randrange(len(free))))
        for i, x in enumerate(cycle):
            images[x] = cycle[(i + 1) % len(cycle)]
    return Perm(images, _trusted=True)


def random_perm(n: int, rng: random.Random) -> Perm:
    """Uniformly random permutation (no order constraint)."""
    images = list(range(n))
    rng.shuffle(images)
    return Perm(np.asarray(images, dtype=np.int64), _trusted=True)


def all_perms(n: int) -> Iterable[Perm]:
    """All of Sym(n) in lexicographic image order; desk-scale oracle helper."""
    for tup in itertools.permutations(range(n)):
        yield Perm(np.asarray(tup, dtype=np.int64), _trusted=True)
