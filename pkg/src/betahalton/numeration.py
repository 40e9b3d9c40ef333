"""Linear-recurrence numeration systems and greedy digit expansions.

A system is defined by positive integer coefficients a = (a0, ..., a_{d-1}).
The base sequence G satisfies G_0 = 1, G_n = a0*G_{n-1} + ... + a_{n-1}*G_0 + 1
for 0 < n < d, and the plain recurrence G_n = a0*G_{n-1} + ... + a_{d-1}*G_{n-d}
from n = d on.  Every nonnegative integer has a unique digit string
(eps_0, ..., eps_{K-1}) with sum eps_k*G_k = n that is "regular": each prefix
sum stays below the next base element.  Digit strings are little-endian
(position 0 is the least significant) and the empty string represents 0.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .errors import IrregularDigitsError


class NumerationSystem:
    """Validated coefficient vector with a growable cache of base elements.

    Immutable after construction except for the internal caches, which are
    extended under a lock so concurrent readers always see a consistent
    prefix of G.
    """

    def __init__(self, a: Sequence[int]):
        a = tuple(int(x) for x in a)
        if not a:
            raise ValueError("coefficient vector must be non-empty")
        if any(x < 1 for x in a):
            raise ValueError(f"coefficients must all be >= 1, got {a}")
        self.a = a
        self.d = len(a)
        self.nonincreasing = all(a[i] >= a[i + 1] for i in range(self.d - 1))
        if self.nonincreasing:
            k = 0
            while k + 1 < self.d and a[k + 1] == a[0]:
                k += 1
            self.k_equal = k
        else:
            self.k_equal = None
        a0 = a[0]
        self.dense_pattern = (
            a == (a0,) * self.d
            or (self.d >= 2 and a == (a0,) + (a0 - 1,) * (self.d - 2) + (a0,))
        )
        self._lock = threading.Lock()
        self._g = [1]
        self._seed_g()
        # scratch space for derived tables (root brackets, tail thresholds)
        self._derived: dict = {}

    def _seed_g(self):
        g = self._g
        for n in range(1, self.d + 1):
            if n < self.d:
                g.append(sum(self.a[i] * g[n - 1 - i] for i in range(n)) + 1)
            else:
                g.append(sum(self.a[i] * g[n - 1 - i] for i in range(self.d)))

    def g(self, n: int) -> int:
        """Base element G_n (cache extended on demand)."""
        if n < 0:
            raise ValueError("index must be nonnegative")
        g = self._g
        if n < len(g):
            return g[n]
        with self._lock:
            while len(g) <= n:
                m = len(g)
                g.append(sum(self.a[i] * g[m - 1 - i] for i in range(self.d)))
        return g[n]

    def ensure_g(self, n: int) -> None:
        self.g(n)

    def __repr__(self):
        return f"NumerationSystem(a={self.a})"


@dataclass(frozen=True)
class DigitString:
    """Finite little-endian digit vector attached to its numeration system."""

    digits: tuple[int, ...]
    system: NumerationSystem = field(repr=False)

    def __len__(self) -> int:
        return len(self.digits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.digits)

    def value(self) -> int:
        return digits_value(self.system, self)

    def regular(self) -> bool:
        return is_regular(self.system, self)


def build_system(a: Sequence[int]) -> NumerationSystem:
    """Validate coefficients and return the system with G_0..G_d precomputed."""
    return NumerationSystem(a)


def g_terms(system: NumerationSystem, n: int) -> list[int]:
    """G_0..G_n as exact integers."""
    system.ensure_g(n)
    return system._g[: n + 1]


def greedy_expand(system: NumerationSystem, n: int) -> DigitString:
    """Regular digit string of a nonnegative integer, computed greedily."""
    n = int(n)
    if n < 0:
        raise ValueError("cannot expand a negative integer")
    if n == 0:
        return DigitString((), system)
    top = 0
    while system.g(top + 1) <= n:
        top += 1
    digits = [0] * (top + 1)
    rem = n
    for k in range(top, -1, -1):
        digits[k], rem = divmod(rem, system.g(k))
    return DigitString(tuple(digits), system)


def _digits_of(w) -> tuple[int, ...]:
    if isinstance(w, DigitString):
        return w.digits
    return tuple(int(x) for x in w)


def digits_value(system: NumerationSystem, w) -> int:
    """Dot product of a digit vector with G; accepts irregular strings."""
    digits = _digits_of(w)
    if digits:
        system.ensure_g(len(digits) - 1)
    return sum(e * system._g[k] for k, e in enumerate(digits))


def is_regular(system: NumerationSystem, w) -> bool:
    """True iff every prefix sum stays below the next base element."""
    digits = _digits_of(w)
    if any(e < 0 for e in digits):
        return False
    if digits:
        system.ensure_g(len(digits))
    partial = 0
    for k, e in enumerate(digits):
        partial += e * system._g[k]
        if partial >= system._g[k + 1]:
            return False
    return True


def successor(system: NumerationSystem, w) -> DigitString:
    """Add-one map on regular digit strings (the odometer action on finite words)."""
    digits = _digits_of(w)
    if not is_regular(system, digits):
        raise IrregularDigitsError(f"successor requires a regular digit string, got {digits}")
    return greedy_expand(system, digits_value(system, digits) + 1)


def max_word(system: NumerationSystem, n: int) -> DigitString:
    """Lexicographically maximal regular word of length n.

    Built digit by digit from position 0, each digit as large as regularity
    allows.  Any regular prefix extends by zeros, so the construction never
    needs to backtrack and the result is the lexicographic maximum.  For
    systems with an equal-coefficient run a0 = ... = a_k followed by a strict
    drop, the word is a0 everywhere except a0 - 1 at positions i > 0 with
    (k+1) | i; all-equal systems place the smaller digit at i = d-1 mod d.
    """
    if system.k_equal is None:
        raise ValueError("max_word requires non-increasing coefficients")
    if n < 1:
        raise ValueError("word length must be >= 1")
    system.ensure_g(n)
    g = system._g
    digits = []
    partial = 0
    for k in range(n):
        e = (g[k + 1] - 1 - partial) // g[k]
        digits.append(e)
        partial += e * g[k]
    return DigitString(tuple(digits), system)


def parse_coefficients(text: str) -> tuple[int, ...]:
    """Parse comma-separated coefficients, e.g. "3,2,1"."""
    items = [part.strip() for part in text.split(",")]
    try:
        return tuple(int(part) for part in items)
    except ValueError:
        raise ValueError(f"malformed coefficient list: {text!r}") from None


def parse_digits(text: str) -> tuple[int, ...]:
    """Parse a little-endian comma-separated digit string; "" is the empty word."""
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(part.strip()) for part in text.split(","))
    except ValueError:
        raise ValueError(f"malformed digit string: {text!r}") from None


def format_digits(w) -> str:
    return ",".join(str(e) for e in _digits_of(w))


def iter_regular_words(system: NumerationSystem, length: int) -> Iterator[tuple[int, ...]]:
    """All regular words of exactly the given length, ascending lexicographically.

    Enumeration is by depth-first search over digit prefixes with the exact
    prefix-sum bound; the number of words of length L equals G_L.
    """
    system.ensure_g(length)
    g = system._g

    def rec(prefix: list[int], partial: int, k: int):
        if k == length:
            yield tuple(prefix)
            return
        dmax = (g[k + 1] - 1 - partial) // g[k]
        for e in range(dmax + 1):
            prefix.append(e)
            yield from rec(prefix, partial + e * g[k], k + 1)
            prefix.pop()

    yield from rec([], 0, 0)
