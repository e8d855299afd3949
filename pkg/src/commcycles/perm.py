"""Permutations of {0, ..., M-1} in one-line notation, cycle statistics,
commutators, canonical representatives of cycle types, and uniform sampling.

Internally everything is 0-based one-line notation (map[i] = image of i);
the 1-based cycle notation of the group-theory literature appears only in
the text parser/printer.
"""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "Permutation",
    "CycleType",
    "compose",
    "inverse",
    "commutator",
    "cycle_count",
    "sign_parity",
    "one_cycle",
    "two_disjoint_cycles",
    "disjoint_transpositions",
    "from_cycle_type",
    "sample_uniform",
    "parse_cycles",
    "format_cycles",
]


class Permutation:
    """A bijection of {0, ..., M-1}, stored as a tuple in one-line notation."""

    __slots__ = ("_map",)

    def __init__(self, mapping: Iterable[int]):
        m = tuple(mapping)
        n = len(m)
        if n == 0:
            raise ValueError("permutation must act on at least one point")
        seen = [False] * n
        for v in m:
            if not isinstance(v, int) or not 0 <= v < n or seen[v]:
                raise ValueError(f"not a bijection of range({n}): {m}")
            seen[v] = True
        self._map = m

    @classmethod
    def identity(cls, size: int) -> "Permutation":
        return cls(range(size))

    @property
    def map(self) -> tuple[int, ...]:
        return self._map

    @property
    def size(self) -> int:
        return len(self._map)

    def __getitem__(self, i: int) -> int:
        return self._map[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition self∘other: (self*other)[i] = self[other[i]]."""
        if not isinstance(other, Permutation):
            return NotImplemented
        if self.size != other.size:
            raise ValueError(f"size mismatch: {self.size} vs {other.size}")
        s = self._map
        return Permutation(s[j] for j in other._map)

    def inverse(self) -> "Permutation":
        out = [0] * self.size
        for i, v in enumerate(self._map):
            out[v] = i
        return Permutation(out)

    def conjugated_by(self, s: "Permutation") -> "Permutation":
        """The conjugate s∘self∘s⁻¹, which has the same cycle type."""
        return s * self * s.inverse()

    def cycles(self) -> list[tuple[int, ...]]:
        """Orbits as tuples, each starting at its smallest element, ordered
        by that element.  Fixed points are length-1 cycles."""
        seen = [False] * self.size
        out = []
        for start in range(self.size):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            j = self._map[start]
            while j != start:
                cyc.append(j)
                seen[j] = True
                j = self._map[j]
            out.append(tuple(cyc))
        return out

    def cycle_count(self) -> int:
        seen = [False] * self.size
        count = 0
        for start in range(self.size):
            if seen[start]:
                continue
            count += 1
            j = start
            while not seen[j]:
                seen[j] = True
                j = self._map[j]
        return count

    def cycle_type(self) -> "CycleType":
        return CycleType(len(c) for c in self.cycles())

    def is_even(self) -> bool:
        # A permutation is even iff its cycle count has the parity of M.
        return (self.size - self.cycle_count()) % 2 == 0

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self._map))

    def __eq__(self, other):
        if isinstance(other, Permutation):
            return self._map == other._map
        return NotImplemented

    def __hash__(self):
        return hash(self._map)

    def __repr__(self):
        return f"Permutation({list(self._map)})"

    def __str__(self):
        return format_cycles(self)


def compose(a: Permutation, b: Permutation) -> Permutation:
    """a∘b, i.e. apply b first: result[i] = a[b[i]]."""
    return a * b


def inverse(p: Permutation) -> Permutation:
    return p.inverse()


def commutator(s: Permutation, t: Permutation) -> Permutation:
    """The commutator s∘t∘s⁻¹∘t⁻¹ (always an even permutation)."""
    if s.size != t.size:
        raise ValueError(f"size mismatch: {s.size} vs {t.size}")
    return s * t * s.inverse() * t.inverse()


def cycle_count(p: Permutation) -> int:
    return p.cycle_count()


def sign_parity(p: Permutation) -> str:
    """'even' or 'odd'."""
    return "even" if p.is_even() else "odd"


@dataclass(frozen=True)
class CycleType:
    """A multiset of cycle lengths, stored sorted in decreasing order."""

    parts: tuple[int, ...]

    def __init__(self, parts: Iterable[int]):
        ps = tuple(sorted(parts, reverse=True))
        if not ps or any(p < 1 for p in ps):
            raise ValueError(f"cycle type needs positive parts, got {ps}")
        object.__setattr__(self, "parts", ps)

    @property
    def size(self) -> int:
        """Size of the ground set (sum of the parts)."""
        return sum(self.parts)

    @property
    def num_parts(self) -> int:
        return len(self.parts)

    def class_size(self) -> int:
        """Number of permutations with this cycle type:
        M! / prod_over_lengths(length^mult * mult!)."""
        denom = 1
        mult: dict[int, int] = {}
        for p in self.parts:
            mult[p] = mult.get(p, 0) + 1
        for length, a in mult.items():
            denom *= length**a * math.factorial(a)
        return math.factorial(self.size) // denom


def _perm_from_cycles0(cycles: Sequence[Sequence[int]], size: int) -> Permutation:
    out = list(range(size))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:]):
            out[a] = b
        if cyc:
            out[cyc[-1]] = cyc[0]
    return Permutation(out)


def one_cycle(m: int) -> Permutation:
    """The canonical m-cycle (0 1 ... m-1) on a ground set of size m."""
    if m < 1:
        raise ValueError("m must be positive")
    return _perm_from_cycles0([list(range(m))], m)


def two_disjoint_cycles(m: int) -> Permutation:
    """Two disjoint m-cycles on a ground set of size 2m."""
    if m < 1:
        raise ValueError("m must be positive")
    return _perm_from_cycles0([list(range(m)), list(range(m, 2 * m))], 2 * m)


def disjoint_transpositions(m: int) -> Permutation:
    """m disjoint transpositions (0 1)(2 3)... on a ground set of size 2m."""
    if m < 1:
        raise ValueError("m must be positive")
    return _perm_from_cycles0([[2 * k, 2 * k + 1] for k in range(m)], 2 * m)


def from_cycle_type(ct: CycleType) -> Permutation:
    """Canonical representative: consecutive blocks, longest cycle first."""
    cycles = []
    start = 0
    for length in ct.parts:
        cycles.append(list(range(start, start + length)))
        start += length
    return _perm_from_cycles0(cycles, ct.size)


def sample_uniform(size: int, rng: random.Random) -> Permutation:
    """Uniformly random permutation via the rng's Fisher-Yates shuffle."""
    if size < 1:
        raise ValueError("size must be positive")
    vals = list(range(size))
    rng.shuffle(vals)
    return Permutation(vals)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, size: int | None = None) -> Permutation:
    """Parse 1-based cycle notation like "(1 2 3)(4 5)" or "(1, 2, 3)".

    Whitespace-insensitive; commas optional.  Fixed points may be omitted
    when `size` is given; otherwise the ground-set size is the largest label
    mentioned.  "()" is the identity (requires `size`).
    """
    stripped = text.strip()
    if not stripped:
        raise ValueError("empty cycle expression")
    if _CYCLE_RE.sub("", stripped).strip():
        raise ValueError(f"malformed cycle notation: {text!r}")
    cycles0 = []
    labels_seen = set()
    for body in _CYCLE_RE.findall(stripped):
        labels = [tok for tok in re.split(r"[\s,]+", body.strip()) if tok]
        if not labels:
            continue
        cyc = []
        for tok in labels:
            if not tok.isdigit() or int(tok) < 1:
                raise ValueError(f"labels must be positive integers, got {tok!r}")
            lab = int(tok)
            if lab in labels_seen:
                raise ValueError(f"label {lab} appears twice")
            labels_seen.add(lab)
            cyc.append(lab - 1)
        cycles0.append(cyc)
    max_label = max(labels_seen) if labels_seen else 0
    if size is None:
        size = max_label
        if size == 0:
            raise ValueError("identity '()' needs an explicit size")
    elif size < max_label:
        raise ValueError(f"size {size} smaller than largest label {max_label}")
    return _perm_from_cycles0(cycles0, size)


def format_cycles(p: Permutation, include_fixed: bool = False) -> str:
    """Render in 1-based cycle notation; fixed points omitted by default.
    The identity renders as "()"."""
    parts = []
    for cyc in p.cycles():
        if len(cyc) == 1 and not include_fixed:
            continue
        parts.append("(" + " ".join(str(i + 1) for i in cyc) + ")")
    return "".join(parts) if parts else "()"
