"""Host graphs: Cartesian products of power-of-two paths and cycles.

A host coordinate is a 1-based tuple, one label per factor. Coordinates
flatten to integers in [0, 2**n) with factor 1 in the most significant bits,
so the flat code of (x_1, ..., x_k) concatenates the binary codes of the
x_i - 1. Every edge of the host belongs to exactly one cut: path cuts remove
a single edge, cycle cuts remove an antipodal edge pair.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .cube import MAX_DIM

PATH = "P"
CYCLE = "C"

_FACTOR_RE = re.compile(r"^([CcPp])([0-9]+)$")


class HostSpecError(ValueError):
    """Malformed or unsupported host description."""


@dataclass(frozen=True)
class HostFactor:
    """One factor of the host product: a path or cycle on 2**exponent vertices."""

    kind: str
    exponent: int

    def __post_init__(self) -> None:
        if self.kind not in (PATH, CYCLE):
            raise HostSpecError(f"factor kind must be {PATH!r} or {CYCLE!r}, got {self.kind!r}")
        if self.exponent < 1:
            raise HostSpecError(f"factor size must be at least 2, got 2**{self.exponent}")
        if self.kind == CYCLE and self.exponent < 2:
            raise HostSpecError("C2 is a degenerate cycle; cycle factors need at least 4 vertices")

    @property
    def size(self) -> int:
        return 1 << self.exponent

    @property
    def is_cycle(self) -> bool:
        return self.kind == CYCLE

    @property
    def cut_count(self) -> int:
        # a cycle admits size/2 two-edge cuts, a path size-1 one-edge cuts
        return self.size // 2 if self.is_cycle else self.size - 1

    def __str__(self) -> str:
        return f"{self.kind}{self.size}"


@dataclass(frozen=True)
class HostSpec:
    """A product of HostFactors, at most 2**MAX_DIM vertices in total."""

    factors: tuple[HostFactor, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise HostSpecError("host needs at least one factor")
        if self.n > MAX_DIM:
            raise HostSpecError(f"host has 2**{self.n} vertices; the limit is 2**{MAX_DIM}")

    @cached_property
    def n(self) -> int:
        return sum(f.exponent for f in self.factors)

    @property
    def k(self) -> int:
        return len(self.factors)

    @property
    def size(self) -> int:
        return 1 << self.n

    @cached_property
    def shifts(self) -> tuple[int, ...]:
        """Low-bit offset of each factor's block within a flat index."""
        out = []
        acc = self.n
        for f in self.factors:
            acc -= f.exponent
            out.append(acc)
        return tuple(out)

    def __str__(self) -> str:
        return "x".join(str(f) for f in self.factors)


def parse_host(text: str) -> HostSpec:
    """Parse a host description like ``C8xP4``.

    Factors are joined by ``x``: each is a letter C (cycle) or P (path)
    followed by a decimal size that must be a power of two. Letters are
    case-insensitive; the canonical form uses uppercase.
    """
    body = text.strip()
    if not body:
        raise HostSpecError("empty host spec")
    factors = []
    for part in re.split("[xX]", body):
        m = _FACTOR_RE.match(part)
        if m is None:
            raise HostSpecError(f"bad factor {part!r} in host spec {text!r}")
        kind = m.group(1).upper()
        size = int(m.group(2))
        if size < 2 or size & (size - 1):
            raise HostSpecError(f"factor size must be a power of two at least 2, got {size}")
        if kind == CYCLE and size < 4:
            raise HostSpecError("C2 is a degenerate cycle; cycle factors need at least 4 vertices")
        factors.append(HostFactor(kind, size.bit_length() - 1))
    return HostSpec(tuple(factors))


def flatten(coord: Sequence[int], spec: HostSpec) -> int:
    """Flat index of a 1-based host coordinate (factor 1 most significant)."""
    if len(coord) != spec.k:
        raise ValueError(f"coordinate has {len(coord)} components, host {spec} has {spec.k}")
    flat = 0
    for x, f, s in zip(coord, spec.factors, spec.shifts):
        x = int(x)
        if not 1 <= x <= f.size:
            raise ValueError(f"coordinate component {x} out of range [1, {f.size}] for factor {f}")
        flat |= (x - 1) << s
    return flat


def unflatten(flat: int, spec: HostSpec) -> tuple[int, ...]:
    """1-based host coordinate of a flat index."""
    if not 0 <= flat < spec.size:
        raise ValueError(f"flat index {flat} out of range [0, {spec.size})")
    return tuple(((flat >> s) & (f.size - 1)) + 1 for f, s in zip(spec.factors, spec.shifts))


def factor_distance(factor: HostFactor, a: int, b: int) -> int:
    """Geodesic distance between labels a and b within one factor."""
    for x in (a, b):
        if not 1 <= x <= factor.size:
            raise ValueError(f"label {x} out of range [1, {factor.size}] for factor {factor}")
    d = abs(a - b)
    if factor.is_cycle:
        d = min(d, factor.size - d)
    return d


def host_distance(spec: HostSpec, x: Sequence[int], y: Sequence[int]) -> int:
    """Geodesic distance in the product: the sum of per-factor distances."""
    if len(x) != spec.k or len(y) != spec.k:
        raise ValueError(f"coordinates must have {spec.k} components for host {spec}")
    return sum(factor_distance(f, a, b) for f, a, b in zip(spec.factors, x, y))


@dataclass(frozen=True, order=True)
class Cut:
    """Names one edge cut of the host: cut `index` within factor `factor` (1-based)."""

    factor: int
    index: int


def _check_cut(spec: HostSpec, cut: Cut) -> HostFactor:
    if not 1 <= cut.factor <= spec.k:
        raise ValueError(f"cut factor {cut.factor} out of range [1, {spec.k}]")
    f = spec.factors[cut.factor - 1]
    if not 1 <= cut.index <= f.cut_count:
        raise ValueError(f"cut index {cut.index} out of range [1, {f.cut_count}] for factor {f}")
    return f


def cuts(spec: HostSpec) -> list[Cut]:
    """All cuts of the host, grouped by factor, in index order."""
    return [
        Cut(i, j)
        for i, f in enumerate(spec.factors, start=1)
        for j in range(1, f.cut_count + 1)
    ]


@dataclass(frozen=True)
class InducedSet:
    """One side of a host edge cut, described as a label interval.

    Member coordinates are those whose label in factor ``cut.factor`` lies
    in [lo, hi]; every other factor ranges freely. For cycle cuts the
    interval is a half-size window starting at the cut index; for path cuts
    it is the prefix of labels up to the cut index.
    """

    spec: HostSpec
    cut: Cut
    lo: int
    hi: int

    @property
    def label_count(self) -> int:
        return self.hi - self.lo + 1

    @property
    def size(self) -> int:
        free = self.spec.n - self.spec.factors[self.cut.factor - 1].exponent
        return self.label_count << free

    def contains(self, coord: Sequence[int]) -> bool:
        flatten(coord, self.spec)  # range-checks the coordinate
        return self.lo <= coord[self.cut.factor - 1] <= self.hi

    def member_flat(self, flat):
        """Membership of flat host indices; accepts scalars or arrays."""
        i = self.cut.factor - 1
        s = self.spec.shifts[i]
        m = self.spec.factors[i].size - 1
        labels = ((np.asarray(flat) >> s) & m) + 1
        member = (labels >= self.lo) & (labels <= self.hi)
        if np.ndim(member) == 0:
            return bool(member)
        return member

    def mask(self) -> np.ndarray:
        """Dense bool membership vector over all flat host indices."""
        return self.member_flat(np.arange(self.spec.size, dtype=np.int64))


def induced_set(spec: HostSpec, cut: Cut) -> InducedSet:
    """The label interval whose boundary is exactly the given cut's edges."""
    f = _check_cut(spec, cut)
    if f.is_cycle:
        half = f.size // 2
        return InducedSet(spec, cut, cut.index, cut.index + half - 1)
    return InducedSet(spec, cut, 1, cut.index)


def separating_cuts(spec: HostSpec, x: Sequence[int], y: Sequence[int]) -> list[Cut]:
    """Cuts whose induced set contains exactly one of the two coordinates.

    The number of separating cuts equals host_distance(spec, x, y).
    """
    out = []
    for cut in cuts(spec):
        iset = induced_set(spec, cut)
        if iset.contains(x) != iset.contains(y):
            out.append(cut)
    return out


def factor_edge_labels(factor: HostFactor) -> list[tuple[int, int]]:
    """Label pairs joined by an edge within one factor."""
    pairs = [(a, a + 1) for a in range(1, factor.size)]
    if factor.is_cycle:
        pairs.append((factor.size, 1))
    return pairs


def _expand_label_pairs(spec: HostSpec, factor_index: int, pairs) -> np.ndarray:
    s = spec.shifts[factor_index - 1]
    f = spec.factors[factor_index - 1]
    v = np.arange(spec.size, dtype=np.int64)
    labels = ((v >> s) & (f.size - 1)) + 1
    rows = []
    for a, b in pairs:
        sel = v[labels == a]
        other = sel + (b - a) * (1 << s)
        rows.append(np.stack([np.minimum(sel, other), np.maximum(sel, other)], axis=1))
    if not rows:
        return np.empty((0, 2), dtype=np.int64)
    return np.concatenate(rows, axis=0)


def host_edges(spec: HostSpec) -> np.ndarray:
    """All host edges as an (E, 2) array of flat index pairs, min first."""
    rows = [
        _expand_label_pairs(spec, i, factor_edge_labels(f))
        for i, f in enumerate(spec.factors, start=1)
    ]
    return np.concatenate(rows, axis=0)


def cut_edges(spec: HostSpec, cut: Cut) -> np.ndarray:
    """The host edges removed by one cut, as an (E_c, 2) flat index array."""
    f = _check_cut(spec, cut)
    iset = induced_set(spec, cut)
    pairs = [
        (a, b)
        for a, b in factor_edge_labels(f)
        if (iset.lo <= a <= iset.hi) != (iset.lo <= b <= iset.hi)
    ]
    return _expand_label_pairs(spec, cut.factor, pairs)


def _compositions(total: int, max_parts: int | None, min_part: int) -> Iterator[tuple[int, ...]]:
    if total == 0:
        yield ()
        return
    if max_parts is not None and max_parts == 0:
        return
    for first in range(min_part, total + 1):
        rest_parts = None if max_parts is None else max_parts - 1
        for rest in _compositions(total - first, rest_parts, min_part):
            yield (first,) + rest


def enumerate_hosts(
    max_n: int, *, max_k: int | None = None, min_exponent: int = 1
) -> list[HostSpec]:
    """Every host spec with total exponent at most max_n, in a fixed order.

    Order: by total exponent, then by exponent composition, then by the
    kind pattern with cycles before paths. Cycle factors require exponent
    at least 2 regardless of min_exponent.
    """
    if min_exponent < 1:
        raise ValueError("min_exponent must be at least 1")
    out = []
    for n in range(min_exponent, max_n + 1):
        for comp in _compositions(n, max_k, min_exponent):
            kind_choices = [(CYCLE, PATH) if e >= 2 else (PATH,) for e in comp]
            for kinds in itertools.product(*kind_choices):
                out.append(HostSpec(tuple(HostFactor(k, e) for k, e in zip(kinds, comp))))
    return out
