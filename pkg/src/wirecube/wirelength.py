"""Wirelength engines, Gray embeddings, and the closed-form optimum.

An embedding assigns each cube vertex a distinct flat host index. Its
wirelength is the sum, over all cube edges, of the host geodesic distance
between the endpoint images. Two independent engines compute it: a direct
distance sum over the edge list, and a cut sum that adds the cube edge
boundary of one preimage per host cut. The Gray embedding attains the
closed-form per-factor minimum when every factor exponent is at least 2.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .cube import _gray_inverse_array, _theta_raw, _theta_raw_batch, VertexSubset, hypercube_edges
from .host import Cut, HostSpec, InducedSet, cuts, induced_set, parse_host, unflatten

_EDGE_CHUNK = 1 << 18


@dataclass(eq=False)
class Embedding:
    """Bijection from cube vertices to flat host indices.

    ``map[v]`` is the flat index of the image of vertex ``v``. The array is
    checked to be a permutation of [0, 2**n) and frozen on construction.
    """

    spec: HostSpec
    map: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.map)
        if arr.dtype.kind not in "iu":
            raise ValueError("embedding map entries must be integers")
        arr = arr.astype(np.int64, copy=True)
        if arr.shape != (self.spec.size,):
            raise ValueError(
                f"embedding map for host {self.spec} must have length {self.spec.size},"
                f" got shape {arr.shape}"
            )
        if arr.min() < 0 or arr.max() >= self.spec.size:
            raise ValueError("embedding map is not a permutation of the host indices")
        if np.bincount(arr, minlength=self.spec.size).max() > 1:
            raise ValueError("embedding map is not a permutation of the host indices")
        arr.flags.writeable = False
        self.map = arr

    def coordinate(self, v: int) -> tuple[int, ...]:
        """Host coordinate of the image of cube vertex v."""
        return unflatten(int(self.map[v]), self.spec)

    def to_document(self) -> dict:
        return {"host": str(self.spec), "map": [int(h) for h in self.map]}

    @classmethod
    def from_document(cls, doc) -> "Embedding":
        if not isinstance(doc, dict) or "host" not in doc or "map" not in doc:
            raise ValueError("embedding document needs 'host' and 'map' fields")
        spec = parse_host(str(doc["host"]))
        entries = doc["map"]
        if not isinstance(entries, list):
            raise ValueError("embedding 'map' must be a list of integers")
        for h in entries:
            if not isinstance(h, int) or isinstance(h, bool):
                raise ValueError("embedding map entries must be integers")
        return cls(spec, np.asarray(entries, dtype=np.int64))


def write_embedding(embedding: Embedding, path) -> None:
    with open(path, "w") as fh:
        json.dump(embedding.to_document(), fh)
        fh.write("\n")


def read_embedding(path) -> Embedding:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"invalid embedding file {path}: {exc}") from exc
    return Embedding.from_document(doc)


def gray_embedding(spec: HostSpec) -> Embedding:
    """The blockwise Gray embedding.

    Split each vertex's bits into per-factor blocks (factor 1 high) and send
    every block through the Gray position map, so consecutive labels in any
    factor differ by one bit in the corresponding block.
    """
    v = np.arange(spec.size, dtype=np.int64)
    flat = np.zeros_like(v)
    for f, s in zip(spec.factors, spec.shifts):
        block = (v >> s) & (f.size - 1)
        flat |= _gray_inverse_array(block) << s
    return Embedding(spec, flat)


def random_embedding(spec: HostSpec, seed) -> Embedding:
    """A uniformly random embedding; `seed` may be an int or a Generator."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    return Embedding(spec, rng.permutation(spec.size))


@dataclass
class WirelengthReport:
    """Total wirelength plus a per-cut edge-boundary breakdown for audit."""

    total: int
    per_cut: list[tuple[Cut, int]]
    method: str

    def __post_init__(self) -> None:
        if self.per_cut and self.total != sum(v for _, v in self.per_cut):
            raise ValueError("report total must equal the sum of its per-cut values")

    def as_dict(self) -> dict:
        out = {"method": self.method, "total": int(self.total)}
        if self.per_cut:
            out["per_cut"] = [[c.factor, c.index, int(v)] for c, v in self.per_cut]
        return out


def _flat_distance_sum(spec: HostSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Elementwise host distance between two arrays of flat indices."""
    total = None
    for f, s in zip(spec.factors, spec.shifts):
        mask = f.size - 1
        dd = np.abs(((a >> s) & mask) - ((b >> s) & mask))
        if f.is_cycle:
            dd = np.minimum(dd, f.size - dd)
        total = dd if total is None else total + dd
    return total


def wl_direct(embedding: Embedding) -> WirelengthReport:
    """Wirelength as a direct geodesic sum over all cube edges."""
    spec = embedding.spec
    edges = hypercube_edges(spec.n)
    total = 0
    for start in range(0, edges.shape[0], _EDGE_CHUNK):
        chunk = edges[start : start + _EDGE_CHUNK]
        a = embedding.map[chunk[:, 0]]
        b = embedding.map[chunk[:, 1]]
        total += int(_flat_distance_sum(spec, a, b).sum())
    return WirelengthReport(total=total, per_cut=[], method="direct")


def _factor_cut_thetas(embedding: Embedding, factor: int) -> list[int]:
    """Edge-boundary sizes of one factor's cut preimages, in cut order.

    Sweeps the family incrementally: path preimages grow by one label group
    per cut, cycle preimages slide a half-size label window, so the total
    update work per factor is linear in the number of vertices.
    """
    spec = embedding.spec
    f = spec.factors[factor - 1]
    s = spec.shifts[factor - 1]
    labels0 = (embedding.map >> s) & (f.size - 1)
    order = np.argsort(labels0, kind="stable")
    counts = np.bincount(labels0, minlength=f.size)
    starts = np.zeros(f.size + 1, dtype=np.int64)
    np.cumsum(counts, out=starts[1:])
    groups = [order[starts[x] : starts[x + 1]] for x in range(f.size)]
    bits = np.zeros(spec.size, dtype=bool)
    out = []
    if f.is_cycle:
        half = f.size // 2
        for x in range(half):
            bits[groups[x]] = True
        for j in range(1, half + 1):
            out.append(_theta_raw(bits, spec.n))
            if j < half:
                bits[groups[j - 1]] = False
                bits[groups[j + half - 1]] = True
    else:
        for j in range(1, f.size):
            bits[groups[j - 1]] = True
            out.append(_theta_raw(bits, spec.n))
    return out


def wl_cut(embedding: Embedding) -> WirelengthReport:
    """Wirelength as the sum of cut preimage edge boundaries."""
    per_cut: list[tuple[Cut, int]] = []
    for i in range(1, embedding.spec.k + 1):
        thetas = _factor_cut_thetas(embedding, i)
        per_cut.extend((Cut(i, j), th) for j, th in enumerate(thetas, start=1))
    total = sum(v for _, v in per_cut)
    return WirelengthReport(total=total, per_cut=per_cut, method="cut_sum")


def preimage(embedding: Embedding, iset: InducedSet) -> VertexSubset:
    """Cube vertices whose images lie in the induced set."""
    if iset.spec != embedding.spec:
        raise ValueError("induced set and embedding describe different hosts")
    return VertexSubset._wrap(embedding.spec.n, iset.member_flat(embedding.map))


def wl_cut_naive(embedding: Embedding) -> WirelengthReport:
    """Cut-sum wirelength via an independent per-cut membership scan."""
    spec = embedding.spec
    per_cut = []
    for cut in cuts(spec):
        sub = preimage(embedding, induced_set(spec, cut))
        per_cut.append((cut, _theta_raw(sub.bits, spec.n)))
    total = sum(v for _, v in per_cut)
    return WirelengthReport(total=total, per_cut=per_cut, method="cut_sum")


@dataclass(frozen=True)
class FormulaTerm:
    """Closed-form wirelength contribution of one factor."""

    factor: int
    value: int


def formula_wl(spec: HostSpec) -> tuple[int, list[FormulaTerm]]:
    """Closed-form minimum wirelength and its per-factor terms.

    Each cycle factor on 2**e vertices contributes
    2**(n-e) * (3 * 2**(2e-3) - 2**(e-1)); each path factor contributes
    2**(n-e) * (2**(2e-1) - 2**(e-1)). Requires every exponent >= 2.
    """
    terms = []
    for i, f in enumerate(spec.factors, start=1):
        e = f.exponent
        if e < 2:
            raise ValueError(
                f"closed form needs every factor exponent >= 2; factor {i} ({f}) has exponent {e}"
            )
        rest = 1 << (spec.n - e)
        if f.is_cycle:
            value = rest * (3 * (1 << (2 * e - 3)) - (1 << (e - 1)))
        else:
            value = rest * ((1 << (2 * e - 1)) - (1 << (e - 1)))
        terms.append(FormulaTerm(i, value))
    return sum(t.value for t in terms), terms


def gray_cut_sum(spec: HostSpec, factor: int) -> int:
    """Sum of cut preimage boundaries for one factor under the Gray embedding."""
    if not 1 <= factor <= spec.k:
        raise ValueError(f"factor index {factor} out of range [1, {spec.k}]")
    return sum(_factor_cut_thetas(gray_embedding(spec), factor))


def _wl_direct_batch(spec: HostSpec, maps: np.ndarray) -> np.ndarray:
    """Direct wirelength of each row of a (batch, 2**n) permutation matrix."""
    edges = hypercube_edges(spec.n)
    b = maps.shape[0]
    totals = np.zeros(b, dtype=np.int64)
    chunk_edges = max(1, _EDGE_CHUNK // max(1, b))
    for start in range(0, edges.shape[0], chunk_edges):
        chunk = edges[start : start + chunk_edges]
        a = maps[:, chunk[:, 0]]
        c = maps[:, chunk[:, 1]]
        totals += _flat_distance_sum(spec, a, c).sum(axis=1)
    return totals


def _wl_cut_totals_batch(spec: HostSpec, maps: np.ndarray) -> np.ndarray:
    """Cut-sum wirelength of each row, via per-cut membership scans."""
    totals = np.zeros(maps.shape[0], dtype=np.int64)
    for cut in cuts(spec):
        member = induced_set(spec, cut).member_flat(maps)
        totals += _theta_raw_batch(member, spec.n)
    return totals
