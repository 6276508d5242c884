"""Hypercube vertex sets, edge boundaries, and binary-reflected Gray codes.

A vertex of the n-dimensional cube is an integer in [0, 2**n); bit t of the
integer holds coordinate t of the 0-1 vector, with the leftmost coordinate of
the vector in the most significant bit. Two vertices are adjacent iff their
codes differ in exactly one bit.
"""

from __future__ import annotations

import functools
from typing import Iterable, Sequence

import numpy as np

MAX_DIM = 20


def _check_dim(n: int) -> None:
    if not 1 <= n <= MAX_DIM:
        raise ValueError(f"cube dimension must be in [1, {MAX_DIM}], got {n}")


def _check_vertex(v: int, n: int) -> None:
    if not 0 <= v < (1 << n):
        raise ValueError(f"vertex {v} out of range for a {n}-cube")


class VertexSubset:
    """A set of n-cube vertices stored as a dense bit vector of length 2**n.

    Instances are immutable: the backing array is marked read-only, so
    subsets are safe to share and to use as dict keys.
    """

    __slots__ = ("dim", "bits")

    def __init__(self, dim: int, bits) -> None:
        _check_dim(dim)
        arr = np.array(bits, dtype=bool, copy=True)
        if arr.shape != (1 << dim,):
            raise ValueError(
                f"bit vector for a {dim}-cube must have length {1 << dim}, got shape {arr.shape}"
            )
        arr.flags.writeable = False
        self.dim = dim
        self.bits = arr

    @classmethod
    def _wrap(cls, dim: int, arr: np.ndarray) -> "VertexSubset":
        # internal: adopt a freshly built array without the defensive copy
        _check_dim(dim)
        obj = object.__new__(cls)
        arr.flags.writeable = False
        obj.dim = dim
        obj.bits = arr
        return obj

    @classmethod
    def empty(cls, dim: int) -> "VertexSubset":
        return cls._wrap(dim, np.zeros(1 << dim, dtype=bool))

    @classmethod
    def full(cls, dim: int) -> "VertexSubset":
        return cls._wrap(dim, np.ones(1 << dim, dtype=bool))

    @classmethod
    def from_vertices(cls, dim: int, vertices: Iterable[int]) -> "VertexSubset":
        _check_dim(dim)
        arr = np.zeros(1 << dim, dtype=bool)
        for v in vertices:
            v = int(v)
            _check_vertex(v, dim)
            arr[v] = True
        return cls._wrap(dim, arr)

    def vertices(self) -> list[int]:
        """Members in increasing vertex order."""
        return [int(v) for v in np.nonzero(self.bits)[0]]

    def complement(self) -> "VertexSubset":
        return VertexSubset._wrap(self.dim, ~self.bits)

    def __contains__(self, v: int) -> bool:
        _check_vertex(v, self.dim)
        return bool(self.bits[v])

    def __len__(self) -> int:
        return int(np.count_nonzero(self.bits))

    def __eq__(self, other) -> bool:
        if not isinstance(other, VertexSubset):
            return NotImplemented
        return self.dim == other.dim and bool(np.array_equal(self.bits, other.bits))

    def __hash__(self) -> int:
        return hash((self.dim, self.bits.tobytes()))

    def __repr__(self) -> str:
        return f"VertexSubset(dim={self.dim}, size={len(self)})"


def _theta_raw(bits: np.ndarray, n: int) -> int:
    # pair up endpoints along direction t by reshaping to (..., 2, 2**t)
    total = 0
    for t in range(n):
        pairs = bits.reshape(-1, 2, 1 << t)
        total += int(np.count_nonzero(pairs[:, 0, :] != pairs[:, 1, :]))
    return total


def _theta_raw_batch(bits_rows: np.ndarray, n: int) -> np.ndarray:
    """Edge boundary of each row of a (batch, 2**n) bool matrix."""
    b = bits_rows.shape[0]
    total = np.zeros(b, dtype=np.int64)
    for t in range(n):
        pairs = bits_rows.reshape(b, -1, 2, 1 << t)
        total += np.count_nonzero(pairs[:, :, 0, :] != pairs[:, :, 1, :], axis=(1, 2))
    return total


def theta(subset: VertexSubset) -> int:
    """Number of cube edges with exactly one endpoint in the subset."""
    return _theta_raw(subset.bits, subset.dim)


def boundary_edges(subset: VertexSubset) -> list[tuple[int, int]]:
    """Boundary edges as (inside, outside) vertex pairs, sorted."""
    bits = subset.bits
    n = subset.dim
    base = np.arange(1 << n, dtype=np.int64)
    out: list[tuple[int, int]] = []
    for t in range(n):
        lo = base[(base >> t) & 1 == 0]
        hi = lo | (1 << t)
        cross = bits[lo] != bits[hi]
        for u, w in zip(lo[cross], hi[cross]):
            if bits[u]:
                out.append((int(u), int(w)))
            else:
                out.append((int(w), int(u)))
    out.sort()
    return out


def block_product(first: VertexSubset, second: VertexSubset) -> VertexSubset:
    """Cartesian-style product set in the (n1+n2)-cube.

    A member is any vertex whose high n1 bits form a member of `first` and
    whose low n2 bits form a member of `second`.
    """
    dim = first.dim + second.dim
    if dim > MAX_DIM:
        raise ValueError(f"product dimension {dim} exceeds the limit of {MAX_DIM}")
    bits = np.logical_and.outer(first.bits, second.bits).ravel()
    return VertexSubset._wrap(dim, bits)


def gray_rank(v: int, n: int) -> int:
    """1-based position of vertex v in the n-bit reflected Gray sequence."""
    _check_dim(n)
    _check_vertex(v, n)
    i = v
    for shift in (1, 2, 4, 8, 16):
        i ^= i >> shift
    return i + 1


def gray_unrank(rank: int, n: int) -> int:
    """Vertex at 1-based position `rank` of the n-bit reflected Gray sequence."""
    _check_dim(n)
    if not 1 <= rank <= (1 << n):
        raise ValueError(f"rank {rank} out of range [1, {1 << n}]")
    i = rank - 1
    return i ^ (i >> 1)


def gray_sequence(n: int) -> np.ndarray:
    """All 2**n vertices in Gray order (read-only array)."""
    _check_dim(n)
    i = np.arange(1 << n, dtype=np.int64)
    seq = i ^ (i >> 1)
    seq.flags.writeable = False
    return seq


def _gray_inverse_array(values: np.ndarray) -> np.ndarray:
    """0-based Gray positions of an integer array (values below 2**32)."""
    x = values.astype(np.int64, copy=True)
    for shift in (1, 2, 4, 8, 16):
        x ^= x >> shift
    return x


def gray_preimage(ranks: Iterable[int], n: int) -> VertexSubset:
    """Subset of vertices occupying the given 1-based Gray positions."""
    _check_dim(n)
    bits = np.zeros(1 << n, dtype=bool)
    for r in ranks:
        bits[gray_unrank(int(r), n)] = True
    return VertexSubset._wrap(n, bits)


@functools.lru_cache(maxsize=4)
def hypercube_edges(n: int) -> np.ndarray:
    """All n * 2**(n-1) cube edges as a read-only (E, 2) vertex-pair array."""
    _check_dim(n)
    v = np.arange(1 << n, dtype=np.int64)
    rows = []
    for t in range(n):
        lo = v[(v >> t) & 1 == 0]
        rows.append(np.stack([lo, lo | (1 << t)], axis=1))
    edges = np.concatenate(rows, axis=0)
    edges.flags.writeable = False
    return edges


def permute_coordinates(subset: VertexSubset, new_positions: Sequence[int]) -> VertexSubset:
    """Relabel coordinates: bit t of every vertex moves to bit new_positions[t]."""
    n = subset.dim
    if sorted(new_positions) != list(range(n)):
        raise ValueError(f"new_positions must be a permutation of range({n})")
    src = np.arange(1 << n, dtype=np.int64)
    dst = np.zeros_like(src)
    for t, p in enumerate(new_positions):
        dst |= ((src >> t) & 1) << int(p)
    bits = np.zeros(1 << n, dtype=bool)
    bits[dst] = subset.bits
    return VertexSubset._wrap(n, bits)
