"""Breadth-first enumeration of matrix groups over F_p with numpy batching."""

from __future__ import annotations

from array import array
from collections import deque
from dataclasses import dataclass
from typing import Optional

import numpy as np

from coxred.errors import CapExceeded

DEFAULT_CAP = 10 ** 6


@dataclass
class ElementTable:
    p: int
    dim: int
    elements: np.ndarray  # (order, dim, dim)
    index: dict  # canonical bytes -> index
    mult: np.ndarray  # (order, generator_count): right multiplication
    parent: Optional[np.ndarray] = None  # BFS tree: element j = parent[j] * gen[parent_gen[j]]
    parent_gen: Optional[np.ndarray] = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def key(self, m) -> bytes:
        return _keys(np.asarray(m, dtype=np.int64)[None] % self.p, self.p)[0]

    def index_of(self, m) -> int:
        return self.index[self.key(m)]

    def __contains__(self, m) -> bool:
        return self.key(m) in self.index


def _dtype(p: int):
    return np.uint8 if p < 256 else (np.uint16 if p < 65536 else np.int64)


def _keys(batch: np.ndarray, p: int) -> list[bytes]:
    flat = np.ascontiguousarray(batch.astype(_dtype(p)).reshape(len(batch), -1))
    size = flat.shape[1] * flat.itemsize
    buf = flat.tobytes()
    return [buf[i * size:(i + 1) * size] for i in range(len(batch))]


def enumerate_group(generators, p: int, cap: int = DEFAULT_CAP) -> ElementTable:
    """Close the identity under right multiplication by ``generators``.

    Indexing follows BFS discovery order with generators tried in input
    order, so repeated runs give identical tables.  Elements are stored
    level by level in the smallest integer type holding F_p.
    """
    gens = [np.asarray(g, dtype=np.int64) % p for g in generators]
    dim = gens[0].shape[0] if gens else 0
    dtype = _dtype(p)
    ident = np.eye(dim, dtype=np.int64)
    levels = [ident[None].astype(dtype)]
    index = {_keys(ident[None], p)[0]: 0}
    mult = [array("q", [-1]) for _ in gens]
    parent, parent_gen = array("q", [-1]), array("q", [-1])
    count = 1
    frontier = ident[None]
    start = 0  # index of the first frontier element
    while len(frontier) and gens:
        found = []
        for gi, g in enumerate(gens):
            prod = (frontier @ g) % p
            fresh = []
            for k, key in enumerate(_keys(prod, p)):
                idx = index.get(key)
                if idx is None:
                    idx = count
                    if idx >= cap:
                        raise CapExceeded(f"group order exceeds cap {cap}")
                    index[key] = idx
                    count += 1
                    for m in mult:
                        m.append(-1)
                    parent.append(start + k)
                    parent_gen.append(gi)
                    fresh.append(k)
                mult[gi][start + k] = idx
            if fresh:
                found.append(prod[fresh].astype(dtype))
        start += len(frontier)
        if not found:
            break
        level = np.concatenate(found)
        levels.append(level)
        frontier = level.astype(np.int64)
    elements = np.concatenate(levels)
    mult_arr = np.array([np.frombuffer(m, dtype=np.int64) for m in mult]).T.reshape(count, len(gens))
    return ElementTable(p, dim, elements, index, mult_arr,
                        np.frombuffer(parent, dtype=np.int64).copy(), np.frombuffer(parent_gen, dtype=np.int64).copy())


def _inverse_mod(m: np.ndarray, p: int) -> np.ndarray:
    from coxred.groupengine.matrices import FpMat

    return FpMat(m, p).inverse().array()


def lifted_kernel(table: ElementTable, full_generators, p: int, chunk: int = 1 << 16) -> list[np.ndarray]:
    """Generators of the kernel of <full> -> <quotient>, where ``table``
    enumerates the group generated by the images of ``full_generators``.

    Each quotient element j gets the lift R_j along the BFS tree; the
    Schreier elements R_i g (R_{i g})^-1 then generate the kernel.
    """
    gens = [np.asarray(g, dtype=np.int64) % p for g in full_generators]
    if not gens:
        return []
    n = gens[0].shape[0]
    dtype = _dtype(p)
    inv = [_inverse_mod(g, p) for g in gens]
    lift = np.empty((table.order, n, n), dtype=dtype)
    lift_inv = np.empty_like(lift)
    lift[0] = lift_inv[0] = np.eye(n, dtype=dtype)
    for j in range(1, table.order):
        i, g = table.parent[j], table.parent_gen[j]
        lift[j] = lift[i].astype(np.int64) @ gens[g] % p
        lift_inv[j] = inv[g] @ lift_inv[i].astype(np.int64) % p
    found = {}
    ident = _keys(np.eye(n, dtype=np.int64)[None], p)[0]
    for g in range(len(gens)):
        for lo in range(0, table.order, chunk):
            hi = min(lo + chunk, table.order)
            left = lift[lo:hi].astype(np.int64) @ gens[g] % p
            right = lift_inv[table.mult[lo:hi, g]].astype(np.int64)
            k = left @ right % p
            for key, m in zip(_keys(k, p), k):
                if key != ident and key not in found:
                    found[key] = m
    return [found[key] for key in sorted(found)]


def lifted_order(quotient_generators, full_generators, p: int, cap: int = DEFAULT_CAP) -> tuple[int, int]:
    """(order of the quotient image, order of the kernel onto it); their
    product is the order of the group generated by ``full_generators``."""
    table = enumerate_group(quotient_generators, p, cap)
    kernel = lifted_kernel(table, full_generators, p)
    if not kernel:
        return table.order, 1
    return table.order, enumerate_group(kernel, p, cap).order


def subgroup_order(table: ElementTable, subset) -> int:
    """Order of the subgroup generated by the generators with the given
    (0-based) positions, by BFS inside the multiplication table."""
    subset = list(subset)
    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for g in subset:
            y = int(table.mult[x, g])
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return len(seen)


def group_order(generators, p: int, cap: int = DEFAULT_CAP) -> int:
    return enumerate_group(generators, p, cap).order
