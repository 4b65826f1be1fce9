"""Brute-force finite group models used to cross-check the collection arithmetic.

Nothing here imports the collection code.  Torsion models are built from the
cyclic-extension presentations

    even beta:  x^(n^2) = 1, y^n = 1,              y x y^-1 = x^beta
    odd beta:   x^(n^2) = 1, y^n = x^(n^2 / 2),    y x y^-1 = x^beta

with elements y^k x^j labelled (k, j); the finite quotients of G add a
generator z of order e acting by x -> x y^-1, y -> y, labelled (a, k, j).
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .errors import CapExceeded, DegenerateBeta, UnsupportedBeta

DEFAULT_CAP = 10**6
FULL_ASSOCIATIVITY_LIMIT = 128


@dataclass
class FiniteGroupTable:
    labels: list[tuple[int, ...]]
    product: np.ndarray
    identity: int
    inverse: np.ndarray = field(init=False)
    index: dict[tuple[int, ...], int] = field(init=False, repr=False)

    def __post_init__(self):
        size = len(self.labels)
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        inv = np.argmax(self.product == self.identity, axis=1)
        if not np.all(self.product[np.arange(size), inv] == self.identity):
            raise ValueError("table has an element without inverse")
        self.inverse = inv

    def __len__(self) -> int:
        return len(self.labels)

    def mul(self, i: int, j: int) -> int:
        return int(self.product[i, j])

    def power(self, i: int, k: int) -> int:
        if k < 0:
            i, k = int(self.inverse[i]), -k
        result, base = self.identity, i
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def order_of(self, i: int) -> int:
        k, cur = 1, i
        while cur != self.identity:
            cur = self.mul(cur, i)
            k += 1
        return k

    def commutator_table(self) -> np.ndarray:
        """comm[g, h] = g^-1 h^-1 g h for all pairs."""
        p, inv = self.product, self.inverse
        return p[p[inv[:, None], inv[None, :]], p]

    def check_axioms(self, samples: int = 20000, seed: int = 0) -> bool:
        size = len(self)
        p = self.product
        if not (np.all(p[self.identity] == np.arange(size)) and np.all(p[:, self.identity] == np.arange(size))):
            return False
        if size <= FULL_ASSOCIATIVITY_LIMIT:
            return bool(np.array_equal(p[p], p[np.arange(size)[:, None, None], p[None, :, :]]))
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, size, (3, samples))
        return bool(np.all(p[p[a, b], c] == p[a, p[b, c]]))


def _dims(beta: int) -> tuple[int, int, bool]:
    if beta in (0, 2):
        raise DegenerateBeta(f"G({beta}) is infinite cyclic")
    if beta == 1:
        raise UnsupportedBeta("G(1) is the integral Heisenberg group")
    n = abs(beta - 1)
    return n, n * n, beta % 2 == 0


def _torsion_product(beta: int) -> tuple[list[tuple[int, int]], np.ndarray]:
    n, n2, even = _dims(beta)
    inv_beta = pow(beta, -1, n2)
    labels = [(k, j) for k in range(n) for j in range(n2)]
    # y^-k x y^k = x^(beta^-k)
    twist = [pow(inv_beta, k, n2) for k in range(n)]
    table = np.empty((len(labels), len(labels)), dtype=np.int64)
    for i, (k1, j1) in enumerate(labels):
        for k2 in range(n):
            k = k1 + k2
            j_shift = j1 * twist[k2]
            if k >= n:
                k -= n
                if not even:
                    j_shift += n2 // 2
            js = (j_shift + np.arange(n2)) % n2
            table[i, k2 * n2:(k2 + 1) * n2] = k * n2 + js
    return labels, table


@lru_cache(maxsize=32)
def build_torsion_model(beta: int, cap: int = DEFAULT_CAP) -> FiniteGroupTable:
    """Multiplication table of the torsion subgroup; label (k, j) stands for C^k B^j."""
    n, _, _ = _dims(beta)
    if n**3 > cap:
        raise CapExceeded(n**3, cap)
    labels, table = _torsion_product(beta)
    return FiniteGroupTable(labels, table, 0)


@lru_cache(maxsize=16)
def build_finite_quotient(beta: int, cap: int = DEFAULT_CAP) -> FiniteGroupTable:
    """Table of G / <A^e> with e the least central power of A; label (a, k, j) stands for A^a C^k B^j."""
    n, n2, even = _dims(beta)
    e = n if even else 2 * n
    size = e * n**3
    if size > cap:
        raise CapExceeded(size, cap)
    tors = build_torsion_model(beta, cap)
    m = len(tors)
    x = tors.index[(0, 1)]
    y = tors.index[(1 % n, 0)]
    x_twisted = tors.mul(x, int(tors.inverse[y]))
    # z acts by y^k x^j -> y^k (x y^-1)^j
    phi = np.empty(m, dtype=np.int64)
    for idx, (k, j) in enumerate(tors.labels):
        phi[idx] = tors.mul(tors.power(y, k), tors.power(x_twisted, j))
    phis = [np.arange(m)]
    for _ in range(1, e):
        phis.append(phi[phis[-1]])
    if not np.all(phi[phis[-1]] == np.arange(m)):
        raise ValueError("z^e does not act trivially")
    labels = [(a,) + lab for a in range(e) for lab in tors.labels]
    table = np.empty((size, size), dtype=np.int64)
    tp = tors.product
    for a1 in range(e):
        for a2 in range(e):
            block = tp[phis[a2][:, None], np.arange(m)[None, :]]
            table[a1 * m:(a1 + 1) * m, a2 * m:(a2 + 1) * m] = ((a1 + a2) % e) * m + block
    return FiniteGroupTable(labels, table, 0)


def subgroup_closure(table: FiniteGroupTable, generators) -> set[int]:
    elements = {table.identity}
    frontier = deque([table.identity])
    gens = [int(g) for g in generators]
    while frontier:
        cur = frontier.popleft()
        for g in gens:
            nxt = table.mul(cur, g)
            if nxt not in elements:
                elements.add(nxt)
                frontier.append(nxt)
    return elements


def center_of(table: FiniteGroupTable) -> set[int]:
    p = table.product
    return {int(i) for i in np.nonzero(np.all(p == p.T, axis=1))[0]}


def generating_set(table: FiniteGroupTable) -> list[int]:
    """A small generating set, picking elements of largest order greedily."""
    order = sorted(range(len(table)), key=lambda i: (-table.order_of(i), i))
    gens: list[int] = []
    span = {table.identity}
    for i in order:
        if len(span) == len(table):
            break
        if i not in span:
            gens.append(i)
            span = subgroup_closure(table, gens)
    return gens


def extend_generator_map(table: FiniteGroupTable, gens: list[int], images: list[int]) -> np.ndarray | None:
    """Extend gens -> images to an endomorphism along the Cayley graph; None if inconsistent."""
    size = len(table)
    phi = np.full(size, -1, dtype=np.int64)
    phi[table.identity] = table.identity
    frontier = deque([table.identity])
    while frontier:
        cur = frontier.popleft()
        for g, h in zip(gens, images):
            nxt = table.mul(cur, g)
            val = table.mul(int(phi[cur]), h)
            if phi[nxt] < 0:
                phi[nxt] = val
                frontier.append(nxt)
            elif phi[nxt] != val:
                return None
    return phi


def exhaustive_automorphisms(table: FiniteGroupTable, cap: int = 64) -> list[np.ndarray]:
    """Every automorphism of the table, as index permutations."""
    if len(table) > cap:
        raise CapExceeded(len(table), cap)
    gens = generating_set(table)
    orders = [table.order_of(i) for i in range(len(table))]
    candidates = [[i for i in range(len(table)) if orders[i] == orders[g]] for g in gens]
    found = []
    for images in itertools.product(*candidates):
        phi = extend_generator_map(table, gens, list(images))
        if phi is not None and len(set(phi.tolist())) == len(table):
            found.append(phi)
    return found


def cyclic_table(k: int) -> FiniteGroupTable:
    idx = np.arange(k)
    return FiniteGroupTable([(i,) for i in range(k)], (idx[:, None] + idx[None, :]) % k, 0)
