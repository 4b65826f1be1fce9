"""Center, central series and the map from G onto the Heisenberg group over Z/nZ."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import oracle
from .core import (
    Element,
    GroupParams,
    commutator,
    gen_a,
    gen_b,
    gen_c,
    identity,
    multiply,
    power,
)
from .torsion import closure


@dataclass(frozen=True, order=True)
class HeisElement:
    """x^x_exp y^y_exp z^z_exp in H(Z/nZ), with [x, y] = z central."""

    n: int
    x_exp: int
    y_exp: int
    z_exp: int


def heis(n: int, x: int = 0, y: int = 0, z: int = 0) -> HeisElement:
    return HeisElement(n, x % n, y % n, z % n)


def heis_multiply(g: HeisElement, h: HeisElement) -> HeisElement:
    # y^y1 x^x2 = x^x2 y^y1 z^(-x2*y1)
    return heis(g.n, g.x_exp + h.x_exp, g.y_exp + h.y_exp, g.z_exp + h.z_exp - h.x_exp * g.y_exp)


def heis_inverse(g: HeisElement) -> HeisElement:
    return heis(g.n, -g.x_exp, -g.y_exp, -g.z_exp - g.x_exp * g.y_exp)


def heis_power(g: HeisElement, k: int) -> HeisElement:
    if k < 0:
        g, k = heis_inverse(g), -k
    result = heis(g.n)
    while k:
        if k & 1:
            result = heis_multiply(result, g)
        g = heis_multiply(g, g)
        k >>= 1
    return result


def heis_commutator(g: HeisElement, h: HeisElement) -> HeisElement:
    return heis_multiply(heis_inverse(heis_multiply(h, g)), heis_multiply(g, h))


def heis_to_matrix(g: HeisElement) -> tuple[int, int, int]:
    """Upper entries (1,2), (2,3), (1,3) of the unitriangular matrix of g, with x = t12, y = t23."""
    return (g.x_exp, g.y_exp, (g.z_exp + g.x_exp * g.y_exp) % g.n)


def is_central(params: GroupParams, g: Element) -> bool:
    one = identity(params)
    return commutator(params, g, gen_a(params)) == one and commutator(params, g, gen_b(params)) == one


def center_generators(params: GroupParams) -> list[Element]:
    d = params.beta - 1
    b_gen = power(params, gen_b(params), d)
    if params.beta_even:
        return [power(params, gen_a(params), d), b_gen]
    a_part = multiply(params, power(params, gen_a(params), d), power(params, gen_c(params), d // 2))
    return [b_gen, a_part]


def reduce_mod_center(params: GroupParams, g: Element) -> Element:
    """Canonical coset representative A^a C^c B^b of gZ with a, c, b all in [0, n)."""
    n = params.n
    w = Element(params.beta, n, 0, 0)
    if not params.beta_even:
        w = multiply(params, w, power(params, gen_c(params), n // 2))
    q = g.a // n
    g = multiply(params, g, power(params, w, -q))
    return multiply(params, g, power(params, gen_b(params), -(g.b - g.b % n)))


def lower_central_series(params: GroupParams) -> dict:
    d = params.beta - 1
    bd = power(params, gen_b(params), d)
    gamma3_order = len(closure(params, [bd]))
    return {
        "gamma2": [gen_c(params), bd],
        "gamma3": [bd],
        "gamma4": [],
        "gamma3_order": gamma3_order,
        "gamma3_nontrivial": bd != identity(params),
        "gamma3_central": is_central(params, bd),
        "class": 3 if bd != identity(params) and is_central(params, bd) else None,
    }


def heisenberg_map(params: GroupParams, g: Element) -> HeisElement:
    """The epimorphism A -> xy, B -> y (so C -> z)."""
    a = g.a
    # (xy)^a = x^a y^a z^(-a(a-1)/2)
    return heis(params.n, a, a + g.b, g.c - a * (a - 1) // 2)


def heis_closure(gens: list[HeisElement]) -> set[HeisElement]:
    n = gens[0].n
    seen = {heis(n)}
    frontier = [heis(n)]
    while frontier:
        cur = frontier.pop()
        for g in gens:
            nxt = heis_multiply(cur, g)
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return seen


def check_heisenberg_iso(params: GroupParams, cap: int = oracle.DEFAULT_CAP) -> bool:
    """h respects the defining relations, is onto H(Z/nZ), and its kernel on G/<A^e> is the center."""
    x = heisenberg_map(params, gen_a(params))
    y = heisenberg_map(params, gen_b(params))
    z = heis_commutator(x, y)
    if heis_multiply(heis_inverse(z), heis_multiply(x, z)) != x:
        return False
    w = heis_commutator(y, x)
    if heis_multiply(heis_inverse(w), heis_multiply(y, w)) != heis_power(y, params.beta):
        return False
    n = params.n
    xa, ya = heis(n, 1), heis(n, 0, 1)
    if heis_power(heis_multiply(xa, ya), n) != heis_power(heis(n, 0, 0, 1), -(n * (n - 1) // 2)):
        return False
    if len(heis_closure([x, y])) != n**3:
        return False
    return heisenberg_kernel_matches_center(params, cap)


def quotient_index(table: oracle.FiniteGroupTable, params: GroupParams, g: Element) -> int:
    return table.index[(g.a % params.a_central_exp, g.c, g.b)]


def heisenberg_kernel_matches_center(params: GroupParams, cap: int = oracle.DEFAULT_CAP) -> bool:
    table = oracle.build_finite_quotient(params.beta, cap)
    one = heis(params.n)
    kernel = {i for i, (a, c, b) in enumerate(table.labels)
              if heisenberg_map(params, Element(params.beta, a, c, b)) == one}
    gens = [quotient_index(table, params, g) for g in center_generators(params)]
    return kernel == oracle.subgroup_closure(table, gens)


def quotient_center(params: GroupParams, cap: int = oracle.DEFAULT_CAP) -> list[Element]:
    """Exact center of G/<A^e>, found by exhaustive commutation in the oracle table."""
    table = oracle.build_finite_quotient(params.beta, cap)
    return [Element(params.beta, *table.labels[i]) for i in sorted(oracle.center_of(table))]


def quotient_second_center(params: GroupParams, cap: int = oracle.DEFAULT_CAP) -> list[Element]:
    """Z_2 of G/<A^e>: elements whose commutators with everything are central."""
    table = oracle.build_finite_quotient(params.beta, cap)
    center = np.zeros(len(table), dtype=bool)
    center[list(oracle.center_of(table))] = True
    comm = table.commutator_table()
    members = np.nonzero(np.all(center[comm], axis=1))[0]
    return [Element(params.beta, *table.labels[i]) for i in members]


def centralizer_of_a_matches(params: GroupParams, cap: int = oracle.DEFAULT_CAP) -> bool:
    """Centralizer of A in G/<A^e> equals the image of <A, C, B^(beta-1)>."""
    table = oracle.build_finite_quotient(params.beta, cap)
    a_idx = quotient_index(table, params, gen_a(params))
    p = table.product
    cent = {int(i) for i in np.nonzero(p[:, a_idx] == p[a_idx, :])[0]}
    gens = [gen_a(params), gen_c(params), power(params, gen_b(params), params.beta - 1)]
    return cent == oracle.subgroup_closure(table, [quotient_index(table, params, g) for g in gens])


def c_in_second_center(params: GroupParams, cap: int = oracle.DEFAULT_CAP) -> bool:
    table = oracle.build_finite_quotient(params.beta, cap)
    comm = table.commutator_table()
    c_idx = quotient_index(table, params, gen_c(params))
    return bool(np.all(comm[comm[c_idx]] == table.identity))


def quotient_lower_central_series(params: GroupParams, cap: int = oracle.DEFAULT_CAP) -> list[set[int]]:
    """gamma_1 .. gamma_k of G/<A^e> as index sets, down to the trivial group."""
    table = oracle.build_finite_quotient(params.beta, cap)
    comm = table.commutator_table()
    series = [set(range(len(table)))]
    while len(series[-1]) > 1:
        cur = sorted(series[-1])
        nxt = oracle.subgroup_closure(table, np.unique(comm[:, cur]))
        if nxt == series[-1]:
            break
        series.append(nxt)
    return series


def subgroup_indices(params: GroupParams, table: oracle.FiniteGroupTable, gens: list[Element]) -> set[int]:
    return oracle.subgroup_closure(table, [quotient_index(table, params, g) for g in gens])
