"""The finite quotient L(beta) = G(beta) / <A^(beta-1)> for gcd(beta - 1, 6) = 1, and Aut(L).

Elements of L are core elements A^a C^c B^b with a reduced modulo n = |beta - 1|; this is
well defined because A^n is central when beta is even, which the gcd condition forces.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from . import core
from .core import Element, GroupParams, gen_a, gen_b, gen_c, make_params
from .errors import CapExceeded, GcdCondition, InvalidAutomorphism, NotAUnit
from .numtheory import factorize, totient, units

DEFAULT_CAP = 10**6


def l_params(beta: int) -> GroupParams:
    params = make_params(beta)
    if math.gcd(params.n, 6) != 1:
        raise GcdCondition(f"gcd({beta} - 1, 6) = {math.gcd(params.n, 6)}; L is only handled when it is 1")
    return params


def l_reduce(params: GroupParams, x: Element) -> Element:
    return Element(params.beta, x.a % params.n, x.c, x.b)


def l_element(params: GroupParams, a: int = 0, c: int = 0, b: int = 0) -> Element:
    return l_reduce(params, core.normalize(params, a, c, b))


def l_multiply(params: GroupParams, x: Element, y: Element) -> Element:
    return l_reduce(params, core.multiply(params, x, y))


def l_inverse(params: GroupParams, x: Element) -> Element:
    return l_reduce(params, core.inverse(params, x))


def l_power(params: GroupParams, x: Element, k: int) -> Element:
    return l_reduce(params, core.power(params, x, k))


def l_commutator(params: GroupParams, x: Element, y: Element) -> Element:
    return l_reduce(params, core.commutator(params, x, y))


def l_conjugate(params: GroupParams, x: Element, g: Element) -> Element:
    return l_reduce(params, core.conjugate(params, x, g))


def l_identity(params: GroupParams) -> Element:
    return Element(params.beta, 0, 0, 0)


def l_order(params: GroupParams, x: Element) -> int:
    order = params.n**4
    one = l_identity(params)
    for p in factorize(params.n):
        while order % p == 0 and l_power(params, x, order // p) == one:
            order //= p
    return order


def l_enumerate(params: GroupParams) -> list[Element]:
    n, n2 = params.n, params.n2
    return [Element(params.beta, a, c, b) for a in range(n) for c in range(n) for b in range(n2)]


def l_closure(params: GroupParams, gens) -> set[Element]:
    one = l_identity(params)
    seen, frontier = {one}, deque([one])
    gens = list(gens)
    while frontier:
        cur = frontier.popleft()
        for g in gens:
            nxt = l_multiply(params, cur, g)
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return seen


def l_center(params: GroupParams) -> set[Element]:
    """Z(L), found by testing every element against the generators."""
    a, b, one = gen_a(params), gen_b(params), l_identity(params)
    return {x for x in l_enumerate(params)
            if l_commutator(params, x, a) == one and l_commutator(params, x, b) == one}


def l_second_center(params: GroupParams) -> set[Element]:
    center = l_center(params)
    a, b = gen_a(params), gen_b(params)
    return {x for x in l_enumerate(params)
            if l_commutator(params, x, a) in center and l_commutator(params, x, b) in center}


# ---------- automorphisms ----------

@dataclass(frozen=True, order=True)
class LAutomorphism:
    img_a: Element
    img_b: Element


def _abelian_det(params: GroupParams, u: Element, v: Element) -> int:
    # L/[L, L] is Z/n x Z/n on the images of a and b
    return (u.a * v.b - u.b * v.a) % params.n


def l_is_valid(params: GroupParams, u: Element, v: Element) -> bool:
    """Defining relations of L hold for (u, v) and the induced map is onto."""
    one = l_identity(params)
    if l_conjugate(params, u, l_commutator(params, u, v)) != u:
        return False
    if l_conjugate(params, v, l_commutator(params, v, u)) != l_power(params, v, params.beta):
        return False
    if l_power(params, u, params.n) != one:
        return False
    # a finite nilpotent group is generated by any set generating its abelianization
    return math.gcd(_abelian_det(params, u, v), params.n) == 1


def l_automorphism(params: GroupParams, u: Element, v: Element) -> LAutomorphism:
    u, v = l_reduce(params, u), l_reduce(params, v)
    if not l_is_valid(params, u, v):
        raise InvalidAutomorphism(f"a -> {u}, b -> {v} is not an automorphism of L")
    return LAutomorphism(u, v)


def l_identity_aut(params: GroupParams) -> LAutomorphism:
    return LAutomorphism(gen_a(params), gen_b(params))


def psi(params: GroupParams) -> LAutomorphism:
    """a -> a, b -> ab."""
    return LAutomorphism(gen_a(params), l_multiply(params, gen_a(params), gen_b(params)))


def l_delta2(params: GroupParams) -> LAutomorphism:
    return LAutomorphism(l_multiply(params, gen_a(params), l_power(params, gen_b(params), params.beta - 1)),
                         gen_b(params))


def mu(params: GroupParams, i: int) -> LAutomorphism:
    """a -> a^i, b -> b^j with ij = 1 modulo n^2."""
    if math.gcd(i, params.n) != 1:
        raise NotAUnit(f"{i} is not a unit modulo {params.n}")
    j = pow(i, -1, params.n2)
    return LAutomorphism(l_power(params, gen_a(params), i), l_power(params, gen_b(params), j))


def l_inner(params: GroupParams, g: Element) -> LAutomorphism:
    return LAutomorphism(l_conjugate(params, gen_a(params), g), l_conjugate(params, gen_b(params), g))


def l_generators(params: GroupParams) -> list[LAutomorphism]:
    """Psi, Delta2, mu_i for the least positive units i, and conjugation by a, b, c."""
    gens = [psi(params), l_delta2(params)]
    gens += [mu(params, i) for i in units(params.n)]
    gens += [l_inner(params, g) for g in (gen_a(params), gen_b(params), gen_c(params))]
    return gens


class _LEvaluator:
    def __init__(self, params: GroupParams, f: LAutomorphism):
        self.params = params
        img_c = l_commutator(params, f.img_a, f.img_b)
        self.a_pow = self._table(f.img_a, params.n)
        self.c_pow = self._table(img_c, params.n)
        self.b_pow = self._table(f.img_b, params.n2)

    def _table(self, x: Element, count: int) -> list[Element]:
        out = [l_identity(self.params)]
        for _ in range(count - 1):
            out.append(l_multiply(self.params, out[-1], x))
        return out

    def __call__(self, x: Element) -> Element:
        p = self.params
        return l_multiply(p, l_multiply(p, self.a_pow[x.a], self.c_pow[x.c]), self.b_pow[x.b])


def l_apply(params: GroupParams, f: LAutomorphism, x: Element) -> Element:
    return _LEvaluator(params, f)(l_reduce(params, x))


def l_compose(params: GroupParams, f: LAutomorphism, g: LAutomorphism) -> LAutomorphism:
    """f first, then g."""
    ev = _LEvaluator(params, g)
    return LAutomorphism(ev(f.img_a), ev(f.img_b))


def l_aut_closure(params: GroupParams, gens, cap: int = DEFAULT_CAP) -> set[LAutomorphism]:
    evaluators = [_LEvaluator(params, g) for g in gens]
    start = l_identity_aut(params)
    seen, frontier = {start}, deque([start])
    while frontier:
        cur = frontier.popleft()
        for ev in evaluators:
            nxt = LAutomorphism(ev(cur.img_a), ev(cur.img_b))
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > cap:
                    raise CapExceeded(len(seen), cap)
                frontier.append(nxt)
    return seen


def l_aut_group(params: GroupParams, cap: int = DEFAULT_CAP) -> frozenset[LAutomorphism]:
    expected = totient(params.n) * params.n**5
    if expected > cap:
        raise CapExceeded(expected, cap)
    return _l_aut_group_cached(params)


@lru_cache(maxsize=4)
def _l_aut_group_cached(params: GroupParams) -> frozenset[LAutomorphism]:
    return frozenset(l_aut_closure(params, l_generators(params)))


# ---------- action on L / Z2(L) ----------

Matrix2 = tuple[tuple[int, int], tuple[int, int]]


def omega_matrix(params: GroupParams, f: LAutomorphism) -> Matrix2:
    """Rows are the coordinates of the images of a and b in L / Z2(L) = (Z/n)^2."""
    n = params.n
    if not l_is_valid(params, f.img_a, f.img_b):
        raise InvalidAutomorphism("omega_matrix needs an automorphism of L")
    return ((f.img_a.a % n, f.img_a.b % n), (f.img_b.a % n, f.img_b.b % n))


def mat2_mul(x: Matrix2, y: Matrix2, n: int) -> Matrix2:
    return tuple(tuple(sum(x[i][k] * y[k][j] for k in range(2)) % n for j in range(2)) for i in range(2))


def mat2_pow(x: Matrix2, k: int, n: int) -> Matrix2:
    if k < 0:
        x, k = mat2_inverse(x, n), -k
    out: Matrix2 = ((1, 0), (0, 1))
    while k:
        if k & 1:
            out = mat2_mul(out, x, n)
        x = mat2_mul(x, x, n)
        k >>= 1
    return out


def mat2_inverse(x: Matrix2, n: int) -> Matrix2:
    det_inv = pow((x[0][0] * x[1][1] - x[0][1] * x[1][0]) % n, -1, n)
    return (((x[1][1] * det_inv) % n, (-x[0][1] * det_inv) % n),
            ((-x[1][0] * det_inv) % n, (x[0][0] * det_inv) % n))


def mat2_closure(gens, n: int) -> set[Matrix2]:
    one: Matrix2 = ((1, 0), (0, 1))
    seen, frontier = {one}, deque([one])
    while frontier:
        cur = frontier.popleft()
        for g in gens:
            nxt = mat2_mul(cur, g, n)
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return seen


def unipotent_v(n: int) -> Matrix2:
    return ((1, 0), (1, 1))


def diagonal_u(n: int, i: int) -> Matrix2:
    return ((i % n, 0), (0, pow(i, -1, n)))


# ---------- comparison with Aut(G) ----------

def tau_embed(params: GroupParams, f) -> LAutomorphism:
    """Automorphism of L induced by an automorphism of G (images reduced modulo <A^(beta-1)>)."""
    l_params(params.beta)
    return LAutomorphism(l_reduce(params, f.img_a), l_reduce(params, f.img_b))


def k_characteristic_check(params: GroupParams) -> bool:
    """Every standard generator of Aut(G) sends A^n to A^(+-n), so K = <A^n> is mapped onto itself."""
    from .aut import apply, standard_generators

    l_params(params.beta)
    k_gen = Element(params.beta, params.n, 0, 0)
    targets = {k_gen, Element(params.beta, -params.n, 0, 0)}
    return all(apply(params, f, k_gen) in targets for f in standard_generators(params))


@dataclass(frozen=True)
class LStructureReport:
    beta: int
    order: int
    center_order: int
    second_center_order: int
    aut_order: int
    inner_order: int
    kernel_order: int
    quotient_order: int


def l_structure_report(beta: int, cap: int = DEFAULT_CAP) -> LStructureReport:
    params = l_params(beta)
    group = l_aut_group(params, cap)
    ident: Matrix2 = ((1, 0), (0, 1))
    kernel = sum(1 for f in group if omega_matrix(params, f) == ident)
    images = {omega_matrix(params, f) for f in group}
    inner = {l_inner(params, g) for g in l_enumerate(params)}
    return LStructureReport(
        beta=beta,
        order=params.n**4,
        center_order=len(l_center(params)),
        second_center_order=len(l_second_center(params)),
        aut_order=len(group),
        inner_order=len(inner),
        kernel_order=kernel,
        quotient_order=len(images),
    )
