"""Automorphisms of G(beta), their normal form, matrix models and restriction to T.

Composition is left to right throughout: compose(f, g) applies f first, then g,
and matrices act on row vectors so that matrix_of(compose(f, g)) is
matrix_of(f) @ matrix_of(g).
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache

from .core import (
    Element,
    GroupParams,
    commutator,
    conjugate,
    format_element,
    gen_a,
    gen_b,
    gen_c,
    identity,
    inverse,
    multiply,
    power,
)
from .errors import BetaNotEven, CapExceeded, InvalidAutomorphism, PrimeNotDividing
from .numtheory import is_prime, primitive_root, valuation
from .structure import reduce_mod_center
from .torsion import closure, sylow_generators

DEFAULT_CAP = 10**6
CLOSURE_CHECK_LIMIT = 10**4


@dataclass(frozen=True, order=True)
class Automorphism:
    img_a: Element
    img_b: Element


@dataclass(frozen=True)
class AutCertificate:
    shape: bool
    relations: bool
    surjective: bool
    surjectivity_method: str
    failures: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.shape and self.relations and self.surjective


def _relations_hold(params: GroupParams, u: Element, v: Element) -> bool:
    """u^[u,v] = u and v^[v,u] = v^beta."""
    return (conjugate(params, u, commutator(params, u, v)) == u
            and conjugate(params, v, commutator(params, v, u)) == power(params, v, params.beta))


def is_valid_automorphism(params: GroupParams, img_a: Element, img_b: Element,
                          closure_limit: int = CLOSURE_CHECK_LIMIT) -> AutCertificate:
    """Decide whether A -> img_a, B -> img_b extends to an automorphism of G.

    Surjectivity onto T is checked by closure when |T| <= closure_limit.  For larger
    groups the abelianization test is used instead: an endomorphism of a nilpotent group
    is onto iff it is onto modulo [G, G] = <C, B^(beta-1)>.
    """
    failures = []
    shape = abs(img_a.a) == 1 and img_b.is_torsion
    if not shape:
        failures.append("shape")
    relations = _relations_hold(params, img_a, img_b)
    if not relations:
        failures.append("relations")
    if params.torsion_order <= closure_limit:
        method = "closure"
        img_c = commutator(params, img_a, img_b)
        surjective = shape and len(closure(params, [img_b, img_c])) == params.torsion_order
    else:
        method = "abelianization"
        surjective = shape and math.gcd(img_b.b, params.n) == 1
    if not surjective:
        failures.append("surjective")
    return AutCertificate(shape, relations, surjective, method, tuple(failures))


def automorphism(params: GroupParams, img_a: Element, img_b: Element) -> Automorphism:
    cert = is_valid_automorphism(params, img_a, img_b)
    if not cert:
        raise InvalidAutomorphism(f"A -> {img_a}, B -> {img_b} fails {', '.join(cert.failures)}")
    return Automorphism(img_a, img_b)


def identity_aut(params: GroupParams) -> Automorphism:
    return Automorphism(gen_a(params), gen_b(params))


def delta1(params: GroupParams) -> Automorphism:
    """A -> A^-1, B -> B^-1."""
    return Automorphism(inverse(params, gen_a(params)), inverse(params, gen_b(params)))


def delta2(params: GroupParams, k: int = 1) -> Automorphism:
    """The k-th power of the central automorphism A -> A B^(beta-1), B -> B."""
    return Automorphism(multiply(params, gen_a(params), power(params, gen_b(params), k * (params.beta - 1))),
                        gen_b(params))


def inner(params: GroupParams, g: Element) -> Automorphism:
    """Conjugation x -> x^g."""
    return Automorphism(conjugate(params, gen_a(params), g), conjugate(params, gen_b(params), g))


def standard_generators(params: GroupParams) -> tuple[Automorphism, ...]:
    return (delta1(params), delta2(params), inner(params, gen_a(params)),
            inner(params, gen_b(params)), inner(params, gen_c(params)))


def image_of_c(params: GroupParams, f: Automorphism) -> Element:
    return commutator(params, f.img_a, f.img_b)


def apply(params: GroupParams, f: Automorphism, x: Element) -> Element:
    img_c = image_of_c(params, f)
    result = multiply(params, power(params, f.img_a, x.a), power(params, img_c, x.c))
    return multiply(params, result, power(params, f.img_b, x.b))


class _Evaluator:
    """apply(f, .) with precomputed power tables, for repeated use inside closures."""

    def __init__(self, params: GroupParams, f: Automorphism):
        self.params = params
        self.f = f
        img_c = image_of_c(params, f)
        self.a_pow = {1: f.img_a, -1: inverse(params, f.img_a), 0: identity(params)}
        self.c_pow = self._table(img_c, params.n)
        self.b_pow = self._table(f.img_b, params.n2)

    def _table(self, x: Element, count: int) -> list[Element]:
        out = [identity(self.params)]
        for _ in range(count - 1):
            out.append(multiply(self.params, out[-1], x))
        return out

    def __call__(self, x: Element) -> Element:
        p = self.params
        a_img = self.a_pow.get(x.a)
        if a_img is None:
            a_img = power(p, self.f.img_a, x.a)
        return multiply(p, multiply(p, a_img, self.c_pow[x.c]), self.b_pow[x.b])


def compose(params: GroupParams, f: Automorphism, g: Automorphism) -> Automorphism:
    """f first, then g."""
    return Automorphism(apply(params, g, f.img_a), apply(params, g, f.img_b))


def aut_power(params: GroupParams, f: Automorphism, k: int) -> Automorphism:
    if k < 0:
        f, k = aut_invert(params, f), -k
    result = identity_aut(params)
    for _ in range(k):
        result = compose(params, result, f)
    return result


@dataclass(frozen=True)
class Decomposition:
    eps: int
    g: Element
    k: int


def recompose(params: GroupParams, dec: Decomposition) -> Automorphism:
    """Delta1^eps, then conjugation by g, then Delta2^k."""
    f = delta1(params) if dec.eps else identity_aut(params)
    return compose(params, compose(params, f, inner(params, dec.g)), delta2(params, dec.k))


def decompose(params: GroupParams, f: Automorphism, check: bool = True) -> Decomposition:
    """Write f = Delta1^eps . inner(g) . Delta2^k by peeling off one factor at a time.

    With check=True the factors are multiplied back together and compared with f.
    """
    n, d = params.n, params.beta - 1
    if abs(f.img_a.a) != 1 or not f.img_b.is_torsion:
        raise InvalidAutomorphism("image of A must be A^(+-1) times torsion, image of B torsion")
    eps = 1 if f.img_a.a == -1 else 0
    h = compose(params, delta1(params), f) if eps else f
    # conjugating by B^s shifts the C-exponent of the image of A by s
    s = (-h.img_a.c) % n
    h = compose(params, h, inner(params, power(params, gen_b(params), s)))
    t = h.img_a.b
    if h.img_a.c != 0 or t % n:
        raise InvalidAutomorphism("image of A is not A times a central power of B")
    q = (-t // d) % n
    h = compose(params, h, delta2(params, q))
    j, i = h.img_b.c, h.img_b.b
    if math.gcd(i, n) != 1:
        raise InvalidAutomorphism("image of B does not generate T modulo C")
    x = (j * pow(i, -1, n)) % n
    h = compose(params, h, inner(params, Element(params.beta, x, 0, 0)))
    i = h.img_b.b
    if h.img_b.c != 0 or (i - 1) % n:
        raise InvalidAutomorphism("image of B is not B^(1 mod n)")
    y = ((i - 1) // d) % n
    h = compose(params, h, inner(params, power(params, gen_c(params), y)))
    if h != identity_aut(params):
        raise InvalidAutomorphism("residual automorphism is not the identity")
    g = multiply(params, multiply(params, power(params, gen_c(params), -y), Element(params.beta, -x, 0, 0)),
                 power(params, gen_b(params), -s))
    dec = Decomposition(eps, reduce_mod_center(params, g), (-q) % n)
    if check and recompose(params, dec) != f:
        raise InvalidAutomorphism("recomposition does not reproduce the input")
    return dec


def aut_invert(params: GroupParams, f: Automorphism) -> Automorphism:
    dec = decompose(params, f)
    out = compose(params, delta2(params, -dec.k), inner(params, inverse(params, dec.g)))
    return compose(params, out, delta1(params)) if dec.eps else out


def _sort_key(params: GroupParams):
    return lambda f: (format_element(params, f.img_a), format_element(params, f.img_b))


def automorphism_closure(params: GroupParams, gens, cap: int = DEFAULT_CAP) -> list[Automorphism]:
    """Subgroup of Aut(G) generated by gens, found breadth first."""
    evaluators = [_Evaluator(params, g) for g in gens]
    start = identity_aut(params)
    seen = {start}
    frontier = deque([start])
    while frontier:
        cur = frontier.popleft()
        for ev in evaluators:
            nxt = Automorphism(ev(cur.img_a), ev(cur.img_b))
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > cap:
                    raise CapExceeded(len(seen), cap)
                frontier.append(nxt)
    return sorted(seen, key=_sort_key(params))


def aut_group(params: GroupParams, cap: int = DEFAULT_CAP) -> list[Automorphism]:
    """All 2 n^4 automorphisms of G, in a deterministic order."""
    expected = 2 * params.n**4
    if expected > cap:
        raise CapExceeded(expected, cap)
    return _aut_group_cached(params)


@lru_cache(maxsize=8)
def _aut_group_cached(params: GroupParams) -> list[Automorphism]:
    return automorphism_closure(params, standard_generators(params))


# ---------- matrix models ----------

@dataclass(frozen=True)
class AutMatrix:
    modulus: int
    entries: tuple[tuple[int, ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.entries)

    def __matmul__(self, other: AutMatrix) -> AutMatrix:
        m = self.modulus
        cols = list(zip(*other.entries))
        return AutMatrix(m, tuple(tuple(sum(r * c for r, c in zip(row, col)) % m for col in cols)
                                  for row in self.entries))

    def __pow__(self, k: int) -> AutMatrix:
        if k < 0:
            raise ValueError("use explicit inverses")
        out, base = mat_identity(self.dimension, self.modulus), self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out


def mat_identity(dim: int, modulus: int) -> AutMatrix:
    return AutMatrix(modulus, tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim)))


def elementary(dim: int, modulus: int, i: int, j: int, coeff: int = 1) -> AutMatrix:
    """t_{i,j} = I + coeff * e_{i,j}, indices 1-based."""
    rows = [list(r) for r in mat_identity(dim, modulus).entries]
    rows[i - 1][j - 1] = coeff % modulus
    return AutMatrix(modulus, tuple(tuple(r) for r in rows))


def diagonal(modulus: int, *diag: int) -> AutMatrix:
    dim = len(diag)
    return AutMatrix(modulus, tuple(tuple(diag[i] % modulus if i == j else 0 for j in range(dim))
                                    for i in range(dim)))


@dataclass(frozen=True)
class _MatrixModel:
    d: AutMatrix
    x: AutMatrix
    x_inv: AutMatrix
    y: AutMatrix
    y_inv: AutMatrix
    u: AutMatrix

    @property
    def k(self) -> AutMatrix:
        return self.x_inv @ self.y_inv @ self.x @ self.y


@lru_cache(maxsize=32)
def _matrix_model(params: GroupParams) -> _MatrixModel:
    if params.n == 2:
        m = 2
        t12, y, u = elementary(5, m, 1, 2), elementary(5, m, 2, 3), elementary(5, m, 1, 4)
        # A^2 is not central here, so conjugation by A must go to the order-4 matrix t12 t23
        x, x_inv, y_inv = t12 @ y, y @ t12, y
        d = elementary(5, m, 5, 3) @ y
        return _MatrixModel(d, x, x_inv, y, y_inv, u)
    m = params.n
    x, y, u = elementary(4, m, 1, 2), elementary(4, m, 2, 3), elementary(4, m, 1, 4)
    x_inv, y_inv = elementary(4, m, 1, 2, -1), elementary(4, m, 2, 3, -1)
    d = diagonal(m, 1, -1, 1, 1)
    if params.beta_even:
        return _MatrixModel(d, x, x_inv, y, y_inv, u)
    return _MatrixModel(d @ y, x @ y, y_inv @ x_inv, y, y_inv, u)


def matrix_of(params: GroupParams, f: Automorphism) -> AutMatrix:
    """Image in GL_4(Z/nZ), or GL_5(Z/2Z) when beta is -1 or 3."""
    dec = decompose(params, f, check=False)
    model = _matrix_model(params)
    g = dec.g
    out = model.d if dec.eps else mat_identity(model.x.dimension, model.x.modulus)
    return out @ model.x ** g.a @ model.k ** g.c @ model.y ** g.b @ model.u ** dec.k


def has_standard_shape(mat: AutMatrix) -> bool:
    """Unit diagonal except (2,2) = +-1; free entries at (1,2), (1,3), (1,4), (2,3); zeros elsewhere."""
    if mat.dimension != 4:
        return False
    m = mat.modulus
    free = {(0, 1), (0, 2), (0, 3), (1, 2)}
    for i, row in enumerate(mat.entries):
        for j, v in enumerate(row):
            if (i, j) in free:
                continue
            if i == j == 1:
                if v not in (1 % m, (-1) % m):
                    return False
            elif v != (1 if i == j else 0):
                return False
    return True


def standard_shape_count(n: int) -> int:
    signs = 1 if n <= 2 else 2
    return signs * n**4


# ---------- restriction to T ----------

@dataclass(frozen=True, order=True)
class TAutomorphism:
    """Automorphism of T (prime is None) or of T_p, given by the images of B, C or of B_p, C_p."""

    img_b_t: Element
    img_c_t: Element
    prime: int | None = field(default=None)

    def __str__(self) -> str:
        suffix = "" if self.prime is None else f"_{self.prime}"
        return f"B{suffix} -> {self.img_b_t}, C{suffix} -> {self.img_c_t}"


def t_generators(params: GroupParams, prime: int | None = None) -> tuple[Element, Element]:
    if prime is None:
        return gen_b(params), gen_c(params)
    return sylow_generators(params, prime)


def t_apply(params: GroupParams, t: TAutomorphism, u: Element) -> Element:
    """Image of u = C^c B^b (or C_p^c B_p^b for u in T_p)."""
    if not u.is_torsion:
        raise InvalidAutomorphism("TAutomorphism applied to a non-torsion element")
    return multiply(params, power(params, t.img_c_t, u.c), power(params, t.img_b_t, u.b))


def t_compose(params: GroupParams, s: TAutomorphism, t: TAutomorphism) -> TAutomorphism:
    return TAutomorphism(t_apply(params, t, s.img_b_t), t_apply(params, t, s.img_c_t), s.prime)


def t_identity(params: GroupParams, prime: int | None = None) -> TAutomorphism:
    b, c = t_generators(params, prime)
    return TAutomorphism(b, c, prime)


def _local_orders(params: GroupParams, prime: int | None) -> tuple[int, int, bool]:
    """(order of B-part, n-part, non-split flag) for T or T_p."""
    if prime is None:
        return params.n2, params.n, not params.beta_even
    pm = prime ** valuation(params.n, prime)
    return pm * pm, pm, prime == 2 and not params.beta_even


def is_valid_t_automorphism(params: GroupParams, t: TAutomorphism) -> bool:
    """Relations of T (or T_p) hold for the images and the images generate the whole group."""
    b_ord, c_ord, twisted = _local_orders(params, t.prime)
    u, v = t.img_b_t, t.img_c_t
    if not (u.is_torsion and v.is_torsion):
        return False
    one = identity(params)
    if power(params, u, b_ord) != one:
        return False
    c_pow = power(params, v, c_ord)
    if c_pow != (power(params, u, b_ord // 2) if twisted else one):
        return False
    if conjugate(params, u, inverse(params, v)) != power(params, u, params.beta):
        return False
    return len(closure(params, [u, v])) == c_ord * b_ord


def restrict(params: GroupParams, f: Automorphism, prime: int | None = None) -> TAutomorphism:
    b, c = t_generators(params, prime)
    return TAutomorphism(apply(params, f, b), apply(params, f, c), prime)


@dataclass(frozen=True)
class RestrictionReport:
    kernel: tuple[Automorphism, ...]
    kernel_size: int
    image_size: int
    aut_order: int


def restriction_kernel(params: GroupParams, cap: int = DEFAULT_CAP) -> RestrictionReport:
    group = aut_group(params, cap)
    ident = t_identity(params)
    images = set()
    kernel = []
    for f in group:
        r = restrict(params, f)
        images.add(r)
        if r == ident:
            kernel.append(f)
    return RestrictionReport(tuple(kernel), len(kernel), len(images), len(group))


def q8_kernel_generators(params: GroupParams) -> tuple[Automorphism, Automorphism]:
    """Delta2 and Delta1 followed by conjugation by BC."""
    bc = multiply(params, gen_b(params), gen_c(params))
    return delta2(params), compose(params, delta1(params), inner(params, bc))


# ---------- Bidwell-Curran generators (beta even, p odd) ----------

@dataclass(frozen=True)
class BCData:
    p: int
    m: int
    r: int
    s: int
    i: int
    a: TAutomorphism
    b: TAutomorphism
    c: TAutomorphism
    d: TAutomorphism

    @property
    def a_exponent(self) -> int:
        return self.p ** (self.m - 1) * (self.p - 1) // 2


def bc_generators(params: GroupParams, p: int) -> BCData:
    if not params.beta_even:
        raise BetaNotEven(f"beta = {params.beta} is odd")
    if p == 2 or not is_prime(p) or params.n % p:
        raise PrimeNotDividing(f"{p} is not an odd prime dividing {params.n}")
    m = valuation(params.n, p)
    pm = p**m
    r = (1 - params.beta) // pm
    s = pow(r, -1, pm)
    i = primitive_root(pm)
    b_p, c_p = sylow_generators(params, p)
    x, y = b_p, power(params, c_p, s)

    def make(img_x: Element, img_y: Element) -> TAutomorphism:
        # C_p = y^r because r s = 1 mod p^m and C_p has order p^m
        return TAutomorphism(img_x, power(params, img_y, r), p)

    return BCData(
        p, m, r, s, i,
        a=make(power(params, x, i), y),
        b=make(x, multiply(params, power(params, x, pm), y)),
        c=make(multiply(params, x, y), y),
        d=make(x, power(params, y, 1 + pm)),
    )


def t_closure(params: GroupParams, gens, cap: int = DEFAULT_CAP) -> set[TAutomorphism]:
    gens = list(gens)
    start = t_identity(params, gens[0].prime)
    seen = {start}
    frontier = deque([start])
    while frontier:
        cur = frontier.popleft()
        for g in gens:
            nxt = t_compose(params, cur, g)
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > cap:
                    raise CapExceeded(len(seen), cap)
                frontier.append(nxt)
    return seen


@lru_cache(maxsize=16)
def extension_subgroup(params: GroupParams, p: int) -> frozenset[TAutomorphism]:
    """The automorphisms of T_p that extend to G: generated by b_p, c_p and a_p^(p^(m-1)(p-1)/2)."""
    bc = bc_generators(params, p)
    a_pow = bc.a
    for _ in range(bc.a_exponent - 1):
        a_pow = t_compose(params, a_pow, bc.a)
    return frozenset(t_closure(params, [bc.b, bc.c, a_pow]))


def extends_to_g(params: GroupParams, t: TAutomorphism, p: int) -> bool:
    return t in extension_subgroup(params, p)


def local_restriction_image(params: GroupParams, p: int, cap: int = DEFAULT_CAP) -> set[TAutomorphism]:
    return {restrict(params, f, p) for f in aut_group(params, cap)}
