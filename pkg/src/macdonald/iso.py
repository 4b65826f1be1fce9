"""Isomorphisms between groups of the family, globally and after localizing at a prime.

G(beta) and G(gamma) are isomorphic exactly when gamma is beta or 2 - beta.  Localized
at p, G(beta)_p = <A> x| T_p depends only on v_p(beta - 1), and an explicit pair of
mutually inverse maps is produced from a solution of a linear congruence.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .core import (
    Element,
    GroupParams,
    commutator,
    conjugate,
    gen_a,
    gen_b,
    inverse,
    make_params,
    multiply,
    power,
)
from .numtheory import is_prime, valuation
from .torsion import closure, project_element, sylow_generators

CLOSURE_CHECK_LIMIT = 10**4


def map_element(source: GroupParams, target: GroupParams, img_a: Element, img_b: Element, x: Element) -> Element:
    """Image of x = A^a C^c B^b under the homomorphism A -> img_a, B -> img_b."""
    img_c = commutator(target, img_a, img_b)
    out = multiply(target, power(target, img_a, x.a), power(target, img_c, x.c))
    return multiply(target, out, power(target, img_b, x.b))


def relations_hold(target: GroupParams, beta: int, u: Element, v: Element, p: int | None = None) -> bool:
    """u^[u,v] = u and v^[v,u] = v^beta in the target group, or in its p-localization."""

    def proj(x: Element) -> Element:
        return x if p is None else project_element(target, x, p)

    first = proj(conjugate(target, u, commutator(target, u, v)))
    second = proj(conjugate(target, v, commutator(target, v, u)))
    return first == proj(u) and second == proj(power(target, v, beta))


@dataclass(frozen=True)
class IsoWitness:
    beta: int
    gamma: int
    forward_a: Element  # image of A in G(gamma)
    forward_b: Element
    backward_x: Element  # image of X in G(beta)
    backward_y: Element
    verified: bool


@dataclass(frozen=True)
class IsoResult:
    isomorphic: bool
    witness: IsoWitness | None
    reason: str

    def __bool__(self) -> bool:
        return self.isomorphic


def _verify_witness(g: GroupParams, h: GroupParams, w: IsoWitness) -> bool:
    if not relations_hold(h, g.beta, w.forward_a, w.forward_b):
        return False
    if not relations_hold(g, h.beta, w.backward_x, w.backward_y):
        return False
    back = (w.backward_x, w.backward_y)
    fwd = (w.forward_a, w.forward_b)
    a_back = map_element(h, g, *back, w.forward_a)
    b_back = map_element(h, g, *back, w.forward_b)
    x_fwd = map_element(g, h, *fwd, w.backward_x)
    y_fwd = map_element(g, h, *fwd, w.backward_y)
    return (a_back, b_back) == (gen_a(g), gen_b(g)) and (x_fwd, y_fwd) == (gen_a(h), gen_b(h))


def iso_decision(beta: int, gamma: int) -> IsoResult:
    g, h = make_params(beta), make_params(gamma)
    if gamma == beta:
        w = IsoWitness(beta, gamma, gen_a(h), gen_b(h), gen_a(g), gen_b(g), True)
        return IsoResult(True, w, "identical parameters")
    if gamma != 2 - beta:
        return IsoResult(False, None, f"torsion orders {g.torsion_order} and {h.torsion_order}"
                         if g.n != h.n else "gamma is neither beta nor 2 - beta")
    w = IsoWitness(beta, gamma, inverse(h, gen_a(h)), gen_b(h), inverse(g, gen_a(g)), gen_b(g), False)
    w = IsoWitness(**{**w.__dict__, "verified": _verify_witness(g, h, w)})
    return IsoResult(w.verified, w, "A -> X^-1, B -> Y")


@dataclass(frozen=True)
class SylowIsoResult:
    isomorphic: bool
    p: int
    m: int
    i: int | None = None
    j: int | None = None
    forward: tuple[Element, Element] | None = None  # images of X, Y in G(beta)_p
    backward: tuple[Element, Element] | None = None  # images of A, B in G(gamma)_p
    verified: bool = False
    reason: str = ""

    def __bool__(self) -> bool:
        return self.isomorphic


def _generates_local(params: GroupParams, p: int, u: Element, v: Element, pm: int) -> bool:
    """Do the p-projections of u, v generate G_p?  Onto modulo [G_p, G_p] suffices."""
    b_img = project_element(params, v, p)
    if u.a != 1 and u.a != -1:
        return False
    if pm**3 <= CLOSURE_CHECK_LIMIT:
        c_img = project_element(params, commutator(params, u, v), p)
        return len(closure(params, [b_img, c_img])) == pm**3
    return math.gcd(b_img.b, p) == 1


def sylow_local_iso(beta: int, gamma: int, p: int) -> SylowIsoResult:
    """Compare G(beta)_p and G(gamma)_p and, when they agree, build X -> A, Y -> B_p^i and its inverse."""
    g, h = make_params(beta), make_params(gamma)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    m, m2 = valuation(g.n, p), valuation(h.n, p)
    if m != m2:
        return SylowIsoResult(False, p, m, reason=f"v_{p}(beta-1) = {m} but v_{p}(gamma-1) = {m2}")
    if m == 0:
        return SylowIsoResult(False, p, 0, reason=f"{p} divides neither beta-1 nor gamma-1")
    pm = p**m
    ell, r = (beta - 1) // pm, (gamma - 1) // pm
    i = (r * pow(ell, -1, pm)) % pm or pm
    if pow(beta, i, pm * pm) != gamma % (pm * pm):
        return SylowIsoResult(False, p, m, i, reason="beta^i is not gamma modulo p^(2m)")
    forward, backward, ok = local_maps(beta, gamma, p, i)
    return SylowIsoResult(ok, p, m, i, pow(i, -1, pm * pm), forward, backward, ok,
                          "mutually inverse maps verified" if ok else "verification failed")


def local_maps(beta: int, gamma: int, p: int, i: int):
    """X -> A, Y -> B_p^i and A -> X, B -> Y_p^j (ij = 1 mod p^2m), with a verification flag."""
    g, h = make_params(beta), make_params(gamma)
    pm = p ** valuation(g.n, p)
    j = pow(i, -1, pm * pm)
    b_p, _ = sylow_generators(g, p)
    y_p, _ = sylow_generators(h, p)
    forward = (gen_a(g), power(g, b_p, i))
    backward = (gen_a(h), power(h, y_p, j))
    ok = relations_hold(g, gamma, *forward, p) and relations_hold(h, beta, *backward, p)
    ok = ok and _generates_local(g, p, *forward, pm) and _generates_local(h, p, *backward, pm)

    def there_and_back(src, dst, to, fro, x):
        mid = project_element(dst, map_element(src, dst, *to, x), p)
        return project_element(src, map_element(dst, src, *fro, mid), p)

    ok = ok and all(there_and_back(h, g, forward, backward, x) == project_element(h, x, p)
                    for x in (gen_a(h), y_p))
    ok = ok and all(there_and_back(g, h, backward, forward, x) == project_element(g, x, p)
                    for x in (gen_a(g), b_p))
    return forward, backward, ok


def local_torsion_order(beta: int, p: int) -> int:
    """|T(beta)_p| = p^(3 v_p(beta - 1))."""
    return p ** (3 * valuation(make_params(beta).n, p))
