"""The torsion subgroup T = <B, C> and its Sylow decomposition."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .core import Element, GroupParams, gen_b, gen_c, identity, multiply, power
from .errors import CapExceeded, NotTorsion, PrimeNotDividing
from .numtheory import crt_idempotent, factorize, valuation

DEFAULT_CAP = 10**6


@dataclass(frozen=True)
class SylowInfo:
    p: int
    m: int
    order: int
    kind: str  # "split-metacyclic" or "quaternion-Q8-at-2"


@dataclass(frozen=True)
class TorsionStructureReport:
    order: int
    is_split: bool
    kernel_order: int
    quotient_order: int
    sylow: tuple[SylowInfo, ...]
    split_witness: Element | None = field(default=None)

    @property
    def extension(self) -> str:
        return f"C_{self.kernel_order} by C_{self.quotient_order}"


def enumerate_torsion(params: GroupParams, cap: int = DEFAULT_CAP) -> list[Element]:
    """All elements C^c B^b of T in lexicographic (c, b) order."""
    if params.torsion_order > cap:
        raise CapExceeded(params.torsion_order, cap)
    return [Element(params.beta, 0, c, b) for c in range(params.n) for b in range(params.n2)]


def closure(params: GroupParams, gens, cap: int = DEFAULT_CAP) -> set[Element]:
    """Subgroup generated by gens (elements of finite order only)."""
    one = identity(params)
    seen = {one}
    frontier = deque([one])
    gens = list(gens)
    while frontier:
        cur = frontier.popleft()
        for g in gens:
            nxt = multiply(params, cur, g)
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > cap:
                    raise CapExceeded(len(seen), cap)
                frontier.append(nxt)
    return seen


def split_witness(params: GroupParams) -> Element | None:
    """Generator of a complement to <B> in T, or None when T does not split."""
    if params.beta_even:
        return gen_c(params)
    if params.v2 == 1:
        return None
    return multiply(params, power(params, gen_b(params), (params.beta - 1) // 2), gen_c(params))


def torsion_structure(params: GroupParams) -> TorsionStructureReport:
    sylow = []
    for p, m in sorted(factorize(params.n).items()):
        kind = "quaternion-Q8-at-2" if p == 2 and m == 1 else "split-metacyclic"
        sylow.append(SylowInfo(p, m, p ** (3 * m), kind))
    return TorsionStructureReport(
        order=params.n**3,
        is_split=params.v2 != 1,
        kernel_order=params.n2,
        quotient_order=params.n,
        sylow=tuple(sylow),
        split_witness=split_witness(params),
    )


def sylow_part(params: GroupParams, p: int) -> int:
    """p-part of the torsion exponent lcm(n^2, order of C)."""
    exp = params.torsion_exponent
    return p ** valuation(exp, p)


def projection_exponent(params: GroupParams, p: int) -> int:
    if params.n % p:
        raise PrimeNotDividing(f"{p} does not divide {params.n}")
    return crt_idempotent(sylow_part(params, p), params.torsion_exponent)


def sylow_projection(params: GroupParams, x: Element, p: int) -> Element:
    if not x.is_torsion:
        raise NotTorsion(f"{x} has infinite order")
    return power(params, x, projection_exponent(params, p))


def sylow_generators(params: GroupParams, p: int) -> tuple[Element, Element]:
    return (sylow_projection(params, gen_b(params), p), sylow_projection(params, gen_c(params), p))


def project_element(params: GroupParams, x: Element, p: int) -> Element:
    """Image of A^a t under G -> G_p = <A> x| T_p (kills the other Sylow factors)."""
    tors = Element(params.beta, 0, x.c, x.b)
    return multiply(params, Element(params.beta, x.a, 0, 0), sylow_projection(params, tors, p))
