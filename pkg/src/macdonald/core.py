"""Normal-form arithmetic in the Macdonald group G(beta) = <A, B | A^[A,B] = A, B^[B,A] = B^beta>.

Every element is stored as A^a C^c B^b with C = [A, B], a any integer,
0 <= c < |beta - 1| and 0 <= b < (beta - 1)^2.  Conventions: x^g = g^-1 x g and
[x, y] = x^-1 y^-1 x y.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import DegenerateBeta, ElementSyntaxError, ParamsMismatch, UnsupportedBeta
from .numtheory import factorize, valuation

INFINITE = math.inf


@dataclass(frozen=True)
class GroupParams:
    beta: int
    n: int
    n2: int
    beta_mod: int
    beta0: int
    beta_even: bool
    c_order: int
    half: int | None
    v2: int
    a_central_exp: int

    @property
    def d(self) -> int:
        """beta - 1 reduced modulo n2."""
        return (self.beta - 1) % self.n2

    @property
    def torsion_order(self) -> int:
        return self.n**3

    @property
    def torsion_exponent(self) -> int:
        return math.lcm(self.n2, self.c_order)


@lru_cache(maxsize=256)
def make_params(beta: int) -> GroupParams:
    beta = int(beta)
    if beta in (0, 2):
        raise DegenerateBeta(f"G({beta}) is infinite cyclic")
    if beta == 1:
        raise UnsupportedBeta("G(1) is the integral Heisenberg group")
    n = abs(beta - 1)
    n2 = n * n
    even = beta % 2 == 0
    return GroupParams(
        beta=beta,
        n=n,
        n2=n2,
        beta_mod=beta % n2,
        beta0=(2 - beta) % n2,
        beta_even=even,
        c_order=n if even else 2 * n,
        half=None if even else n2 // 2,
        v2=valuation(n, 2),
        a_central_exp=n if even else 2 * n,
    )


@dataclass(frozen=True, order=True)
class Element:
    beta: int
    a: int
    c: int
    b: int

    @property
    def params(self) -> GroupParams:
        return make_params(self.beta)

    @property
    def is_torsion(self) -> bool:
        return self.a == 0

    def __mul__(self, other: Element) -> Element:
        return multiply(self.params, self, other)

    def __pow__(self, k: int) -> Element:
        return power(self.params, self, k)

    def __invert__(self) -> Element:
        return inverse(self.params, self)

    def __str__(self) -> str:
        return format_element(self.params, self)


def normalize(params: GroupParams, a_raw: int, c_raw: int, b_raw: int) -> Element:
    q, c = divmod(c_raw, params.n)
    b = b_raw
    if params.half is not None and q % 2:
        # C^n is the central involution B^(n2/2)
        b += params.half
    return Element(params.beta, a_raw, c, b % params.n2)


def identity(params: GroupParams) -> Element:
    return Element(params.beta, 0, 0, 0)


def gen_a(params: GroupParams) -> Element:
    return Element(params.beta, 1, 0, 0)


def gen_b(params: GroupParams) -> Element:
    return Element(params.beta, 0, 0, 1 % params.n2)


def gen_c(params: GroupParams) -> Element:
    return Element(params.beta, 0, 1 % params.n, 0)


def element(params: GroupParams, a: int = 0, c: int = 0, b: int = 0) -> Element:
    return normalize(params, a, c, b)


def _check(params: GroupParams, *xs: Element) -> None:
    for x in xs:
        if x.beta != params.beta:
            raise ParamsMismatch(f"element of G({x.beta}) used with G({params.beta})")


def multiply(params: GroupParams, x: Element, y: Element) -> Element:
    _check(params, x, y)
    n2, d = params.n2, params.d
    b1, a2, c2 = x.b, y.a, y.c
    # B^b1 A^a2 = A^a2 C^(-a2*b1) B^t ; B^t C^c2 = C^c2 B^(t*beta0^c2)
    t = (b1 + a2 * d * (b1 * (b1 + 1) // 2)) % n2
    return normalize(params, x.a + a2, x.c - a2 * b1 + c2, t * (1 - c2 * d) + y.b)


def inverse(params: GroupParams, x: Element) -> Element:
    _check(params, x)
    d = params.d
    # (C^c B^b)^-1 = B^-b C^-c = C^-c B^(-b*beta^c)
    tors = normalize(params, 0, -x.c, -x.b * (1 + x.c * d))
    if x.a == 0:
        return tors
    return multiply(params, tors, Element(params.beta, -x.a, 0, 0))


def power(params: GroupParams, x: Element, k: int) -> Element:
    _check(params, x)
    if k < 0:
        x, k = inverse(params, x), -k
    result = identity(params)
    while k:
        if k & 1:
            result = multiply(params, result, x)
        k >>= 1
        if k:
            x = multiply(params, x, x)
    return result


def conjugate(params: GroupParams, x: Element, g: Element) -> Element:
    """x^g = g^-1 x g."""
    return multiply(params, multiply(params, inverse(params, g), x), g)


def commutator(params: GroupParams, x: Element, y: Element) -> Element:
    """[x, y] = x^-1 y^-1 x y."""
    xy = multiply(params, x, y)
    yx = multiply(params, y, x)
    return multiply(params, inverse(params, yx), xy)


def element_order(params: GroupParams, x: Element) -> int | float:
    """Order of x; INFINITE for every element outside the torsion subgroup."""
    _check(params, x)
    if x.a != 0:
        return INFINITE
    primes = set(factorize(params.n))
    order = params.torsion_exponent
    one = identity(params)
    for p in primes:
        while order % p == 0 and power(params, x, order // p) == one:
            order //= p
    return order


_TERM = re.compile(r"([ABC])(?:\^(-?[0-9]+))?")
_SEP = re.compile(r"\s*\*\s*|\s+")


def parse_word(text: str) -> list[tuple[str, int]]:
    """Tokenize an element expression into (letter, exponent) pairs."""
    word: list[tuple[str, int]] = []
    stripped = text.strip()
    if stripped in ("", "1"):
        return word
    pos = len(text) - len(text.lstrip())
    end = len(text.rstrip())
    while True:
        m = _TERM.match(text, pos)
        if not m or m.end() > end:
            raise ElementSyntaxError("expected A, B or C with optional ^exponent", pos)
        exp = int(m.group(2)) if m.group(2) is not None else 1
        if exp:
            word.append((m.group(1), exp))
        pos = m.end()
        if pos == end:
            return word
        sep = _SEP.match(text, pos)
        if not sep or sep.end() == pos:
            raise ElementSyntaxError("expected '*' or whitespace", pos)
        pos = sep.end()


def evaluate_word(params: GroupParams, word: list[tuple[str, int]]) -> Element:
    gens = {"A": gen_a(params), "B": gen_b(params), "C": gen_c(params)}
    result = identity(params)
    for letter, exp in word:
        result = multiply(params, result, power(params, gens[letter], exp))
    return result


def parse_element(params: GroupParams, text: str) -> Element:
    return evaluate_word(params, parse_word(text))


def format_element(params: GroupParams, x: Element) -> str:
    parts = []
    for letter, exp in (("A", x.a), ("C", x.c), ("B", x.b)):
        if exp == 0:
            continue
        parts.append(letter if exp == 1 else f"{letter}^{exp}")
    return "*".join(parts) or "1"
