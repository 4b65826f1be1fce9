"""Verification suites: each check compares an expected value with a computed one."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass

from . import oracle
from .aut import (
    Automorphism,
    _Evaluator,
    aut_group,
    bc_generators,
    decompose,
    delta1,
    extension_subgroup,
    has_standard_shape,
    inner,
    local_restriction_image,
    matrix_of,
    recompose,
    restrict,
    restriction_kernel,
    standard_generators,
    t_compose,
    t_identity,
)
from .core import (
    Element,
    GroupParams,
    commutator,
    conjugate,
    gen_a,
    gen_b,
    gen_c,
    identity,
    make_params,
    multiply,
    power,
)
from .iso import iso_decision, local_torsion_order, sylow_local_iso
from .numtheory import factorize, totient
from .structure import (
    center_generators,
    check_heisenberg_iso,
    heisenberg_map,
    lower_central_series,
    quotient_center,
    quotient_index,
    subgroup_indices,
)
from .torsion import torsion_structure

SUITES = ("torsion", "center", "aut", "lambda", "iso", "lgroup")
FULL_PAIR_LIMIT = 512
SAMPLED_PAIRS = 20000
AUT_CAP = 10**5
QUOTIENT_CAP = 2 * 10**4


@dataclass(frozen=True)
class Verdict:
    locus: str
    expected: str
    computed: str
    passed: bool

    def as_dict(self) -> dict:
        return {"locus": self.locus, "expected": self.expected, "computed": self.computed, "pass": self.passed}


class SuiteSkipped(Exception):
    """The suite does not apply to this parameter or exceeds the size limits."""


def _v(locus: str, expected, computed) -> Verdict:
    return Verdict(locus, str(expected), str(computed), expected == computed)


def collection_agreement(params: GroupParams, pairs: int | None = None, seed: int = 0) -> tuple[int, int]:
    """Compare torsion products with the oracle table; returns (checked, mismatches)."""
    table = oracle.build_torsion_model(params.beta)
    elems = [Element(params.beta, 0, c, b) for (c, b) in table.labels]
    size = len(elems)
    if pairs is None and size <= FULL_PAIR_LIMIT:
        index_pairs = ((i, j) for i in range(size) for j in range(size))
        count = size * size
    else:
        rng = random.Random(seed)
        count = pairs or SAMPLED_PAIRS
        index_pairs = ((rng.randrange(size), rng.randrange(size)) for _ in range(count))
    bad = 0
    for i, j in index_pairs:
        prod = multiply(params, elems[i], elems[j])
        if table.labels[table.mul(i, j)] != (prod.c, prod.b):
            bad += 1
    return count, bad


def torsion_suite(params: GroupParams) -> list[Verdict]:
    n = params.n
    report = torsion_structure(params)
    out = [_v("torsion order |beta-1|^3", n**3, report.order)]
    if n**3 <= oracle.DEFAULT_CAP:
        out.append(_v("torsion order counted by the oracle", n**3, len(oracle.build_torsion_model(params.beta))))
        checked, bad = collection_agreement(params)
        out.append(_v(f"collection agrees with oracle on {checked} products", 0, bad))
    out.append(_v("torsion splits iff v2(beta-1) != 1", params.v2 != 1, report.is_split))
    q8 = any(s.kind.startswith("quaternion") for s in report.sylow)
    out.append(_v("Sylow 2-subgroup is Q8 iff v2(beta-1) = 1", params.v2 == 1, q8))
    one = identity(params)
    out.append(_v("B^((beta-1)^2) = 1", one, power(params, gen_b(params), n * n)))
    c_n = power(params, gen_c(params), n)
    expected = one if params.beta_even else power(params, gen_b(params), n * n // 2)
    out.append(_v("C^|beta-1| is 1 (even) or B^((beta-1)^2/2) (odd)", expected, c_n))
    return out


def center_suite(params: GroupParams) -> list[Verdict]:
    e = params.a_central_exp
    if e * params.n**3 > QUOTIENT_CAP:
        raise SuiteSkipped(f"finite quotient of order {e * params.n**3} exceeds {QUOTIENT_CAP}")
    table = oracle.build_finite_quotient(params.beta)
    computed = {quotient_index(table, params, g) for g in quotient_center(params)}
    expected = subgroup_indices(params, table, center_generators(params))
    out = [_v("center of G/<A^e> is generated by the central generators", sorted(expected), sorted(computed))]
    out.append(_v("center of G/<A^e> has order e", e, len(computed)))
    images = {heisenberg_map(params, Element(params.beta, *lab)) for lab in table.labels}
    out.append(_v("Heisenberg map image size |beta-1|^3", params.n**3, len(images)))
    out.append(_v("Heisenberg map is a homomorphism with kernel the center", True, check_heisenberg_iso(params)))
    lcs = lower_central_series(params)
    out.append(_v("nilpotency class 3", 3, lcs["class"]))
    return out


def _check_aut_size(params: GroupParams) -> None:
    if 2 * params.n**4 > AUT_CAP:
        raise SuiteSkipped(f"|Aut(G)| = {2 * params.n**4} exceeds {AUT_CAP}")


def aut_suite(params: GroupParams) -> list[Verdict]:
    _check_aut_size(params)
    group = aut_group(params)
    n = params.n
    out = [_v("|Aut(G)| = 2|beta-1|^4", 2 * n**4, len(group))]
    bad = sum(1 for f in group if recompose(params, decompose(params, f, check=False)) != f)
    out.append(_v("decompose then recompose is the identity", 0, bad))
    mats = {f: matrix_of(params, f) for f in group}
    out.append(_v("matrix embedding is injective", len(group), len(set(mats.values()))))
    evaluators = [(_Evaluator(params, g), mats[g]) for g in standard_generators(params)]
    hom_bad = 0
    for f in group:
        for ev, mg in evaluators:
            if mats[Automorphism(ev(f.img_a), ev(f.img_b))] != mats[f] @ mg:
                hom_bad += 1
    out.append(_v("matrix embedding is a homomorphism", 0, hom_bad))
    if n > 2:
        shaped = sum(1 for m in mats.values() if has_standard_shape(m))
        out.append(_v("every image has the standard 4x4 shape", len(group), shaped))
    return out


def lambda_suite(params: GroupParams) -> list[Verdict]:
    _check_aut_size(params)
    report = restriction_kernel(params)
    n = params.n
    out = []
    if n == 2:
        out.append(_v("|ker Lambda| = 4 when T = Q8", 4, report.kernel_size))
        out.append(_v("|Im Lambda| = 8 when T = Q8", 8, report.image_size))
        out.append(_v("ker Lambda is elementary abelian",
                      True, all(_is_involution_or_one(params, f) for f in report.kernel)))
        return out
    out.append(_v("|ker Lambda| = |beta-1|", n, report.kernel_size))
    out.append(_v("|Im Lambda| = 2|beta-1|^3", 2 * n**3, report.image_size))
    if params.beta_even:
        for p in sorted(factorize(n)):
            out.extend(_bc_verdicts(params, p))
    return out


def _is_involution_or_one(params: GroupParams, f: Automorphism) -> bool:
    ev = _Evaluator(params, f)
    return (ev(f.img_a), ev(f.img_b)) == (gen_a(params), gen_b(params))


def _bc_verdicts(params: GroupParams, p: int) -> list[Verdict]:
    bc = bc_generators(params, p)
    ext = extension_subgroup(params, p)
    image = local_restriction_image(params, p)
    pm = p**bc.m
    out = [
        _v(f"p={p}: extending subgroup has order 2p^(3m)", 2 * pm**3, len(ext)),
        _v(f"p={p}: extending subgroup equals the image of Lambda_p", True, set(ext) == image),
        _v(f"p={p}: c_p is the restriction of conjugation by A^-s", bc.c,
           restrict(params, inner(params, power(params, gen_a(params), -bc.s)), p)),
        _v(f"p={p}: b_p is the restriction of conjugation by B^-1", bc.b,
           restrict(params, inner(params, power(params, gen_b(params), -1)), p)),
    ]
    a_pow = t_identity(params, p)
    for _ in range(totient(pm * pm) // 2):
        a_pow = t_compose(params, a_pow, bc.a)
    out.append(_v(f"p={p}: Delta1 restricts to a_p^(phi(p^2m)/2) b_p",
                  t_compose(params, a_pow, bc.b), restrict(params, delta1(params), p)))
    return out


def iso_suite(params: GroupParams) -> list[Verdict]:
    beta = params.beta
    other = 2 - beta
    res = iso_decision(beta, other)
    out = [_v(f"G({beta}) and G({other}) are isomorphic with a verified witness", True,
              res.isomorphic and res.witness is not None and res.witness.verified)]
    out.append(_v("isomorphism decision is symmetric", True, bool(iso_decision(other, beta))))
    gamma = beta + 1 if beta + 1 not in (0, 1, 2, other) else beta + 3
    if gamma in (0, 1, 2):
        gamma = beta - 2
    out.append(_v(f"G({beta}) and G({gamma}) are not isomorphic", False, bool(iso_decision(beta, gamma))))
    n = params.n
    k = next(k for k in range(2, 2 * n + 3) if math.gcd(k, n) == 1)
    gamma = 1 + k * (beta - 1)
    for p in sorted(factorize(n)):
        res = sylow_local_iso(beta, gamma, p)
        out.append(_v(f"p={p}: G({beta})_p and G({gamma})_p are isomorphic via verified maps", True,
                      res.isomorphic and res.verified))
        out.append(_v(f"p={p}: local torsion orders agree", local_torsion_order(beta, p),
                      local_torsion_order(gamma, p)))
    return out


def lgroup_suite(params: GroupParams) -> list[Verdict]:
    from . import lgroup as lg
    from .errors import GcdCondition

    try:
        lg.l_params(params.beta)
    except GcdCondition as exc:
        raise SuiteSkipped(str(exc)) from exc
    n = params.n
    if totient(n) * n**5 > AUT_CAP:
        raise SuiteSkipped(f"|Aut(L)| = {totient(n) * n**5} exceeds {AUT_CAP}")
    report = lg.l_structure_report(params.beta)
    out = [
        _v("|L| = |beta-1|^4", n**4, len(lg.l_enumerate(params))),
        _v("|Z(L)| = |beta-1|", n, report.center_order),
        _v("Z(L) = <b^(beta-1)>", lg.l_closure(params, [lg.l_power(params, gen_b(params), params.beta - 1)]),
           lg.l_center(params)),
        _v("every listed generator of Aut(L) is valid", True,
           all(lg.l_is_valid(params, f.img_a, f.img_b) for f in lg.l_generators(params))),
        _v("|Aut(L)| = phi(|beta-1|) |beta-1|^5", totient(n) * n**5, report.aut_order),
        _v("|Inn(L)| = |beta-1|^3", n**3, report.inner_order),
        _v("|ker Omega| = |beta-1|^4", n**4, report.kernel_order),
        _v("|Aut(L) / ker Omega| = |Hol(Z/n)|", totient(n) * n, report.quotient_order),
    ]
    v = lg.unipotent_v(n)
    conj_ok = all(
        lg.mat2_mul(lg.mat2_mul(lg.mat2_inverse(lg.diagonal_u(n, i), n), v, n), lg.diagonal_u(n, i), n)
        == lg.mat2_pow(v, i * i, n)
        for i in range(1, n) if math.gcd(i, n) == 1
    )
    out.append(_v("V^(U_i) = V^(i^2) for every unit i", True, conj_ok))
    if 2 * n**4 <= AUT_CAP:
        taus = {lg.tau_embed(params, f) for f in aut_group(params)}
        out.append(_v("tau is injective on Aut(G)", 2 * n**4, len(taus)))
    out.append(_v("<A^(beta-1)> is characteristic", True, lg.k_characteristic_check(params)))
    ab = lg.l_multiply(params, gen_a(params), gen_b(params))
    out.append(_v("(ab)^(beta-1) = b^(beta-1) in L", lg.l_power(params, gen_b(params), params.beta - 1),
                  lg.l_power(params, ab, params.beta - 1)))
    return out


SUITE_FUNCTIONS = {
    "torsion": torsion_suite,
    "center": center_suite,
    "aut": aut_suite,
    "lambda": lambda_suite,
    "iso": iso_suite,
    "lgroup": lgroup_suite,
}


def run_suite(beta: int, suite: str) -> tuple[list[Verdict], dict[str, str]]:
    """Run one suite or all of them; returns verdicts and a map of skipped suites to reasons.

    A suite requested by name that does not apply raises SuiteSkipped; under "all" it is
    recorded as skipped instead.
    """
    params = make_params(beta)
    names = SUITES if suite == "all" else (suite,)
    verdicts: list[Verdict] = []
    skipped: dict[str, str] = {}
    for name in names:
        try:
            verdicts.extend(SUITE_FUNCTIONS[name](params))
        except SuiteSkipped as exc:
            if suite != "all":
                raise
            skipped[name] = str(exc)
    return verdicts, skipped


def relation_identities(params: GroupParams) -> dict[str, bool]:
    """The defining relations and the basic commutation rules as element equalities."""
    a, b, c = gen_a(params), gen_b(params), gen_c(params)
    return {
        "A^[A,B] = A": conjugate(params, a, commutator(params, a, b)) == a,
        "B^[B,A] = B^beta": conjugate(params, b, commutator(params, b, a)) == power(params, b, params.beta),
        "A^C = A": conjugate(params, a, c) == a,
        "B^A = B C^-1": conjugate(params, b, a) == multiply(params, b, power(params, c, -1)),
        "C^B = C B^(beta-1)": conjugate(params, c, b) == multiply(params, c, power(params, b, params.beta - 1)),
    }


def con_exponent(params: GroupParams, f: int) -> int:
    """(beta - 1)(beta + 2 beta^2 + ... + (f-1) beta^(f-1)) modulo n^2, summed term by term."""
    n2 = params.n2
    total, bk = 0, 1
    for k in range(1, f):
        bk = bk * params.beta % n2
        total = (total + k * bk) % n2
    return (params.beta - 1) * total % n2


def con_identity(params: GroupParams, f: int) -> bool:
    """A^(B^f) = A B^con_exponent(f) C^f for f >= 1."""
    a, b, c = gen_a(params), gen_b(params), gen_c(params)
    lhs = conjugate(params, a, power(params, b, f))
    rhs = multiply(params, multiply(params, a, power(params, b, con_exponent(params, f))), power(params, c, f))
    return lhs == rhs


def step4_identity(params: GroupParams, f: int) -> bool:
    """(C^-f)^(B^f) = C^-f B^(f(1 - beta^f))."""
    b, c = gen_b(params), gen_c(params)
    c_f = power(params, c, -f)
    lhs = conjugate(params, c_f, power(params, b, f))
    exp = f * (1 - pow(params.beta, f, params.n2)) % params.n2
    return lhs == multiply(params, c_f, power(params, b, exp))
