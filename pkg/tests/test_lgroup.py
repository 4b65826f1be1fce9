import math

import pytest

from macdonald import lgroup as lg
from macdonald.aut import aut_group, standard_generators
from macdonald.core import Element, gen_a, gen_b, gen_c, make_params
from macdonald.errors import GcdCondition, InvalidAutomorphism, NotAUnit


@pytest.fixture(scope="module")
def p6():
    return lg.l_params(6)


def test_gcd_guard():
    with pytest.raises(GcdCondition):
        lg.l_params(4)
    with pytest.raises(GcdCondition):
        lg.l_params(7)
    assert lg.l_params(8).n == 7
    assert lg.l_params(-4).n == 5


def test_order_and_relations(p6):
    elems = lg.l_enumerate(p6)
    assert len(set(elems)) == 625
    a, b, c = gen_a(p6), gen_b(p6), gen_c(p6)
    assert lg.l_conjugate(p6, b, a) == lg.l_multiply(p6, b, lg.l_inverse(p6, c))
    assert lg.l_conjugate(p6, c, a) == c
    assert lg.l_power(p6, a, 5) == lg.l_identity(p6)
    assert lg.l_order(p6, b) == 25 and lg.l_order(p6, c) == 5 and lg.l_order(p6, a) == 5


def test_arithmetic_agrees_with_projection(p6):
    g = make_params(6)
    from macdonald.core import multiply

    xs = [Element(6, a, c, b) for a in (-7, -1, 0, 3, 11) for c in range(5) for b in range(0, 25, 4)]
    for x in xs[::2]:
        for y in xs[::3]:
            assert lg.l_reduce(p6, multiply(g, x, y)) == lg.l_multiply(p6, lg.l_reduce(p6, x), lg.l_reduce(p6, y))


def test_center_and_second_center(p6):
    assert lg.l_center(p6) == lg.l_closure(p6, [lg.l_power(p6, gen_b(p6), 5)])
    assert len(lg.l_center(p6)) == 5
    assert lg.l_second_center(p6) == lg.l_closure(p6, [lg.l_power(p6, gen_b(p6), 5), gen_c(p6)])


def test_psi_identity(p6):
    ab = lg.l_multiply(p6, gen_a(p6), gen_b(p6))
    assert lg.l_power(p6, ab, 5) == lg.l_power(p6, gen_b(p6), 5)


def test_generators(p6):
    gens = lg.l_generators(p6)
    assert len(gens) == 2 + 4 + 3
    assert all(lg.l_is_valid(p6, f.img_a, f.img_b) for f in gens)
    assert lg.mu(p6, 2).img_b == Element(6, 0, 0, 13)
    assert lg.mu(p6, 1) == lg.l_identity_aut(p6)
    with pytest.raises(NotAUnit):
        lg.mu(p6, 5)


def test_invalid_automorphism(p6):
    assert not lg.l_is_valid(p6, gen_a(p6), lg.l_power(p6, gen_b(p6), 5))
    with pytest.raises(InvalidAutomorphism):
        lg.l_automorphism(p6, gen_b(p6), gen_a(p6))


def test_aut_group(p6):
    group = lg.l_aut_group(p6)
    assert len(group) == 12500 == 4 * 5**5
    ident = ((1, 0), (0, 1))
    kernel = {f for f in group if lg.omega_matrix(p6, f) == ident}
    inner = {lg.l_inner(p6, g) for g in lg.l_enumerate(p6)}
    assert len(inner) == 125
    inn_d2 = lg.l_aut_closure(p6, [lg.l_inner(p6, gen_a(p6)), lg.l_inner(p6, gen_b(p6)),
                                   lg.l_inner(p6, gen_c(p6)), lg.l_delta2(p6)])
    assert kernel == inn_d2 and len(kernel) == 625
    images = {lg.omega_matrix(p6, f) for f in group}
    gens = [lg.unipotent_v(5)] + [lg.diagonal_u(5, i) for i in range(1, 5)]
    assert images == lg.mat2_closure(gens, 5) and len(images) == 20


def test_omega_examples(p6):
    assert lg.omega_matrix(p6, lg.psi(p6)) == ((1, 0), (1, 1))
    for i in range(1, 5):
        assert lg.omega_matrix(p6, lg.mu(p6, i)) == ((i, 0), (0, pow(i, -1, 5)))
    assert lg.omega_matrix(p6, lg.l_inner(p6, gen_a(p6))) == ((1, 0), (0, 1))


def test_omega_is_homomorphism(p6):
    group = sorted(lg.l_aut_group(p6))
    for f in group[::250]:
        for g in group[::333]:
            lhs = lg.omega_matrix(p6, lg.l_compose(p6, f, g))
            assert lhs == lg.mat2_mul(lg.omega_matrix(p6, f), lg.omega_matrix(p6, g), 5)


def test_holomorph_relation():
    v = lg.unipotent_v(5)
    for i in range(1, 5):
        u = lg.diagonal_u(5, i)
        assert lg.mat2_mul(lg.mat2_mul(lg.mat2_inverse(u, 5), v, 5), u, 5) == lg.mat2_pow(v, i * i, 5)


def test_tau_and_k(p6):
    g = make_params(6)
    taus = {lg.tau_embed(p6, f) for f in aut_group(g)}
    assert len(taus) == 1250
    assert taus <= lg.l_aut_group(p6)
    assert lg.k_characteristic_check(p6)
    from macdonald.aut import apply, delta1

    k = Element(6, 5, 0, 0)
    assert apply(g, delta1(g), k) == Element(6, -5, 0, 0)
    assert lg.tau_embed(p6, standard_generators(g)[0]).img_a == Element(6, 4, 0, 0)


def test_structure_report_other_beta():
    rep = lg.l_structure_report(-4)
    assert (rep.order, rep.aut_order, rep.kernel_order, rep.quotient_order) == (625, 12500, 625, 20)
    assert math.gcd(rep.center_order, 5) == 5
