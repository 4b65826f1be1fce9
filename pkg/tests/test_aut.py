import pytest

from macdonald import oracle
from macdonald.aut import (
    Automorphism,
    Decomposition,
    aut_group,
    aut_invert,
    aut_power,
    automorphism,
    automorphism_closure,
    bc_generators,
    compose,
    decompose,
    delta1,
    delta2,
    elementary,
    extends_to_g,
    extension_subgroup,
    has_standard_shape,
    identity_aut,
    inner,
    is_valid_automorphism,
    is_valid_t_automorphism,
    local_restriction_image,
    mat_identity,
    matrix_of,
    q8_kernel_generators,
    recompose,
    restrict,
    restriction_kernel,
    standard_generators,
    standard_shape_count,
    t_compose,
    t_identity,
    apply,
)
from macdonald.core import (
    Element,
    commutator,
    conjugate,
    gen_a,
    gen_b,
    gen_c,
    identity,
    inverse,
    make_params,
    multiply,
    power,
)
from macdonald.errors import BetaNotEven, CapExceeded, InvalidAutomorphism, PrimeNotDividing
from macdonald.structure import reduce_mod_center

ORDERS = {3: 32, -1: 32, 4: 162, -2: 162, 5: 512, -3: 512, 6: 1250, 7: 2592}


def test_standard_generators_are_valid():
    for beta in ORDERS:
        p = make_params(beta)
        for f in standard_generators(p):
            assert is_valid_automorphism(p, f.img_a, f.img_b)


def test_generator_orders_and_centrality():
    for beta in (4, 5, 3, 7):
        p = make_params(beta)
        assert aut_power(p, delta1(p), 2) == identity_aut(p)
        assert aut_power(p, delta2(p), p.n) == identity_aut(p)
        assert all(aut_power(p, delta2(p), k) != identity_aut(p) for k in range(1, p.n))
        for g in (gen_a(p), gen_b(p), gen_c(p), Element(beta, 2, 1, 3)):
            assert compose(p, delta2(p), inner(p, g)) == compose(p, inner(p, g), delta2(p))


def test_inner_a_on_b():
    p = make_params(4)
    assert apply(p, inner(p, gen_a(p)), gen_b(p)) == multiply(p, gen_b(p), inverse(p, gen_c(p)))


def test_validity_examples():
    p = make_params(4)
    d2 = is_valid_automorphism(p, Element(4, 1, 0, 3), gen_b(p))
    assert d2 and d2.surjectivity_method == "closure"
    bad = is_valid_automorphism(p, Element(4, 1, 0, 1), gen_b(p))
    assert not bad and bad.failures == ("relations",)
    assert is_valid_automorphism(p, gen_a(p), gen_b(p))
    assert not is_valid_automorphism(p, Element(4, 2, 0, 0), gen_b(p)).shape
    assert not is_valid_automorphism(p, gen_a(p), power(p, gen_b(p), 3)).surjective
    with pytest.raises(InvalidAutomorphism):
        automorphism(p, Element(4, 1, 0, 1), gen_b(p))


def test_abelianization_surjectivity_for_large_torsion():
    p = make_params(2**64 + 5)
    cert = is_valid_automorphism(p, gen_a(p), gen_b(p))
    assert cert and cert.surjectivity_method == "abelianization"
    assert not is_valid_automorphism(p, gen_a(p), power(p, gen_b(p), 2)).surjective


def test_apply_examples():
    for beta in (4, 5, 3):
        p = make_params(beta)
        img = apply(p, delta1(p), gen_c(p))
        assert img == commutator(p, inverse(p, gen_a(p)), inverse(p, gen_b(p)))
        assert reduce_mod_center(p, img) == reduce_mod_center(p, gen_c(p))
        g = Element(beta, 2, 1, 1)
        x = Element(beta, -1, 1, 3)
        assert apply(p, inner(p, g), x) == conjugate(p, x, g)


@pytest.mark.parametrize("beta", [4, 5, 3])
def test_apply_is_multiplicative(beta):
    p = make_params(beta)
    xs = [Element(beta, a, c, b) for a in (-1, 0, 2) for c in range(p.n) for b in range(0, p.n2, 2)]
    for f in aut_group(p)[::17]:
        for x in xs[::5]:
            for y in xs[::7]:
                assert apply(p, f, multiply(p, x, y)) == multiply(p, apply(p, f, x), apply(p, f, y))


def test_decompose_examples():
    p = make_params(4)
    assert decompose(p, delta2(p)) == Decomposition(0, identity(p), 1)
    assert decompose(p, identity_aut(p)) == Decomposition(0, identity(p), 0)
    f = compose(p, inner(p, gen_a(p)), delta1(p))
    assert recompose(p, decompose(p, f)) == f


def test_decompose_rejects_bad_input():
    p = make_params(4)
    with pytest.raises(InvalidAutomorphism):
        decompose(p, Automorphism(Element(4, 2, 0, 0), gen_b(p)))


@pytest.mark.parametrize("beta, order", sorted(ORDERS.items()))
def test_aut_group_order_and_round_trip(beta, order):
    p = make_params(beta)
    group = aut_group(p)
    assert len(group) == order == 2 * p.n**4
    for f in group:
        assert recompose(p, decompose(p, f)) == f


@pytest.mark.parametrize("beta", [4, 5, 3, -1])
def test_inverse_and_subgroup_structure(beta):
    p = make_params(beta)
    group = aut_group(p)
    for f in group[::7]:
        assert compose(p, f, aut_invert(p, f)) == identity_aut(p)
    inn = automorphism_closure(p, standard_generators(p)[2:])
    inn_d2 = automorphism_closure(p, standard_generators(p)[1:])
    assert len(inn) == p.n**3
    assert len(inn_d2) == p.n**4
    assert delta1(p) not in set(inn_d2)
    d2_powers = {aut_power(p, delta2(p), k) for k in range(p.n)}
    assert d2_powers & set(inn) == {identity_aut(p)}


@pytest.mark.parametrize("beta", [4, 5, 7, 3])
def test_delta1_conjugates_inner_a_and_b(beta):
    p = make_params(beta)
    d1 = delta1(p)
    for g in (gen_a(p), gen_b(p)):
        conj = compose(p, compose(p, d1, inner(p, g)), d1)
        assert conj == inner(p, inverse(p, g))


def test_aut_group_cap():
    with pytest.raises(CapExceeded):
        aut_group(make_params(7), cap=1000)


class TestMatrices:
    def test_examples(self):
        p = make_params(4)
        assert matrix_of(p, delta2(p)) == elementary(4, 3, 1, 4)
        assert matrix_of(p, identity_aut(p)) == mat_identity(4, 3)
        q = make_params(3)
        t12, t23, t53 = elementary(5, 2, 1, 2), elementary(5, 2, 2, 3), elementary(5, 2, 5, 3)
        assert matrix_of(q, delta1(q)) == t53 @ t23
        assert matrix_of(q, inner(q, gen_a(q))) == t12 @ t23
        assert matrix_of(q, inner(q, gen_b(q))) == t23

    @pytest.mark.parametrize("beta", [4, 5, 6, 7, -2, -3, 3, -1])
    def test_injective_homomorphism(self, beta):
        p = make_params(beta)
        group = aut_group(p)
        mats = {f: matrix_of(p, f) for f in group}
        assert len(set(mats.values())) == len(group)
        gens = standard_generators(p)
        for f in group[::3]:
            for g in gens:
                assert mats[compose(p, f, g)] == mats[f] @ mats[g]

    @pytest.mark.parametrize("beta", [4, 5, 6, 7])
    def test_shape_is_a_bijection(self, beta):
        p = make_params(beta)
        mats = {matrix_of(p, f) for f in aut_group(p)}
        assert all(has_standard_shape(m) for m in mats)
        assert len(mats) == standard_shape_count(p.n)


class TestRestriction:
    @pytest.mark.parametrize("beta", [4, 5, 6, 7, -2, -3])
    def test_kernel_is_delta2(self, beta):
        p = make_params(beta)
        rep = restriction_kernel(p)
        assert rep.kernel_size == p.n
        assert set(rep.kernel) == {aut_power(p, delta2(p), k) for k in range(p.n)}
        assert rep.image_size == 2 * p.n**3

    @pytest.mark.parametrize("beta", [3, -1])
    def test_q8_kernel(self, beta):
        p = make_params(beta)
        rep = restriction_kernel(p)
        d2, special = q8_kernel_generators(p)
        assert rep.kernel_size == 4 and rep.image_size == 8
        assert set(rep.kernel) == set(automorphism_closure(p, [d2, special]))
        assert all(compose(p, f, f) == identity_aut(p) for f in rep.kernel)

    def test_restrict_inner_a(self):
        p = make_params(4)
        r = restrict(p, inner(p, gen_a(p)))
        assert r.img_c_t == gen_c(p)
        assert r.img_b_t == multiply(p, gen_b(p), inverse(p, gen_c(p)))

    @pytest.mark.parametrize("beta", [4, 5, 3])
    def test_restriction_is_injective_on_inner(self, beta):
        p = make_params(beta)
        inn = automorphism_closure(p, standard_generators(p)[2:])
        assert len({restrict(p, f) for f in inn}) == len(inn)

    def test_image_is_sylow_in_aut_q8(self):
        p = make_params(3)
        table = oracle.build_torsion_model(3)
        all_auts = oracle.exhaustive_automorphisms(table)
        assert len(all_auts) == 24
        as_perms = {tuple(phi.tolist()) for phi in all_auts}
        images = set()
        for f in aut_group(p):
            r = restrict(p, f)
            perm = []
            for k, j in table.labels:
                x = t_apply_label(p, r, k, j)
                perm.append(table.index[(x.c, x.b)])
            images.add(tuple(perm))
        assert len(images) == 8 and images <= as_perms


def t_apply_label(p, r, k, j):
    return multiply(p, power(p, r.img_c_t, k), power(p, r.img_b_t, j))


class TestBidwellCurran:
    def test_parameters(self):
        bc = bc_generators(make_params(4), 3)
        assert (bc.m, bc.r, bc.s, bc.i) == (1, -1, 2, 2)

    @pytest.mark.parametrize("beta, p", [(4, 3), (-2, 3), (6, 5), (10, 3)])
    def test_generators_are_automorphisms(self, beta, p):
        params = make_params(beta)
        bc = bc_generators(params, p)
        for t in (bc.a, bc.b, bc.c, bc.d):
            assert is_valid_t_automorphism(params, t)

    @pytest.mark.parametrize("beta, p, order", [(4, 3, 54), (-2, 3, 54), (6, 5, 250), (10, 3, 1458)])
    def test_extension_subgroup_is_image(self, beta, p, order):
        params = make_params(beta)
        ext = extension_subgroup(params, p)
        assert len(ext) == order
        assert set(ext) == local_restriction_image(params, p)

    @pytest.mark.parametrize("beta, p", [(4, 3), (-2, 3), (6, 5), (10, 3)])
    def test_restrictions_of_standard_automorphisms(self, beta, p):
        params = make_params(beta)
        bc = bc_generators(params, p)
        assert restrict(params, inner(params, power(params, gen_a(params), -bc.s)), p) == bc.c
        assert restrict(params, inner(params, inverse(params, gen_b(params))), p) == bc.b
        # Delta1 inverts B_p, which has order p^2m, so the power of a_p is phi(p^2m)/2
        pm = p**bc.m
        a_pow = t_identity(params, p)
        for _ in range(pm * (p - 1) * p ** (bc.m - 1) // 2):
            a_pow = t_compose(params, a_pow, bc.a)
        assert restrict(params, delta1(params), p) == t_compose(params, a_pow, bc.b)

    def test_d_acts_trivially_when_c_p_has_order_p_m(self):
        params = make_params(4)
        bc = bc_generators(params, 3)
        assert bc.d == t_identity(params, 3)
        assert extends_to_g(params, bc.d, 3)

    @pytest.mark.parametrize("beta, p", [(6, 5), (10, 3), (-4, 5)])
    def test_a_itself_does_not_extend_when_its_exponent_exceeds_one(self, beta, p):
        params = make_params(beta)
        bc = bc_generators(params, p)
        assert bc.a_exponent > 1
        assert not extends_to_g(params, bc.a, p)

    def test_errors(self):
        with pytest.raises(BetaNotEven):
            bc_generators(make_params(5), 2)
        with pytest.raises(PrimeNotDividing):
            bc_generators(make_params(4), 5)
        with pytest.raises(PrimeNotDividing):
            bc_generators(make_params(4), 9)
