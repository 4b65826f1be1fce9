import pytest
from sympy.combinatorics.coset_table import coset_enumeration_r
from sympy.combinatorics.fp_groups import FpGroup
from sympy.combinatorics.free_groups import free_group

from macdonald.core import make_params
from macdonald.presentation import comm_word, export_gap, l_relators, reduce_word, torsion_relators


def enumerate_order(gens, relators):
    free, *letters = free_group(",".join(gens))
    lookup = dict(zip(gens, letters))
    words = []
    for rel in relators:
        w = free.identity
        for g, e in rel:
            w = w * lookup[g] ** e
        words.append(w)
    table = coset_enumeration_r(FpGroup(free, words), [])
    table.compress()
    return len(table.table)


def test_word_helpers():
    assert reduce_word([("a", 1), ("a", -1), ("b", 2)]) == [("b", 2)]
    assert comm_word([("a", 1)], [("b", 1)]) == [("a", -1), ("b", -1), ("a", 1), ("b", 1)]


@pytest.mark.parametrize("beta", [4, -2, 3, -1, 5, -3, 7])
def test_torsion_presentation_has_order_n_cubed(beta):
    p = make_params(beta)
    assert enumerate_order(*torsion_relators(p)) == p.n**3


@pytest.mark.parametrize("beta", [6, -4])
def test_l_presentation_has_order_n_fourth(beta):
    p = make_params(beta)
    assert enumerate_order(*l_relators(p)) == p.n**4


def test_gap_text():
    text = export_gap(make_params(6), include_l=True)
    assert 'F := FreeGroup("B", "C");;' in text
    assert "B^25" in text and "C^-1*B*C*B^-21" in text
    assert "L := F / [" in text and "a^5" in text
