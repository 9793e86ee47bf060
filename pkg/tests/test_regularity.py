import pytest

from conftest import FREE2, corpus_gb, text_gb
from ncreg.parser import parse_module
from ncreg.regularity import (
    NEG_INF,
    POS_INF,
    RegularityValue,
    UnsupportedContext,
    classify,
    cm_regularity,
    cm_regularity_duality,
    cm_regularity_torsion,
    compute_depth,
    decode_ext,
    encode_ext,
    ext_regularity,
    interval_le,
    is_koszul,
)
from ncreg.resolution import betti_table, free_module, minimal_resolution, module_from_text, trivial_module


def res_k(name, n=6, D=8):
    gb = corpus_gb(name, D)
    return minimal_resolution(trivial_module(gb), n, D)


def test_extended_integers():
    assert NEG_INF < -10 ** 9 < 0 < 10 ** 9 < POS_INF
    assert POS_INF + 3 == POS_INF and -POS_INF == NEG_INF
    for x in (3, POS_INF, NEG_INF):
        assert decode_ext(encode_ext(x)) == x


def test_regularity_value_rendering():
    assert str(RegularityValue.exact(3)) == "3"
    assert str(RegularityValue(1, POS_INF)) == ">=1"
    assert str(RegularityValue(NEG_INF, 2)) == "<=2"
    assert str(RegularityValue(0, 2)) == "[0,2]"
    assert str(RegularityValue(NEG_INF, POS_INF)) == "unknown"
    assert interval_le(RegularityValue.exact(1), RegularityValue(1, POS_INF)) is True
    assert interval_le(RegularityValue(0, POS_INF), RegularityValue.exact(1)) is None


def test_ext_regularity_examples():
    v = ext_regularity(betti_table(res_k("poly2")))
    assert v.certified and v.value == 0
    gb = corpus_gb("poly2")
    vA = ext_regularity(betti_table(minimal_resolution(free_module(gb), 4, 8)))
    assert vA.certified and vA.value == 0
    vc = ext_regularity(betti_table(res_k("cubic")))
    assert vc.certified and vc.value == 1


def test_ext_regularity_of_nonterminating_is_lower_bound():
    v = ext_regularity(betti_table(res_k("exterior")))
    assert not v.certified and str(v) == ">=0"


def test_koszul_examples():
    kv = is_koszul(betti_table(res_k("poly2")), corpus_gb("poly2"))
    assert kv.koszul and kv.proven and kv.status == "koszul"
    kc = is_koszul(betti_table(res_k("cubic")), corpus_gb("cubic"))
    assert not kc.koszul and kc.witness == (2, 3)
    ke = is_koszul(betti_table(res_k("exterior", 6)), corpus_gb("exterior"))
    assert ke.status == "koszul_up_to" and ke.up_to == 6


def test_koszul_needs_degree_one_generators():
    gb = text_gb("field Q; gens x:1 y:2; rels y*x - x*y;", 6)
    B = betti_table(minimal_resolution(trivial_module(gb), 3, 6))
    with pytest.raises(Exception):
        is_koszul(B, gb)


def test_depth_examples():
    Rk = res_k("poly2")
    gb = Rk.algebra
    assert compute_depth(trivial_module(gb), Rk).value == 0
    dA = compute_depth(free_module(gb), Rk)
    assert dA.value == 2
    Re = res_k("exterior")
    assert compute_depth(free_module(Re.algebra), Re).value == 0


def test_classify_examples():
    C = classify(corpus_gb("poly2"), 6, 8)
    assert (C.verdict, C.d, C.l, C.standard) == ("regular", 2, 2, True)
    assert C.koszul.status == "koszul"
    C = classify(corpus_gb("dual_numbers"), 6, 8)
    assert (C.verdict, C.d, C.l, C.standard) == ("gorenstein", 0, -1, False)
    C = classify(corpus_gb("cubic"), 6, 8)
    assert (C.verdict, C.d, C.l, C.standard) == ("regular", 3, 4, False)
    assert C.koszul.status == "not_koszul"


def test_free_algebra_is_not_gorenstein():
    C = classify(text_gb(FREE2, 6), 4, 6)
    assert C.verdict == "undetected"
    with pytest.raises(UnsupportedContext):
        cm_regularity(free_module(text_gb(FREE2, 6)), C, 4, 6)


def test_cm_regularity_of_k_is_zero():
    for name in ("poly2", "cubic", "exterior", "dual_numbers"):
        gb = corpus_gb(name)
        v = cm_regularity(trivial_module(gb), None, 6, 8)
        assert v.certified and v.value == 0 and v.route == "torsion"


def test_cm_regularity_both_routes_on_dual_numbers():
    gb = corpus_gb("dual_numbers")
    C = classify(gb, 6, 8)
    A = free_module(gb)
    assert cm_regularity_torsion(A).value == 1
    v = cm_regularity_duality(A, C, 6, 8)
    assert v.certified and v.value == 1 == C.d - C.l


def test_cm_regularity_of_polynomial_ring_quotient():
    gb = corpus_gb("poly2", 8)
    C = classify(gb, 6, 8)
    M = module_from_text(gb, parse_module("cover 0; rel a: y;", gb.presentation))
    v = cm_regularity(M, C, 6, 8)
    assert v.certified and v.value == 0
    M2 = module_from_text(gb, parse_module("cover 0; rel a: y^3;", gb.presentation))
    assert cm_regularity(M2, C, 6, 8).value == 2


def test_termination_found_with_reversed_order():
    # with x < y the left ideal A*x has leading words x*y^b for every b;
    # reversing the generators gives a finite certificate
    gb = corpus_gb("poly2", 8)
    M = module_from_text(gb, parse_module("cover 0; rel a: x;", gb.presentation))
    R = minimal_resolution(M, 6, 8)
    assert R.terminated and R.length == 1
    assert any("reversed" in n for n in R.notes)
    assert not minimal_resolution(M, 6, 8, reorder=False).terminated


def test_uncertifiable_termination_stays_open():
    # A/(x) + A/(y) defeats both generator orders
    gb = corpus_gb("poly2", 8)
    C = classify(gb, 6, 8)
    M = module_from_text(gb, parse_module("cover 0 0; rel a: x, 0; rel b: 0, y;", gb.presentation))
    R = minimal_resolution(M, 6, 8)
    assert not R.terminated
    assert betti_table(R).nonzero() == {(0, 0): 2, (1, 1): 2}
    assert str(ext_regularity(betti_table(R))) == ">=0"
    assert not cm_regularity(M, C, 6, 8, R).certified


def test_zero_module_regularities():
    gb = corpus_gb("poly2")
    Z = module_from_text(gb, parse_module("cover 0; rel a: 1;", gb.presentation))
    assert cm_regularity_torsion(Z).value == NEG_INF
    assert ext_regularity(betti_table(minimal_resolution(Z, 3, 8))).value == NEG_INF
