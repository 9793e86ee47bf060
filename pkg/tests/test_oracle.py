from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import corpus_gb, text_gb
from oracle import DenseAlgebra, betti_numbers, count_normal_words, nullspace_mod, rank_mod
from ncreg.groebner import groebner_truncated
from ncreg.harness import random_quadratic_algebras
from ncreg.parser import parse_presentation
from ncreg.resolution import betti_table, minimal_resolution, random_module, trivial_module


def dense(gb, D):
    P = gb.presentation
    return DenseAlgebra(P.weights, [r.terms for r in P.relations], P.field.p, D)


def pipeline_betti(M, n, D):
    B = betti_table(minimal_resolution(M, n, D)).nonzero()
    return {k: v for k, v in B.items() if k[0] <= n and k[1] <= D}


def oracle_betti(A, M, n):
    return betti_numbers(A, list(M.cover.shifts), list(M.relations), n)


def test_oracle_linear_algebra():
    M = [[1, 2, 3], [2, 4, 6]]
    assert rank_mod(M, 7) == 1
    ns = nullspace_mod(M, 7)
    assert ns.shape == (2, 3)
    assert not ((ns @ [[1], [2], [3]]) % 7).any()


def test_oracle_knows_the_small_cases():
    A = dense(corpus_gb("poly2", 6), 6)
    assert A.hilbert() == [1, 2, 3, 4, 5, 6, 7]
    k = trivial_module(corpus_gb("poly2", 6))
    assert oracle_betti(A, k, 4) == {(0, 0): 1, (1, 1): 2, (2, 2): 1}
    D2 = dense(corpus_gb("dual_numbers", 6), 6)
    k2 = trivial_module(corpus_gb("dual_numbers", 6))
    assert oracle_betti(D2, k2, 4) == {(i, i): 1 for i in range(5)}


def test_hilbert_against_brute_force_word_count():
    for name in ("poly2", "exterior", "cubic", "qplane2", "dual_numbers"):
        G = corpus_gb(name, 7)
        n = len(G.presentation.generators)
        assert count_normal_words(n, list(G.leading), 7) == G.hilbert_function(7).as_list()


def test_hilbert_against_dense_quotient_with_infinite_basis():
    G = text_gb("field F 32003; gens x:1 y:1; rels y^2 - x*y;", 8)
    assert dense(G, 8).hilbert() == G.hilbert_function(8).as_list()
    W = text_gb("field F 32003; gens x:1 y:2; rels y*x - x*y - x^3;", 8)
    assert dense(W, 8).hilbert() == W.hilbert_function(8).as_list()


def test_random_quadratic_algebras_against_oracle():
    for name, text in random_quadratic_algebras(11, 8):
        G = groebner_truncated(parse_presentation(text), 6)
        A = dense(G, 6)
        assert A.hilbert() == G.hilbert_function(6).as_list(), name
        k = trivial_module(G)
        assert pipeline_betti(k, 4, 6) == oracle_betti(A, k, 4), name
        for s in range(3):
            M = random_module(G, s, 1 + s % 2, (0, 1)[:1 + s % 2], 2, 2)
            assert pipeline_betti(M, 3, 6) == oracle_betti(A, M, 3), (name, s)


rel2 = st.dictionaries(st.sampled_from([(0, 0), (0, 1), (1, 0), (1, 1)]),
                       st.integers(1, 32002), min_size=1, max_size=4)


@settings(max_examples=25, deadline=None)
@given(st.lists(rel2, min_size=1, max_size=2), st.integers(0, 10 ** 6), st.integers(0, 2))
def test_random_algebra_and_module_against_oracle(rels, seed, nrels):
    text = "field F 32003; gens x:1 y:1; rels " + "; ".join(
        " + ".join(f"{c}*{'*'.join('xy'[g] for g in w)}" for w, c in sorted(r.items())) for r in rels) + ";"
    G = groebner_truncated(parse_presentation(text), 6)
    A = dense(G, 6)
    assert A.hilbert() == G.hilbert_function(6).as_list()
    M = random_module(G, seed, 1, (0,), nrels, 2)
    assert pipeline_betti(M, 3, 6) == oracle_betti(A, M, 3)
