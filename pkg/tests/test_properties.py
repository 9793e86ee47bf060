from fractions import Fraction

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from conftest import corpus_gb
from ncreg.core import GradedDims, NcPolynomial, matlis_dual_dims, poly_multiply, word_compare, word_key
from ncreg.field import PrimeField, Rationals
from ncreg.groebner import groebner_truncated
from ncreg.linalg import SparseMatrix, kernel_basis, rank
from ncreg.parser import parse_presentation, serialize_presentation
from ncreg.resolution import betti_table, minimal_resolution, random_module, trivial_module

P = 32003
F = PrimeField(P)
SETTINGS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])

words = st.lists(st.integers(0, 2), max_size=6).map(tuple)


def homogeneous(n_gens, degree, max_terms=4):
    word = st.lists(st.integers(0, n_gens - 1), min_size=degree, max_size=degree).map(tuple)
    return st.dictionaries(word, st.integers(1, P - 1), min_size=1, max_size=max_terms)


def poly(terms):
    return NcPolynomial.from_terms(F, terms.items(), (1, 1, 1))


@SETTINGS
@given(words, words, words)
def test_word_order_is_total_and_transitive(a, b, c):
    assert word_compare(a, b) == -word_compare(b, a)
    assert (word_compare(a, b) == 0) == (a == b)
    if word_compare(a, b) <= 0 and word_compare(b, c) <= 0:
        assert word_compare(a, c) <= 0


@SETTINGS
@given(words, words, words, words)
def test_word_order_is_multiplicative(a, b, u, v):
    assume(a != b)
    w = (1, 1, 1)
    assert (word_key(a, w) < word_key(b, w)) == (word_key(u + a + v, w) < word_key(u + b + v, w))


@SETTINGS
@given(homogeneous(3, 1), homogeneous(3, 2), homogeneous(3, 1), homogeneous(3, 1))
def test_free_multiplication_axioms(a, b, c, c2):
    pa, pb, pc, pc2 = poly(a), poly(b), poly(c), poly(c2)
    assert poly_multiply(poly_multiply(pa, pb), pc) == poly_multiply(pa, poly_multiply(pb, pc))
    assert poly_multiply(pa, pc + pc2) == poly_multiply(pa, pc) + poly_multiply(pa, pc2)
    assert poly_multiply(pc + pc2, pb) == poly_multiply(pc, pb) + poly_multiply(pc2, pb)


ALGEBRAS = ["poly2", "exterior", "cubic", "qplane2"]


@SETTINGS
@given(st.sampled_from(ALGEBRAS), st.integers(1, 6), st.data())
def test_normal_form_is_a_projection(name, d, data):
    G = corpus_gb(name, 8)
    n = len(G.presentation.generators)
    p = NcPolynomial.from_terms(F, data.draw(homogeneous(n, d)).items(), G.presentation.weights)
    q = NcPolynomial.from_terms(F, data.draw(homogeneous(n, d)).items(), G.presentation.weights)
    nf = G.normal_form(p)
    assert G.normal_form(nf) == nf
    assert all(G.is_normal(w) for w in nf.terms)
    assert G.normal_form(p + q) == nf + G.normal_form(q)
    assert G.normal_form(p - nf).is_zero()


@SETTINGS
@given(st.sampled_from(ALGEBRAS), st.integers(1, 3), st.integers(1, 2), st.integers(1, 3), st.data())
def test_quotient_multiplication_is_associative(name, da, db, dc, data):
    G = corpus_gb(name, 8)
    n = len(G.presentation.generators)
    a, b, c = (G.nf_terms(data.draw(homogeneous(n, d))) for d in (da, db, dc))
    assert G.multiply(G.multiply(a, b), c) == G.multiply(a, G.multiply(b, c))


quadratic_rel = st.dictionaries(
    st.sampled_from([(0, 0), (0, 1), (1, 0), (1, 1)]), st.integers(1, 100), min_size=2, max_size=4)


def presentation_text(rels):
    names = "xy"
    parts = []
    for r in rels:
        parts.append(" + ".join(f"{c}*{'*'.join(names[g] for g in w)}" for w, c in sorted(r.items())))
    return "field F 101; gens x:1 y:1; rels " + "; ".join(parts) + ";"


@SETTINGS
@given(st.lists(quadratic_rel, min_size=1, max_size=2), st.integers(3, 5))
def test_truncation_is_monotone(rels, D1):
    Pr = parse_presentation(presentation_text(rels))
    small = groebner_truncated(Pr, D1)
    big = groebner_truncated(Pr, D1 + 2)
    assert small.hilbert_function(D1).as_list() == big.hilbert_function(D1).as_list()
    assert {w for w in small.leading} == {w for w in big.leading if len(w) <= D1}


@SETTINGS
@given(st.lists(quadratic_rel, min_size=1, max_size=2))
def test_serialize_round_trip(rels):
    Pr = parse_presentation(presentation_text(rels))
    assert parse_presentation(serialize_presentation(Pr)) == Pr


@settings(max_examples=15, deadline=None)
@given(st.lists(quadratic_rel, min_size=1, max_size=2))
def test_opposite_algebra_has_the_same_invariants(rels):
    Pr = parse_presentation(presentation_text(rels))
    A = groebner_truncated(Pr, 6)
    B = groebner_truncated(Pr.opposite(), 6)
    assert A.hilbert_function(6).as_list() == B.hilbert_function(6).as_list()
    # Tor(k, k) is computed by a left or by a right resolution
    bA = betti_table(minimal_resolution(trivial_module(A), 4, 6)).nonzero()
    bB = betti_table(minimal_resolution(trivial_module(B), 4, 6)).nonzero()
    assert bA == bB


matrices = st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=1, max_size=5))


@SETTINGS
@given(matrices, st.sampled_from([Rationals(), PrimeField(5), PrimeField(32003)]))
def test_kernel_and_rank(rows, field):
    M = SparseMatrix.from_dense(field, rows)
    ker = kernel_basis(M)
    assert rank(M) + len(ker) == M.cols
    assert rank(M) == rank(M.transpose())
    for v in ker:
        assert M.apply(v) == {}
    if ker:
        K = SparseMatrix.from_rows(field, ker, M.cols)
        assert rank(K) == len(ker)


@SETTINGS
@given(st.dictionaries(st.integers(-5, 5), st.integers(1, 9)))
def test_matlis_dual_is_an_involution(dims):
    lo, hi = (min(dims), max(dims)) if dims else (0, 0)
    d = GradedDims(dims, (lo, hi))
    assert matlis_dual_dims(matlis_dual_dims(d)) == d
    assert sum(matlis_dual_dims(d).dims.values()) == sum(dims.values())


@settings(max_examples=10, deadline=None)
@given(st.sampled_from(["poly2", "cubic", "exterior", "dual_numbers"]), st.integers(0, 10 ** 6),
       st.integers(1, 2), st.integers(0, 3), st.integers(1, 3))
def test_random_resolutions_are_minimal_complexes(name, seed, gens, nrels, rdeg):
    G = corpus_gb(name, 8)
    M = random_module(G, seed, gens, tuple(range(gens)), nrels, rdeg)
    R = minimal_resolution(M, 4, 8)
    assert R.check_complex()
    assert R.is_minimal()
    assert random_module(G, seed, gens, tuple(range(gens)), nrels, rdeg).to_json() == M.to_json()
