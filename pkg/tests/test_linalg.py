from fractions import Fraction

from ncreg.field import PrimeField, Rationals
from ncreg.linalg import Echelon, SparseMatrix, kernel_basis, kernel_of_columns, rank, rref

Q = Rationals()
F5 = PrimeField(5)
F7 = PrimeField(7)


def test_identity_rank():
    assert rank(SparseMatrix.from_dense(Q, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == 3


def test_dependent_rows_mod_5():
    r, R, piv = rref(SparseMatrix.from_dense(F5, [[2, 4], [1, 2]]))
    assert r == 1
    assert piv == [0]
    assert R.to_dense()[0] == [1, 2]


def test_zero_matrix():
    assert rank(SparseMatrix(Q, 3, 4)) == 0
    assert len(kernel_basis(SparseMatrix(Q, 3, 4))) == 4


def test_kernel_examples():
    assert kernel_basis(SparseMatrix.from_dense(Q, [[1, 0], [0, 1]])) == []
    assert kernel_basis(SparseMatrix.from_dense(Q, [[1, 1]])) == [{1: Fraction(1), 0: Fraction(-1)}]
    ker = kernel_basis(SparseMatrix.from_dense(F7, [[1, 2, 3]]))
    assert len(ker) == 2
    M = SparseMatrix.from_dense(F7, [[1, 2, 3]])
    for v in ker:
        assert M.apply(v) == {}


def test_kernel_of_columns():
    # columns (1,0), (0,1), (1,1): one relation c0 + c1 - c2
    imgs = [{0: Fraction(1)}, {1: Fraction(1)}, {0: Fraction(1), 1: Fraction(1)}]
    ker = kernel_of_columns(Q, imgs)
    assert len(ker) == 1
    v = ker[0]
    total = {}
    for k, c in v.items():
        for r, x in imgs[k].items():
            total[r] = total.get(r, 0) + c * x
    assert all(x == 0 for x in total.values())


def test_echelon_reduce_and_membership():
    E = Echelon(Q)
    E.add({0: Fraction(1), 1: Fraction(2)})
    E.add({1: Fraction(1), 2: Fraction(1)})
    assert E.rank == 2
    assert E.reduce({0: Fraction(1), 1: Fraction(3), 2: Fraction(1)}) == {}
    assert E.reduce({2: Fraction(1)}) != {}
