import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from raagkit import linalg


def test_small_cases():
    assert linalg.rank([]) == 0
    assert linalg.det([]) == 1
    assert linalg.det(linalg.identity(4)) == 1
    assert linalg.det([[0, 1], [1, 0]]) == -1
    assert linalg.rank([[1, 2], [2, 4]]) == 1
    assert linalg.det([[2, 0, 0], [0, 3, 0], [0, 0, -1]]) == -6
    assert linalg.matmul([[1, 1], [0, 1]], [[1, 0], [1, 1]]) == ((2, 1), (1, 1))


matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)
square = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)
)


@given(matrices)
@settings(max_examples=200, deadline=None)
def test_rank_matches_sympy(m):
    assert linalg.rank(m) == sympy.Matrix(m).rank()


@given(square)
@settings(max_examples=200, deadline=None)
def test_det_matches_sympy(m):
    assert linalg.det(m) == sympy.Matrix(m).det()
