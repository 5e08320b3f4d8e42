import random

from agcodes.gf import GF
from agcodes.linalg import Echelon, det, kernel, rank, rref, solve

F = GF(3, 2, "a^2+1")


def _rand(rng, k, n):
    return [[rng.randrange(F.q) for _ in range(n)] for _ in range(k)]


def _dot(u, v):
    s = 0
    for x, y in zip(u, v):
        s = F.add(s, F.mul(x, y))
    return s


def test_rref_known():
    rows, piv = rref(F, [[1, 2], [2, 1]])
    assert rows == [[1, 2]] and piv == [0]


def test_rank_nullity_and_kernel():
    rng = random.Random(1)
    for _ in range(50):
        k, n = rng.randint(1, 5), rng.randint(1, 7)
        A = _rand(rng, k, n)
        K = kernel(F, A, n)
        assert rank(F, A) + len(K) == n
        assert all(_dot(r, v) == 0 for r in A for v in K)


def test_solve_consistent_system():
    rng = random.Random(2)
    for _ in range(30):
        A = _rand(rng, 4, 5)
        x = [rng.randrange(F.q) for _ in range(5)]
        b = [_dot(r, x) for r in A]
        y = solve(F, A, b, 5)
        assert y is not None and [_dot(r, y) for r in A] == b


def test_det_of_singular_and_identity():
    # raw packed entries
    assert det(F, [[1, 0], [0, 1]]) == 1
    assert det(F, [[1, 1], [1, 1]]) == 0
    assert det(F, [[0, 1], [1, 0]]) == F.neg(1)


def test_echelon_membership():
    E = Echelon(F, 3)
    E.add([1, 0, 1])
    E.add([0, 1, 1])
    assert E.contains([1, 1, 2])
    assert not E.contains([0, 0, 1])
