import pytest
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix

from app.services.zlinalg import (
    AbGroup,
    FreeChainComplex,
    IntMatrix,
    complex_homology,
    direct_sum,
    gaussian_eliminate,
    homology_at,
    integer_inverse,
    invariant_factors,
    matrix_rank,
    smith_normal_form,
)


def _sympy_rank(M: IntMatrix) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    return DomainMatrix([[ZZ(x) for x in row] for row in M.to_list()], M.shape, ZZ).convert_to(ZZ.get_field()).rank()


def _random_matrix(rng, max_side=12, bound=9):
    rows, cols = rng.randint(0, max_side), rng.randint(0, max_side)
    return IntMatrix.from_flat(rows, cols, [rng.randint(-bound, bound) for _ in range(rows * cols)])


def test_smith_normal():
    m = IntMatrix([
        [12, 6, 4, 8],
        [3, 9, 6, 12],
        [2, 16, 14, 28],
        [20, 10, 10, 20]])
    snf = smith_normal_form(m)
    snf.verify(m)
    assert snf.diagonal() == [1, 10, 30, 0]
    assert invariant_factors(m) == [1, 10, 30]
    assert matrix_rank(m) == 3


def test_smith_normal_edge_shapes():
    for m in (IntMatrix.zeros(0, 0), IntMatrix.zeros(0, 3), IntMatrix.zeros(4, 0), IntMatrix.zeros(2, 3)):
        snf = smith_normal_form(m)
        snf.verify(m)
        assert snf.invariant_factors() == []
    m = IntMatrix([[-4]])
    assert smith_normal_form(m).diagonal() == [4]


def test_smith_contract_on_random_matrices(rng):
    for _ in range(300):
        m = _random_matrix(rng)
        snf = smith_normal_form(m)
        snf.verify(m)
        assert snf.rank == _sympy_rank(m)
        if m.rows == m.cols:
            product = 1
            for d in snf.diagonal():
                product *= d
            assert product == abs(m.determinant())


def test_verify_rejects_tampered_decomposition():
    m = IntMatrix([[2, 4], [6, 8]])
    snf = smith_normal_form(m)
    tampered = type(snf)(U=snf.U, S=IntMatrix.diagonal([1, 1]), V=snf.V, rows=2, cols=2)
    with pytest.raises(ArithmeticError):
        tampered.verify(m)


def test_determinant():
    assert IntMatrix.zeros(0, 0).determinant() == 1
    assert IntMatrix([[2, 1], [1, 1]]).determinant() == 1
    with pytest.raises(ValueError):
        IntMatrix.zeros(2, 3).determinant()


def test_integer_inverse():
    m = IntMatrix([[2, 1], [1, 1]])
    assert integer_inverse(m) == IntMatrix([[1, -1], [-1, 2]])
    assert m @ integer_inverse(m) == IntMatrix.identity(2)
    with pytest.raises(ValueError):
        integer_inverse(IntMatrix([[2, 0], [0, 1]]))


def test_matrix_shape_errors():
    with pytest.raises(ValueError):
        IntMatrix([[1, 2], [3]])
    with pytest.raises(ValueError):
        IntMatrix.zeros(2, 3) @ IntMatrix.zeros(2, 3)
    assert (IntMatrix.zeros(2, 0) @ IntMatrix.zeros(0, 3)) == IntMatrix.zeros(2, 3)


def test_abgroup_canonical_form():
    assert AbGroup.from_cyclic_orders(0, [2, 3]) == AbGroup(0, (6,))
    assert AbGroup.from_cyclic_orders(1, [3, 3, 1]) == AbGroup(1, (3, 3))
    assert AbGroup(2, (2,)) + AbGroup(0, (3,)) == AbGroup(2, (6,))
    assert direct_sum([AbGroup.free(1)] * 4) == AbGroup.free(4)
    assert direct_sum([]).is_trivial()
    assert str(AbGroup(7, (3,))) == "Z^7 + Z/3"
    assert str(AbGroup(11, (3, 3))) == "Z^11 + (Z/3)^2"
    assert str(AbGroup.trivial()) == "0"


def test_abgroup_rejects_bad_torsion():
    with pytest.raises(ValueError):
        AbGroup(0, (3, 2))
    with pytest.raises(ValueError):
        AbGroup(0, (1,))
    with pytest.raises(ValueError):
        AbGroup(-1)


def test_homology_at_cup_with_sphere_euler_class():
    # multiplication by 3X^2 on Z[X]/X^3
    d = IntMatrix([[0, 0, 0], [0, 0, 0], [3, 0, 0]])
    assert homology_at(IntMatrix.zeros(3, 0), d) == AbGroup.free(2)
    assert homology_at(d, IntMatrix.zeros(0, 3)) == AbGroup(2, (3,))
    d2 = IntMatrix([[0, 0], [2, 0]])
    assert homology_at(IntMatrix.zeros(2, 0), d2) == AbGroup.free(1)
    assert homology_at(d2, IntMatrix.zeros(0, 2)) == AbGroup(1, (2,))


def test_homology_at_kernel_rank_on_random_matrices(rng):
    for _ in range(200):
        m = _random_matrix(rng)
        kernel = homology_at(IntMatrix.zeros(m.cols, 0), m)
        assert kernel == AbGroup.free(m.cols - _sympy_rank(m))
        cokernel = homology_at(m, IntMatrix.zeros(0, m.rows))
        assert cokernel.free_rank == m.rows - _sympy_rank(m)
        assert list(cokernel.torsion) == [d for d in invariant_factors(m) if d > 1]


def test_homology_at_errors():
    with pytest.raises(ValueError):
        homology_at(IntMatrix.zeros(2, 1), IntMatrix.zeros(1, 3))
    with pytest.raises(ValueError):
        homology_at(IntMatrix([[1]]), IntMatrix([[1]]))


def test_chain_complex_validation():
    with pytest.raises(ValueError):
        FreeChainComplex(lo=0, ranks=[1, 1, 1], differentials={0: IntMatrix([[1]]), 1: IntMatrix([[1]])})
    with pytest.raises(ValueError):
        FreeChainComplex(lo=0, ranks=[1, 2], differentials={0: IntMatrix([[1]])})
    with pytest.raises(ValueError):
        FreeChainComplex(lo=0, ranks=[1, 1], differentials={1: IntMatrix([[1]])})


def test_complex_homology():
    # Z --2--> Z --0--> Z
    c = FreeChainComplex(lo=-1, ranks=[1, 1, 1], differentials={-1: IntMatrix([[2]])})
    assert c.dd_is_zero()
    h = complex_homology(c)
    assert h[-1].is_trivial()
    assert h[0] == AbGroup(0, (2,))
    assert h[1] == AbGroup.free(1)


def _elementary_pair(k, i, j, c):
    """E = I + c e_ij and its inverse"""
    e = [[int(r == s) for s in range(k)] for r in range(k)]
    inv = [row[:] for row in e]
    e[i][j] += c
    inv[i][j] -= c
    return IntMatrix(e, rows=k, cols=k), IntMatrix(inv, rows=k, cols=k)


def _random_unimodular(rng, k):
    g, g_inv = IntMatrix.identity(k), IntMatrix.identity(k)
    if k < 2:
        return g, g_inv
    for _ in range(rng.randint(0, 6)):
        i, j = rng.sample(range(k), 2)
        e, e_inv = _elementary_pair(k, i, j, rng.randint(-2, 2))
        g, g_inv = e @ g, g_inv @ e_inv
    return g, g_inv


def _random_complex(rng):
    """Direct sum of Z[h] and Z[h] --c--> Z[h+1] pieces, scrambled by basis changes"""
    length = rng.randint(2, 4)
    ranks = [0] * length
    pieces = []
    for _ in range(rng.randint(1, 6)):
        h = rng.randrange(length)
        if h < length - 1 and rng.random() < 0.7:
            pieces.append((h, rng.choice([1, -1, 1, 2, 3]), ranks[h], ranks[h + 1]))
            ranks[h] += 1
            ranks[h + 1] += 1
        else:
            ranks[h] += 1
    differentials = {}
    for h in range(length - 1):
        d = IntMatrix.zeros(ranks[h + 1], ranks[h]).to_list()
        for ph, c, src, tgt in pieces:
            if ph == h:
                d[tgt][src] = c
        differentials[h] = IntMatrix(d, rows=ranks[h + 1], cols=ranks[h])
    changes = [_random_unimodular(rng, r) for r in ranks]
    scrambled = {
        h: changes[h + 1][0] @ d @ changes[h][1]
        for h, d in differentials.items()
    }
    return FreeChainComplex(lo=0, ranks=ranks, differentials=scrambled)


def test_gaussian_elimination_preserves_homology(rng):
    eliminated = 0
    for _ in range(200):
        c = _random_complex(rng)
        units = [
            (h, r, s)
            for h in range(c.lo, c.hi)
            for r in range(c.differential(h).rows)
            for s in range(c.differential(h).cols)
            if c.differential(h)[r, s] in (1, -1)
        ]
        if not units:
            continue
        h, r, s = rng.choice(units)
        reduced = gaussian_eliminate(c, h, r, s)
        assert reduced.dd_is_zero()
        assert sum(reduced.ranks) == sum(c.ranks) - 2
        assert complex_homology(reduced) == complex_homology(c)
        eliminated += 1
    assert eliminated > 50


def test_gaussian_elimination_rejects_non_unit():
    c = FreeChainComplex(lo=0, ranks=[1, 1], differentials={0: IntMatrix([[2]])})
    with pytest.raises(ValueError):
        gaussian_eliminate(c, 0, 0, 0)
