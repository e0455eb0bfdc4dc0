import pytest

from app.services.knotcomplex import (
    BigradedComplex,
    BigradedGroup,
    SummandDescriptor,
    SummandKind,
    bigraded_homology,
    build_A_complex,
    build_torus_complex,
    closed_form_total,
    decompose_summands,
    dualize,
    euler_characteristic,
    khovanov_rozansky,
    summand_homology,
    tensor_product,
    unknot_homology,
    unlink_homology,
)
from app.services.laurent import qint
from app.services.zlinalg import AbGroup, IntMatrix


def _table_one(n: int, m: int) -> AbGroup:
    free = {1: n, 2: n * n, 3: 3 * n - 2, 4: n * n + 2 * n - 2, 5: 5 * n - 4}[m]
    copies = {1: 0, 2: 0, 3: 1, 4: 1, 5: 2}[m]
    return AbGroup.from_cyclic_orders(free, [n] * copies)


@pytest.mark.parametrize("n", range(2, 7))
def test_A_complex_homology_placement(n):
    expected = {(0, q): AbGroup.free(1) for q in range(2 - 2 * n, -1, 2)}
    expected[(0, 0)] = AbGroup(0, (n,))
    expected.update({(-1, q): AbGroup.free(1) for q in range(2, 2 * n - 1, 2)})
    homology = bigraded_homology(build_A_complex(n))
    assert homology.groups == expected
    assert homology.total() == AbGroup(2 * n - 2, (n,))


@pytest.mark.parametrize("n", range(2, 6))
@pytest.mark.parametrize("m", range(1, 6))
def test_torus_totals_match_named_table(n, m):
    assert bigraded_homology(build_torus_complex(n, m)).total() == _table_one(n, m)


def test_torus_examples():
    assert bigraded_homology(build_torus_complex(2, 3)).total() == AbGroup(4, (2,))
    assert bigraded_homology(build_torus_complex(3, 4)).total() == AbGroup(13, (3,))
    assert bigraded_homology(build_torus_complex(3, 5)).total() == AbGroup(11, (3, 3))


@pytest.mark.parametrize("n", range(2, 6))
def test_unknot_sits_in_homological_degree_zero(n):
    homology = bigraded_homology(build_torus_complex(n, 1))
    assert homology.groups == {(0, q): AbGroup.free(1) for q in range(1 - n, n, 2)}
    assert homology == unknot_homology(n)


def test_torus_complex_shape():
    c = build_torus_complex(3, 4)
    assert c.lo == -4 and c.hi == 0
    assert c.chain_complex.ranks == [6, 6, 6, 6, 9]
    assert set(c.differentials) == {-1, -3}
    assert c.chain_complex.dd_is_zero()


def test_torus_complex_rejects_bad_arguments():
    with pytest.raises(ValueError):
        build_torus_complex(2, 0)
    with pytest.raises(ValueError):
        build_torus_complex(1, 3)
    with pytest.raises(ValueError):
        decompose_summands(2, -1)


def test_decompose_summands():
    assert decompose_summands(2, 3) == [
        SummandDescriptor(SummandKind.UNKNOT, 0, 2),
        SummandDescriptor(SummandKind.A_COMPLEX, -2, 7),
    ]
    kinds = [s.kind for s in decompose_summands(3, 6)]
    assert kinds.count(SummandKind.A_COMPLEX) == 2
    assert kinds.count(SummandKind.THETA) == 1
    assert kinds.count(SummandKind.UNKNOT) == 1


@pytest.mark.parametrize("n", range(2, 5))
@pytest.mark.parametrize("m", range(1, 9))
def test_two_pipelines_agree(n, m):
    full = bigraded_homology(build_torus_complex(n, m))
    split = summand_homology(n, decompose_summands(n, m))
    assert full == split


@pytest.mark.parametrize("n", range(2, 6))
@pytest.mark.parametrize("m", range(-8, 9))
def test_closed_form_total(n, m):
    assert khovanov_rozansky(n, m).total() == closed_form_total(n, m)


@pytest.mark.parametrize("n", range(2, 5))
def test_homology_and_complex_have_same_euler_characteristic(n):
    for m in range(1, 7):
        c = build_torus_complex(n, m)
        assert euler_characteristic(c) == euler_characteristic(bigraded_homology(c))


def test_unlink():
    for n in range(2, 5):
        unlink = unlink_homology(n)
        assert unlink == khovanov_rozansky(n, 0)
        assert unlink.total() == AbGroup.free(n * n)
        assert euler_characteristic(unlink) == qint(n) * qint(n)


def test_dualize_is_an_involution():
    g = khovanov_rozansky(3, 5)
    assert dualize(dualize(g)) == g
    assert dualize(g).total() == g.total()


def test_dualize_moves_torsion_up_one():
    g = BigradedGroup({(0, 0): AbGroup(1, (2,)), (-2, 4): AbGroup.free(2)})
    assert dualize(g).groups == {
        (0, 0): AbGroup.free(1),
        (1, 0): AbGroup(0, (2,)),
        (2, -4): AbGroup.free(2),
    }


def test_mirror_has_conjugate_euler_characteristic():
    for n in range(2, 5):
        for m in range(1, 6):
            assert euler_characteristic(khovanov_rozansky(n, -m)) == euler_characteristic(khovanov_rozansky(n, m)).bar()


def test_tensor_product():
    unknot = unknot_homology(2)
    assert tensor_product(unknot, unknot).groups == {
        (0, -2): AbGroup.free(1), (0, 0): AbGroup.free(2), (0, 2): AbGroup.free(1),
    }
    with pytest.raises(ValueError):
        tensor_product(unknot, BigradedGroup({(0, 0): AbGroup(0, (2,))}))


def test_bigraded_complex_rejects_inhomogeneous_differential():
    with pytest.raises(ValueError):
        BigradedComplex(lo=0, qdegrees=[[0], [2]], differentials={0: IntMatrix([[1]])})
    c = BigradedComplex(lo=0, qdegrees=[[2], [2]], differentials={0: IntMatrix([[1]])})
    assert bigraded_homology(c).groups == {}


def test_shifted_complex():
    a = build_A_complex(2)
    shifted = a.shifted(-2, 7)
    assert bigraded_homology(shifted) == bigraded_homology(a).shifted(-2, 7)
