import pytest

from multisect.freewords import Word
from multisect.presentations import (
    AbelianInvariants,
    FiniteAbelianGroup,
    GroupPresentation,
    Surjection,
    abelian_groups_up_to,
    enumerate_finite_abelian_quotients,
)
from multisect.utils.exceptions import BoundExceededError, ValidationError


def test_groups_up_to_order_eight():
    groups = abelian_groups_up_to(8, 3)
    assert [G.factors for G in groups] == [
        (2,),
        (3,),
        (2, 2),
        (4,),
        (5,),
        (6,),
        (7,),
        (2, 2, 2),
        (2, 4),
        (8,),
    ]


def test_groups_respect_rank_limit():
    assert all(G.rank <= 1 for G in abelian_groups_up_to(16, 1))


@pytest.mark.parametrize("factors", [(4, 2), (1,), (0, 3)])
def test_invalid_factors(factors):
    with pytest.raises(ValidationError):
        FiniteAbelianGroup(factors)


def test_prime_only_for_elementary_groups():
    assert FiniteAbelianGroup.elementary(5, 2).prime == 5
    assert FiniteAbelianGroup((4, 4)).prime is None
    assert FiniteAbelianGroup((2, 4)).prime is None


@pytest.mark.parametrize(
    "factors,vectors,expected",
    [
        ((4,), [(2,)], False),
        ((4,), [(3,)], True),
        ((2, 4), [(1, 0), (0, 1)], True),
        ((2, 4), [(1, 2), (0, 2)], False),
        ((5, 5), [(1, 1), (2, 2)], False),
        ((5, 5), [(1, 1), (2, 3)], True),
    ],
)
def test_is_generated_by(factors, vectors, expected):
    assert FiniteAbelianGroup(factors).is_generated_by(vectors) is expected


@pytest.mark.parametrize(
    "factors,invariants,expected",
    [
        ((2, 4), AbelianInvariants(0, (2, 4)), True),
        ((4,), AbelianInvariants(0, (2,)), False),
        ((5, 5), AbelianInvariants(2), True),
        ((3, 3), AbelianInvariants(0, (3,)), False),
        ((2,), AbelianInvariants(1, (3,)), True),
    ],
)
def test_is_quotient_of(factors, invariants, expected):
    assert FiniteAbelianGroup(factors).is_quotient_of(invariants) is expected


def test_surjection_evaluates_words():
    phi = Surjection(FiniteAbelianGroup((5,)), ((2,),))
    assert phi(Word.from_ints(1, [1, 1, 1])) == (1,)
    assert phi(Word.from_ints(1, [-1])) == (3,)


def test_cyclic_quotients_of_cyclic_group():
    P = GroupPresentation.from_ints(1, [[1] * 5])
    assert len(enumerate_finite_abelian_quotients(P, [FiniteAbelianGroup((5,))])) == 4
    assert enumerate_finite_abelian_quotients(P, [FiniteAbelianGroup((2,))]) == []


def test_quotients_onto_elementary_square(z5_squared):
    surjections = enumerate_finite_abelian_quotients(z5_squared, [FiniteAbelianGroup((5, 5))])
    # one per element of GL(2, 5)
    assert len(surjections) == 480
    for phi in surjections[:20]:
        assert all(phi(r) == (0, 0) for r in z5_squared.relators)


def test_order_bound_enforced():
    P = GroupPresentation.from_ints(1, [])
    with pytest.raises(BoundExceededError):
        enumerate_finite_abelian_quotients(P, [FiniteAbelianGroup((128,))], order_bound=64)


def test_candidate_bound_enforced(z5_squared):
    with pytest.raises(BoundExceededError):
        enumerate_finite_abelian_quotients(
            z5_squared, [FiniteAbelianGroup((5,))], size_bound=10
        )
