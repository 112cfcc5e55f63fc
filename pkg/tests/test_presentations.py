import itertools
from math import gcd

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import settings as hypothesis_settings
from hypothesis import strategies as st

from multisect.freewords import Word
from multisect.presentations import (
    AbelianInvariants,
    GroupPresentation,
    SectorVerdict,
    VerdictStatus,
    abelianization,
    format_presentation,
    parse_presentation,
    smith_normal_form,
    tietze_simplify,
    verify_free_of_rank,
)
from multisect.presentations.matrices import exgcd
from multisect.utils.exceptions import ParseError, RankMismatchError, ValidationError


def determinantal_factors(rows):
    """Invariant factors above 1 from gcds of k x k minors."""
    M = sympy.Matrix(rows)
    divisors = [1]
    for k in range(1, min(M.shape) + 1):
        g = 0
        for r in itertools.combinations(range(M.shape[0]), k):
            for c in itertools.combinations(range(M.shape[1]), k):
                g = gcd(g, int(M.extract(list(r), list(c)).det()))
        if g == 0:
            break
        divisors.append(g)
    factors = [divisors[k] // divisors[k - 1] for k in range(1, len(divisors))]
    return tuple(d for d in factors if d > 1), len(divisors) - 1


@pytest.mark.parametrize(
    "rows,factors",
    [
        ([[2, 0], [0, 2]], (2, 2)),
        ([[2, 4], [6, 8]], (2, 4)),
        ([[4, 0], [0, 2]], (2, 4)),
        ([[1, 0], [0, 1]], ()),
        ([[0, 0], [0, 0]], ()),
    ],
)
def test_smith_normal_form_cases(rows, factors):
    assert smith_normal_form(rows).invariant_factors == factors


def test_exgcd_clears_second_entry():
    M = exgcd(12, -18)
    assert list(M @ np.array([12, -18], dtype=object)) == [6, 0]
    assert M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0] == 1


matrices = st.lists(
    st.lists(st.integers(-9, 9), min_size=4, max_size=4), min_size=4, max_size=4
)


@hypothesis_settings(max_examples=100, deadline=None)
@given(matrices)
def test_smith_form_against_determinantal_divisors(rows):
    form = smith_normal_form(rows)
    A = np.array(rows, dtype=object)
    assert (form.U @ A @ form.V == form.D).all()
    assert abs(sympy.Matrix(form.U.tolist()).det()) == 1
    assert abs(sympy.Matrix(form.V.tolist()).det()) == 1
    diagonal = [d for d in form.diagonal if d]
    assert all(b % a == 0 for a, b in zip(diagonal, diagonal[1:]))
    assert (form.invariant_factors, form.rank) == determinantal_factors(rows)


def test_abelianization_of_two_relator_group():
    P = GroupPresentation.from_ints(2, [[1, 1, -2, -2], [1, 1, 2, 2]])
    assert abelianization(P) == AbelianInvariants(0, (2, 4))


def test_abelianization_free_part():
    P = GroupPresentation.from_ints(3, [[1, 1]])
    invariants = abelianization(P)
    assert invariants == AbelianInvariants(2, (2,))
    assert str(invariants) == "Z/2 + Z^2"
    assert invariants.rank == 3


def test_invariants_validate_divisibility():
    with pytest.raises(ValidationError):
        AbelianInvariants(0, (4, 2))


def test_relator_rank_must_match():
    with pytest.raises(RankMismatchError):
        GroupPresentation(2, (Word.from_ints(3, [3]),))


def test_tietze_eliminates_to_cyclic_group():
    P = GroupPresentation.from_ints(2, [[1, -2], [1, 1], [-2, -2]])
    result = tietze_simplify(P)
    assert result.presentation.generator_count == 1
    assert [r.ints() for r in result.presentation.relators] in ([(1, 1)], [(-1, -1)])
    assert result.rewrite(Word.generator(2, 2)).ints() == (1,)


def test_tietze_transvection_frees_primitive_relator():
    P = GroupPresentation.from_ints(2, [[1, 1, 2, 1, 2]])
    result = tietze_simplify(P)
    assert result.presentation.generator_count == 1
    assert result.presentation.is_free()
    assert any(step.startswith("transvect") for step in result.trace)
    assert result.rewrite(P.relators[0]).is_identity()


def test_tietze_shortens_one_relator_by_another():
    # x^-5 y^5 and x^2 y^-2 admit no shortening transvection
    P = GroupPresentation.from_ints(2, [[-1] * 5 + [2] * 5, [1, 1, -2, -2]])
    result = tietze_simplify(P)
    assert result.trace[:2] == ("shorten relator 1 by relator 2",) * 2
    assert result.presentation.generator_count == 1
    assert result.presentation.is_free()
    assert verify_free_of_rank(P, 1).verified


def test_tietze_budget_must_be_positive():
    with pytest.raises(ValidationError):
        tietze_simplify(GroupPresentation(1), budget=0)


presentations = st.integers(1, 3).flatmap(
    lambda n: st.lists(
        st.lists(st.sampled_from([k for g in range(1, n + 1) for k in (g, -g)]), max_size=8),
        max_size=3,
    ).map(lambda relators: GroupPresentation.from_ints(n, relators))
)


@hypothesis_settings(max_examples=100, deadline=None)
@given(presentations)
def test_tietze_preserves_abelianization(P):
    result = tietze_simplify(P, budget=200)
    assert abelianization(result.presentation) == abelianization(P)
    assert len(result.generators) == result.presentation.generator_count
    assert len(result.substitutions) == P.generator_count


def test_verify_free_of_rank_verdicts():
    handlebody = GroupPresentation.from_ints(2, [[1, -2]])
    verdict = verify_free_of_rank(handlebody, 1)
    assert verdict.status is VerdictStatus.VERIFIED
    assert str(verdict) == "Verified(1)"

    torsion = GroupPresentation.from_ints(1, [[1, 1]])
    refuted = verify_free_of_rank(torsion, 1)
    assert refuted.status is VerdictStatus.REFUTED_BY_HOMOLOGY
    assert str(refuted) == "RefutedByHomology"


def test_verified_verdict_requires_matching_invariants():
    with pytest.raises(ValidationError):
        SectorVerdict(VerdictStatus.VERIFIED, 2, AbelianInvariants(1))


def test_presentation_text_format():
    P = parse_presentation("gens 2\n# relators\ng1 g1\n\ng2 g1^-1\n")
    assert P.generator_count == 2
    assert [r.ints() for r in P.relators] == [(1, 1), (2, -1)]
    assert parse_presentation(format_presentation(P)) == P


@pytest.mark.parametrize(
    "text,line_no",
    [("gens x\n", 1), ("", 1), ("gens 1\ng1\ng2\n", 3)],
)
def test_presentation_parse_errors(text, line_no):
    with pytest.raises(ParseError) as e:
        parse_presentation(text)
    assert e.value.line_no == line_no
