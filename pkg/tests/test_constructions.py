import pytest

from multisect.constructions import (
    DoubledSurfaceContext,
    GluePlan,
    bisection_from_heegaard,
    bisection_from_trisection,
    cap_off,
    christoffel_word,
    close_boundary,
    double_bisection,
    flip_bisection,
    genus_report,
    glue_bisections,
    insert_parallel_sectors,
    lens_diagram,
    merge_adjacent_sectors,
    mergeable_interfaces,
    sphere_bundle_sum_diagram,
    standardize_curve,
)
from multisect.diagrams import (
    CutSystem,
    MultisectionDiagram,
    SurfaceModel,
    connected_sum,
    connected_sum_power,
    parallel,
    pi1_of_diagram,
    standard_system,
    validate,
)
from multisect.freewords import FreeAutomorphism, Word, apply, cyclic_reduce
from multisect.presentations import AbelianInvariants
from multisect.utils.exceptions import (
    BoundaryMismatchError,
    ConstructionError,
    MergeRefusedError,
    ValidationError,
)


@pytest.fixture
def trisection():
    """Closed 3-section obtained by capping the bisection of punctured S1 x S2 x I."""
    return close_boundary(bisection_from_heegaard(sphere_bundle_sum_diagram(1)))


@pytest.mark.parametrize(
    "p,q,expected", [(2, 1, [2, 2, 1]), (5, 2, [2, 2, 2, 1, 2, 2, 1]), (1, 1, [2, 1])]
)
def test_christoffel_word(p, q, expected):
    assert christoffel_word(p, q) == expected


@pytest.mark.parametrize("p,q", [(5, 2), (7, 3), (8, 3)])
def test_standardize_curve(p, q):
    curve = Word.from_ints(2, christoffel_word(p, q))
    image = cyclic_reduce(apply(standardize_curve(curve), curve)).ints()
    assert len(image) == 1 and image[0] > 0


@pytest.mark.parametrize("p,q", [(4, 2), (0, 1), (3, -1)])
def test_lens_parameters_rejected(p, q):
    with pytest.raises(ValidationError):
        lens_diagram(p, q)


def test_doubled_surface_involution():
    ctx = DoubledSurfaceContext(2)
    assert ctx.rank == 8
    for k in range(1, ctx.rank + 1):
        w = Word.generator(ctx.rank, k)
        assert ctx.transport(w) != w
        assert ctx.transport(ctx.transport(w)) == w


@pytest.mark.parametrize("n", [2, 3])
def test_bisection_of_lens_sums(n):
    b = bisection_from_heegaard(connected_sum_power(lens_diagram(5, 1), n))
    assert b.genus == 2 * n
    assert b.claimed_types == (n, n)
    assert b.boundary_invariants() == AbelianInvariants(0, (5,) * (2 * n))
    report = genus_report(b)
    assert report.lower_bound == 2 * n
    assert report.heegaard_lower_bound == n
    assert report.minimal_certified
    assert "minimal certified" in list(report.lines())


def test_bisection_needs_standardizer():
    h = lens_diagram(3, 1)
    bare = type(h)(h.genus, h.beta_curves, None, h.name)
    with pytest.raises(ConstructionError):
        bisection_from_heegaard(bare)


def test_double(lens21_bisection):
    b = lens21_bisection
    doubled = double_bisection(b)
    assert doubled.closed
    assert doubled.claimed_types == (1, 1, 1, 1)
    assert doubled.readings[(1, 4)] == b.reading(1, 2)
    assert doubled.abelian_invariants() == b.abelian_invariants()
    assert validate(doubled).ok
    assert genus_report(doubled).boundary_rank is None


def test_double_refuses_closed(lens21_bisection):
    with pytest.raises(ConstructionError):
        double_bisection(double_bisection(lens21_bisection))


@pytest.mark.parametrize("count", [1, 2, 3])
def test_insert_parallel_sectors(lens21_bisection, count):
    doubled = double_bisection(lens21_bisection)
    inserted = insert_parallel_sectors(doubled, 2, count)
    assert len(inserted.systems) == 4 + count
    assert inserted.claimed_types == (1,) + (2,) * count + (1, 1, 1)
    assert inserted.labels()[2] == "beta.1"
    assert validate(inserted).ok


def test_insert_rejects_boundary_position(lens21_bisection):
    with pytest.raises(ConstructionError):
        insert_parallel_sectors(lens21_bisection, 1)
    assert insert_parallel_sectors(lens21_bisection, 2, 0) is lens21_bisection


def test_merge_refuses_small_diagram(lens21_bisection):
    with pytest.raises(MergeRefusedError):
        merge_adjacent_sectors(lens21_bisection, 2)
    assert mergeable_interfaces(lens21_bisection) == []


def test_merge_undoes_insertion(lens21_bisection):
    inserted = insert_parallel_sectors(lens21_bisection, 2)
    assert mergeable_interfaces(inserted) == [2, 3]
    merged = merge_adjacent_sectors(inserted, 3)
    assert len(merged.systems) == 3
    assert merged.claimed_types == (1, 1)
    assert validate(merged).ok


def test_glue_capped(lens21_bisection):
    glued = glue_bisections(GluePlan.auto(lens21_bisection, 2))
    assert glued.closed
    assert len(glued.systems) == 6
    assert glued.labels()[0].startswith("alpha")
    assert glued.abelian_invariants() == lens21_bisection.abelian_invariants()


def test_glue_uncapped(lens21_bisection):
    glued = glue_bisections(GluePlan.auto(lens21_bisection, 2, capped=False))
    assert not glued.closed
    assert len(glued.systems) == 5
    assert glued.claimed_types == (1, 1, 1, 1)
    assert glued.boundary_invariants() == AbelianInvariants(lens21_bisection.genus)


def test_glue_plan_checks(lens21_bisection, trisection):
    assert GluePlan.auto(lens21_bisection, 3).interfaces == ("H1", "H3")
    with pytest.raises(ConstructionError):
        GluePlan(())
    with pytest.raises(ConstructionError):
        GluePlan.auto(lens21_bisection, 0)
    with pytest.raises(ConstructionError):
        GluePlan.auto(trisection, 1)


def test_close_boundary(trisection):
    assert trisection.closed
    assert trisection.claimed_types == (1, 1, 2)
    assert validate(trisection).ok


def test_close_boundary_needs_sphere_bundles(lens21_bisection):
    with pytest.raises(ConstructionError):
        close_boundary(lens21_bisection)


def test_trisection_restriction(trisection):
    kept = bisection_from_trisection(trisection, 3)
    assert not kept.closed
    assert kept.claimed_types == (1, 1)
    assert kept.boundary_invariants() == AbelianInvariants(2)

    rotated = bisection_from_trisection(trisection, 1)
    assert rotated.claimed_types == (1, 2)
    assert rotated.system(1) == trisection.system(2)
    assert rotated.boundary_invariants() == AbelianInvariants(1)
    assert validate(rotated).ok


def test_trisection_restriction_errors(lens21_bisection, trisection):
    with pytest.raises(ConstructionError):
        bisection_from_trisection(lens21_bisection, 1)
    with pytest.raises(ConstructionError):
        bisection_from_trisection(trisection, 4)


def test_flip_bisection(lens21_bisection):
    flipped = flip_bisection(lens21_bisection)
    assert flipped.system(1) == lens21_bisection.system(3)
    assert flipped.claimed_types == (1, 1)
    assert pi1_of_diagram(flipped).generator_count == 2


@pytest.mark.parametrize("p,q", [(3, 2), (5, 2), (7, 3), (8, 3)])
def test_double_of_twisted_lens(p, q):
    b = bisection_from_heegaard(lens_diagram(p, q))
    doubled = double_bisection(b)
    report = validate(doubled)
    assert report.ok, report.verdicts
    assert doubled.abelian_invariants() == AbelianInvariants(0, (p,))


@pytest.mark.parametrize("p,q", [(3, 2), (5, 2), (7, 3)])
@pytest.mark.parametrize("m", [2, 3])
def test_glue_of_twisted_lens(p, q, m):
    b = bisection_from_heegaard(lens_diagram(p, q))
    capped = glue_bisections(GluePlan.auto(b, m))
    assert len(capped.systems) == 2 * m + 2
    assert validate(capped).ok
    assert capped.abelian_invariants() == b.abelian_invariants()
    assert validate(glue_bisections(GluePlan.auto(b, m, capped=False))).ok


def test_glue_of_lens_sum_with_cap():
    b = bisection_from_heegaard(connected_sum(lens_diagram(3, 1), lens_diagram(5, 2)))
    capped = glue_bisections(GluePlan.auto(b, 3))
    assert len(capped.systems) == 8
    assert validate(capped).ok
    assert capped.abelian_invariants() == AbelianInvariants(0, (15,))


@pytest.fixture
def slid_diagram():
    """alpha, a handle slide of alpha over beta, beta, alpha again; every sector has type 0."""
    surface = SurfaceModel(1)
    slid = CutSystem(
        surface,
        (surface.word([1, 2]),),
        FreeAutomorphism.transvection(2, 1, 2, -1, "right"),
        "slid",
    )
    beta = CutSystem(surface, (surface.word([2]),), FreeAutomorphism.relabel(2, [2, 1]), "beta")
    systems = (standard_system(surface), slid, beta, standard_system(surface, "delta"))
    return MultisectionDiagram(surface, systems, False, (0, 0, 0))


def test_merge_by_readings(slid_diagram):
    assert validate(slid_diagram).ok
    assert mergeable_interfaces(slid_diagram) == [2, 3]
    merged = merge_adjacent_sectors(slid_diagram, 2)
    assert merged.labels() == ("alpha", "beta", "delta")
    assert merged.claimed_types == (0, 0)
    assert validate(merged).ok
    assert merged.abelian_invariants() == AbelianInvariants(0)


def test_merge_refused_across_double(lens21_bisection):
    doubled = double_bisection(lens21_bisection)
    assert validate(doubled).ok
    assert mergeable_interfaces(doubled) == []
    for r in (1, 2):
        with pytest.raises(MergeRefusedError):
            merge_adjacent_sectors(doubled, r)


def test_merge_capped_glue(lens21_bisection):
    capped = glue_bisections(GluePlan.auto(lens21_bisection, 2))
    assert mergeable_interfaces(capped) == [3, 4, 5]
    for r in (3, 4, 5):
        merged = merge_adjacent_sectors(capped, r)
        assert merged.closed
        assert len(merged.systems) == 5
        assert validate(merged).ok
        assert merged.abelian_invariants() == AbelianInvariants(0, (2,))


def test_cap_off_with_flip_is_double(lens21_bisection):
    b = lens21_bisection
    capped = cap_off(b, flip_bisection(b))
    doubled = double_bisection(b)
    assert capped.closed
    assert capped.claimed_types == (1, 1, 1, 1)
    assert all(parallel(x, y) for x, y in zip(capped.systems, doubled.systems))
    assert validate(capped).ok
    assert capped.abelian_invariants() == doubled.abelian_invariants()


def test_cap_off_boundary_mismatch(lens21_bisection, make_bisection):
    with pytest.raises(BoundaryMismatchError) as e:
        cap_off(lens21_bisection, make_bisection(3))
    assert e.value.left == [2, 2]
    assert e.value.right == [3, 3]
    with pytest.raises(ConstructionError):
        cap_off(lens21_bisection, double_bisection(lens21_bisection))
