import pytest

from distgraph import (
    MUTATION_TARGETS,
    ContractViolation,
    EnumerationParams,
    ResourceError,
    are_equivalent,
    canonical_code,
    enumerate_census,
    is_orientable,
    is_realizable,
    mutate,
    random_relabel,
    validate,
)
from distgraph.realizability import orientability_and_genus

from conftest import fix_a, fix_b, fix_c, fix_d

# regression snapshots: class counts as first computed by the census itself
# (max_edges, require_orientable, max_patch_genus) -> (classes, instances kept)
PINNED = {
    (1, True, 0): (4, 6),
    (1, True, 1): (10, 18),
    (1, False, 0): (8, 10),
    (1, False, 1): (18, 26),
    (2, True, 0): (18, 37),
    (2, True, 1): (63, 169),
    (2, False, 0): (56, 91),
    (2, False, 1): (159, 329),
    (3, True, 0): (82, 273),
}

_VERDICT = {"conditionA": "a", "link": "link", "conditionB": "b", "conditionC": "c"}


@pytest.mark.parametrize("key", sorted(PINNED))
def test_pinned_counts(key):
    max_edges, orientable, genus = key
    census = enumerate_census(EnumerationParams(max_edges, require_orientable=orientable, max_patch_genus=genus))
    assert (len(census), sum(e.class_size for e in census)) == PINNED[key]


def test_pinned_count_four_edges(census):
    assert len(census) == 420


def test_small_census_contains_fixtures():
    census = enumerate_census(EnumerationParams(2, require_orientable=True, max_patch_genus=1))
    codes = {e.code for e in census}
    assert canonical_code(fix_a()) in codes
    assert canonical_code(fix_b()) in codes
    assert canonical_code(fix_c()) not in codes


def test_single_edge_census_is_all_loops():
    for entry in enumerate_census(EnumerationParams(1, max_patch_genus=1)):
        g = entry.representative
        assert len(g.edges) == 1 and g.edges[0].is_loop


def test_monotone_in_max_edges():
    small = {e.code for e in enumerate_census(EnumerationParams(2, require_orientable=True))}
    large = {e.code for e in enumerate_census(EnumerationParams(3, require_orientable=True))}
    assert small <= large


def test_entries_sound(census):
    codes = [e.code for e in census]
    assert codes == sorted(codes) and len(set(codes)) == len(codes)
    for entry in census:
        g = entry.representative
        assert validate(g).ok
        assert is_realizable(g).overall
        assert entry.code == canonical_code(g)
        assert entry.invariants == orientability_and_genus(g)
        assert entry.class_size >= 1


def test_census_deterministic():
    params = EnumerationParams(3, require_orientable=True)
    assert enumerate_census(params) == enumerate_census(params)


def test_candidate_cap():
    with pytest.raises(ResourceError) as info:
        enumerate_census(EnumerationParams(3, max_candidates=10))
    assert info.value.cap == "max_candidates"


def test_time_cap():
    with pytest.raises(ResourceError) as info:
        enumerate_census(EnumerationParams(3, time_limit=0.0))
    assert info.value.cap == "time_limit"


def test_params_validation():
    with pytest.raises(ValueError):
        EnumerationParams(0)
    with pytest.raises(ValueError):
        EnumerationParams(1, max_patch_genus=-1)


def test_relabel_deterministic():
    g = fix_a()
    assert random_relabel(g, 5) == random_relabel(g, 5)


def test_relabel_equivalent():
    assert are_equivalent(fix_a(), random_relabel(fix_a(), 1)) is not None
    for seed in range(10):
        assert canonical_code(random_relabel(fix_b(), seed)) == canonical_code(fix_b())


def test_mutate_examples():
    a = fix_a()
    assert fix_d() in mutate(a, "conditionC")
    assert fix_c() in mutate(a, "orientability")
    three = [m for m in mutate(a, "conditionA") if [len(w) for w in m.words()] == [3]]
    assert three


@pytest.mark.parametrize("target", MUTATION_TARGETS)
def test_mutants_break_target(target):
    for g in (fix_a(), fix_b()):
        for m in mutate(g, target):
            assert validate(m).ok
            if target == "orientability":
                assert not is_orientable(m)
            else:
                assert _VERDICT[target] in is_realizable(m).failing()


@pytest.mark.parametrize("target", sorted(_VERDICT))
def test_some_mutant_breaks_only_target(target):
    ms = mutate(fix_a(), target)
    assert any(is_realizable(m).failing() == {_VERDICT[target]} for m in ms)


def test_mutants_of_census(census):
    for entry in census[::40]:
        for target in MUTATION_TARGETS:
            for m in mutate(entry.representative, target)[:5]:
                assert validate(m).ok


def test_mutate_needs_realizable():
    with pytest.raises(ContractViolation):
        mutate(fix_d(), "conditionA")
    with pytest.raises(ValueError):
        mutate(fix_a(), "conditionZ")
