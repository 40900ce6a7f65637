import random
from itertools import combinations, combinations_with_replacement

import pytest

from liewide.errors import InvalidInputError, MathematicalRejection
from liewide.services.closedset import (
    ClosedSubset,
    closed_subset,
    closure,
    conjugate_special_negative,
    conjugate_subsets,
    enumerate_closed_subsets,
    is_closed,
    is_parabolic,
    is_special,
    is_symmetric,
    symmetric_hull,
)
from liewide.services.presets import EXAMPLE1_T
from liewide.services.rootsys import WeylWord, apply_word, build_root_system, weyl_group_elements


def _brute_force_count(system):
    roots = system.roots
    count = 0
    for size in range(len(roots) + 1):
        for subset in combinations(roots, size):
            if is_closed(system, subset):
                count += 1
    return count


def test_enumerate_a1():
    system = build_root_system("A1")
    subsets = [T.to_lists() for T in enumerate_closed_subsets(system)]
    assert subsets == [[], [[1]], [[-1]], [[-1], [1]]]


@pytest.mark.parametrize("spec", ["A1", "A2", "B2"])
def test_enumeration_matches_brute_force(spec):
    system = build_root_system(spec)
    found = list(enumerate_closed_subsets(system))
    assert len(found) == len({T.members for T in found})
    assert all(is_closed(system, T.members) for T in found)
    assert len(found) == _brute_force_count(system)


def test_enumeration_bound(a3):
    with pytest.raises(InvalidInputError):
        list(enumerate_closed_subsets(a3, bound=10))


def test_closure():
    system = build_root_system("A2")
    T = closure(system, [[1, 0], [0, 1]])
    assert T.to_lists() == [[1, 0], [0, 1], [1, 1]]


def test_closed_subset_rejects_open_sets(a3):
    with pytest.raises(MathematicalRejection, match="missing"):
        closed_subset(a3, [[1, 0, 0], [0, 1, 0]])
    with pytest.raises(InvalidInputError):
        closed_subset(a3, [[1, 0]])


def test_split_of_example1(a3):
    T = closed_subset(a3, EXAMPLE1_T)
    assert {r.coeffs for r in T.symmetric} == {(0, 0, 1), (0, 0, -1)}
    assert {r.coeffs for r in T.special} == {(-1, 0, 0), (-1, -1, 0), (-1, -1, -1)}
    assert not is_parabolic(T)
    assert is_special(a3, T.special)
    assert is_symmetric(T.symmetric)


def test_symmetric_hull_of_example1_is_everything(a3):
    hull = symmetric_hull(closed_subset(a3, EXAMPLE1_T))
    assert len(hull) == len(a3.roots)


def test_symmetric_hull_of_levi_stays_small(a3):
    T = closed_subset(a3, [[0, 0, 1], [0, 0, -1]])
    assert symmetric_hull(T).to_lists() == [[0, 0, -1], [0, 0, 1]]


def test_positive_roots_are_parabolic(a3):
    assert is_parabolic(closed_subset(a3, [r.coeffs for r in a3.positive_roots]))


def test_conjugate_positive_roots(a3):
    word, image = conjugate_special_negative(a3, a3.positive_roots)
    assert image == frozenset(a3.negative_roots)
    assert all(not apply_word(a3, word, r).is_positive for r in a3.positive_roots)


def test_conjugate_rejects_non_special(a3):
    with pytest.raises(MathematicalRejection):
        conjugate_special_negative(a3, [[1, 0, 0], [-1, 0, 0]])


@pytest.mark.parametrize("spec", ["A2", "B2", "G2"])
def test_conjugation_lands_in_negative_roots(spec):
    system = build_root_system(spec)
    for T in enumerate_closed_subsets(system):
        if not T.special:
            continue
        word, image = conjugate_special_negative(system, T.special)
        assert all(not apply_word(system, word, r).is_positive for r in T.special)
        assert image == frozenset(apply_word(system, word, r) for r in T.special)


def test_conjugation_of_random_special_sets(a3):
    rng = random.Random(20240601)
    words = weyl_group_elements(a3)
    for _ in range(50):
        seed = rng.sample(list(a3.positive_roots), rng.randint(1, 4))
        special = closure(a3, seed).members
        moved = frozenset(apply_word(a3, rng.choice(words), r) for r in special)
        assert is_special(a3, moved)
        word, image = conjugate_special_negative(a3, moved)
        assert all(not r.is_positive for r in image)
        assert image == frozenset(apply_word(a3, word, r) for r in moved)


def test_parabolicity_is_weyl_invariant():
    system = build_root_system("A2")
    words = weyl_group_elements(system)
    for T in enumerate_closed_subsets(system):
        for word in words:
            image = ClosedSubset(system, frozenset(apply_word(system, word, r) for r in T.members))
            assert is_parabolic(image) == is_parabolic(T)


def test_conjugate_subsets(a3):
    first = [[1, 0, 0]]
    second = [[0, 0, -1]]
    word = conjugate_subsets(a3, first, second)
    assert word is not None
    assert apply_word(a3, word, a3.simple_root(1)).coeffs == (0, 0, -1)
    assert conjugate_subsets(a3, first, [[1, 0, 0], [0, 1, 0]]) is None
    assert conjugate_subsets(a3, first, first) == WeylWord()


@pytest.mark.parametrize("spec", ["A2", "B2"])
def test_sums_of_up_to_four_members_stay_inside(spec):
    system = build_root_system(spec)
    for T in enumerate_closed_subsets(system):
        members = T.sorted()
        for k in range(1, 5):
            for chosen in combinations_with_replacement(members, k):
                total = tuple(sum(c) for c in zip(*(r.coeffs for r in chosen)))
                if any(total) and system.is_root(total):
                    assert system.root(total) in T


@pytest.mark.parametrize("spec", ["A2", "B2", "G2"])
def test_special_part_absorbs_sums(spec):
    system = build_root_system(spec)
    for T in enumerate_closed_subsets(system):
        for alpha in T.special:
            for beta in T.members:
                total = system.add(alpha, beta)
                if total is not None:
                    assert total in T.special


def test_closure_is_idempotent_and_monotone(a3):
    rng = random.Random(20261016)
    roots = list(a3.roots)
    for _ in range(40):
        small = rng.sample(roots, rng.randint(0, 4))
        large = small + rng.sample(roots, rng.randint(0, 3))
        hull = closure(a3, small)
        assert closure(a3, hull.members) == hull
        assert is_closed(a3, hull.members)
        assert set(small) <= hull.members
        assert hull.members <= closure(a3, large).members


@pytest.mark.parametrize("spec", ["A2", "B2", "G2"])
def test_weyl_images_of_closed_subsets_are_closed(spec):
    system = build_root_system(spec)
    words = weyl_group_elements(system)
    for T in enumerate_closed_subsets(system):
        for word in words:
            assert is_closed(system, [apply_word(system, word, r) for r in T.members])
