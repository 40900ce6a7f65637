"""
Closed subsets of a root system: closedness, closure, the symmetric/special
split, parabolicity, and Weyl conjugation of special subsets into Φ⁻.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from liewide.config import settings
from liewide.errors import InvalidInputError, MathematicalRejection
from liewide.logger import get_logger
from liewide.services.rootsys import (
    Coeffs,
    Root,
    RootSystem,
    WeylWord,
    _reflect_coeffs,
    apply_word,
    weyl_group_elements,
)

logger = get_logger(__name__)

RootLike = Union[Root, Sequence[int]]

PERCEPTRON_LIMIT = 10_000


@dataclass(frozen=True, eq=False)
class ClosedSubset:
    ambient: RootSystem
    members: FrozenSet[Root]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ClosedSubset)
            and self.ambient == other.ambient
            and self.members == other.members
        )

    def __hash__(self) -> int:
        return hash((self.ambient, self.members))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Root]:
        return iter(self.sorted())

    def __contains__(self, root: object) -> bool:
        return root in self.members

    def sorted(self) -> List[Root]:
        return self.ambient.sort_roots(self.members)

    @cached_property
    def split(self) -> Tuple[FrozenSet[Root], FrozenSet[Root]]:
        return decompose(self)

    @property
    def symmetric(self) -> FrozenSet[Root]:
        return self.split[0]

    @property
    def special(self) -> FrozenSet[Root]:
        return self.split[1]

    def to_lists(self) -> List[List[int]]:
        return [list(r.coeffs) for r in self.sorted()]


def as_roots(system: RootSystem, items: Iterable[RootLike]) -> FrozenSet[Root]:
    """
    Validates that every item is a root of the system.
    """
    out = set()
    for item in items:
        coeffs = item.coeffs if isinstance(item, Root) else tuple(item)
        if len(coeffs) != system.rank:
            raise InvalidInputError(f"{list(coeffs)} has wrong length for {system.name}")
        out.add(system.root(coeffs))
    return frozenset(out)


def _saturate(system: RootSystem, seed: Iterable[Root]) -> FrozenSet[Root]:
    members = set(seed)
    work = list(members)
    while work:
        x = work.pop()
        for y in list(members):
            z = system.add(x, y)
            if z is not None and z not in members:
                members.add(z)
                work.append(z)
    return frozenset(members)


def is_closed(system: RootSystem, subset: Iterable[RootLike]) -> bool:
    members = as_roots(system, subset)
    for x in members:
        for y in members:
            z = system.add(x, y)
            if z is not None and z not in members:
                return False
    return True


def closure(system: RootSystem, subset: Iterable[RootLike]) -> ClosedSubset:
    """
    The smallest closed subset containing the given roots.
    """
    return ClosedSubset(system, _saturate(system, as_roots(system, subset)))


def closed_subset(system: RootSystem, subset: Iterable[RootLike]) -> ClosedSubset:
    """
    Wraps an already closed set of roots, rejecting it otherwise.
    """
    members = as_roots(system, subset)
    if not is_closed(system, members):
        missing = sorted(
            (z for x in members for y in members if (z := system.add(x, y)) and z not in members),
            key=system.position,
        )
        raise MathematicalRejection(f"subset is not closed: missing {missing[0]}")
    return ClosedSubset(system, members)


def decompose(subset: ClosedSubset) -> Tuple[FrozenSet[Root], FrozenSet[Root]]:
    """
    Splits T into its symmetric part Tʳ and special part Tᵘ.
    """
    members = subset.members
    symmetric = frozenset(r for r in members if -r in members)
    special = members - symmetric
    system = subset.ambient
    if not (is_closed(system, symmetric) and is_closed(system, special)):
        raise AssertionError("symmetric and special parts of a closed set must be closed")
    return symmetric, special


def is_symmetric(subset: Iterable[Root]) -> bool:
    members = frozenset(subset)
    return all(-r in members for r in members)


def is_special(system: RootSystem, subset: Iterable[RootLike]) -> bool:
    members = as_roots(system, subset)
    return is_closed(system, members) and not any(-r in members for r in members)


def is_parabolic(subset: ClosedSubset) -> bool:
    members = subset.members
    return all(r in members or -r in members for r in subset.ambient.roots)


def symmetric_hull(subset: ClosedSubset) -> ClosedSubset:
    """
    [T ∪ −T], a symmetric closed subset containing T.
    """
    doubled = subset.members | frozenset(-r for r in subset.members)
    hull = closure(subset.ambient, doubled)
    if not (is_symmetric(hull.members) and subset.members <= hull.members):
        raise AssertionError("symmetric hull must be symmetric and contain T")
    return hull


def _separating_vector(system: RootSystem, special: Sequence[Root]) -> Optional[Coeffs]:
    """
    Integer vector v in the root lattice with (v, α) > 0 for every α given,
    found by the perceptron iteration. None if the iteration limit is hit.
    """
    v = (0,) * system.rank
    for _ in range(PERCEPTRON_LIMIT):
        bad = next((a for a in special if system.inner(v, a.coeffs) <= 0), None)
        if bad is None:
            return v
        v = tuple(x + y for x, y in zip(v, bad.coeffs))
    return None


def _regularize(system: RootSystem, v: Coeffs) -> Coeffs:
    """
    Moves v off every root hyperplane without changing nonzero signs of (v, β).
    """
    two_rho = tuple(sum(r.coeffs[i] for r in system.positive_roots) for i in range(system.rank))
    scale = 1 + max(abs(system.inner(two_rho, r.coeffs)) for r in system.roots)
    return tuple(scale * x + y for x, y in zip(v, two_rho))


def _walk_to_dominant(system: RootSystem, v: Coeffs) -> WeylWord:
    applied: List[int] = []
    while True:
        i = next(
            (j for j in range(system.rank) if system.inner(v, system.simple_root(j + 1).coeffs) < 0),
            None,
        )
        if i is None:
            return WeylWord(tuple(reversed(applied)))
        v = _reflect_coeffs(system.cartan, i, v)
        applied.append(i + 1)


def _search_weyl_group(system: RootSystem, special: FrozenSet[Root]) -> WeylWord:
    for word in weyl_group_elements(system):
        if all(not apply_word(system, word, r).is_positive for r in special):
            return word
    raise MathematicalRejection("no Weyl group element maps the set into Φ⁻")


def conjugate_special_negative(
    system: RootSystem, special: Iterable[RootLike]
) -> Tuple[WeylWord, FrozenSet[Root]]:
    """
    Returns w with w(S) ⊆ Φ⁻ for a special closed subset S, plus the image w(S).
    """
    members = as_roots(system, special)
    if not is_special(system, members):
        raise MathematicalRejection("input is not a special closed subset")
    ordered = system.sort_roots(members)
    v = _separating_vector(system, ordered)
    if v is None:
        if system.rank > 3:
            raise MathematicalRejection("separating vector search did not converge")
        logger.debug("Falling back to Weyl group search", system=system.name)
        word = _search_weyl_group(system, members)
    else:
        negated = tuple(-x for x in v)
        word = _walk_to_dominant(system, _regularize(system, negated))
    image = frozenset(apply_word(system, word, r) for r in members)
    if any(r.is_positive for r in image):
        raise AssertionError("conjugated special set is not contained in Φ⁻")
    return word, image


def conjugate_subsets(
    system: RootSystem, first: Iterable[RootLike], second: Iterable[RootLike]
) -> Optional[WeylWord]:
    """
    Some w with w(first) = second, or None.
    """
    a, b = as_roots(system, first), as_roots(system, second)
    if len(a) != len(b):
        return None
    for word in weyl_group_elements(system):
        if frozenset(apply_word(system, word, r) for r in a) == b:
            return word
    return None


def enumerate_closed_subsets(
    system: RootSystem, bound: Optional[int] = None
) -> Iterator[ClosedSubset]:
    """
    Yields every closed subset exactly once, in a deterministic order.

    Backtracks over the root order: each root is first excluded, then included
    together with the closure it forces; branches whose closure hits an
    excluded root are pruned.
    """
    bound = bound or settings.ENUM_BOUND
    if len(system.roots) > bound:
        raise InvalidInputError(
            f"{system.name} has {len(system.roots)} roots, above the enumeration bound {bound}"
        )
    roots = system.roots

    def walk(i: int, chosen: FrozenSet[Root], excluded: FrozenSet[Root]) -> Iterator[ClosedSubset]:
        while i < len(roots) and (roots[i] in chosen or roots[i] in excluded):
            i += 1
        if i == len(roots):
            yield ClosedSubset(system, chosen)
            return
        root = roots[i]
        yield from walk(i + 1, chosen, excluded | {root})
        grown = _saturate(system, chosen | {root})
        if not grown & excluded:
            yield from walk(i + 1, grown, excluded)

    yield from walk(0, frozenset(), frozenset())
