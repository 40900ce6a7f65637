"""
Finite root systems: Cartan data, roots, weights and Weyl group words.

Simple roots follow the Bourbaki labeling of sympy.liealgebras. Indices of simple roots are
1-based in every public function (letters of Weyl words, reflect, λ_i).
"""

import re
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from sympy import QQ
from sympy.liealgebras import CartanType

from liewide.config import settings
from liewide.errors import InvalidInputError, MathematicalRejection
from liewide.logger import get_logger
from liewide.utils.linalg import as_int

logger = get_logger(__name__)

Coeffs = Tuple[int, ...]
SystemSpec = Sequence[Tuple[str, int]]

_MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4}
_EXCEPTIONAL = {"E": (6, 7, 8), "F": (4,), "G": (2,)}
_ROOT_COUNTS = {
    "A": lambda n: n * (n + 1),
    "B": lambda n: 2 * n * n,
    "C": lambda n: 2 * n * n,
    "D": lambda n: 2 * n * (n - 1),
    "E": lambda n: {6: 72, 7: 126, 8: 240}[n],
    "F": lambda n: 48,
    "G": lambda n: 12,
}


@dataclass(frozen=True)
class Root:
    coeffs: Coeffs

    def __post_init__(self):
        if not any(self.coeffs):
            raise InvalidInputError("the zero vector is not a root")

    @property
    def height(self) -> int:
        return sum(self.coeffs)

    @property
    def is_positive(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def __neg__(self) -> "Root":
        return Root(tuple(-c for c in self.coeffs))

    def __str__(self) -> str:
        return "[" + ",".join(str(c) for c in self.coeffs) + "]"


@dataclass(frozen=True)
class Weight:
    marks: Coeffs

    @property
    def is_dominant(self) -> bool:
        return all(m >= 0 for m in self.marks)

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.marks, other.marks)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a - b for a, b in zip(self.marks, other.marks)))

    def __str__(self) -> str:
        return "(" + ",".join(str(m) for m in self.marks) + ")"


@dataclass(frozen=True)
class WeylWord:
    """Product s_{a1} s_{a2} ... s_{ak}; the rightmost letter acts first."""

    letters: Tuple[int, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    def inverse(self) -> "WeylWord":
        return WeylWord(tuple(reversed(self.letters)))

    def then(self, other: "WeylWord") -> "WeylWord":
        """The element other * self (self acts first)."""
        return WeylWord(other.letters + self.letters)


@dataclass(frozen=True, eq=False)
class RootSystem:
    components: Tuple[Tuple[str, int], ...]
    gram: Tuple[Coeffs, ...]
    cartan: Tuple[Coeffs, ...]
    roots: Tuple[Root, ...]
    positive_roots: Tuple[Root, ...]
    _index: Dict[Coeffs, int] = field(repr=False)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RootSystem) and self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def __reduce__(self):
        return (build_root_system, (list(self.components),))

    @property
    def name(self) -> str:
        return "+".join(f"{fam}{n}" for fam, n in self.components)

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def rho(self) -> Weight:
        return Weight((1,) * self.rank)

    @property
    def negative_roots(self) -> Tuple[Root, ...]:
        return tuple(r for r in self.roots if not r.is_positive)

    def simple_root(self, i: int) -> Root:
        self.check_index(i)
        return Root(tuple(1 if j == i - 1 else 0 for j in range(self.rank)))

    def check_index(self, i: int) -> None:
        if not 1 <= i <= self.rank:
            raise InvalidInputError(f"simple-root index {i} out of range 1..{self.rank}")

    def is_root(self, coeffs: Union[Root, Coeffs]) -> bool:
        key = coeffs.coeffs if isinstance(coeffs, Root) else tuple(coeffs)
        return key in self._index

    def root(self, coeffs: Iterable[int]) -> Root:
        key = tuple(int(c) for c in coeffs)
        if key not in self._index:
            raise InvalidInputError(f"{list(key)} is not a root of {self.name}")
        return self.roots[self._index[key]]

    def position(self, root: Root) -> int:
        return self._index[root.coeffs]

    def add(self, a: Root, b: Root) -> Optional[Root]:
        """a + b if it is a root, else None."""
        key = tuple(x + y for x, y in zip(a.coeffs, b.coeffs))
        idx = self._index.get(key)
        return None if idx is None else self.roots[idx]

    def sort_roots(self, roots: Iterable[Root]) -> List[Root]:
        return sorted(roots, key=self.position)

    def component_ranges(self) -> List[range]:
        out, start = [], 0
        for _, n in self.components:
            out.append(range(start, start + n))
            start += n
        return out

    def component_of(self, root: Root) -> int:
        support = [i for i, c in enumerate(root.coeffs) if c]
        for k, rng in enumerate(self.component_ranges()):
            if support[0] in rng:
                return k
        raise InvalidInputError(f"{root} has no component")  # pragma: no cover

    def inner(self, x: Coeffs, y: Coeffs) -> int:
        """(x, y) for integer vectors in simple-root coordinates."""
        n = self.rank
        return sum(x[i] * self.gram[i][j] * y[j] for i in range(n) for j in range(n) if x[i] and y[j])


def root_order_key(coeffs: Coeffs) -> Tuple:
    return (sum(coeffs), tuple(-c for c in coeffs))


def parse_system(text: str) -> List[Tuple[str, int]]:
    """
    Parses a root-system spec string such as "A3" or "B2+A1".
    """
    parts = [p.strip() for p in str(text).split("+")]
    spec = []
    for part in parts:
        match = re.fullmatch(r"([A-Ga-g])\s*(\d+)", part)
        if not match:
            raise InvalidInputError(f"cannot parse root-system component {part!r}")
        spec.append((match.group(1).upper(), int(match.group(2))))
    return spec


def _validate(family: str, n: int) -> None:
    if family in _MIN_RANK:
        if n < _MIN_RANK[family]:
            raise InvalidInputError(f"{family}{n}: rank must be at least {_MIN_RANK[family]}")
    elif family in _EXCEPTIONAL:
        if n not in _EXCEPTIONAL[family]:
            raise InvalidInputError(f"{family}{n} is not a valid type")
    else:
        raise InvalidInputError(f"unknown family {family!r}")


def _block_data(family: str, n: int) -> Tuple[List[List[int]], List[List[int]]]:
    """
    Cartan matrix ⟨α_i, α_j^∨⟩ of one simple component and its symmetric Gram
    matrix (α_i, α_j), short roots of length² 2.
    """
    if family == "A" and n == 1:
        cartan = [[2]]
    else:
        matrix = CartanType(f"{family}{n}").cartan_matrix()
        cartan = [[int(x) for x in row] for row in matrix.tolist()]

    norms = [QQ(0)] * n
    norms[0] = QQ(1)
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in range(n):
            if cartan[i][j] and not norms[j]:
                norms[j] = norms[i] * QQ(cartan[j][i], cartan[i][j])
                queue.append(j)
    scale = QQ(2) / min(norms)
    diag = [as_int(d * scale) for d in norms]
    gram = [[cartan[i][j] * diag[j] // 2 for j in range(n)] for i in range(n)]
    return cartan, gram


def _reflect_coeffs(cartan: Sequence[Coeffs], i: int, x: Coeffs) -> Coeffs:
    """s_i on simple-root coordinates, i 0-based."""
    pair = sum(x[j] * cartan[j][i] for j in range(len(x)) if x[j])
    if not pair:
        return x
    return tuple(c - pair if j == i else c for j, c in enumerate(x))


@lru_cache(maxsize=None)
def _build(spec: Tuple[Tuple[str, int], ...]) -> RootSystem:
    blocks = [_block_data(fam, n) for fam, n in spec]
    rank = sum(n for _, n in spec)
    cartan_rows = [[0] * rank for _ in range(rank)]
    gram = [[0] * rank for _ in range(rank)]
    offset = 0
    for block_cartan, block_gram in blocks:
        for i, row in enumerate(block_gram):
            for j, v in enumerate(row):
                gram[offset + i][offset + j] = v
                cartan_rows[offset + i][offset + j] = block_cartan[i][j]
        offset += len(block_gram)
    cartan = tuple(tuple(row) for row in cartan_rows)

    simple = [tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)]
    seen = set(simple) | {tuple(-c for c in s) for s in simple}
    queue = deque(seen)
    while queue:
        x = queue.popleft()
        for i in range(rank):
            y = _reflect_coeffs(cartan, i, x)
            if y not in seen:
                seen.add(y)
                queue.append(y)

    ordered = sorted(seen, key=root_order_key)
    roots = tuple(Root(c) for c in ordered)
    system = RootSystem(
        components=spec,
        gram=tuple(tuple(r) for r in gram),
        cartan=cartan,
        roots=roots,
        positive_roots=tuple(r for r in roots if r.is_positive),
        _index={r.coeffs: k for k, r in enumerate(roots)},
    )
    expected = sum(_ROOT_COUNTS[fam](n) for fam, n in spec)
    if len(roots) != expected:
        raise AssertionError(f"{system.name}: built {len(roots)} roots, expected {expected}")
    logger.debug("Root system built", system=system.name, roots=len(roots))
    return system


def build_root_system(spec: Union[str, SystemSpec]) -> RootSystem:
    """
    Builds the root system of a list of (family, rank) pairs, or of a spec string.
    """
    if isinstance(spec, str):
        spec = parse_system(spec)
    normalized = []
    for family, n in spec:
        family = str(family).upper()
        _validate(family, int(n))
        normalized.append((family, int(n)))
    if not normalized:
        raise InvalidInputError("empty root-system spec")
    return _build(tuple(normalized))


def _simple_products(system: RootSystem, x: Union[Root, Weight]) -> List[QQ]:
    """(x, α_j) for every simple root, exact."""
    if isinstance(x, Weight):
        return [QQ(m * system.gram[j][j], 2) for j, m in enumerate(x.marks)]
    n = system.rank
    return [QQ(sum(x.coeffs[i] * system.gram[i][j] for i in range(n))) for j in range(n)]


def pairing(system: RootSystem, x: Union[Root, Weight], beta: Root) -> int:
    """
    ⟨x, β⟩ = 2(x, β)/(β, β).
    """
    if not system.is_root(beta):
        raise InvalidInputError(f"{beta} is not a root of {system.name}")
    prods = _simple_products(system, x)
    num = sum((c * p for c, p in zip(beta.coeffs, prods)), QQ(0))
    return as_int(2 * num / system.inner(beta.coeffs, beta.coeffs))


def root_to_weight(system: RootSystem, root: Root) -> Weight:
    n = system.rank
    return Weight(tuple(sum(root.coeffs[i] * system.cartan[i][j] for i in range(n)) for j in range(n)))


def fundamental_weight(system: RootSystem, i: int) -> Weight:
    system.check_index(i)
    return Weight(tuple(1 if j == i - 1 else 0 for j in range(system.rank)))


def reflect(system: RootSystem, i: int, x: Union[Root, Weight]) -> Union[Root, Weight]:
    """
    s_i(x) = x − ⟨x, α_i⟩ α_i.
    """
    system.check_index(i)
    if isinstance(x, Root):
        return Root(_reflect_coeffs(system.cartan, i - 1, x.coeffs))
    pair = x.marks[i - 1]
    if not pair:
        return x
    alpha = system.cartan[i - 1]
    return Weight(tuple(m - pair * a for m, a in zip(x.marks, alpha)))


def apply_word(system: RootSystem, word: WeylWord, x):
    """
    Applies w to a Root, a Weight, or a set / list of either.
    """
    for letter in word.letters:
        system.check_index(letter)
    if isinstance(x, (set, frozenset)):
        return type(x)(apply_word(system, word, y) for y in x)
    if isinstance(x, (list, tuple)):
        return type(x)(apply_word(system, word, y) for y in x)
    for letter in reversed(word.letters):
        x = reflect(system, letter, x)
    return x


def longest_element(system: RootSystem) -> WeylWord:
    """
    w₀ by greedy descent: reflect ρ by any simple reflection that lowers it
    until it becomes −ρ.
    """
    v = system.rho
    applied: List[int] = []
    while True:
        i = next((j for j, m in enumerate(v.marks) if m > 0), None)
        if i is None:
            break
        v = reflect(system, i + 1, v)
        applied.append(i + 1)
    return WeylWord(tuple(reversed(applied)))


def word_length(system: RootSystem, word: WeylWord) -> int:
    return sum(1 for r in system.positive_roots if not apply_word(system, word, r).is_positive)


def highest_roots(system: RootSystem) -> List[Root]:
    """Highest root of each irreducible component."""
    out = []
    for k in range(len(system.components)):
        comp = [r for r in system.positive_roots if system.component_of(r) == k]
        out.append(max(comp, key=lambda r: r.height))
    return out


def weyl_dimension(system: RootSystem, weight: Weight) -> int:
    """
    Weyl dimension formula ∏ (λ+ρ, α)/(ρ, α) over positive roots.
    """
    if len(weight.marks) != system.rank:
        raise InvalidInputError(f"weight {weight} has wrong length for {system.name}")
    if not weight.is_dominant:
        raise MathematicalRejection(f"weight {weight} is not dominant")
    shifted = weight + system.rho
    top = _simple_products(system, shifted)
    bottom = _simple_products(system, system.rho)
    value = QQ(1)
    for alpha in system.positive_roots:
        num = sum((c * p for c, p in zip(alpha.coeffs, top)), QQ(0))
        den = sum((c * p for c, p in zip(alpha.coeffs, bottom)), QQ(0))
        value *= num / den
    return as_int(value)


def weyl_group_elements(system: RootSystem, limit: Optional[int] = None) -> List[WeylWord]:
    """
    All elements of W as shortlex-minimal reduced words, by breadth-first search
    on the orbit of ρ.
    """
    limit = limit or settings.WEYL_GROUP_LIMIT
    start = system.rho
    words: Dict[Weight, WeylWord] = {start: WeylWord()}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for i in range(1, system.rank + 1):
            u = reflect(system, i, v)
            if u not in words:
                words[u] = WeylWord((i,) + words[v].letters)
                if len(words) > limit:
                    raise InvalidInputError(
                        f"Weyl group of {system.name} exceeds enumeration limit {limit}"
                    )
                queue.append(u)
    return list(words.values())
