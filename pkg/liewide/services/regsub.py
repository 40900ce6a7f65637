"""
Regular subalgebras s_{T,t} = t ⊕ ⊕_{α∈T} g_α and their Levi data.

Cartan elements are coordinate vectors over the simple coroots h_{α_1..α_n}.
Elements of g are dicts keyed by ("h", i) for h_{α_{i+1}} and ("e", coeffs)
for root vectors of the Chevalley basis.
"""

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from liewide.errors import MathematicalRejection
from liewide.logger import get_logger
from liewide.services import construction
from liewide.services.closedset import (
    ClosedSubset,
    RootLike,
    closed_subset,
    conjugate_special_negative,
)
from liewide.services.rootsys import (
    Coeffs,
    Root,
    RootSystem,
    WeylWord,
    apply_word,
    fundamental_weight,
    weyl_dimension,
    weyl_group_elements,
)
from liewide.utils import linalg

logger = get_logger(__name__)

Label = Tuple[str, object]
Element = Dict[Label, object]

GENERATED_BY_TR = "generated-by-Tr"


@dataclass(frozen=True)
class CartanElement:
    coords: Tuple

    @classmethod
    def of(cls, values: Sequence) -> "CartanElement":
        return cls(tuple(linalg.qq(v) for v in values))

    def evaluate(self, marks: Sequence[int]):
        """μ(h) for a weight given by its marks."""
        return sum((c * m for c, m in zip(self.coords, marks) if c), linalg.ZERO)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def to_strings(self) -> List[str]:
        return [linalg.fmt(c) for c in self.coords]

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coords):
            if not c:
                continue
            coeff = "" if c == 1 else "-" if c == -1 else linalg.fmt(c)
            terms.append(f"{coeff}h{i + 1}")
        return "+".join(terms).replace("+-", "-") or "0"


def root_value(system: RootSystem, root: Root, h: CartanElement):
    """α(h) = Σ_i h_i ⟨α, α_i⟩."""
    n = system.rank
    total = linalg.ZERO
    for i, c in enumerate(h.coords):
        if c:
            total += c * sum(root.coeffs[j] * system.cartan[j][i] for j in range(n))
    return total


def coroot(system: RootSystem, root: Root) -> CartanElement:
    """h_α in simple-coroot coordinates."""
    norm = system.inner(root.coeffs, root.coeffs)
    return CartanElement(tuple(QQ(a * system.gram[i][i], norm) for i, a in enumerate(root.coeffs)))


def killing_form(system: RootSystem, h1: CartanElement, h2: CartanElement):
    """
    κ(h1, h2) = Σ_{α∈Φ} α(h1) α(h2).
    """
    return sum(
        (root_value(system, r, h1) * root_value(system, r, h2) for r in system.roots),
        linalg.ZERO,
    )


def weyl_act_on_cartan(system: RootSystem, word: WeylWord, h: CartanElement) -> CartanElement:
    """w(h), with s_i(h) = h − α_i(h) h_{α_i}."""
    coords = list(h.coords)
    for letter in reversed(word.letters):
        i = letter - 1
        value = sum((coords[j] * system.cartan[i][j] for j in range(system.rank)), linalg.ZERO)
        coords[i] = coords[i] - value
    return CartanElement(tuple(coords))


@dataclass(frozen=True, eq=False)
class ChevalleyBasis:
    ambient: RootSystem
    constants: Mapping[Tuple[Coeffs, Coeffs], int]

    def n(self, a: Root, b: Root) -> int:
        """N_{a,b}, zero when a + b is not a root."""
        return self.constants.get((a.coeffs, b.coeffs), 0)

    def coroot(self, root: Root) -> CartanElement:
        return coroot(self.ambient, root)

    def bracket(self, x: Element, y: Element) -> Element:
        system = self.ambient
        out: Element = {}

        def put(label: Label, value) -> None:
            total = out.get(label, linalg.ZERO) + value
            if total:
                out[label] = total
            else:
                out.pop(label, None)

        for (kx, vx), cx in x.items():
            for (ky, vy), cy in y.items():
                c = cx * cy
                if kx == "h" and ky == "h":
                    continue
                if kx == "h":
                    r = system.root(vy)
                    put(("e", vy), c * sum(r.coeffs[j] * system.cartan[j][vx] for j in range(system.rank)))
                elif ky == "h":
                    r = system.root(vx)
                    put(("e", vx), -c * sum(r.coeffs[j] * system.cartan[j][vy] for j in range(system.rank)))
                else:
                    a, b = system.root(vx), system.root(vy)
                    if all(p + q == 0 for p, q in zip(vx, vy)):
                        for i, hc in enumerate(coroot(system, a).coords):
                            if hc:
                                put(("h", i), c * hc)
                    else:
                        s = system.add(a, b)
                        if s is not None:
                            put(("e", s.coeffs), c * self.n(a, b))
        return out


def _faithful_weight(system: RootSystem, component: range) -> Tuple[int, ...]:
    best = None
    for i in component:
        w = fundamental_weight(system, i + 1)
        d = weyl_dimension(system, w)
        if best is None or d < best[0]:
            best = (d, w.marks)
    return best[1]


@lru_cache(maxsize=None)
def chevalley_constants(system: RootSystem) -> ChevalleyBasis:
    """
    Structure constants N_{α,β} of the Chevalley basis fixed by the canonical
    root-vector recursion, read off exactly in a faithful module of each
    simple component.
    """
    constants: Dict[Tuple[Coeffs, Coeffs], int] = {}
    for k, component in enumerate(system.component_ranges()):
        data = construction.construct(system, _faithful_weight(system, component))
        cache: Dict[Root, construction.BlockOperator] = {}
        roots = [r for r in system.roots if system.component_of(r) == k]
        ops = {
            r: construction.root_vector(system, data.raising, data.lowering, r, cache)
            for r in roots
        }
        for a in roots:
            for b in roots:
                s = system.add(a, b)
                if s is None:
                    continue
                product = ops[a].commutator(ops[b])
                target = ops[s]
                mu, block = next(iter(target.blocks.items()))
                entries = block.to_list()
                r, c = next(
                    (i, j) for i, row in enumerate(entries) for j, x in enumerate(row) if x
                )
                got = product.blocks.get(mu)
                ratio = got.to_list()[r][c] / entries[r][c] if got is not None else linalg.ZERO
                if not product.equals(target.scaled(ratio)):
                    raise AssertionError(f"[e_{a}, e_{b}] is not a multiple of e_{s}")
                constants[(a.coeffs, b.coeffs)] = linalg.as_int(ratio)
    logger.info("Chevalley constants computed", system=system.name, pairs=len(constants))
    return ChevalleyBasis(ambient=system, constants=constants)


def _basis_rows(vectors: Sequence[Sequence], n: int) -> List[CartanElement]:
    rows = linalg.row_basis([list(v) for v in vectors], n)
    return [CartanElement(tuple(QQ(x) for x in linalg.primitive(r))) for r in rows]


@dataclass(frozen=True, eq=False)
class RegularSubalgebra:
    T: ClosedSubset
    t_basis: Tuple[CartanElement, ...]
    k_basis: Tuple[CartanElement, ...]
    kperp_basis: Tuple[CartanElement, ...]
    t_mode: str = "explicit"

    @property
    def ambient(self) -> RootSystem:
        return self.T.ambient

    @property
    def symmetric(self):
        return self.T.symmetric

    @property
    def special(self):
        return self.T.special

    @property
    def kind(self) -> str:
        if not self.symmetric:
            return "solvable"
        if not self.special and not self.kperp_basis:
            return "semisimple"
        return "levi_decomposable"

    @cached_property
    def roots(self) -> List[Root]:
        return self.T.sorted()

    @property
    def dim(self) -> int:
        return len(self.t_basis) + len(self.T)

    def basis(self) -> List[Element]:
        """Ordered basis of s: the t basis, then e_α for α ∈ T in root order."""
        out: List[Element] = []
        for h in self.t_basis:
            out.append({("h", i): c for i, c in enumerate(h.coords) if c})
        for r in self.roots:
            out.append({("e", r.coeffs): linalg.ONE})
        return out

    def coordinates(self, x: Element) -> List:
        """Coordinates of an element of s in basis()."""
        n = self.ambient.rank
        hvec = [linalg.ZERO] * n
        for (kind, v), c in x.items():
            if kind == "h":
                hvec[v] = c
        hcoords = linalg.solve_in_rows([list(h.coords) for h in self.t_basis], hvec)
        if hcoords is None:
            raise MathematicalRejection("element has a Cartan part outside t")
        ecoords = []
        present = {v for (kind, v) in x if kind == "e"}
        for r in self.roots:
            ecoords.append(x.get(("e", r.coeffs), linalg.ZERO))
            present.discard(r.coeffs)
        if present:
            raise MathematicalRejection("element has a root component outside T")
        return list(hcoords) + ecoords


def build_regular_subalgebra(
    T: Union[ClosedSubset, Tuple[RootSystem, Sequence[RootLike]]],
    t_basis: Union[str, Sequence[Sequence]] = GENERATED_BY_TR,
) -> RegularSubalgebra:
    """
    s_{T,t} with k = span{h_α : α ∈ Tʳ} and k⊥ its Killing complement in t.

    t_basis is a list of coordinate vectors over the simple coroots, or the
    token "generated-by-Tr" for t = k.
    """
    if not isinstance(T, ClosedSubset):
        system, members = T
        T = closed_subset(system, members)
    system = T.ambient
    n = system.rank
    positive_symmetric = [r for r in T.sorted() if r.is_positive and r in T.symmetric]
    k_basis = _basis_rows([coroot(system, r).coords for r in positive_symmetric], n)

    if isinstance(t_basis, str):
        if t_basis != GENERATED_BY_TR:
            raise MathematicalRejection(f"unknown t token {t_basis!r}")
        t_elems, mode = list(k_basis), GENERATED_BY_TR
    else:
        for row in t_basis:
            if len(row) != n:
                raise MathematicalRejection(f"t vector {list(row)} has wrong length for {system.name}")
        t_elems = _basis_rows([[linalg.qq(x) for x in row] for row in t_basis], n)
        mode = "explicit"
        t_rows = [list(h.coords) for h in t_elems]
        for r in positive_symmetric:
            if linalg.solve_in_rows(t_rows, list(coroot(system, r).coords)) is None:
                raise MathematicalRejection(f"t does not contain h_α for α = {r}")

    if k_basis:
        gram = DomainMatrix(
            [[killing_form(system, a, b) for b in t_elems] for a in k_basis],
            (len(k_basis), len(t_elems)),
            QQ,
        )
        kernel = linalg.nullspace(gram)
    else:
        kernel = [[linalg.ONE if i == j else linalg.ZERO for j in range(len(t_elems))] for i in range(len(t_elems))]
    kperp_vectors = [
        [sum((x[b] * t_elems[b].coords[i] for b in range(len(t_elems))), linalg.ZERO) for i in range(n)]
        for x in kernel
    ]
    kperp_basis = _basis_rows(kperp_vectors, n)
    if len(k_basis) + len(kperp_basis) != len(t_elems):
        raise AssertionError("t must split as k ⊕ k⊥")

    s = RegularSubalgebra(
        T=T,
        t_basis=tuple(t_elems),
        k_basis=tuple(k_basis),
        kperp_basis=tuple(kperp_basis),
        t_mode=mode,
    )
    logger.debug(
        "Regular subalgebra built",
        system=system.name,
        size=len(T),
        dim_t=len(t_elems),
        dim_kperp=len(kperp_basis),
        kind=s.kind,
    )
    return s


def is_levi_decomposable(s: RegularSubalgebra) -> bool:
    return bool(s.symmetric) and (bool(s.special) or bool(s.kperp_basis))


def _require_levi(s: RegularSubalgebra) -> None:
    if not is_levi_decomposable(s):
        raise MathematicalRejection(f"subalgebra is not Levi decomposable ({s.kind})")


def has_ad_nilpotent_radical(s: RegularSubalgebra) -> bool:
    _require_levi(s)
    return not s.kperp_basis


def _in_derived(s: RegularSubalgebra, root: Root) -> bool:
    system = s.ambient
    if any(root_value(system, root, h) for h in s.t_basis):
        return True
    members = s.T.members
    return any(
        system.add(a, b) == root for a in members for b in members
    )


def is_perfect(s: RegularSubalgebra) -> bool:
    """
    [s, s] = s: needs t = k, a nonempty special part, and every e_α (α ∈ Tᵘ)
    reachable as [t, e_α] or as a bracket of two root vectors of s.
    """
    _require_levi(s)
    if s.kperp_basis or not s.special or len(s.t_basis) != len(s.k_basis):
        return False
    return all(_in_derived(s, r) for r in s.special)


def is_radical_abelian(s: RegularSubalgebra) -> bool:
    _require_levi(s)
    system = s.ambient
    special = s.special
    if any(system.add(a, b) is not None for a in special for b in special):
        return False
    return not any(root_value(system, r, h) for r in special for h in s.kperp_basis)


def adjoint_action_matrix(
    s: RegularSubalgebra, generator: Element, chevalley: Optional[ChevalleyBasis] = None
) -> DomainMatrix:
    """
    Matrix of ad(generator) on basis() of s; column j holds [generator, b_j].
    """
    chevalley = chevalley or chevalley_constants(s.ambient)
    s.coordinates(generator)
    cols = [s.coordinates(chevalley.bracket(generator, b)) for b in s.basis()]
    return linalg.from_columns(cols, s.dim)


def derived_subalgebra_dimension(s: RegularSubalgebra) -> int:
    """dim [s, s], from the images of all adjoint matrices."""
    chevalley = chevalley_constants(s.ambient)
    mats = [adjoint_action_matrix(s, b, chevalley) for b in s.basis()]
    if not mats:
        return 0
    return linalg.rank(mats[0].hstack(*mats[1:]) if len(mats) > 1 else mats[0])


def conjugate_subalgebra(s: RegularSubalgebra, word: WeylWord) -> RegularSubalgebra:
    """w(s) = s_{w(T), w(t)}."""
    system = s.ambient
    image = [apply_word(system, word, r) for r in s.roots]
    t_image = [weyl_act_on_cartan(system, word, h).coords for h in s.t_basis]
    t_arg: Union[str, List] = GENERATED_BY_TR if s.t_mode == GENERATED_BY_TR else [list(v) for v in t_image]
    return build_regular_subalgebra(closed_subset(system, image), t_arg)


def normal_form(s: RegularSubalgebra) -> Tuple[WeylWord, RegularSubalgebra]:
    """
    Conjugates s so that its special part lies in Φ⁻ (identity when Tᵘ = ∅).
    """
    if not s.special:
        return WeylWord(), s
    word, _ = conjugate_special_negative(s.ambient, s.special)
    return word, conjugate_subalgebra(s, word)


def _span_key(elements: Sequence[CartanElement], n: int) -> Tuple:
    rows = linalg.row_basis([list(h.coords) for h in elements], n)
    return tuple(tuple(r) for r in rows)


def are_conjugate(first: RegularSubalgebra, second: RegularSubalgebra) -> Optional[WeylWord]:
    """
    Some w ∈ W with w(T₁) = T₂ and w(t₁) = t₂, or None.
    """
    system = first.ambient
    if system != second.ambient or len(first.T) != len(second.T):
        return None
    if len(first.t_basis) != len(second.t_basis):
        return None
    target_t = _span_key(second.t_basis, system.rank)
    for word in weyl_group_elements(system):
        image = frozenset(apply_word(system, word, r) for r in first.T.members)
        if image != second.T.members:
            continue
        moved = [weyl_act_on_cartan(system, word, h) for h in first.t_basis]
        if _span_key(moved, system.rank) == target_t:
            return word
    return None
