"""
Explicit highest-weight modules and their behaviour under regular subalgebras.

Modules are weight-graded: every subspace is stored as RREF rows inside each
weight space and every root vector acts by a BlockOperator. The radical image
r·V, the cyclic Levi submodule, quotients, joint kernels and commutants are
all computed one weight space at a time.
"""

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, MutableMapping, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from liewide.config import settings
from liewide.errors import MathematicalRejection, ModuleTooLarge
from liewide.logger import get_logger
from liewide.services import construction
from liewide.services.construction import BlockOperator, Marks, shift_marks
from liewide.services.regsub import (
    CartanElement,
    ChevalleyBasis,
    RegularSubalgebra,
    coroot,
    is_levi_decomposable,
)
from liewide.services.rootsys import (
    Coeffs,
    Root,
    RootSystem,
    Weight,
    weyl_dimension,
)
from liewide.utils import linalg

logger = get_logger(__name__)

Graded = Dict[Marks, List[List]]


@dataclass(eq=False)
class WeightModule:
    """
    A weight-graded module. Root vectors come either from the simple
    generators (through the Chevalley recursion) or from stored operators.
    """

    system: RootSystem
    dims: Dict[Marks, int]
    simple_raising: Optional[Tuple[BlockOperator, ...]] = None
    simple_lowering: Optional[Tuple[BlockOperator, ...]] = None
    stored: Dict[Coeffs, BlockOperator] = field(default_factory=dict)
    highest: Optional[Marks] = None
    acting: Optional[RegularSubalgebra] = None
    _cache: MutableMapping[Root, BlockOperator] = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return sum(self.dims.values())

    @property
    def highest_vector(self) -> Optional[int]:
        return 0 if self.highest is not None else None

    def offsets(self) -> Dict[Marks, int]:
        out, pos = {}, 0
        for mu, d in self.dims.items():
            out[mu] = pos
            pos += d
        return out

    @property
    def weights(self) -> List[Weight]:
        """One weight per basis vector."""
        return [Weight(mu) for mu, d in self.dims.items() for _ in range(d)]

    def root_action(self, root: Root) -> BlockOperator:
        if root.coeffs in self.stored:
            return self.stored[root.coeffs]
        if self.simple_raising is None or self.simple_lowering is None:
            raise MathematicalRejection(f"root vector e_{root} does not act on this module")
        return construction.root_vector(
            self.system, self.simple_raising, self.simple_lowering, root, self._cache
        )

    def cartan_action(self, h: CartanElement) -> BlockOperator:
        blocks = {}
        for mu, d in self.dims.items():
            value = h.evaluate(mu)
            if value:
                blocks[mu] = linalg.identity(d) * value
        return BlockOperator((0,) * self.system.rank, blocks)

    def to_matrix(self, op: BlockOperator) -> DomainMatrix:
        offsets = self.offsets()
        dod: Dict[int, Dict[int, object]] = {}
        for mu, block in op.blocks.items():
            tgt = op.target(mu)
            r0, c0 = offsets[tgt], offsets[mu]
            for i, row in enumerate(block.to_list()):
                for j, x in enumerate(row):
                    if x:
                        dod.setdefault(r0 + i, {})[c0 + j] = x
        return linalg.sparse(dod, (self.dim, self.dim)).to_dense()

    def actions(self) -> Dict[str, DomainMatrix]:
        """Global matrices of the generators e_i, f_i, h_i."""
        out = {}
        n = self.system.rank
        for i in range(1, n + 1):
            simple = self.system.simple_root(i)
            out[f"e{i}"] = self.to_matrix(self.root_action(simple))
            out[f"f{i}"] = self.to_matrix(self.root_action(-simple))
            unit = CartanElement(tuple(linalg.ONE if j == i - 1 else linalg.ZERO for j in range(n)))
            out[f"h{i}"] = self.to_matrix(self.cartan_action(unit))
        return out


@dataclass(frozen=True)
class Submodule:
    ambient: WeightModule
    graded: Mapping[Marks, List[List]]

    @property
    def dim(self) -> int:
        return sum(len(rows) for rows in self.graded.values())

    @property
    def basis(self) -> DomainMatrix:
        """Rows spanning the subspace, RREF in the global basis."""
        offsets = self.ambient.offsets()
        rows = []
        for mu, d in self.ambient.dims.items():
            for row in self.graded.get(mu, []):
                full = [linalg.ZERO] * self.ambient.dim
                full[offsets[mu]:offsets[mu] + d] = row
                rows.append(full)
        return DomainMatrix(rows, (len(rows), self.ambient.dim), QQ)


@dataclass(frozen=True)
class RestrictedModule:
    module: WeightModule
    subalgebra: RegularSubalgebra

    def root_operators(self) -> Dict[Coeffs, BlockOperator]:
        return {r.coeffs: self.module.root_action(r) for r in self.subalgebra.roots}

    def matrices(self) -> Dict[str, DomainMatrix]:
        out = {}
        for r in self.subalgebra.roots:
            out[f"e{r}"] = self.module.to_matrix(self.module.root_action(r))
        for h in self.subalgebra.t_basis:
            out[str(h)] = self.module.to_matrix(self.module.cartan_action(h))
        return out


def build_simple_module(
    system: RootSystem,
    weight: Weight,
    chevalley: Optional[ChevalleyBasis] = None,
    cap: Optional[int] = None,
) -> WeightModule:
    """
    V(λ) with exact generator actions; the dimension is checked against the
    Weyl dimension formula.
    """
    if chevalley is not None and chevalley.ambient != system:
        raise MathematicalRejection("Chevalley basis belongs to another root system")
    cap = cap or settings.CAP
    expected = weyl_dimension(system, weight)
    if expected > cap:
        raise ModuleTooLarge(expected, cap)
    data = construction.construct(system, tuple(weight.marks))
    module = WeightModule(
        system=system,
        dims=dict(data.dims),
        simple_raising=data.raising,
        simple_lowering=data.lowering,
        highest=tuple(weight.marks),
    )
    if module.dim != expected:
        raise AssertionError(f"V{weight} built with dim {module.dim}, Weyl formula gives {expected}")
    logger.debug("Module built", system=system.name, weight=list(weight.marks), dim=module.dim)
    return module


def action_of_root_vector(
    module: WeightModule, chevalley: Optional[ChevalleyBasis], root: Root
) -> DomainMatrix:
    if chevalley is not None and chevalley.ambient != module.system:
        raise MathematicalRejection("Chevalley basis belongs to another root system")
    return module.to_matrix(module.root_action(module.system.root(root.coeffs)))


def direct_sum(first: WeightModule, second: WeightModule) -> WeightModule:
    """
    Block-diagonal direct sum of two modules over the same g.
    """
    if first.system != second.system:
        raise MathematicalRejection("modules live over different root systems")
    dims = dict(first.dims)
    for mu, d in second.dims.items():
        dims[mu] = dims.get(mu, 0) + d

    def glue(a: BlockOperator, b: BlockOperator) -> BlockOperator:
        blocks = {}
        for mu in dims:
            tgt = a.target(mu)
            if tgt not in dims:
                continue
            left = a.get(mu)
            right = b.get(mu)
            if left is None and right is None:
                continue
            rows_a, cols_a = first.dims.get(tgt, 0), first.dims.get(mu, 0)
            rows_b, cols_b = second.dims.get(tgt, 0), second.dims.get(mu, 0)
            left = left if left is not None else linalg.zeros(rows_a, cols_a)
            right = right if right is not None else linalg.zeros(rows_b, cols_b)
            blocks[mu] = linalg.direct_sum(left, right)
        return BlockOperator(a.shift, blocks)

    n = first.system.rank
    raising = tuple(glue(first.root_action(first.system.simple_root(i)), second.root_action(second.system.simple_root(i))) for i in range(1, n + 1))
    lowering = tuple(glue(first.root_action(-first.system.simple_root(i)), second.root_action(-second.system.simple_root(i))) for i in range(1, n + 1))
    return WeightModule(system=first.system, dims=dims, simple_raising=raising, simple_lowering=lowering)


def restrict(module: WeightModule, s: RegularSubalgebra) -> RestrictedModule:
    if s.ambient != module.system:
        raise MathematicalRejection("subalgebra and module live over different root systems")
    return RestrictedModule(module=module, subalgebra=s)


def _images(op: BlockOperator, mu: Marks, rows: Sequence[List]) -> List[List]:
    """Images of the vectors `rows` of V_μ under op."""
    block = op.get(mu)
    if block is None:
        return []
    return [linalg.matvec(block, row) for row in rows]


def _unit_rows(d: int) -> List[List]:
    return [[linalg.ONE if i == j else linalg.ZERO for j in range(d)] for i in range(d)]


def is_invariant(graded: Mapping[Marks, List[List]], ops: Iterable[BlockOperator]) -> bool:
    for op in ops:
        for mu, rows in graded.items():
            tgt = op.target(mu)
            target_rows = graded.get(tgt, [])
            for image in _images(op, mu, rows):
                if any(image) and not linalg.in_span(image, target_rows):
                    return False
    return True


def radical_image(module: WeightModule, s: RegularSubalgebra) -> Submodule:
    """
    r·V: images of e_α for α ∈ Tᵘ plus k⊥·V, weight space by weight space.
    """
    if not is_levi_decomposable(s):
        raise MathematicalRejection(f"subalgebra is not Levi decomposable ({s.kind})")
    ops = [module.root_action(r) for r in s.roots if r in s.special]
    graded: Graded = {}
    for nu, d in module.dims.items():
        if any(h.evaluate(nu) for h in s.kperp_basis):
            graded[nu] = _unit_rows(d)
            continue
        spans: List[List] = []
        for op in ops:
            mu = shift_marks(nu, op.shift, -1)
            block = op.get(mu)
            if block is not None:
                spans.extend(linalg.columns(block))
        rows = linalg.row_basis(spans, d)
        if rows:
            graded[nu] = rows
    s_ops = [module.root_action(r) for r in s.roots]
    if not is_invariant(graded, s_ops):
        raise AssertionError("r·V is not stable under s")
    return Submodule(ambient=module, graded=graded)


def cyclic_levi_submodule(module: WeightModule, s: RegularSubalgebra) -> Submodule:
    """
    ⟨v_λ⟩: the span of Levi lowering monomials applied to the highest vector.
    """
    if module.highest is None:
        raise MathematicalRejection("module has no highest vector")
    if not is_levi_decomposable(s):
        raise MathematicalRejection(f"subalgebra is not Levi decomposable ({s.kind})")
    lowering = [r for r in s.roots if r in s.symmetric and not r.is_positive]
    ops = [module.root_action(r) for r in lowering]
    graded: Graded = {module.highest: [[linalg.ONE]]}
    queue = [module.highest]
    while queue:
        mu = queue.pop(0)
        for op in ops:
            images = [v for v in _images(op, mu, graded[mu]) if any(v)]
            if not images:
                continue
            tgt = op.target(mu)
            current = graded.get(tgt, [])
            grown = linalg.row_basis(current + images, module.dims[tgt])
            if len(grown) > len(current):
                graded[tgt] = grown
                if tgt not in queue:
                    queue.append(tgt)
    sub = Submodule(ambient=module, graded=graded)
    levi_module = submodule_as_module(sub, s, [r for r in s.roots if r in s.symmetric])
    if singular_dimension(levi_module) != 1:
        raise AssertionError("⟨v_λ⟩ must be simple over the Levi factor")
    return sub


def _levi_positive(s: RegularSubalgebra) -> List[Root]:
    return [r for r in s.roots if r in s.symmetric and r.is_positive]


def submodule_as_module(
    sub: Submodule, s: RegularSubalgebra, roots: Optional[Sequence[Root]] = None
) -> WeightModule:
    """
    The induced action on an invariant subspace, in its RREF basis. `roots`
    defaults to all of T.
    """
    module = sub.ambient
    stored = {}
    for r in roots if roots is not None else s.roots:
        op = module.root_action(r)
        blocks = {}
        for mu, rows in sub.graded.items():
            tgt = op.target(mu)
            if tgt not in sub.graded:
                continue
            cols = []
            for image in _images(op, mu, rows):
                coeffs = linalg.solve_in_rows(sub.graded[tgt], image)
                if coeffs is None:
                    raise MathematicalRejection("subspace is not invariant under s")
                cols.append(coeffs)
            if cols:
                block = linalg.from_columns(cols, len(sub.graded[tgt]))
                if not linalg.is_zero(block):
                    blocks[mu] = block
        stored[r.coeffs] = BlockOperator(op.shift, blocks)
    dims = {mu: len(rows) for mu, rows in sub.graded.items() if rows}
    dims = {mu: dims[mu] for mu in module.dims if mu in dims}
    return WeightModule(system=module.system, dims=dims, stored=stored, acting=s)


def quotient_module(module: WeightModule, sub: Submodule, s: RegularSubalgebra) -> WeightModule:
    """
    V/W with the induced action of the root vectors of s on the complement
    basis (standard vectors off the pivot columns of W).
    """
    ops = {r.coeffs: module.root_action(r) for r in s.roots}
    if not is_invariant(sub.graded, ops.values()):
        raise MathematicalRejection("subspace is not invariant under s")
    keep: Dict[Marks, List[int]] = {}
    pivots: Dict[Marks, List[int]] = {}
    for mu, d in module.dims.items():
        rows = sub.graded.get(mu, [])
        piv = linalg.pivots_of(rows)
        pivots[mu] = piv
        free = [c for c in range(d) if c not in set(piv)]
        if free:
            keep[mu] = free
    stored = {}
    for key, op in ops.items():
        blocks = {}
        for mu, free in keep.items():
            tgt = op.target(mu)
            block = op.get(mu)
            if block is None or tgt not in keep:
                continue
            target_rows = sub.graded.get(tgt, [])
            block_cols = linalg.columns(block)
            cols = []
            for col in (block_cols[c] for c in free):
                reduced = linalg.reduce_against(col, target_rows, pivots[tgt])
                cols.append([reduced[c] for c in keep[tgt]])
            quotient_block = linalg.from_columns(cols, len(keep[tgt]))
            if not linalg.is_zero(quotient_block):
                blocks[mu] = quotient_block
        stored[key] = BlockOperator(op.shift, blocks)
    dims = {mu: len(free) for mu, free in keep.items()}
    return WeightModule(system=module.system, dims=dims, stored=stored, acting=s)


def singular_dimension(module: WeightModule, positive_roots: Optional[Sequence[Root]] = None) -> int:
    """
    Dimension of the joint kernel of the positive Levi root vectors: the number
    of simple summands of a Levi module. A zero module counts as V(0).
    """
    if module.dim == 0:
        return 1
    if positive_roots is None:
        if module.acting is not None:
            positive_roots = _levi_positive(module.acting)
        else:
            positive_roots = module.system.positive_roots
    ops = [module.root_action(r) for r in positive_roots]
    total = 0
    for mu, d in module.dims.items():
        blocks = [b for b in (op.get(mu) for op in ops) if b is not None]
        if not blocks:
            total += d
            continue
        stacked = blocks[0].vstack(*blocks[1:]) if len(blocks) > 1 else blocks[0]
        total += d - linalg.rank(stacked)
    return total


def is_simple_over_levi(module: WeightModule, positive_roots: Optional[Sequence[Root]] = None) -> bool:
    return singular_dimension(module, positive_roots) == 1


def generating_roots(s: RegularSubalgebra) -> List[Root]:
    """
    A subset of T whose root vectors generate all e_α, α ∈ T, under brackets.
    """
    system = s.ambient
    order = sorted(s.roots, key=lambda r: (abs(r.height), system.position(r)))
    chosen: List[Root] = []
    reached: set = set()
    for r in order:
        if r in reached:
            continue
        chosen.append(r)
        reached.add(r)
        work = [r]
        while work:
            x = work.pop()
            for y in list(reached):
                z = system.add(x, y)
                if z is not None and z not in reached:
                    reached.add(z)
                    work.append(z)
    return chosen


def _degree_commutant(
    module: WeightModule, ops: Sequence[BlockOperator], delta: Marks
) -> List[Dict[Marks, List[List]]]:
    """
    Basis of the maps X of weight degree delta commuting with every op.
    Each element is {μ: block V_μ → V_{μ+delta}} as lists of rows.
    """
    dims = module.dims
    index: Dict[Tuple[Marks, int, int], int] = {}
    for mu, d in dims.items():
        tgt = shift_marks(mu, delta)
        if tgt in dims:
            for r in range(dims[tgt]):
                for c in range(d):
                    index[(mu, r, c)] = len(index)
    if not index:
        return []
    rows: Dict[int, Dict[int, object]] = {}
    eq = 0
    for op in ops:
        cache = {mu: b.to_list() for mu, b in op.blocks.items()}
        for mu, d in dims.items():
            up = op.target(mu)
            out = shift_marks(up, delta)
            if out not in dims:
                continue
            e_low = cache.get(mu)
            e_high = cache.get(shift_marks(mu, delta))
            has_left = e_low is not None and up in dims
            has_right = e_high is not None and shift_marks(mu, delta) in dims
            if not (has_left or has_right):
                continue
            for r in range(dims[out]):
                for c in range(d):
                    row: Dict[int, object] = {}
                    if has_left:
                        for k in range(dims[up]):
                            coeff = e_low[k][c]
                            if coeff:
                                col = index[(up, r, k)]
                                row[col] = row.get(col, linalg.ZERO) + coeff
                    if has_right:
                        mid = shift_marks(mu, delta)
                        for k in range(dims[mid]):
                            coeff = e_high[r][k]
                            if coeff:
                                col = index[(mu, k, c)]
                                row[col] = row.get(col, linalg.ZERO) - coeff
                    row = {j: v for j, v in row.items() if v}
                    if row:
                        rows[eq] = row
                        eq += 1
    solutions = linalg.sparse_nullspace(rows, eq, len(index))
    out_list = []
    for vec in solutions:
        element: Dict[Marks, List[List]] = {}
        for (mu, r, c), j in index.items():
            tgt = shift_marks(mu, delta)
            block = element.setdefault(mu, [[linalg.ZERO] * dims[mu] for _ in range(dims[tgt])])
            block[r][c] = vec[j]
        out_list.append(element)
    return out_list


def _restricted_ops(restricted: RestrictedModule) -> List[BlockOperator]:
    return [restricted.module.root_action(r) for r in generating_roots(restricted.subalgebra)]


def _degrees(restricted: RestrictedModule) -> List[Marks]:
    module = restricted.module
    weights = list(module.dims)
    seen: Dict[Marks, None] = {}
    for a in weights:
        for b in weights:
            delta = tuple(x - y for x, y in zip(b, a))
            if all(not h.evaluate(delta) for h in restricted.subalgebra.t_basis):
                seen.setdefault(delta, None)
    zero = (0,) * module.system.rank
    return [zero] + sorted(d for d in seen if d != zero)


def endomorphism_algebra(
    restricted: RestrictedModule, degree_zero_only: bool = False
) -> List[DomainMatrix]:
    """
    Basis of the commutant {X : XA = AX for every action A of s}, solved one
    weight degree at a time.
    """
    module = restricted.module
    ops = _restricted_ops(restricted)
    degrees = [(0,) * module.system.rank] if degree_zero_only else _degrees(restricted)
    basis = []
    for delta in degrees:
        for element in _degree_commutant(module, ops, delta):
            blocks = {
                mu: DomainMatrix(rows, (len(rows), module.dims[mu]), QQ)
                for mu, rows in element.items()
            }
            basis.append(module.to_matrix(BlockOperator(delta, blocks)))
    return basis


def is_indecomposable(restricted: RestrictedModule) -> bool:
    """
    End_s(V) is graded by weight differences. A module graded by a torsion-free
    group is indecomposable iff it is indecomposable as a graded module, i.e.
    iff the degree-0 commutant is local; over QQ that means its trace form has
    rank 1.
    """
    module = restricted.module
    if module.dim == 0:
        return False
    zero = (0,) * module.system.rank
    elements = _degree_commutant(module, _restricted_ops(restricted), zero)
    mats = [
        {mu: DomainMatrix(rows, (len(rows), len(rows)), QQ) for mu, rows in el.items()}
        for el in elements
    ]
    size = len(mats)
    gram = [[linalg.ZERO] * size for _ in range(size)]
    for a in range(size):
        for b in range(a, size):
            value = linalg.ZERO
            for mu, block in mats[a].items():
                other = mats[b].get(mu)
                if other is not None:
                    value += linalg.trace(block * other)
            gram[a][b] = gram[b][a] = value
    rank = linalg.rank(DomainMatrix(gram, (size, size), QQ)) if size else 0
    logger.debug("Commutant degree zero", dim=size, semisimple_rank=rank)
    return rank == 1


def is_cyclic_indecomposable(module: WeightModule, s: RegularSubalgebra) -> bool:
    if not is_levi_decomposable(s):
        raise MathematicalRejection(f"subalgebra is not Levi decomposable ({s.kind})")
    if not is_indecomposable(restrict(module, s)):
        return False
    quotient = quotient_module(module, radical_image(module, s), s)
    return is_simple_over_levi(quotient)


def levi_dichotomy(module: WeightModule, s: RegularSubalgebra) -> str:
    """
    "split" when V = r·V ⊕ ⟨v_λ⟩, "absorbed" when r·V = V, else "neither".
    """
    radical = radical_image(module, s)
    if radical.dim == module.dim:
        return "absorbed"
    cyclic = cyclic_levi_submodule(module, s)
    if radical.dim + cyclic.dim != module.dim:
        return "neither"
    joint = 0
    for mu, d in module.dims.items():
        rows = list(radical.graded.get(mu, [])) + list(cyclic.graded.get(mu, []))
        joint += len(linalg.row_basis(rows, d))
    return "split" if joint == module.dim else "neither"


def module_dump(module: WeightModule) -> Dict[str, object]:
    """JSON-ready weights and generator matrices with rational entries as strings."""
    return {
        "system": module.system.name,
        "dim": module.dim,
        "highest_weight": list(module.highest) if module.highest is not None else None,
        "highest_vector": module.highest_vector,
        "weights": [list(w.marks) for w in module.weights],
        "actions": {
            name: [[linalg.fmt(x) for x in row] for row in mat.to_list()]
            for name, mat in module.actions().items()
        },
    }


def coroot_action(module: WeightModule, root: Root) -> DomainMatrix:
    return module.to_matrix(module.cartan_action(coroot(module.system, root)))
