"""
Weight-graded operators and the construction of simple highest-weight modules.

A module is stored weight space by weight space. Each operator that moves
weights by a fixed amount is a BlockOperator: a map from source weight to
the exact block sending V_μ into V_{μ+shift}.

V(λ) is built layer by layer below λ. Candidate vectors of V_ν are F_i b for
basis vectors b of the layer above. Raising operators are commuted past the
lowering ones (E_j F_i b = F_i E_j b + δ_ij μ(h_i) b) to express every
candidate through its images under all E_j. A combination of candidates is
zero in V(λ) exactly when all these images vanish, i.e. when it lies in the
radical of the contravariant form, so the rank of the image matrix is
dim V_ν and its pivot candidates form the basis.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Mapping, MutableMapping, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from liewide.logger import get_logger
from liewide.services.rootsys import Root, RootSystem
from liewide.utils import linalg

logger = get_logger(__name__)

Marks = Tuple[int, ...]


def shift_marks(mu: Marks, delta: Marks, sign: int = 1) -> Marks:
    return tuple(m + sign * d for m, d in zip(mu, delta))


@dataclass(frozen=True)
class BlockOperator:
    shift: Marks
    blocks: Mapping[Marks, DomainMatrix]

    def target(self, mu: Marks) -> Marks:
        return shift_marks(mu, self.shift)

    def get(self, mu: Marks) -> Optional[DomainMatrix]:
        return self.blocks.get(mu)

    def compose(self, other: "BlockOperator") -> "BlockOperator":
        """self ∘ other."""
        blocks = {}
        for mu, inner in other.blocks.items():
            outer = self.blocks.get(other.target(mu))
            if outer is None:
                continue
            product = outer * inner
            if not linalg.is_zero(product):
                blocks[mu] = product
        return BlockOperator(shift_marks(self.shift, other.shift), blocks)

    def combine(self, other: "BlockOperator", sign: int = 1) -> "BlockOperator":
        if self.shift != other.shift:
            raise ValueError("cannot add operators of different degree")
        blocks = dict(self.blocks)
        for mu, block in other.blocks.items():
            term = block if sign == 1 else -block
            total = blocks[mu] + term if mu in blocks else term
            if linalg.is_zero(total):
                blocks.pop(mu, None)
            else:
                blocks[mu] = total
        return BlockOperator(self.shift, blocks)

    def commutator(self, other: "BlockOperator") -> "BlockOperator":
        return self.compose(other).combine(other.compose(self), sign=-1)

    def scaled(self, factor) -> "BlockOperator":
        if not factor:
            return BlockOperator(self.shift, {})
        return BlockOperator(self.shift, {mu: b * factor for mu, b in self.blocks.items()})

    @property
    def is_zero(self) -> bool:
        return not self.blocks

    def equals(self, other: "BlockOperator") -> bool:
        return self.shift == other.shift and self.combine(other, sign=-1).is_zero


@dataclass(frozen=True, eq=False)
class HighestWeightData:
    system: RootSystem
    top: Marks
    dims: Tuple[Tuple[Marks, int], ...]
    raising: Tuple[BlockOperator, ...]
    lowering: Tuple[BlockOperator, ...]


def _alpha_marks(system: RootSystem) -> List[Marks]:
    return [tuple(row) for row in system.cartan]


@lru_cache(maxsize=256)
def construct(system: RootSystem, top: Marks) -> HighestWeightData:
    """
    Generator blocks E_i, F_i of the simple module with highest weight `top`.
    """
    n = system.rank
    alpha = _alpha_marks(system)
    dims: Dict[Marks, int] = {top: 1}
    raise_blocks: List[Dict[Marks, List[List]]] = [dict() for _ in range(n)]
    lower_blocks: List[Dict[Marks, List[List]]] = [dict() for _ in range(n)]
    layer = [top]

    while layer:
        candidates: Dict[Marks, List[Tuple[int, Marks, int]]] = {}
        for mu in layer:
            for i in range(n):
                nu = shift_marks(mu, alpha[i], -1)
                for c in range(dims[mu]):
                    candidates.setdefault(nu, []).append((i, mu, c))

        next_layer = []
        for nu, cands in candidates.items():
            targets = [
                (j, shift_marks(nu, alpha[j]))
                for j in range(n)
                if shift_marks(nu, alpha[j]) in dims
            ]
            cols = []
            for i, mu, c in cands:
                col: List = []
                for j, tgt in targets:
                    vec = [linalg.ZERO] * dims[tgt]
                    mid = shift_marks(mu, alpha[j])
                    e_block = raise_blocks[j].get(mu)
                    f_block = lower_blocks[i].get(mid)
                    if e_block is not None and f_block is not None:
                        e_col = [row[c] for row in e_block]
                        for r, f_row in enumerate(f_block):
                            vec[r] += sum((a * b for a, b in zip(f_row, e_col) if b), linalg.ZERO)
                    if i == j:
                        vec[c] += mu[i]
                    col.extend(vec)
                cols.append(col)
            total = sum(dims[tgt] for _, tgt in targets)
            images = DomainMatrix(cols, (len(cols), total), QQ).transpose()
            rows, pivots = linalg.rref(images)
            r = len(pivots)
            if r == 0:
                continue
            dims[nu] = r
            next_layer.append(nu)

            offset = 0
            for j, tgt in targets:
                size = dims[tgt]
                raise_blocks[j][nu] = [
                    [cols[p][offset + k] for p in pivots] for k in range(size)
                ]
                offset += size
            grouped: Dict[Tuple[int, Marks], Dict[int, List]] = {}
            for idx, (i, mu, c) in enumerate(cands):
                grouped.setdefault((i, mu), {})[c] = [rows[k][idx] for k in range(r)]
            for (i, mu), by_col in grouped.items():
                lower_blocks[i][mu] = [
                    [by_col[c][k] for c in range(dims[mu])] for k in range(r)
                ]
        layer = next_layer

    def wrap(blocks: Dict[Marks, List[List]], sign: int, i: int) -> BlockOperator:
        out = {}
        for mu, rows in blocks.items():
            tgt = shift_marks(mu, alpha[i], sign)
            block = DomainMatrix(rows, (dims[tgt], dims[mu]), QQ)
            if not linalg.is_zero(block):
                out[mu] = block
        return BlockOperator(tuple(sign * a for a in alpha[i]), out)

    data = HighestWeightData(
        system=system,
        top=top,
        dims=tuple(dims.items()),
        raising=tuple(wrap(raise_blocks[i], 1, i) for i in range(n)),
        lowering=tuple(wrap(lower_blocks[i], -1, i) for i in range(n)),
    )
    logger.debug(
        "Highest-weight module constructed",
        system=system.name,
        highest_weight=list(top),
        dim=sum(dims.values()),
        weights=len(dims),
    )
    return data


def canonical_path(system: RootSystem, root: Root) -> Tuple[int, int]:
    """
    For a positive non-simple root γ: the first simple index i (0-based, root
    order) with γ − α_i a root, and the largest p with γ − α_i − pα_i a root.
    """
    for i in range(system.rank):
        simple = system.simple_root(i + 1)
        rest = tuple(a - b for a, b in zip(root.coeffs, simple.coeffs))
        if any(rest) and system.is_root(rest) and all(x >= 0 for x in rest):
            p = 0
            while True:
                nxt = tuple(a - (p + 1) * b for a, b in zip(rest, simple.coeffs))
                if not any(nxt) or not system.is_root(nxt):
                    break
                p += 1
            return i, p
    raise ValueError(f"{root} is simple or not a positive root")


def root_vector(
    system: RootSystem,
    raising: Sequence[BlockOperator],
    lowering: Sequence[BlockOperator],
    root: Root,
    cache: MutableMapping[Root, BlockOperator],
) -> BlockOperator:
    """
    Action of the Chevalley root vector e_root, built from the generators by
    e_γ = [e_i, e_{γ−α_i}]/(p+1) and e_{−γ} = −[f_i, e_{−γ+α_i}]/(p+1).
    """
    if root in cache:
        return cache[root]
    positive = root.is_positive
    base = root if positive else -root
    if base.height == 1:
        i = base.coeffs.index(1)
        op = raising[i] if positive else lowering[i]
    else:
        i, p = canonical_path(system, base)
        rest = Root(tuple(a - (1 if k == i else 0) for k, a in enumerate(base.coeffs)))
        if not positive:
            rest = -rest
        generator = raising[i] if positive else lowering[i]
        sub = root_vector(system, raising, lowering, rest, cache)
        factor = QQ(1, p + 1) if positive else QQ(-1, p + 1)
        op = generator.commutator(sub).scaled(factor)
    cache[root] = op
    return op
