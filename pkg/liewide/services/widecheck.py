"""
Wide and cyclic-wide decisions, and the brute-force cross-check of those
decisions on highest-weight modules.
"""

import asyncio
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Literal, Optional, Sequence, Tuple, Union

from liewide.config import settings
from liewide.errors import InvalidInputError, MathematicalRejection, ModuleTooLarge
from liewide.logger import get_logger, setup_logging
from liewide.services import hwmod
from liewide.services.closedset import (
    closed_subset,
    enumerate_closed_subsets,
    is_parabolic,
    symmetric_hull,
)
from liewide.services.regsub import (
    GENERATED_BY_TR,
    RegularSubalgebra,
    build_regular_subalgebra,
    chevalley_constants,
    has_ad_nilpotent_radical,
    is_levi_decomposable,
    normal_form,
)
from liewide.services.rootsys import (
    Root,
    RootSystem,
    Weight,
    build_root_system,
    fundamental_weight,
    weyl_dimension,
)

logger = get_logger(__name__)

Verdict = Literal["yes", "no", "unknown"]


@dataclass(frozen=True)
class Decision:
    wide: bool
    cyclic_wide: Verdict
    reason: str
    witnesses: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.cyclic_wide == "yes" and not self.wide:
            raise AssertionError("a cyclic wide subalgebra must be wide")


@dataclass(frozen=True)
class WeightVerdict:
    """Brute-force verdicts of one V(λ) restricted to s."""

    weight: Tuple[int, ...]
    dim: int
    indecomposable: Optional[bool] = None
    quotient_simple: Optional[bool] = None
    radical_dim: Optional[int] = None
    quotient_singular_dim: Optional[int] = None
    dichotomy: Optional[str] = None
    skipped: Optional[str] = None

    @property
    def cyclic_indecomposable(self) -> Optional[bool]:
        if self.indecomposable is None or self.quotient_simple is None:
            return None
        return self.indecomposable and self.quotient_simple


@dataclass(frozen=True)
class EmpiricalReport:
    verdicts: Tuple[WeightVerdict, ...]

    @property
    def checked(self) -> List[WeightVerdict]:
        return [v for v in self.verdicts if v.skipped is None]

    @property
    def all_indecomposable(self) -> bool:
        return all(v.indecomposable for v in self.checked)

    @property
    def all_cyclic_indecomposable(self) -> bool:
        return all(v.cyclic_indecomposable for v in self.checked)

    @property
    def witness(self) -> Optional[Tuple[int, ...]]:
        """First λ whose restriction is not cyclic indecomposable."""
        return next((v.weight for v in self.checked if not v.cyclic_indecomposable), None)


def is_wide(s: RegularSubalgebra) -> bool:
    """
    s_{T,t} is wide iff [T ∪ −T] = Φ.
    """
    return len(symmetric_hull(s.T)) == len(s.ambient.roots)


def _root_lists(roots) -> List[List[int]]:
    return [list(r.coeffs) for r in roots]


def decide_cyclic_wide(s: RegularSubalgebra) -> Decision:
    """
    Parabolic T decides yes. A subalgebra that is not wide, or whose radical
    is ad-nilpotent without T being parabolic, decides no. Everything else
    stays unknown.
    """
    if not is_levi_decomposable(s):
        raise MathematicalRejection(f"subalgebra is not Levi decomposable ({s.kind})")
    system = s.ambient
    wide = is_wide(s)
    if is_parabolic(s.T):
        return Decision(wide=wide, cyclic_wide="yes", reason="T ∪ −T = Φ")

    uncovered = [r for r in system.roots if r not in s.T and -r not in s.T]
    witnesses: Dict[str, Any] = {"uncovered": _root_lists(uncovered)}
    if not wide:
        hull = symmetric_hull(s.T)
        witnesses["missing"] = _root_lists(r for r in system.roots if r not in hull)
        return Decision(wide=False, cyclic_wide="no", reason="[T ∪ −T] ≠ Φ", witnesses=witnesses)

    if has_ad_nilpotent_radical(s):
        word, image = normal_form(s)
        witnesses["normal_form_word"] = list(word.letters)
        l = next(
            i for i in range(1, system.rank + 1) if -system.simple_root(i) not in image.T
        )
        witnesses["weight"] = list(fundamental_weight(system, l).marks)
        return Decision(
            wide=True,
            cyclic_wide="no",
            reason="ad-nilpotent radical and T ∪ −T ≠ Φ",
            witnesses=witnesses,
        )
    return Decision(
        wide=True,
        cyclic_wide="unknown",
        reason="k⊥ ≠ 0 and T ∪ −T ≠ Φ: no criterion applies",
        witnesses=witnesses,
    )


def positive_root_ij(system: RootSystem, i: int, j: int) -> Root:
    """α_{i,j} = α_i + ... + α_j in type A, 1-based."""
    return system.root(tuple(1 if i - 1 <= m <= j - 1 else 0 for m in range(system.rank)))


def preset_tk_subalgebra(n: int, k: int) -> RegularSubalgebra:
    """
    T_k ⊂ A_n: Tʳ = {±α_{i,j} : k < i ≤ j ≤ n}, Tᵘ = {α_{i,j} : i ≤ k}, t = k.
    """
    if n < 2 or not 1 <= k <= n - 1:
        raise InvalidInputError(f"tk preset needs n ≥ 2 and 1 ≤ k ≤ n−1, got n={n}, k={k}")
    system = build_root_system([("A", n)])
    members = []
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            root = positive_root_ij(system, i, j)
            members.append(root)
            if i > k:
                members.append(-root)
    return build_regular_subalgebra(closed_subset(system, members), GENERATED_BY_TR)


def direct_sum_subalgebra(
    parts: Sequence[RegularSubalgebra], ambient: Optional[RootSystem] = None
) -> RegularSubalgebra:
    """
    Blockwise union of subalgebras of the components g¹, ..., gᵐ, placed in
    g¹ ⊕ ... ⊕ gᵐ in order.
    """
    if not parts:
        raise InvalidInputError("direct sum needs at least one part")
    components = [c for p in parts for c in p.ambient.components]
    if ambient is None:
        ambient = build_root_system(components)
    elif list(ambient.components) != components:
        raise MathematicalRejection(
            f"parts span {'+'.join(f'{f}{n}' for f, n in components)}, ambient is {ambient.name}"
        )
    if len(parts) == 1:
        return parts[0]

    def pad(values, offset: int) -> List:
        return [0] * offset + list(values) + [0] * (ambient.rank - offset - len(values))

    members: List[List] = []
    t_rows: List[List] = []
    offset = 0
    for p in parts:
        members.extend(pad(r.coeffs, offset) for r in p.roots)
        t_rows.extend(pad(h.coords, offset) for h in p.t_basis)
        offset += p.ambient.rank
    generated = all(p.t_mode == GENERATED_BY_TR for p in parts)
    t_arg: Union[str, List[List]] = GENERATED_BY_TR if generated else t_rows
    return build_regular_subalgebra(closed_subset(ambient, members), t_arg)


def default_grid(system: RootSystem, max_dim: Optional[int] = None) -> List[Weight]:
    """
    Every dominant λ with dim V(λ) ≤ max_dim, ordered by dimension then marks.
    """
    max_dim = max_dim or settings.GRID_MAX_DIM
    zero = Weight((0,) * system.rank)
    found = {zero: 1}
    frontier = [zero]
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(1, system.rank + 1):
                u = w + fundamental_weight(system, i)
                if u in found:
                    continue
                d = weyl_dimension(system, u)
                if d <= max_dim:
                    found[u] = d
                    nxt.append(u)
        frontier = nxt
    return sorted(found, key=lambda w: (found[w], w.marks))


def evaluate_weight(s: RegularSubalgebra, weight: Weight, cap: Optional[int] = None) -> WeightVerdict:
    """
    Builds V(λ) and decides, by brute force, whether its restriction to s is
    indecomposable and whether V/r·V is simple over the Levi factor.
    """
    system = s.ambient
    try:
        module = hwmod.build_simple_module(system, weight, chevalley_constants(system), cap)
    except ModuleTooLarge as exc:
        return WeightVerdict(weight=weight.marks, dim=exc.dimension, skipped=str(exc))
    radical = hwmod.radical_image(module, s)
    quotient = hwmod.quotient_module(module, radical, s)
    singular = hwmod.singular_dimension(quotient)
    indecomposable = hwmod.is_indecomposable(hwmod.restrict(module, s))
    dichotomy = hwmod.levi_dichotomy(module, normal_form(s)[1]) if is_parabolic(s.T) else None
    verdict = WeightVerdict(
        weight=weight.marks,
        dim=module.dim,
        indecomposable=indecomposable,
        quotient_simple=singular == 1,
        radical_dim=radical.dim,
        quotient_singular_dim=singular,
        dichotomy=dichotomy,
    )
    logger.debug("Weight evaluated", weight=list(weight.marks), dim=module.dim, indecomposable=indecomposable, singular=singular)
    return verdict


def empirical_cyclic_wide(
    s: RegularSubalgebra, grid: Sequence[Weight], cap: Optional[int] = None
) -> EmpiricalReport:
    return EmpiricalReport(tuple(evaluate_weight(s, w, cap) for w in grid))


@dataclass(frozen=True)
class CellRecord:
    index: int
    system: str
    T: List[List[int]]
    t_mode: str
    weight: Tuple[int, ...]
    predicted_wide: bool
    predicted_cyclic: Verdict
    verdict: WeightVerdict


@dataclass
class VerifyResult:
    system: str
    subalgebras: int
    grid: List[Tuple[int, ...]]
    cells: List[CellRecord]
    discrepancies: List[Dict[str, Any]]


def _cell_payload(s: RegularSubalgebra, weight: Weight, cap: int) -> Tuple:
    return (list(s.ambient.components), s.T.to_lists(), weight.marks, cap)


def _run_cell(payload: Tuple) -> WeightVerdict:
    components, members, marks, cap = payload
    system = build_root_system(components)
    s = build_regular_subalgebra(closed_subset(system, members), GENERATED_BY_TR)
    return evaluate_weight(s, Weight(tuple(marks)), cap)


class GridVerifier:
    """
    Runs (T, λ) cells, in a process pool when jobs > 1. Results keep cell order.
    """

    def __init__(self, jobs: int = 1, cap: Optional[int] = None):
        self.jobs = max(1, jobs)
        self.cap = cap or settings.CAP
        self.semaphore = asyncio.Semaphore(self.jobs)
        self.executor: Optional[ProcessPoolExecutor] = None

    async def __aenter__(self):
        if self.jobs > 1:
            self.executor = ProcessPoolExecutor(
                max_workers=self.jobs, initializer=setup_logging, initargs=(settings.LOG_LEVEL,)
            )
        return self

    async def __aexit__(self, exc_type, exc_val, exc_tb):
        if self.executor is not None:
            self.executor.shutdown(wait=True)
            self.executor = None

    async def _run_one(self, payload: Tuple) -> WeightVerdict:
        async with self.semaphore:
            if self.executor is None:
                return _run_cell(payload)
            loop = asyncio.get_running_loop()
            return await loop.run_in_executor(self.executor, _run_cell, payload)

    async def run(self, payloads: Sequence[Tuple]) -> List[WeightVerdict]:
        async with self as verifier:
            return list(await asyncio.gather(*(verifier._run_one(p) for p in payloads)))


def _levi_subalgebras(system: RootSystem, bound: Optional[int]) -> List[RegularSubalgebra]:
    out = []
    for T in enumerate_closed_subsets(system, bound):
        if not T.symmetric or not T.special:
            continue
        out.append(build_regular_subalgebra(T, GENERATED_BY_TR))
    return out


def verify_theorems(
    system: RootSystem,
    grid: Optional[Sequence[Weight]] = None,
    max_dim: Optional[int] = None,
    jobs: Optional[int] = None,
    bound: Optional[int] = None,
    cap: Optional[int] = None,
) -> VerifyResult:
    """
    Cross-checks the wide and cyclic-wide predictions against brute force
    for every Levi decomposable s_{T,k} with T closed.

    A subalgebra's grid is extended by the witness weight of a "no" decision.
    Discrepancies are returned, not raised.
    """
    grid = list(grid) if grid is not None else default_grid(system, max_dim)
    cap = cap or settings.CAP
    subalgebras = _levi_subalgebras(system, bound)
    logger.info("Verification started", system=system.name, subalgebras=len(subalgebras), grid=len(grid))

    plan: List[Tuple[RegularSubalgebra, Decision, Weight]] = []
    for s in subalgebras:
        decision = decide_cyclic_wide(s)
        weights = list(grid)
        witness = decision.witnesses.get("weight")
        if witness is not None and Weight(tuple(witness)) not in weights:
            weights.append(Weight(tuple(witness)))
        plan.extend((s, decision, w) for w in weights)

    payloads = [_cell_payload(s, w, cap) for s, _, w in plan]
    verdicts = asyncio.run(GridVerifier(jobs or settings.JOBS, cap).run(payloads))

    cells = [
        CellRecord(
            index=i,
            system=system.name,
            T=s.T.to_lists(),
            t_mode=s.t_mode,
            weight=w.marks,
            predicted_wide=decision.wide,
            predicted_cyclic=decision.cyclic_wide,
            verdict=verdict,
        )
        for i, ((s, decision, w), verdict) in enumerate(zip(plan, verdicts))
    ]
    discrepancies = _discrepancies(cells)
    logger.info("Verification finished", system=system.name, cells=len(cells), discrepancies=len(discrepancies))
    return VerifyResult(
        system=system.name,
        subalgebras=len(subalgebras),
        grid=[w.marks for w in grid],
        cells=cells,
        discrepancies=discrepancies,
    )


def _discrepancies(cells: Sequence[CellRecord]) -> List[Dict[str, Any]]:
    by_subalgebra: Dict[Tuple, List[CellRecord]] = {}
    for cell in cells:
        by_subalgebra.setdefault(tuple(map(tuple, cell.T)), []).append(cell)
    out = []
    for members, group in by_subalgebra.items():
        checked = [c for c in group if c.verdict.skipped is None]
        first = group[0]
        if first.predicted_cyclic == "unknown":
            out.append({"T": first.T, "problem": "undecided cyclic wideness with t = k"})
            continue
        empirical_wide = all(c.verdict.indecomposable for c in checked)
        empirical_cyclic = all(c.verdict.cyclic_indecomposable for c in checked)
        failing = [list(c.verdict.weight) for c in checked if not c.verdict.cyclic_indecomposable]
        if first.predicted_wide != empirical_wide:
            out.append({
                "T": first.T,
                "problem": "wide prediction contradicted",
                "predicted": first.predicted_wide,
                "decomposable": [list(c.verdict.weight) for c in checked if not c.verdict.indecomposable],
            })
        if (first.predicted_cyclic == "yes") != empirical_cyclic:
            out.append({
                "T": first.T,
                "problem": "cyclic wide prediction contradicted",
                "predicted": first.predicted_cyclic,
                "failing": failing,
            })
        for c in checked:
            if first.predicted_cyclic == "yes" and c.verdict.dichotomy == "neither":
                out.append({"T": first.T, "problem": "r·V and ⟨v_λ⟩ neither split nor absorb", "weight": list(c.verdict.weight)})
    return out


def closed_subsets_with_decisions(system: RootSystem, bound: Optional[int] = None):
    """
    Yields (T, Decision or None) for every closed subset; None when s_{T,k}
    is not Levi decomposable.
    """
    for T in enumerate_closed_subsets(system, bound):
        s = build_regular_subalgebra(T, GENERATED_BY_TR)
        yield T, decide_cyclic_wide(s) if is_levi_decomposable(s) else None

