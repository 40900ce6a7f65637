"""
Command-line entry point: decide, verify, module, enumerate, preset list.

Reports go to stdout (JSON by default), logs to stderr. Exit codes: 0 ok,
1 usage error, 2 mathematical rejection, 3 verification discrepancy.
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional, Sequence, Union

from pydantic import BaseModel, TypeAdapter, ValidationError

from liewide.config import settings
from liewide.errors import InvalidInputError, LiewideError, VerificationDiscrepancy
from liewide.logger import get_logger, setup_logging
from liewide.models.requests import ModuleSpec, RunConfig, SubalgebraSpec
from liewide.models.responses import (
    CellRecord,
    DecisionReport,
    EnumerateReport,
    EnumerateRow,
    ModuleDump,
    ModuleReport,
    PresetList,
    PresetRow,
    SubalgebraSummary,
    VerifyReport,
    VerifySummary,
    WeightRecord,
)
from liewide.services import hwmod, widecheck
from liewide.services.closedset import is_parabolic
from liewide.services.presets import PRESETS, get_preset, list_presets
from liewide.services.regsub import (
    RegularSubalgebra,
    build_regular_subalgebra,
    chevalley_constants,
    has_ad_nilpotent_radical,
    is_levi_decomposable,
    is_perfect,
    is_radical_abelian,
    normal_form,
)
from liewide.services.rootsys import Weight, WeylWord, build_root_system
from liewide.utils import notation

logger = get_logger(__name__)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise InvalidInputError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--system", help="Root system, e.g. A3 or B2+A1")
    common.add_argument("--input", help="JSON file with {system, T, t} (or {subalgebra, weight})")
    common.add_argument("--preset", help=f"Named subalgebra: {', '.join(PRESETS)}")
    common.add_argument("--n", type=int, help="Rank n for the tk preset")
    common.add_argument("--k", type=int, help="k for the tk preset")
    common.add_argument("--lambda", dest="weight", help="Highest weight marks, comma separated")
    common.add_argument("--max-dim", type=int, help="Largest module dimension in the λ grid")
    common.add_argument("--bound", type=int, help="Largest root system that may be enumerated")
    common.add_argument("--cap", type=int, help="Module dimension cap")
    common.add_argument("--jobs", type=int, help="Worker processes for the verification grid")
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--dump", help="Write the module's weights and matrices to this path")
    common.add_argument("--log-level", default=None, help="Log level (default from LIEWIDE_LOG_LEVEL)")

    parser = _Parser(prog="liewide", description="Wide and cyclic wide regular subalgebras")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    sub.add_parser("decide", parents=[common], help="Decide wide / cyclic wide")
    sub.add_parser("verify", parents=[common], help="Cross-check the criteria by brute force")
    sub.add_parser("module", parents=[common], help="Inspect V(λ) restricted to a subalgebra")
    sub.add_parser("enumerate", parents=[common], help="List closed subsets with decisions")
    preset = sub.add_parser("preset", parents=[common], help="Preset registry")
    preset.add_argument("action", choices=["list"])
    return parser


def _parse_weight(text: Optional[str]) -> Optional[List[int]]:
    if text is None:
        return None
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InvalidInputError(f"cannot parse weight {text!r}")


def _run_config(args: argparse.Namespace) -> RunConfig:
    try:
        return RunConfig(
            subcommand=args.subcommand,
            system=args.system,
            input=args.input,
            preset=args.preset,
            n=args.n,
            k=args.k,
            weight=_parse_weight(args.weight),
            max_dim=args.max_dim,
            bound=args.bound,
            cap=args.cap,
            jobs=args.jobs,
            format=args.format,
            dump=args.dump,
        )
    except ValidationError as exc:
        raise InvalidInputError(str(exc))


def _read_input(path: str) -> Union[ModuleSpec, SubalgebraSpec]:
    file = Path(path)
    if not file.is_file():
        raise InvalidInputError(f"input file not found: {path}")
    try:
        return TypeAdapter(Union[ModuleSpec, SubalgebraSpec]).validate_json(file.read_text())
    except ValidationError as exc:
        raise InvalidInputError(f"invalid input spec: {exc}")


def _from_spec(spec: SubalgebraSpec) -> RegularSubalgebra:
    system = build_root_system(spec.system)
    return build_regular_subalgebra((system, spec.T), spec.t)


def _subalgebra(config: RunConfig) -> RegularSubalgebra:
    if config.preset:
        return get_preset(config.preset, config.n, config.k)
    if config.input:
        spec = _read_input(config.input)
        return _from_spec(spec.subalgebra if isinstance(spec, ModuleSpec) else spec)
    raise InvalidInputError("give --preset or --input")


def _weight(config: RunConfig, s: RegularSubalgebra) -> Weight:
    marks = config.weight
    if marks is None and config.input:
        spec = _read_input(config.input)
        if isinstance(spec, ModuleSpec):
            marks = spec.weight
    if marks is None and config.preset and PRESETS[config.preset].weight:
        marks = list(PRESETS[config.preset].weight)
    if marks is None:
        raise InvalidInputError("give --lambda")
    if len(marks) != s.ambient.rank:
        raise InvalidInputError(f"weight {marks} has wrong length for {s.ambient.name}")
    return Weight(tuple(marks))


def _summary(s: RegularSubalgebra) -> SubalgebraSummary:
    return SubalgebraSummary(
        system=s.ambient.name,
        T=s.T.to_lists(),
        symmetric=[list(r.coeffs) for r in s.roots if r in s.symmetric],
        special=[list(r.coeffs) for r in s.roots if r in s.special],
        t=[h.to_strings() for h in s.t_basis],
        t_mode=s.t_mode,
        k=[h.to_strings() for h in s.k_basis],
        k_perp=[h.to_strings() for h in s.kperp_basis],
        kind=s.kind,
        dim=s.dim,
    )


def _weight_record(v: widecheck.WeightVerdict) -> WeightRecord:
    return WeightRecord(
        weight=list(v.weight),
        dim=v.dim,
        indecomposable=v.indecomposable,
        quotient_simple=v.quotient_simple,
        cyclic_indecomposable=v.cyclic_indecomposable,
        radical_dim=v.radical_dim,
        quotient_singular_dim=v.quotient_singular_dim,
        dichotomy=v.dichotomy,
        skipped=v.skipped,
    )


def _emit(config: RunConfig, report: BaseModel, text: str) -> None:
    out = report.model_dump_json(indent=2) if config.format == "json" else text
    sys.stdout.write(out + "\n")


def _yes(flag: Optional[bool]) -> str:
    return "-" if flag is None else "yes" if flag else "no"


def cmd_decide(config: RunConfig) -> int:
    s = _subalgebra(config)
    decision = widecheck.decide_cyclic_wide(s)
    report = DecisionReport(
        subalgebra=_summary(s),
        levi_decomposable=is_levi_decomposable(s),
        parabolic=is_parabolic(s.T),
        ad_nilpotent_radical=has_ad_nilpotent_radical(s),
        perfect=is_perfect(s),
        radical_abelian=is_radical_abelian(s),
        wide=decision.wide,
        cyclic_wide=decision.cyclic_wide,
        reason=decision.reason,
        witnesses=decision.witnesses,
    )
    system = s.ambient
    lines = [
        f"system: {system.name}",
        f"T: {notation.roots_name(system, s.T.members)}",
        f"t: {', '.join(str(h) for h in s.t_basis) or '0'}",
        f"wide: {_yes(decision.wide)}",
        f"cyclic wide: {decision.cyclic_wide} ({decision.reason})",
    ]
    if "normal_form_word" in decision.witnesses:
        word = WeylWord(tuple(decision.witnesses["normal_form_word"]))
        lines.append(f"normal form word: {notation.word_name(word)}")
    if "weight" in decision.witnesses:
        lines.append(f"witness: V({notation.weight_name(Weight(tuple(decision.witnesses['weight'])))})")
    _emit(config, report, "\n".join(lines))
    return 0


def cmd_module(config: RunConfig) -> int:
    s = _subalgebra(config)
    weight = _weight(config, s)
    module = hwmod.build_simple_module(s.ambient, weight, chevalley_constants(s.ambient), config.cap)
    radical = hwmod.radical_image(module, s)
    quotient = hwmod.quotient_module(module, radical, s)
    singular = hwmod.singular_dimension(quotient)
    indecomposable = hwmod.is_indecomposable(hwmod.restrict(module, s))
    cyclic = hwmod.cyclic_levi_submodule(module, s)
    dichotomy = hwmod.levi_dichotomy(module, normal_form(s)[1]) if is_parabolic(s.T) else None
    if config.dump:
        dump = ModuleDump.model_validate(hwmod.module_dump(module))
        Path(config.dump).write_text(dump.model_dump_json(indent=2) + "\n")
        logger.info("Module dumped", path=config.dump)
    report = ModuleReport(
        subalgebra=_summary(s),
        weight=list(weight.marks),
        dim=module.dim,
        radical_dim=radical.dim,
        cyclic_levi_dim=cyclic.dim,
        quotient_dim=quotient.dim,
        quotient_singular_dim=singular,
        quotient_is_trivial=quotient.dim == 0,
        indecomposable=indecomposable,
        cyclic_indecomposable=indecomposable and singular == 1,
        dichotomy=dichotomy,
    )
    text = (
        f"V({notation.weight_name(weight)}): dim {module.dim}, dim r·V {radical.dim}, "
        f"dim ⟨v⟩ {cyclic.dim}, quotient dim {quotient.dim} "
        f"(singular dim {singular}{', V(0)' if quotient.dim == 0 else ''}), "
        f"indecomposable {_yes(indecomposable)}, cyclic indecomposable {_yes(report.cyclic_indecomposable)}"
    )
    _emit(config, report, text)
    return 0


def cmd_verify(config: RunConfig) -> int:
    if not config.system:
        raise InvalidInputError("verify needs --system")
    system = build_root_system(config.system)
    grid = [Weight(tuple(config.weight))] if config.weight else None
    result = widecheck.verify_theorems(
        system,
        grid=grid,
        max_dim=config.max_dim,
        jobs=config.jobs,
        bound=config.bound,
        cap=config.cap,
    )
    cells = [
        CellRecord(
            index=c.index,
            system=c.system,
            T=c.T,
            t_mode=c.t_mode,
            weight=list(c.weight),
            predicted_wide=c.predicted_wide,
            predicted_cyclic_wide=c.predicted_cyclic,
            empirical=_weight_record(c.verdict),
        )
        for c in result.cells
    ]
    skipped = sum(1 for c in result.cells if c.verdict.skipped is not None)
    report = VerifyReport(
        system=result.system,
        grid=[list(w) for w in result.grid],
        summary=VerifySummary(
            subalgebras=result.subalgebras,
            cells=len(cells),
            checked=len(cells) - skipped,
            skipped=skipped,
            discrepancies=len(result.discrepancies),
        ),
        cells=cells,
        discrepancies=result.discrepancies,
    )
    text = "\n".join(
        [f"{'T':<40} {'λ':<12} {'wide':<5} {'cyclic':<8} {'indec':<6} {'V/rV simple':<11}"]
        + [
            f"{notation.roots_name(system, [system.root(r) for r in c.T]):<40} "
            f"{notation.weight_name(Weight(tuple(c.weight))):<12} {_yes(c.predicted_wide):<5} "
            f"{c.predicted_cyclic_wide:<8} {_yes(c.empirical.indecomposable):<6} "
            f"{_yes(c.empirical.quotient_simple):<11}"
            for c in cells
        ]
        + [f"{len(cells)} cells, {len(result.discrepancies)} discrepancies"]
    )
    _emit(config, report, text)
    if result.discrepancies:
        raise VerificationDiscrepancy(
            f"{len(result.discrepancies)} discrepancies on {system.name}", result.discrepancies
        )
    return 0


def cmd_enumerate(config: RunConfig) -> int:
    if not config.system:
        raise InvalidInputError("enumerate needs --system")
    system = build_root_system(config.system)
    rows = []
    for index, (T, decision) in enumerate(widecheck.closed_subsets_with_decisions(system, config.bound)):
        row = EnumerateRow(
            index=index,
            T=T.to_lists(),
            symmetric=len(T.symmetric),
            special=len(T.special),
            parabolic=is_parabolic(T),
            levi_decomposable=decision is not None,
            wide=decision.wide if decision else None,
            cyclic_wide=decision.cyclic_wide if decision else None,
        )
        rows.append(row)
        if config.format == "text":
            sys.stdout.write(
                f"{index:>5} {notation.roots_name(system, T.members):<50} "
                f"{'levi' if decision else '-':<5} {_yes(row.wide):<4} {row.cyclic_wide or '-'}\n"
            )
    report = EnumerateReport(system=system.name, count=len(rows), rows=rows)
    if config.format == "json":
        _emit(config, report, "")
    else:
        sys.stdout.write(f"{len(rows)} closed subsets\n")
    return 0


def cmd_preset(config: RunConfig) -> int:
    rows = [PresetRow(**p) for p in list_presets()]
    text = "\n".join(f"{r.name:<18} {r.description}" for r in rows)
    _emit(config, PresetList(presets=rows), text)
    return 0


COMMANDS = {
    "decide": cmd_decide,
    "verify": cmd_verify,
    "module": cmd_module,
    "enumerate": cmd_enumerate,
    "preset": cmd_preset,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        setup_logging(args.log_level or settings.LOG_LEVEL)
        config = _run_config(args)
        return COMMANDS[config.subcommand](config)
    except VerificationDiscrepancy as exc:
        logger.error("Verification failed", error=str(exc), witnesses=len(exc.witnesses))
        sys.stderr.write(f"error: {exc}\n")
        return exc.exit_code
    except LiewideError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.exit_code
    except AssertionError as exc:
        logger.error("Internal consistency check failed", error=str(exc))
        sys.stderr.write(f"internal error: {exc}\n")
        return LiewideError.exit_code


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
