"""
Named subalgebras that reproduce the worked examples as one-command runs.
"""

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from liewide.errors import InvalidInputError
from liewide.services.closedset import closed_subset
from liewide.services.regsub import GENERATED_BY_TR, RegularSubalgebra, build_regular_subalgebra
from liewide.services.rootsys import build_root_system
from liewide.services.widecheck import direct_sum_subalgebra, preset_tk_subalgebra

EXAMPLE1_T = [[0, 0, 1], [0, 0, -1], [-1, 0, 0], [-1, -1, 0], [-1, -1, -1]]


@dataclass(frozen=True)
class Preset:
    name: str
    description: str
    build: Callable[..., RegularSubalgebra]
    weight: Optional[Tuple[int, ...]] = None
    needs_nk: bool = False


def _example1() -> RegularSubalgebra:
    return build_regular_subalgebra(
        closed_subset(build_root_system("A3"), EXAMPLE1_T), [[0, 0, 1]]
    )


def _example1_variant() -> RegularSubalgebra:
    return build_regular_subalgebra(
        closed_subset(build_root_system("A3"), EXAMPLE1_T), [[0, 0, 1], [0, 2, 1]]
    )


def _sum_demo() -> RegularSubalgebra:
    borel_part = build_regular_subalgebra(
        closed_subset(build_root_system("A1"), [[-1]]), GENERATED_BY_TR
    )
    return direct_sum_subalgebra([preset_tk_subalgebra(2, 1), borel_part])


PRESETS: Dict[str, Preset] = {
    p.name: p
    for p in [
        Preset(
            "example1",
            "A3, Tʳ = {±α3}, Tᵘ = {−α1, −α1,2, −α1,3}, t = span{h3}: wide, not cyclic wide",
            _example1,
            weight=(0, 0, 1),
        ),
        Preset(
            "example1-variant",
            "example1 with t = span{h3, 2h2+h3}: k⊥ ≠ 0, undecided",
            _example1_variant,
            weight=(0, 0, 1),
        ),
        Preset(
            "tk",
            "T_k ⊂ A_n with Levi sl_{n+1−k}; needs --n and --k",
            preset_tk_subalgebra,
            needs_nk=True,
        ),
        Preset(
            "sum-demo",
            "T_1 of A2 plus {−α1} of A1 inside A2+A1, t = k",
            _sum_demo,
        ),
    ]
}


def get_preset(name: str, n: Optional[int] = None, k: Optional[int] = None) -> RegularSubalgebra:
    preset = PRESETS.get(name)
    if preset is None:
        raise InvalidInputError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    if preset.needs_nk:
        if n is None or k is None:
            raise InvalidInputError(f"preset {name!r} needs --n and --k")
        return preset.build(n, k)
    return preset.build()


def list_presets() -> List[Dict[str, object]]:
    return [
        {
            "name": p.name,
            "description": p.description,
            "weight": list(p.weight) if p.weight else None,
        }
        for p in PRESETS.values()
    ]
