"""
Human-readable names for roots, weights and Weyl words.
"""

from typing import Iterable

from liewide.services.rootsys import Root, RootSystem, Weight, WeylWord


def _contiguous(indices) -> bool:
    return list(indices) == list(range(indices[0], indices[-1] + 1))


def root_name(system: RootSystem, root: Root) -> str:
    """
    α_{p,q} for roots of type-A components (α_p when p = q), the coefficient
    vector otherwise. Indices are global simple-root indices.
    """
    k = system.component_of(root)
    family = system.components[k][0]
    positive = root if root.is_positive else -root
    support = [i + 1 for i, c in enumerate(positive.coeffs) if c]
    if family != "A" or any(c > 1 for c in positive.coeffs) or not _contiguous(support):
        return str(root)
    p, q = support[0], support[-1]
    body = f"α{p}" if p == q else f"α{p},{q}"
    return body if root.is_positive else f"-{body}"


def roots_name(system: RootSystem, roots: Iterable[Root]) -> str:
    return "{" + ", ".join(root_name(system, r) for r in system.sort_roots(roots)) + "}"


def weight_name(weight: Weight) -> str:
    terms = []
    for i, m in enumerate(weight.marks, start=1):
        if m:
            terms.append(f"λ{i}" if m == 1 else f"{m}λ{i}")
    return "+".join(terms) or "0"


def word_name(word: WeylWord) -> str:
    return " ".join(f"s{i}" for i in word.letters) or "e"
