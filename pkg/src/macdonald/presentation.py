"""Finite presentations of T(beta) and L(beta) as generator and relator lists."""
from __future__ import annotations

from .core import GroupParams

Word = list[tuple[str, int]]


def reduce_word(word: Word) -> Word:
    """Free reduction: merge equal neighbours and drop zero exponents."""
    out: Word = []
    for gen, exp in word:
        if out and out[-1][0] == gen:
            exp += out.pop()[1]
        if exp:
            out.append((gen, exp))
    return out


def invert_word(word: Word) -> Word:
    return [(g, -e) for g, e in reversed(word)]


def comm_word(x: Word, y: Word) -> Word:
    """[x, y] = x^-1 y^-1 x y."""
    return reduce_word(invert_word(x) + invert_word(y) + x + y)


def conj_word(x: Word, g: Word) -> Word:
    """x^g = g^-1 x g."""
    return reduce_word(invert_word(g) + x + g)


def torsion_relators(params: GroupParams) -> tuple[list[str], list[Word]]:
    """T = <B, C | B^(n^2), C^n = 1 or B^(n^2/2), B^C = B^(2-beta)>."""
    n, n2 = params.n, params.n2
    c_power: Word = [("C", n)]
    if not params.beta_even:
        c_power.append(("B", -(n2 // 2)))
    twist = reduce_word([("C", -1), ("B", 1), ("C", 1), ("B", -params.beta0)])
    return ["B", "C"], [[("B", n2)], c_power, twist]


def l_relators(params: GroupParams) -> tuple[list[str], list[Word]]:
    """L = <a, b | a^[a,b] = a, b^[b,a] = b^beta, a^(beta-1) = 1>."""
    a, b = [("a", 1)], [("b", 1)]
    r1 = reduce_word(conj_word(a, comm_word(a, b)) + [("a", -1)])
    r2 = reduce_word(conj_word(b, comm_word(b, a)) + [("b", -params.beta)])
    return ["a", "b"], [r1, r2, [("a", params.n)]]


def word_to_text(word: Word) -> str:
    if not word:
        return "One(F)"
    return "*".join(g if e == 1 else f"{g}^{e}" for g, e in word)


def gap_text(params: GroupParams, name: str, gens: list[str], relators: list[Word]) -> str:
    quoted = ", ".join('"' + g + '"' for g in gens)
    lines = [f"# {name} for beta = {params.beta}", f"F := FreeGroup({quoted});;"]
    lines += [f"{g} := F.{k};;" for k, g in enumerate(gens, start=1)]
    rels = ",\n    ".join(word_to_text(w) for w in relators)
    lines.append(f"{name} := F / [\n    {rels}\n];;")
    return "\n".join(lines)


def export_gap(params: GroupParams, include_l: bool) -> str:
    parts = [gap_text(params, "T", *torsion_relators(params))]
    if include_l:
        parts.append(gap_text(params, "L", *l_relators(params)))
    return "\n\n".join(parts) + "\n"
