"""Deterministic text and LaTeX rendering of fields and OPE results.

The text form round-trips through the expression parser: atoms print as
F[i,j] (so_N) or J[a] (sl_N), derivatives as d(...), normal products as
right-nested juxtaposition (x (y z)), scalars in canonical polynomial
form.
"""

from __future__ import annotations


def atom_str(algebra, atom):
    p, a = atom
    if algebra.family == "so":
        i, j = algebra.labels[a]
        core = f"F[{i},{j}]"
    else:
        core = f"J[{a}]"
    for _ in range(p):
        core = f"d({core})"
    return core


def word_str(algebra, word):
    if not word:
        return "1"
    out = atom_str(algebra, word[-1])
    for atom in reversed(word[:-1]):
        out = f"({atom_str(algebra, atom)} {out})"
    return out


def field_str(field):
    if not field.terms:
        return "0"
    bits = []
    for w, c in field.words():
        cs = c.canonical_str()
        if cs == "1":
            bits.append(word_str(field.algebra, w))
        else:
            if any(ch in cs for ch in "+-") and not cs.lstrip("-").isdigit():
                cs = f"({cs})"
            bits.append(f"{cs}*{word_str(field.algebra, w)}")
    return " + ".join(bits)


def atom_latex(algebra, atom):
    p, a = atom
    if algebra.family == "so":
        i, j = algebra.labels[a]
        core = f"F_{{{i},{j}}}"
    else:
        core = f"J_{{{a}}}"
    if p == 1:
        core = r"\partial " + core
    elif p > 1:
        core = rf"\partial^{{{p}}} " + core
    return core


def word_latex(algebra, word):
    if not word:
        return "1"
    out = atom_latex(algebra, word[-1])
    for atom in reversed(word[:-1]):
        out = f"({atom_latex(algebra, atom)}\\, {out})"
    return out


def field_latex(field):
    if not field.terms:
        return "0"
    bits = []
    for w, c in field.words():
        cs = c.latex()
        bits.append((f"{cs}\\," if cs != "1" else "") + word_latex(field.algebra, w))
    return " + ".join(bits)


def ope_str(ope):
    lines = []
    for m in sorted(ope.coefficients, reverse=True):
        lines.append(f"(z-w)^{-m}: {field_str(ope.coefficients[m])}")
    if not lines:
        return "regular"
    return "\n".join(lines)


def ope_latex(ope):
    lines = []
    for m in sorted(ope.coefficients, reverse=True):
        lines.append(rf"\frac{{{field_latex(ope.coefficients[m])}}}{{(z-w)^{{{m}}}}}")
    return " + ".join(lines) if lines else "0"
