"""Canonical text forms, e.g. ``3*t^2+4*t+1`` and ``(u+2)*t+1`` over GF(25).

The output is accepted back by :func:`ffschinzel.cli.parse.parse_ratfunc`.
"""

from __future__ import annotations


def fq_to_text(a: int, spec) -> str:
    """An F_q code as an integer (prime fields) or a polynomial in ``u``."""
    if spec.s == 1 or a < spec.p:
        return str(a)
    terms = []
    for k, c in reversed(list(enumerate(spec.coeffs(a)))):
        if c == 0:
            continue
        if k == 0:
            terms.append(str(c))
        else:
            mono = "u" if k == 1 else f"u^{k}"
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(terms)


def poly_to_text(f, var: str = "t") -> str:
    spec = f.spec
    c = f.coeffs
    if not c:
        return "0"
    terms = []
    for k in range(len(c) - 1, -1, -1):
        a = c[k]
        if a == 0:
            continue
        ctext = fq_to_text(a, spec)
        if k == 0:
            terms.append(ctext)
            continue
        mono = var if k == 1 else f"{var}^{k}"
        if a == 1:
            terms.append(mono)
        elif "+" in ctext:
            terms.append(f"({ctext})*{mono}")
        else:
            terms.append(f"{ctext}*{mono}")
    return "+".join(terms)


def ratfunc_to_text(f) -> str:
    num = poly_to_text(f.num)
    if f.den.is_one():
        return num
    den = poly_to_text(f.den)
    if "+" in num:
        num = f"({num})"
    if "+" in den or "*" in den:
        den = f"({den})"
    return f"{num}/{den}"
