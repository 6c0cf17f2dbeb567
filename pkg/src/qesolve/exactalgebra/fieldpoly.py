"""Dense univariate polynomial helpers over an exact ordered field.

Coefficients may be Fractions or Surds (anything with exact +,-,*,/ and
comparisons).  Used for solution completion over Q and Q(sqrt d):
division, gcd, derivatives, Sturm real-root counting.
Lists are lowest-degree-first with a nonzero top coefficient.
"""

from __future__ import annotations

from fractions import Fraction

from .quadfield import Surd


def fsign(x) -> int:
    if isinstance(x, Surd):
        return x.sign()
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def fstrip(c: list) -> list:
    while c and fsign(c[-1]) == 0:
        c.pop()
    return c


def fadd(a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else 0
        y = b[i] if i < len(b) else 0
        out.append(x + y)
    return fstrip(out)


def fneg(a):
    return [-c for c in a]


def fmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if fsign(x) == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return fstrip(out)


def fscale(a, c):
    return fstrip([x * c for x in a])


def _lift(c):
    return Fraction(c) if isinstance(c, int) else c


def fdivmod(a, b):
    """Quotient/remainder over the field (ints are lifted to Fractions)."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = [_lift(c) for c in a]
    b = [_lift(c) for c in b]
    r = list(a)
    q = [0] * max(len(a) - len(b) + 1, 1)
    while len(r) >= len(b) and fstrip(r):
        if len(r) < len(b):
            break
        c = r[-1] / b[-1]
        k = len(r) - len(b)
        q[k] = c
        for j in range(len(b)):
            r[k + j] = r[k + j] - c * b[j]
        r.pop()
        fstrip(r)
    return fstrip(q), fstrip(r)


def fgcd_monic(a, b):
    """Monic gcd over the field (1 for coprime, [] only if both zero)."""
    a = fstrip([_lift(c) for c in a])
    b = fstrip([_lift(c) for c in b])
    while b:
        _, r = fdivmod(a, b)
        a, b = b, r
    if not a:
        return []
    lc = a[-1]
    return [c / lc for c in a]


def fderiv(a):
    return fstrip([k * c for k, c in enumerate(a)][1:])


def feval(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _variations(signs):
    out, prev = 0, 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            out += 1
        prev = s
    return out


def fsturm_real_root_count(a) -> int:
    """Number of distinct real roots; input need not be square-free."""
    a = fstrip(list(a))
    if len(a) <= 1:
        return 0
    g = fgcd_monic(a, fderiv(a))
    if len(g) > 1:
        a, _ = fdivmod(a, g)
    chain = [a, fderiv(a)]
    while len(chain[-1]) > 1:
        _, r = fdivmod(chain[-2], chain[-1])
        if not r:
            break
        chain.append(fneg(r))
    neg = _variations(
        [fsign(p[-1]) * (-1 if (len(p) - 1) % 2 else 1) for p in chain if p])
    pos = _variations([fsign(p[-1]) for p in chain if p])
    return neg - pos


def to_fraction_list(coeffs) -> list[Fraction] | None:
    """Coefficients as Fractions when every entry is rational, else None."""
    out = []
    for c in coeffs:
        if isinstance(c, Surd):
            if not c.is_rational():
                return None
            out.append(c.rational_value())
        else:
            out.append(Fraction(c))
    return out


def conjugate_list(coeffs):
    return [c.conjugate() if isinstance(c, Surd) else c for c in coeffs]
