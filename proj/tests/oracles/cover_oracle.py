"""Independent brute-force oracle used to freeze expected values in the C++ tests.

Runs with the standard library plus sympy. Nothing here imports or mirrors the
C++ implementation: GP-coverability is decided by brute force over candidate
ratios, AP-coverability over Q(sqrt2) by 2D collinearity, and squarefree counts
by trial factorisation.
"""
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
import math
import sys

import sympy


def gp_contains_all(elems):
    """True iff some G(u, rho) with rational rho > 1 contains every element.

    Brute force: u must be the minimum (any GP containing the set can be
    restarted at its smallest member), rho ranges over all rationals whose
    integer powers hit max/min.
    """
    if len(elems) <= 2:
        return True
    elems = sorted(elems)
    u = elems[0]
    top = elems[-1] / u
    # rho^e = top for some e >= 1; try every e up to the bit length of top.
    for e in range(1, 200):
        num = sympy.integer_nthroot(top.numerator, e)
        den = sympy.integer_nthroot(top.denominator, e)
        if not (num[1] and den[1]):
            continue
        rho = Fraction(int(num[0]), int(den[0]))
        if rho <= 1:
            break
        ok = True
        for x in elems:
            y = x / u
            while y > 1 and (y / rho) >= 1:
                y = y / rho
            if y != 1:
                ok = False
                break
        if ok:
            return True
    return False


def min_cover(n, coverable):
    full = (1 << n) - 1
    good = [False] * (1 << n)
    for mask in range(1 << n):
        good[mask] = coverable(mask)

    @lru_cache(maxsize=None)
    def f(mask):
        if mask == 0:
            return 0
        low = mask & -mask
        rest = mask ^ low
        best = n
        sub = rest
        while True:
            t = sub | low
            if good[t]:
                best = min(best, 1 + f(mask & ~t))
            if sub == 0:
                break
            sub = (sub - 1) & rest
        return best

    return f(full)


def g_of(elems):
    elems = list(elems)
    n = len(elems)

    def cov(mask):
        return gp_contains_all([elems[i] for i in range(n) if mask >> i & 1])

    return min_cover(n, cov)


def squarefree(k):
    if k <= 0:
        return False
    return all(e == 1 for e in sympy.factorint(k).values())


def density_count(a, b, x):
    # independent linear sieve of squarefree flags over values a..a+bx
    hi = a + b * x
    flags = bytearray([1]) * (hi + 1)
    flags[0] = 0
    p = 2
    while p * p <= hi:
        for mult in range(p * p, hi + 1, p * p):
            flags[mult] = 0
        p += 1
    return sum(flags[a + b * k] for k in range(x + 1))


if __name__ == "__main__":
    what = sys.argv[1]
    if what == "g":
        for v, d in [(1, 1), (1, 2), (3, 4), (2, 2)]:
            row = []
            for n in range(2, 21):
                elems = [Fraction(v + d * h) for h in range(n)]
                row.append(g_of(elems))
            print(f"A({v},{d})", row)
    elif what == "gsmall":
        for s in ([1, 2, 3], [2, 6, 18, 5], [1, 2, 4, 8], [4, 6, 9]):
            print(s, g_of([Fraction(x) for x in s]))
    elif what == "density":
        for a, b in [(1, 1), (1, 2), (1, 4), (3, 5), (2, 9)]:
            c = density_count(a, b, 10**6)
            pred = 6 / math.pi**2
            for p in sympy.primefactors(b):
                pred /= (1 - 1 / p**2)
            print(a, b, c, c / (10**6 + 1), pred, abs(c / (10**6 + 1) - pred))
        print("(0,1,10)", density_count(0, 1, 10))
        print("(1,1,10^4)", density_count(1, 1, 10**4))


def g_by_lines(elems):
    """Same quantity via maximal GP-coverable sets grown from pairs (n up to ~25)."""
    n = len(elems)
    lines = set()
    for i, j in combinations(range(n), 2):
        members = [i, j]
        for k in range(n):
            if k not in (i, j) and gp_contains_all([elems[t] for t in members + [k]]):
                members.append(k)
        mask = 0
        for t in members:
            mask |= 1 << t
        lines.add(mask)
    lines = sorted(lines)

    @lru_cache(maxsize=None)
    def f(mask):
        if mask == 0:
            return 0
        low = mask & -mask
        best = 1 + f(mask ^ low)
        for ln in lines:
            if ln & low:
                best = min(best, 1 + f(mask & ~ln))
        return best

    return f((1 << n) - 1)


def main_lines():
    for v, d in [(1, 1), (1, 2), (3, 4), (2, 2)]:
        row = []
        for n in range(2, 21):
            elems = [Fraction(v + d * h) for h in range(n)]
            row.append(g_by_lines(elems))
        print(f"A({v},{d})", row)
    for v, d in [(1, 1), (1, 2), (3, 4)]:
        row = [g_of([Fraction(v + d * h) for h in range(n)]) for n in range(2, 11)]
        print(f"brute A({v},{d}) n<=10", row)


if __name__ == "__main__" and sys.argv[1] == "lines":
    main_lines()


def quad_powers(a, b, D, n):
    """(a + b sqrt D)^k as coordinate pairs for k < n."""
    out = [(1, 0)]
    for _ in range(n - 1):
        x, y = out[-1]
        out.append((x * a + y * b * D, x * b + y * a))
    return out


def collinear_triples(pts):
    hits = []
    for i, j, k in combinations(range(len(pts)), 3):
        (x1, y1), (x2, y2), (x3, y3) = pts[i], pts[j], pts[k]
        if (x2 - x1) * (y3 - y1) - (y2 - y1) * (x3 - x1) == 0:
            hits.append((i, j, k))
    return hits


if __name__ == "__main__" and sys.argv[1] == "nonroot":
    for a, b, D in [(1, 1, 2), (2, 1, 3)]:
        print(a, b, D, collinear_triples(quad_powers(a, b, D, 30)))
