"""Brute-force factorization oracle, independent of the library pipeline.

A divisor of an integer polynomial is found (or ruled out) by exhausting
every integer candidate inside the Mignotte coefficient box, filtered by
the necessary divisibility of values at 0, 1 and -1.  Interpolation never
enters: the search and the library's Kronecker stage share no code path.
"""

import itertools
import math
from math import comb, isqrt


def divisors(n):
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def eval_int(coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def poly_divmod_int(f, g):
    """Quotient and remainder over the integers, or None when the division
    leaves the integers."""
    rem = list(f)
    q = [0] * (len(f) - len(g) + 1)
    glc = g[-1]
    while len(rem) >= len(g) and any(rem):
        if rem[-1] % glc != 0:
            return None
        c = rem[-1] // glc
        q[len(rem) - len(g)] = c
        off = len(rem) - len(g)
        for i, gc in enumerate(g):
            rem[off + i] -= c * gc
        while rem and rem[-1] == 0:
            rem.pop()
    return (q, rem)


def mignotte_box(f, d):
    """Per-coefficient bound for degree-d divisors of f."""
    norm2 = isqrt(sum(c * c for c in f)) + 1
    lc = abs(f[-1])
    return [comb(d - 1, i) * norm2 + (comb(d - 1, i - 1) * lc if i >= 1 else 0) for i in range(d + 1)]


def find_divisor(f):
    """Smallest-degree nontrivial divisor within the Mignotte box, or None.
    Assumes f primitive with f(0) != 0."""
    n = len(f) - 1
    f0, f1, fm1 = f[0], eval_int(f, 1), eval_int(f, -1)
    lead_divs = [d for d in divisors(f[-1])]
    const_divs = divisors(f0)
    const_divs = [d for a in const_divs for d in (a, -a)]
    div1 = set(divisors(f1)) if f1 != 0 else None
    divm1 = set(divisors(fm1)) if fm1 != 0 else None
    for d in range(1, n // 2 + 1):
        box = mignotte_box(f, d)
        middle_ranges = [range(-box[i], box[i] + 1) for i in range(1, d)]
        for bd in lead_divs:
            for b0 in const_divs:
                for mid in itertools.product(*middle_ranges):
                    g = [b0, *mid, bd]
                    s = sum(g)
                    if div1 is not None and (s == 0 or abs(s) not in div1):
                        continue
                    a = sum(c if i % 2 == 0 else -c for i, c in enumerate(g))
                    if divm1 is not None and (a == 0 or abs(a) not in divm1):
                        continue
                    res = poly_divmod_int(f, g)
                    if res is not None and not res[1]:
                        return g
    return None


def oracle_factor(coeffs):
    """Full factorization into primitive irreducible integer factors with
    positive leading coefficients, as a sorted list of coefficient tuples
    with multiplicities."""
    coeffs = list(coeffs)
    assert any(coeffs), "zero polynomial"
    while coeffs[-1] == 0:
        coeffs.pop()
    g = 0
    for c in coeffs:
        g = math.gcd(g, abs(c))
    coeffs = [c // g for c in coeffs]
    factors = {}
    k = 0
    while coeffs[0] == 0:
        coeffs = coeffs[1:]
        k += 1
    if k:
        factors[(0, 1)] = k
    stack = [coeffs]
    while stack:
        f = stack.pop()
        if len(f) <= 1:
            continue
        if f[-1] < 0:
            f = [-c for c in f]
        if len(f) == 2:
            gg = math.gcd(abs(f[0]), abs(f[1]))
            key = tuple(c // gg for c in f)
            factors[key] = factors.get(key, 0) + 1
            continue
        div = find_divisor(f)
        if div is None:
            gg = 0
            for c in f:
                gg = math.gcd(gg, abs(c))
            key = tuple(c // gg for c in f)
            factors[key] = factors.get(key, 0) + 1
            continue
        if div[-1] < 0:
            div = [-c for c in div]
        q, _ = poly_divmod_int(f, div)
        stack.append(div)
        stack.append(q)
    return sorted(factors.items())
