"""Nearest quadratic numbers and cubic algebraic integers of bounded height:
float64 screening of every coefficient tuple with numpy, then mpmath
polyroots on the closest few hundred."""

from itertools import product
from math import gcd

import numpy as np
from mpmath import mp, mpf, log, polyroots
from sympy import Poly, symbols

from common import xi_value

t = symbols("t")
XI = None


def exact_dist(coeffs):
    roots = polyroots([mpf(c) for c in coeffs], maxsteps=200, extraprec=200)
    return min(abs(r - XI) for r in roots)


def refine(cands, keep=300):
    cands.sort()
    best = None
    for _, coeffs in cands[:keep]:
        if not Poly(list(coeffs), t).is_irreducible:
            continue
        d = exact_dist(coeffs)
        if best is None or d < best[0]:
            best = (d, coeffs)
    return best


def quadratic(H):
    x = float(XI)
    p2, p1, p0 = np.meshgrid(np.arange(1, H + 1), np.arange(-H, H + 1), np.arange(-H, H + 1), indexing="ij")
    p2, p1, p0 = p2.ravel(), p1.ravel(), p0.ravel()
    g = np.gcd(np.gcd(p2, np.abs(p1)), np.abs(p0))
    keep = g == 1
    p2, p1, p0 = p2[keep], p1[keep], p0[keep]
    disc = (p1 * p1 - 4 * p2 * p0).astype(float)
    sq = np.sqrt(np.abs(disc))
    re = -p1 / (2.0 * p2)
    im = np.where(disc < 0, sq / (2.0 * p2), 0.0)
    off = np.where(disc >= 0, sq / (2.0 * p2), 0.0)
    d = np.minimum(np.hypot(re + off - x, im), np.hypot(re - off - x, im))
    order = np.argsort(d)[:400]
    return refine([(d[k], (int(p2[k]), int(p1[k]), int(p0[k]))) for k in order])


def cubic_integer(H):
    x = float(XI)
    cands = []
    r = range(-H, H + 1)
    for c in product(r, r, r):
        coeffs = (1,) + c
        cands.append((float(np.min(np.abs(np.roots(coeffs) - x))), coeffs))
    for c in product(r, r):
        coeffs = (1,) + c
        cands.append((float(np.min(np.abs(np.roots(coeffs) - x))), coeffs))
    for c in r:
        cands.append((abs(-c - x), (1, c)))
    return refine(cands)


def show(kind, H, best):
    d, coeffs = best
    h = max(abs(c) for c in coeffs)
    e = -log(d) / log(h) if h >= 2 else None
    print(kind, H, coeffs, mp.nstr(d, 15), mp.nstr(e, 15) if e is not None else "-")


def main():
    global XI
    XI = xi_value(1, 2, 60)
    mp.dps = 50
    for H in (1, 5, 10, 30, 100):
        show("quadratic", H, quadratic(H))
    for H in (1, 5, 10, 12):
        show("cubic_integer", H, cubic_integer(H))


if __name__ == "__main__":
    main()
