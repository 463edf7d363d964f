"""Shared helpers for the reference computations: xi from its continued
fraction by backward recursion, independent of the C++ matrix code."""

from mpmath import mp, mpf


def fib_word(n):
    w, older = "a", "b"
    while len(w) < n:
        w, older = w + older, w
    return w[:n]


def xi_value(a, b, digits=120):
    mp.dps = digits + 20
    quotients = [a if c == "a" else b for c in fib_word(int(digits * 1.2) + 40)]
    v = mpf(0)
    for q in reversed(quotients):
        v = 1 / (q + v)
    return v


def xi_fixed(a, b, bits):
    """floor(xi * 2^bits) as an exact integer."""
    mp.prec = bits + 64
    quotients = [a if c == "a" else b for c in fib_word(bits + 64)]
    v = mpf(0)
    for q in reversed(quotients):
        v = 1 / (q + v)
    return int(mp.floor(v * mpf(2) ** bits))
