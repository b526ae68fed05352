"""Exact rational helpers: parsing, formatting, square roots, prime exponents."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable

from sympy import factorint

Ratio = Fraction


def parse_ratio(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"`` or ``"n"`` into a reduced Fraction.

    >>> parse_ratio("6/4")
    Fraction(3, 2)
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"not a rational: {text!r}")
    s = text.strip()
    if not s or any(c in s for c in ".eE "):
        raise ValueError(f"not an exact rational: {text!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc


def format_ratio(x: Fraction | int) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def exact_sqrt(x: Fraction) -> Fraction | None:
    """Return the rational square root of ``x`` or None if it is irrational."""
    if x < 0:
        return None
    p, q = x.numerator, x.denominator
    rp, rq = isqrt(p), isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


def prime_exponents(x: Fraction) -> dict[int, int]:
    """Prime factorisation of a positive rational as ``{prime: exponent}``."""
    if x <= 0:
        raise ValueError(f"prime exponents need a positive rational, got {x}")
    out: dict[int, int] = {}
    for p, e in factorint(x.numerator).items():
        out[p] = out.get(p, 0) + e
    for p, e in factorint(x.denominator).items():
        out[p] = out.get(p, 0) - e
    return {p: e for p, e in sorted(out.items()) if e}


def from_exponents(exps: dict[int, int]) -> Fraction:
    out = Fraction(1)
    for p, e in exps.items():
        out *= Fraction(p) ** e
    return out


def integer_log(x: Fraction, base: Fraction) -> int | None:
    """Return k with ``base**k == x`` or None when no such integer exists."""
    if base <= 0 or base == 1 or x <= 0:
        raise ValueError("integer_log needs positive x and a positive base != 1")
    bx, bb = prime_exponents(x), prime_exponents(base)
    if not bx:
        return 0
    primes = set(bx) | set(bb)
    if set(bx) - set(bb):
        return None
    p0 = next(iter(bb))
    if bx.get(p0, 0) % bb[p0]:
        return None
    k = bx.get(p0, 0) // bb[p0]
    if all(bx.get(p, 0) == k * bb.get(p, 0) for p in primes):
        return k
    return None


def cyclic_base(values: Iterable[Fraction]) -> Fraction | None:
    """Find q in (0, 1) with every value in ``q**Z`` and q generating them.

    Returns None when the values generate the trivial group or a group that
    is not cyclic.
    """
    vecs = [prime_exponents(Fraction(v)) for v in values]
    vecs = [v for v in vecs if v]
    if not vecs:
        return None
    first = vecs[0]
    primes = sorted(first)
    g = 0
    for e in first.values():
        g = gcd(g, e)
    direction = {p: first[p] // g for p in primes}
    multipliers = []
    for v in vecs:
        if set(v) != set(primes):
            return None
        p0 = primes[0]
        if v[p0] % direction[p0]:
            return None
        k = v[p0] // direction[p0]
        if any(v[p] != k * direction[p] for p in primes):
            return None
        multipliers.append(k)
    step = 0
    for k in multipliers:
        step = gcd(step, k)
    base = from_exponents({p: step * e for p, e in direction.items()})
    return base if base < 1 else 1 / base
