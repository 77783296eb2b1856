"""Exact scalars, multi-indices and sparse vectors.

Vectors are plain dicts ``{key: Fraction}`` with no stored zeros.  Every
module in the package uses these helpers so the canonical-form rule lives
in one place.
"""

from fractions import Fraction
from itertools import product
from math import factorial
from typing import Dict, Hashable, Iterable, Iterator, Tuple

from .errors import InputError

MultiIndex = Tuple[int, ...]
Vec = Dict[Hashable, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def Q(value) -> Fraction:
    """Parse an int, Fraction or "p/q" string into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"not a scalar: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad scalar {value!r}") from exc
    raise InputError(f"not an exact scalar: {value!r} (floats are rejected)")


def qstr(q: Fraction) -> str:
    return str(q)


def vadd(acc: Vec, other: Vec, coef=ONE) -> Vec:
    """acc += coef * other, in place; returns acc."""
    if not coef:
        return acc
    for key, val in other.items():
        new = acc.get(key, ZERO) + coef * val
        if new:
            acc[key] = new
        else:
            acc.pop(key, None)
    return acc


def vsum(parts: Iterable[Tuple[Fraction, Vec]]) -> Vec:
    out: Vec = {}
    for coef, vec in parts:
        vadd(out, vec, coef)
    return out


def vscale(vec: Vec, coef) -> Vec:
    if not coef:
        return {}
    return {k: v * coef for k, v in vec.items()}


def vclean(vec: Vec) -> Vec:
    return {k: Fraction(v) for k, v in vec.items() if v}


def vsub(a: Vec, b: Vec) -> Vec:
    return vadd(dict(a), b, -ONE)


def skey(obj):
    """Deterministic sort key for heterogeneous labels."""
    if isinstance(obj, tuple):
        return (0, tuple(skey(x) for x in obj))
    if isinstance(obj, (int, Fraction)):
        return (1, obj, "")
    return (2, 0, str(obj))


def sorted_items(vec: Vec):
    return sorted(vec.items(), key=lambda kv: skey(kv[0]))


# ---------------------------------------------------------------- multi-indices

def zero_index(n: int) -> MultiIndex:
    return (0,) * n


def unit_index(n: int, i: int) -> MultiIndex:
    """e_i with 0-based position i."""
    out = [0] * n
    out[i] = 1
    return tuple(out)


def iadd(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    return tuple(x + y for x, y in zip(a, b))


def isub(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    return tuple(x - y for x, y in zip(a, b))


def ile(a: MultiIndex, b: MultiIndex) -> bool:
    return all(x <= y for x, y in zip(a, b))


def ideg(a: MultiIndex) -> int:
    return sum(a)


def ifact(a: MultiIndex) -> int:
    out = 1
    for x in a:
        out *= factorial(x)
    return out


def indices_of_degree(n: int, d: int) -> Iterator[MultiIndex]:
    """All multi-indices of length n and total degree exactly d (lex order)."""
    if n == 0:
        if d == 0:
            yield ()
        return
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in indices_of_degree(n - 1, d - first):
            yield (first,) + rest


def indices_up_to(n: int, d: int) -> list:
    out = []
    for k in range(d + 1):
        out.extend(indices_of_degree(n, k))
    return out


def sub_indices(a: MultiIndex) -> Iterator[Tuple[MultiIndex, MultiIndex]]:
    """All splittings a = j + k."""
    for j in product(*(range(x + 1) for x in a)):
        yield j, isub(a, j)
