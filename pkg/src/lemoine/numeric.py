"""Scalar backends.

Every construction is written against plain arithmetic operators plus
:func:`sqrt`, so the same code runs on IEEE doubles or on mpmath
floating point of a chosen bit precision.
"""

from __future__ import annotations

import contextlib
import contextvars
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath


@dataclass(frozen=True)
class Backend:
    name: str = "binary64"
    prec: int = 53

    def scalar(self, x):
        if self.name == "binary64":
            return float(x)
        if isinstance(x, Fraction):
            return mpmath.mpf(x.numerator) / x.denominator
        return mpmath.mpf(x)


BINARY64 = Backend()

_current = contextvars.ContextVar("lemoine_backend", default=BINARY64)


def current() -> Backend:
    return _current.get()


def scalar(x):
    """Convert ``x`` (int, float, Fraction, str) into the active backend."""
    return _current.get().scalar(x)


@contextlib.contextmanager
def use_backend(name: str = "binary64", prec: int = 53):
    """Activate a backend for the enclosed block.

    ``name`` is ``"binary64"`` or ``"bigfloat"``; ``prec`` is the mantissa
    width in bits and only matters for ``bigfloat``.
    """
    if name == "binary64":
        backend = BINARY64
    elif name == "bigfloat":
        if prec < 64:
            raise ValueError("bigfloat precision must be at least 64 bits")
        backend = Backend("bigfloat", int(prec))
    else:
        raise ValueError(f"unknown backend {name!r}")
    token = _current.set(backend)
    try:
        if backend.name == "bigfloat":
            with mpmath.workprec(backend.prec):
                yield backend
        else:
            yield backend
    finally:
        _current.reset(token)


def sqrt(x):
    if isinstance(x, mpmath.mpf):
        if x < 0:
            raise ValueError("sqrt of negative value")
        return mpmath.sqrt(x)
    return math.sqrt(x)


def isfinite(x) -> bool:
    if isinstance(x, mpmath.mpf):
        return bool(mpmath.isfinite(x))
    return math.isfinite(x)


def to_fraction(x) -> Fraction:
    """Exact rational value of a backend scalar."""
    if isinstance(x, mpmath.mpf):
        man, exp = mpmath.mpf(x).man_exp
        man = int(man)
        return Fraction(man) * Fraction(2) ** int(exp)
    return Fraction(x)
