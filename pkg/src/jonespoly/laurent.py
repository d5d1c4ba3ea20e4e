"""Exact sparse Laurent polynomials in the bracket variable ``A``.

Polynomials are stored as ``{exponent: coefficient}`` maps with
:class:`fractions.Fraction` coefficients and no zero entries, so two equal
polynomials always carry identical maps.  :class:`QuarterPoly` holds the
same data after the substitution ``A = t^(-1/4)``; its exponents are
multiples of one quarter.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Union

Rational = Union[int, Fraction]

__all__ = [
    "LaurentPoly",
    "QuarterPoly",
    "add",
    "mul",
    "scale",
    "delta_power",
    "writhe_factor",
    "to_t",
]


def _clean(items: Iterable[tuple], exp_type=int) -> dict:
    out: dict = {}
    for e, c in items:
        e = exp_type(e)
        out[e] = out.get(e, 0) + c
    return {e: Fraction(c) for e, c in out.items() if c != 0}


def _format_coeff(c: Fraction, first: bool, bare: bool) -> str:
    neg = c < 0
    a = -c if neg else c
    if bare and a == 1:
        body = ""
    elif a.denominator == 1:
        body = str(a.numerator)
    else:
        body = f"{a.numerator}/{a.denominator}"
    if first:
        return ("-" if neg else "") + body
    return (" - " if neg else " + ") + body


def _format_exp(e) -> str:
    e = Fraction(e)
    if e.denominator == 1:
        return str(e.numerator)
    return f"({e.numerator}/{e.denominator})"


def _render(terms: Mapping, var: str) -> str:
    if not terms:
        return "0"
    parts = []
    for i, e in enumerate(sorted(terms)):
        c = terms[e]
        if e == 0:
            parts.append(_format_coeff(c, i == 0, bare=False))
            continue
        mono = var if e == 1 else f"{var}^{_format_exp(e)}"
        coeff = _format_coeff(c, i == 0, bare=True)
        sep = "" if coeff in ("", "-", " + ", " - ") else "*"
        parts.append(coeff + sep + mono)
    return "".join(parts)


class LaurentPoly:
    """Immutable Laurent polynomial in ``A`` with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Rational] | Iterable[tuple[int, Rational]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        self._terms = MappingProxyType(_clean(items))
        self._hash = None

    @classmethod
    def monomial(cls, exp: int, coeff: Rational = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @property
    def terms(self) -> Mapping[int, Fraction]:
        return self._terms

    def __iter__(self):
        return iter(sorted(self._terms.items()))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __getitem__(self, exp: int) -> Fraction:
        return self._terms.get(exp, Fraction(0))

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return dict(self._terms) == dict(other._terms)
        if isinstance(other, Mapping):
            return dict(self._terms) == dict(LaurentPoly(other)._terms)
        if isinstance(other, (int, Fraction)):
            return self == LaurentPoly({0: other})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other):
        return add(self, _coerce(other))

    __radd__ = __add__

    def __neg__(self):
        return scale(self, -1)

    def __sub__(self, other):
        return add(self, -_coerce(other))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return scale(self, other)
        return mul(self, _coerce(other))

    __rmul__ = __mul__

    def __repr__(self):
        return f"LaurentPoly({dict(sorted(self._terms.items()))!r})"

    def __reduce__(self):
        return (LaurentPoly, (dict(self._terms),))

    def __str__(self):
        return _render(self._terms, "A")

    def to_dict(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def mirror(self) -> "LaurentPoly":
        """Substitute ``A -> A^-1``."""
        return LaurentPoly({-e: c for e, c in self._terms.items()})


def _coerce(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly({0: x})
    return LaurentPoly(x)


class QuarterPoly:
    """Immutable Laurent polynomial in ``t`` with quarter-integer exponents."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | Iterable[tuple] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        cleaned = _clean(((Fraction(e), c) for e, c in items), exp_type=Fraction)
        for e in cleaned:
            if (e * 4).denominator != 1:
                raise ValueError(f"exponent {e} is not a multiple of 1/4")
        self._terms = MappingProxyType(cleaned)

    @property
    def terms(self) -> Mapping[Fraction, Fraction]:
        return self._terms

    def __iter__(self):
        return iter(sorted(self._terms.items()))

    def __len__(self):
        return len(self._terms)

    def __getitem__(self, exp) -> Fraction:
        return self._terms.get(Fraction(exp), Fraction(0))

    def __eq__(self, other):
        if isinstance(other, QuarterPoly):
            return dict(self._terms) == dict(other._terms)
        if isinstance(other, Mapping):
            return self == QuarterPoly(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __reduce__(self):
        return (QuarterPoly, (dict(self._terms),))

    def __mul__(self, other: "QuarterPoly") -> "QuarterPoly":
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return QuarterPoly(out)

    def __repr__(self):
        return f"QuarterPoly({ {str(e): c for e, c in sorted(self._terms.items())} !r})"

    def __str__(self):
        return _render(self._terms, "t")

    @property
    def is_integral(self) -> bool:
        return all(e.denominator == 1 for e in self._terms)

    def max_abs_diff(self, other: "QuarterPoly") -> Fraction:
        keys = set(self._terms) | set(other._terms)
        return max((abs(self[k] - other[k]) for k in keys), default=Fraction(0))


def add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    out = dict(p.terms)
    for e, c in q.terms.items():
        out[e] = out.get(e, 0) + c
    return LaurentPoly(out)


def mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    out: dict[int, Fraction] = {}
    for e1, c1 in p.terms.items():
        for e2, c2 in q.terms.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return LaurentPoly(out)


def scale(p: LaurentPoly, c: Rational) -> LaurentPoly:
    c = Fraction(c)
    return LaurentPoly({e: v * c for e, v in p.terms.items()})


@lru_cache(maxsize=None)
def delta_raw(k: int) -> tuple[tuple[int, int], ...]:
    """Integer terms of ``(-A^2 - A^-2)^k`` as sorted ``(exp, coeff)`` pairs."""
    if k < 0:
        raise ValueError(f"delta power must be non-negative, got {k}")
    # binomial expansion: (-1)^k * sum C(k,i) A^(2k-4i)
    terms = []
    c = 1
    sgn = -1 if k % 2 else 1
    for i in range(k + 1):
        terms.append((2 * k - 4 * i, sgn * c))
        c = c * (k - i) // (i + 1)
    return tuple(sorted(terms))


def delta_power(k: int) -> LaurentPoly:
    """``(-A^2 - A^-2)^k``, the value of ``k`` extra disjoint loops."""
    return LaurentPoly(delta_raw(k))


def writhe_factor(w: int) -> LaurentPoly:
    """``(-A^3)^(-w)``."""
    return LaurentPoly({-3 * w: -1 if w % 2 else 1})


def to_t(p: LaurentPoly) -> QuarterPoly:
    """Substitute ``A = t^(-1/4)``."""
    return QuarterPoly({Fraction(-e, 4): c for e, c in p.terms.items()})
