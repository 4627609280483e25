"""Exact Laurent polynomials in q with integer coefficients.

Balanced q-numbers are used throughout: [n] = (q^n - q^-n) / (q - q^-1).
"""

from functools import lru_cache
import json
import re

from .errors import NotRegular


class LaurentPoly:
    """Immutable Laurent polynomial, stored as a sorted tuple of (exponent, coeff)."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        elif isinstance(terms, int):
            terms = {0: terms} if terms else {}
        elif not isinstance(terms, dict):
            acc = {}
            for e, c in terms:
                acc[e] = acc.get(e, 0) + c
            terms = acc
        self._terms = tuple(sorted((int(e), int(c)) for e, c in terms.items() if c))
        self._hash = None

    @classmethod
    def _from_dict(cls, acc):
        obj = cls.__new__(cls)
        obj._terms = tuple(sorted((e, c) for e, c in acc.items() if c))
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exp, coeff=1):
        return cls({exp: coeff})

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return iter(self._terms)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        acc = dict(self._terms)
        for e, c in other._terms:
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly._from_dict(acc)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly(other)
        return self + (-other)

    def __rsub__(self, other):
        return LaurentPoly(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly._from_dict({e: c * other for e, c in self._terms})
        if len(other._terms) == 1 and other._terms[0][1] == 1:
            k = other._terms[0][0]
            return self if k == 0 else self.shift(k)
        if len(self._terms) == 1 and self._terms[0][1] == 1:
            k = self._terms[0][0]
            return other if k == 0 else other.shift(k)
        acc = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly._from_dict(acc)

    __rmul__ = __mul__

    def shift(self, k):
        """Multiply by q^k."""
        obj = LaurentPoly.__new__(LaurentPoly)
        obj._terms = tuple((e + k, c) for e, c in self._terms)
        obj._hash = None
        return obj

    def bar(self):
        return LaurentPoly({-e: c for e, c in self._terms})

    def min_exp(self):
        return self._terms[0][0] if self._terms else None

    def max_exp(self):
        return self._terms[-1][0] if self._terms else None

    def coeff(self, e):
        return dict(self._terms).get(e, 0)

    def is_regular_at_zero(self):
        return not self._terms or self._terms[0][0] >= 0

    def eval_at_zero(self):
        if not self.is_regular_at_zero():
            raise NotRegular(f"{self} has a pole at q = 0")
        return self.coeff(0)

    def eval_at_one(self):
        return sum(c for _, c in self._terms)

    def exact_div(self, other):
        """Quotient self / other, which must be a Laurent polynomial."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return LaurentPoly()
        rem = dict(self._terms)
        top_e, top_c = other._terms[-1]
        floor = self._terms[0][0] - other._terms[0][0]
        quot = {}
        while rem:
            e = max(rem)
            qe = e - top_e
            if qe < floor or rem[e] % top_c:
                raise ValueError(f"{self} is not divisible by {other}")
            qc = rem[e] // top_c
            quot[qe] = qc
            for oe, oc in other._terms:
                k = qe + oe
                v = rem.get(k, 0) - qc * oc
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return LaurentPoly(quot)

    # -- text and JSON forms ----------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self._terms:
            if e == 0:
                body = str(abs(c))
            else:
                mono = "q" if e == 1 else f"q^{e}"
                body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"LaurentPoly({self})"

    @classmethod
    def parse(cls, text):
        """Inverse of str(): e.g. "q^-2 + 3 + q^4", "-2*q^3 - q", "0"."""
        text = text.strip()
        if text == "0":
            return cls()
        acc = {}
        pos = 0
        first = True
        while pos < len(text):
            m = _TERM.match(text, pos)
            if not m or m.end() == pos or (not first and not m.group(1)):
                raise ValueError(f"cannot parse Laurent polynomial {text!r}")
            if m.group(2) is None and m.group(3) is None:
                raise ValueError(f"cannot parse Laurent polynomial {text!r}")
            sign = -1 if m.group(1) == "-" else 1
            c = int(m.group(2)) if m.group(2) else 1
            if m.group(3):
                e = int(m.group(4)) if m.group(4) is not None else 1
            else:
                e = 0
            acc[e] = acc.get(e, 0) + sign * c
            pos = m.end()
            first = False
        return cls(acc)

    def to_json(self):
        return {str(e): c for e, c in self._terms}

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls({int(e): c for e, c in obj.items()})


_TERM = re.compile(r"\s*([+-])?\s*(\d+)?(?:\*(?=q))?(q(?:\^(-?\d+))?)?\s*")

ZERO = LaurentPoly()
ONE = LaurentPoly(1)
Q = LaurentPoly.monomial(1)


@lru_cache(maxsize=None)
def q_int(n):
    """Balanced q-integer [n]."""
    if n == 0:
        return ZERO
    if n < 0:
        return -q_int(-n)
    return LaurentPoly({n - 1 - 2 * k: 1 for k in range(n)})


@lru_cache(maxsize=None)
def q_factorial(n):
    out = ONE
    for k in range(1, n + 1):
        out = out * q_int(k)
    return out


@lru_cache(maxsize=None)
def q_binomial(m, t):
    """Balanced q-binomial [m choose t] for any integer m and t >= 0."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    num = ONE
    for s in range(1, t + 1):
        num = num * q_int(m - s + 1)
    return num.exact_div(q_factorial(t))
