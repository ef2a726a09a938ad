"""Exact scalar arithmetic for the deformation parameter q.

Laurent polynomials in q with arbitrary-precision rational coefficients are
the scalars of exact mode: q-integers, q-factorials and all operator matrix
entries stay inside the ring, so relation residuals can be checked for
structural zero instead of numerical smallness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


class ExactDivisionError(ArithmeticError):
    """A Laurent division that had to be exact left a remainder.

    This signals an internal inconsistency (a wrong relation or a bug),
    never a user input problem.
    """


def _coerce_coeff(value):
    # Keep plain int where possible; Fraction only when a denominator survives.
    if isinstance(value, bool):
        raise TypeError("bool is not a valid coefficient")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else value
    raise TypeError(f"coefficients must be int or Fraction, got {value!r}")


def _as_exact_number(value):
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value)
    return value


class LaurentPoly:
    """A Laurent polynomial sum_e c_e * q^e stored as {exponent: coefficient}.

    Canonical form: zero coefficients are never stored, so equal polynomials
    are structurally identical and ``==`` is exact. Instances are immutable
    by convention; every operation returns a new polynomial, which makes
    unrestricted concurrent reads safe.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs=None):
        data = {}
        if coeffs:
            for exp, val in coeffs.items():
                val = _coerce_coeff(val)
                if val:
                    data[int(exp)] = val
        self._coeffs = data

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def constant(cls, c) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, exponent: int, coeff=1) -> "LaurentPoly":
        return cls({exponent: coeff})

    # -- structure --------------------------------------------------------

    def coefficients(self) -> dict:
        """A copy of the exponent -> coefficient map."""
        return dict(self._coeffs)

    def terms(self):
        """(exponent, coefficient) pairs, highest exponent first."""
        return sorted(self._coeffs.items(), key=lambda t: -t[0])

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self):
        return bool(self._coeffs)

    def __len__(self):
        return len(self._coeffs)

    def degree(self) -> int:
        if not self._coeffs:
            raise ValueError("zero polynomial has no degree")
        return max(self._coeffs)

    def valuation(self) -> int:
        if not self._coeffs:
            raise ValueError("zero polynomial has no valuation")
        return min(self._coeffs)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = _coerce_coeff(s) if isinstance(s, Fraction) else s
            else:
                out.pop(e, None)
        res = LaurentPoly.__new__(LaurentPoly)
        res._coeffs = out
        return res

    __radd__ = __add__

    def __neg__(self):
        res = LaurentPoly.__new__(LaurentPoly)
        res._coeffs = {e: -c for e, c in self._coeffs.items()}
        return res

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentPoly.zero()
            res = LaurentPoly.__new__(LaurentPoly)
            res._coeffs = {
                e: _coerce_coeff(c * other) if isinstance(other, Fraction) else c * other
                for e, c in self._coeffs.items()
            }
            return res
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                e = e1 + e2
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        res = LaurentPoly.__new__(LaurentPoly)
        res._coeffs = {
            e: _coerce_coeff(c) if isinstance(c, Fraction) else c for e, c in out.items()
        }
        return res

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if len(self._coeffs) != 1:
                raise ValueError("negative powers exist only for monomials")
            ((e, c),) = self._coeffs.items()
            return LaurentPoly.monomial(n * e, Fraction(1, 1) / c if c != 1 else 1)
        result = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(frozenset(self._coeffs.items()))

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, q_value):
        """Substitute a number for q.

        Exact inputs (int, Fraction) are evaluated in exact rational
        arithmetic; float and complex inputs give float/complex results.
        """
        if q_value == 0:
            raise ValueError("q must be nonzero")
        items = self.terms()
        if not items:
            return 0
        if isinstance(q_value, complex):
            return sum(complex(c) * q_value**e for e, c in items)
        if isinstance(q_value, float):
            return math.fsum(float(c) * q_value**e for e, c in items)
        qv = Fraction(q_value)
        return _as_exact_number(sum(c * qv**e for e, c in items))

    # -- serialization -------------------------------------------------------

    def as_json_dict(self) -> dict:
        """{"exponent": "num/den"} with exponents descending, e.g. the
        q-integer [3] -> {"2":"1/1","0":"1/1","-2":"1/1"}."""
        out = {}
        for e, c in self.terms():
            f = Fraction(c)
            out[str(e)] = f"{f.numerator}/{f.denominator}"
        return out

    @classmethod
    def from_json_dict(cls, data: dict) -> "LaurentPoly":
        return cls({int(e): Fraction(s) for e, s in data.items()})

    # -- display ---------------------------------------------------------------

    def __repr__(self):
        return f"LaurentPoly({dict(self.terms())!r})"

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for e, c in self.terms():
            if e == 0:
                term = str(c)
            else:
                var = "q" if e == 1 else f"q^{e}"
                if c == 1:
                    term = var
                elif c == -1:
                    term = f"-{var}"
                else:
                    term = f"{c}*{var}"
            parts.append(term)
        text = " + ".join(parts)
        return text.replace("+ -", "- ")


q = LaurentPoly.monomial(1)
qbar = LaurentPoly.monomial(-1)
q_minus_qbar = q - qbar


@lru_cache(maxsize=None)
def qint(x: int) -> LaurentPoly:
    """The q-integer [x] = (q^x - q^-x)/(q - q^-1).

    For x > 0 this is q^(x-1) + q^(x-3) + ... + q^(1-x); [0] = 0 and
    [-x] = -[x].
    """
    if x < 0:
        return -qint(-x)
    return LaurentPoly({x - 1 - 2 * k: 1 for k in range(x)})


@lru_cache(maxsize=None)
def qfactorial(x: int) -> LaurentPoly:
    """[x]! = [1][2]...[x], with [0]! = 1."""
    if x < 0:
        raise ValueError("q-factorial needs a non-negative argument")
    if x == 0:
        return LaurentPoly.one()
    return qfactorial(x - 1) * qint(x)


def divide_exact(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Exact quotient in the Laurent ring; raises ExactDivisionError otherwise.

    Both arguments are shifted to ordinary polynomials with nonzero constant
    term, divided top-down, and the quotient is shifted back.
    """
    if den.is_zero():
        raise ExactDivisionError("division by the zero polynomial")
    if num.is_zero():
        return LaurentPoly.zero()
    nshift = num.valuation()
    dshift = den.valuation()
    rem = {e - nshift: c for e, c in num._coeffs.items()}
    div = {e - dshift: c for e, c in den._coeffs.items()}
    dtop = max(div)
    lead = div[dtop]
    quot = {}
    while rem:
        rtop = max(rem)
        if rtop < dtop:
            raise ExactDivisionError(f"{num} is not divisible by {den}")
        t = _as_exact_number(Fraction(rem[rtop]) / Fraction(lead))
        quot[rtop - dtop] = t
        for e, c in div.items():
            ne = e + rtop - dtop
            s = rem.get(ne, 0) - t * c
            if s:
                rem[ne] = s
            else:
                rem.pop(ne, None)
    return LaurentPoly({e + nshift - dshift: c for e, c in quot.items()})


def evaluate(poly: LaurentPoly, q_value):
    """Module-level alias for LaurentPoly.evaluate."""
    return poly.evaluate(q_value)


# -- scalar modes ------------------------------------------------------------

_MODE_KINDS = ("exact", "classical", "numeric")


@dataclass(frozen=True)
class ScalarMode:
    """Which scalars a computation session runs over.

    exact     -- Laurent polynomials in q (structural zero tests);
    classical -- exact rational arithmetic at q = 1;
    numeric   -- numbers at one fixed q (rational, float or complex).

    A mode is fixed per session; matrices of different modes never mix.
    """

    kind: str
    q_value: object = None

    def __post_init__(self):
        if self.kind not in _MODE_KINDS:
            raise ValueError(f"unknown scalar mode {self.kind!r}")
        if self.kind == "numeric":
            if self.q_value is None:
                raise ValueError("numeric mode needs a q value")
        elif self.q_value is not None:
            raise ValueError(f"{self.kind} mode takes no q value")

    @property
    def is_exact(self) -> bool:
        return self.kind == "exact"

    @property
    def is_classical(self) -> bool:
        return self.kind == "classical"

    @property
    def is_numeric(self) -> bool:
        return self.kind == "numeric"

    def __repr__(self):
        if self.kind == "numeric":
            return f"ScalarMode(numeric, q={self.q_value!r})"
        return f"ScalarMode({self.kind})"


EXACT = ScalarMode("exact")
CLASSICAL = ScalarMode("classical")


def numeric_mode(q_value) -> ScalarMode:
    """Numeric mode at a fixed q.

    q in {0, 1, -1} is rejected: the deformed relations divide by q - q^-1.
    Integers are promoted to Fraction so rational q stays exact.
    """
    if not isinstance(q_value, (int, float, complex, Fraction)):
        raise TypeError(f"q must be a number, got {q_value!r}")
    if q_value == 0 or q_value == 1 or q_value == -1:
        raise ValueError("numeric mode requires q not in {0, 1, -1}")
    if isinstance(q_value, int):
        q_value = Fraction(q_value)
    return ScalarMode("numeric", q_value)


def scalar_one(mode: ScalarMode):
    return LaurentPoly.one() if mode.is_exact else 1


def q_power(mode: ScalarMode, exponent: int):
    """q^exponent as a scalar of the given mode."""
    if mode.is_exact:
        return LaurentPoly.monomial(exponent)
    if mode.is_classical:
        return 1
    base = mode.q_value
    if isinstance(base, Fraction) and exponent < 0:
        return Fraction(base.denominator, base.numerator) ** (-exponent)
    return base**exponent


def q_minus_qbar_scalar(mode: ScalarMode):
    """q - q^-1 as a scalar of the given mode (undefined classically)."""
    if mode.is_exact:
        return q_minus_qbar
    if mode.is_classical:
        raise ValueError("q - q^-1 vanishes at q = 1")
    return q_power(mode, 1) - q_power(mode, -1)
