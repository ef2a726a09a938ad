"""Representation matrices of the creation/annihilation operators, the
Cartan generators H_i and their exponentials L_i = q^{H_i} on the bounded
Fock space, plus graded bracket combinators and the reconstructed
Chevalley / gl generators at q = 1.

Two basis conventions are supported:

* orthonormal  -- the raising/lowering coefficients carry square roots of
  q-integers, so entries are numbers (numeric or classical mode only);
* unnormalized -- conjugate to the orthonormal convention by the diagonal
  normalization, square-root free, so entries live in the Laurent ring and
  every relation can be verified structurally.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from .fockspace import Signature, enumerate_basis, h_eigenvalue, theta
from .qarith import (
    CLASSICAL,
    EXACT,
    LaurentPoly,
    ScalarMode,
    numeric_mode,
    q_power,
    scalar_one,
)


class BasisConvention(Enum):
    ORTHONORMAL = "orthonormal"
    UNNORMALIZED = "unnormalized"


ORTHONORMAL = BasisConvention.ORTHONORMAL
UNNORMALIZED = BasisConvention.UNNORMALIZED


class GradedMatrix:
    """Sparse square matrix over one scalar mode, tagged with a Z2 degree.

    The degree is carried explicitly because the supercommutator sign
    (-1)^{deg A deg B} cannot be recovered from the entries. Zero entries
    are never stored; instances are immutable by convention, so concurrent
    reads are safe.
    """

    __slots__ = ("dim", "degree", "mode", "entries")

    def __init__(self, dim, degree, mode, entries=None):
        if degree not in (0, 1):
            raise ValueError("degree must be 0 or 1")
        self.dim = dim
        self.degree = degree
        self.mode = mode
        self.entries = {k: v for k, v in (entries or {}).items() if v}

    # -- constructors ------------------------------------------------------

    @classmethod
    def zeros(cls, dim, mode, degree=0):
        return cls(dim, degree, mode)

    @classmethod
    def identity(cls, dim, mode):
        one = scalar_one(mode)
        return cls(dim, 0, mode, {(i, i): one for i in range(dim)})

    @classmethod
    def diagonal(cls, values, mode, degree=0):
        return cls(len(values), degree, mode, {(i, i): v for i, v in enumerate(values)})

    # -- structure -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.entries

    def nnz(self) -> int:
        return len(self.entries)

    def entry(self, row, col):
        return self.entries.get((row, col))

    def sorted_entries(self):
        """Entries in row-major order."""
        return sorted(self.entries.items())

    def with_entry(self, row, col, value):
        """Copy with one entry replaced (useful as a fault injector in tests)."""
        new = dict(self.entries)
        new[(row, col)] = value
        return GradedMatrix(self.dim, self.degree, self.mode, new)

    def transpose(self):
        return GradedMatrix(
            self.dim, self.degree, self.mode,
            {(c, r): v for (r, c), v in self.entries.items()},
        )

    def max_abs(self) -> float:
        """Largest entry magnitude; only meaningful for number entries."""
        if not self.entries:
            return 0.0
        return float(max(abs(v) for v in self.entries.values()))

    # -- arithmetic -------------------------------------------------------------

    def _check_compatible(self, other):
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        if self.mode != other.mode:
            raise ValueError("scalar mode mismatch")

    def _merged_degree(self, other):
        if self.degree == other.degree:
            return self.degree
        if self.is_zero():
            return other.degree
        if other.is_zero():
            return self.degree
        raise ValueError("cannot add matrices of different Z2 degree")

    def __add__(self, other):
        if not isinstance(other, GradedMatrix):
            return NotImplemented
        self._check_compatible(other)
        degree = self._merged_degree(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            s = out.get(k)
            s = v if s is None else s + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return GradedMatrix(self.dim, degree, self.mode, out)

    def __neg__(self):
        return GradedMatrix(
            self.dim, self.degree, self.mode,
            {k: -v for k, v in self.entries.items()},
        )

    def __sub__(self, other):
        if not isinstance(other, GradedMatrix):
            return NotImplemented
        return self + (-other)

    def scale(self, s):
        if not s:
            return GradedMatrix.zeros(self.dim, self.mode, self.degree)
        return GradedMatrix(
            self.dim, self.degree, self.mode,
            {k: v * s for k, v in self.entries.items()},
        )

    def __matmul__(self, other):
        if not isinstance(other, GradedMatrix):
            return NotImplemented
        self._check_compatible(other)
        by_col = {}
        for (r, c), v in self.entries.items():
            by_col.setdefault(c, []).append((r, v))
        out = {}
        for (j, k), bv in other.entries.items():
            for i, av in by_col.get(j, ()):
                key = (i, k)
                s = out.get(key)
                s = av * bv if s is None else s + av * bv
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return GradedMatrix(self.dim, (self.degree + other.degree) % 2, self.mode, out)

    # -- mode bridging -------------------------------------------------------------

    def at_q(self, q_value):
        """Evaluate an exact matrix at a number.

        q = 1 yields a classical (exact rational) matrix; any other q not in
        {0, -1} yields a numeric one.
        """
        if not self.mode.is_exact:
            raise ValueError("at_q applies to exact-mode matrices")
        if q_value == 1:
            new_mode = CLASSICAL
            sub = Fraction(1)
        else:
            new_mode = numeric_mode(q_value)
            sub = new_mode.q_value
        return GradedMatrix(
            self.dim, self.degree, new_mode,
            {k: v.evaluate(sub) for k, v in self.entries.items()},
        )

    def __repr__(self):
        return (
            f"GradedMatrix(dim={self.dim}, degree={self.degree}, "
            f"mode={self.mode!r}, nnz={self.nnz()})"
        )


# -- graded brackets ----------------------------------------------------------


def q_bracket(a: GradedMatrix, b: GradedMatrix, x) -> GradedMatrix:
    """The deformed supercommutator a b - (-1)^{deg a deg b} x b a."""
    sign = -1 if (a.degree and b.degree) else 1
    return (a @ b) - (b @ a).scale(sign * x)


def bracket(a: GradedMatrix, b: GradedMatrix) -> GradedMatrix:
    """The supercommutator a b - (-1)^{deg a deg b} b a."""
    return q_bracket(a, b, scalar_one(a.mode))


def commutator(a: GradedMatrix, b: GradedMatrix) -> GradedMatrix:
    return (a @ b) - (b @ a)


def anticommutator(a: GradedMatrix, b: GradedMatrix) -> GradedMatrix:
    return (a @ b) + (b @ a)


# -- creation / annihilation matrices -----------------------------------------


def _phase(sig: Signature, i: int, r) -> int:
    # (-1)^{theta_i * sum_{j<i} theta_j r_j}: only occupied fermionic slots
    # below i contribute, and only when slot i is itself fermionic.
    if i <= sig.n:
        return 1
    occupied = sum(r[j] for j in range(sig.n, i - 1))
    return -1 if occupied % 2 else 1


def _below(r, i: int) -> int:
    # r_1 + ... + r_{i-1} over all slots.
    return sum(r[: i - 1])


def _number_sqrt(value):
    if isinstance(value, complex):
        return cmath.sqrt(value)
    value = float(value)
    if value < 0:
        return cmath.sqrt(value)
    return math.sqrt(value)


@lru_cache(maxsize=None)
def _qint_at(x: int, q_value):
    from .qarith import qint

    return qint(x).evaluate(q_value)


@lru_cache(maxsize=None)
def _sqrt_qint(x: int, q_value):
    # Square roots are taken factor-wise, one fixed branch per q-integer,
    # so products of entries cancel exactly even at complex q.
    return _number_sqrt(_qint_at(x, q_value))


def _ortho_q_value(mode: ScalarMode):
    if mode.is_exact:
        raise ValueError("the orthonormal convention needs numbers (square roots)")
    return Fraction(1) if mode.is_classical else mode.q_value


def _check_slot(sig: Signature, i: int):
    if not 1 <= i <= sig.width:
        raise IndexError(f"slot index {i} outside [1;{sig.width}]")


@lru_cache(maxsize=None)
def build_a_plus(
    sig: Signature,
    i: int,
    mode: ScalarMode = EXACT,
    convention: BasisConvention = UNNORMALIZED,
) -> GradedMatrix:
    """Matrix of the creation operator for slot i.

    Sends r to r + delta_i with coefficient
    (-1)^{theta_i (theta_1 r_1 + ... + theta_{i-1} r_{i-1})} q^{-(r_1+...+r_{i-1})}
    times sqrt([r_i + 1][p - sum r]) in the orthonormal convention and times 1
    in the unnormalized one. Columns whose target violates the occupancy
    constraints are zero; degree is theta_i.
    """
    _check_slot(sig, i)
    basis = enumerate_basis(sig)
    degree = theta(sig, i)
    entries = {}
    if convention is UNNORMALIZED:
        for col, r in enumerate(basis):
            if sum(r) >= sig.p or (degree and r[i - 1]):
                continue
            target = r[: i - 1] + (r[i - 1] + 1,) + r[i:]
            entries[(basis.position(target), col)] = LaurentPoly.monomial(
                -_below(r, i), _phase(sig, i, r)
            )
        mat = GradedMatrix(len(basis), degree, EXACT, entries)
        return mat if mode.is_exact else mat.at_q(
            Fraction(1) if mode.is_classical else mode.q_value
        )
    qv = _ortho_q_value(mode)
    for col, r in enumerate(basis):
        if sum(r) >= sig.p or (degree and r[i - 1]):
            continue
        target = r[: i - 1] + (r[i - 1] + 1,) + r[i:]
        coeff = (
            _phase(sig, i, r)
            * q_power(mode, -_below(r, i))
            * _sqrt_qint(r[i - 1] + 1, qv)
            * _sqrt_qint(sig.p - sum(r), qv)
        )
        entries[(basis.position(target), col)] = coeff
    return GradedMatrix(len(basis), degree, mode, entries)


@lru_cache(maxsize=None)
def build_a_minus(
    sig: Signature,
    i: int,
    mode: ScalarMode = EXACT,
    convention: BasisConvention = UNNORMALIZED,
) -> GradedMatrix:
    """Matrix of the annihilation operator for slot i.

    Sends r to r - delta_i with coefficient
    (-1)^{theta_i (theta_1 r_1 + ... + theta_{i-1} r_{i-1})} q^{r_1+...+r_{i-1}}
    times sqrt([r_i][p - sum r + 1]) in the orthonormal convention and times
    the full product [r_i][p - sum r + 1] in the unnormalized one.
    """
    _check_slot(sig, i)
    basis = enumerate_basis(sig)
    degree = theta(sig, i)
    entries = {}
    if convention is UNNORMALIZED:
        from .qarith import qint

        for col, r in enumerate(basis):
            if r[i - 1] == 0:
                continue
            target = r[: i - 1] + (r[i - 1] - 1,) + r[i:]
            value = (
                LaurentPoly.monomial(_below(r, i), _phase(sig, i, r))
                * qint(r[i - 1])
                * qint(sig.p - sum(r) + 1)
            )
            entries[(basis.position(target), col)] = value
        mat = GradedMatrix(len(basis), degree, EXACT, entries)
        return mat if mode.is_exact else mat.at_q(
            Fraction(1) if mode.is_classical else mode.q_value
        )
    qv = _ortho_q_value(mode)
    for col, r in enumerate(basis):
        if r[i - 1] == 0:
            continue
        target = r[: i - 1] + (r[i - 1] - 1,) + r[i:]
        coeff = (
            _phase(sig, i, r)
            * q_power(mode, _below(r, i))
            * _sqrt_qint(r[i - 1], qv)
            * _sqrt_qint(sig.p - sum(r) + 1, qv)
        )
        entries[(basis.position(target), col)] = coeff
    return GradedMatrix(len(basis), degree, mode, entries)


@lru_cache(maxsize=None)
def build_H(sig: Signature, i: int, mode: ScalarMode = EXACT) -> GradedMatrix:
    """Diagonal Cartan generator H_i (integer eigenvalues, degree 0)."""
    _check_slot(sig, i)
    basis = enumerate_basis(sig)
    if mode.is_exact:
        values = [LaurentPoly.constant(h_eigenvalue(sig, i, r)) for r in basis]
    else:
        values = [h_eigenvalue(sig, i, r) for r in basis]
    return GradedMatrix.diagonal(values, mode)


@lru_cache(maxsize=None)
def build_L(sig: Signature, i: int, mode: ScalarMode = EXACT) -> GradedMatrix:
    """Diagonal L_i = q^{H_i}."""
    _check_slot(sig, i)
    basis = enumerate_basis(sig)
    values = [q_power(mode, h_eigenvalue(sig, i, r)) for r in basis]
    return GradedMatrix.diagonal(values, mode)


@lru_cache(maxsize=None)
def build_Lbar(sig: Signature, i: int, mode: ScalarMode = EXACT) -> GradedMatrix:
    """Diagonal L_i^{-1} = q^{-H_i}."""
    _check_slot(sig, i)
    basis = enumerate_basis(sig)
    values = [q_power(mode, -h_eigenvalue(sig, i, r)) for r in basis]
    return GradedMatrix.diagonal(values, mode)


@dataclass(frozen=True)
class OperatorSet:
    """All generator matrices for one signature, mode and convention."""

    signature: Signature
    mode: ScalarMode
    convention: BasisConvention
    a_plus: dict
    a_minus: dict
    H: dict
    L: dict
    Lbar: dict

    @property
    def dim(self) -> int:
        return len(enumerate_basis(self.signature))

    def a(self, sign: int, i: int) -> GradedMatrix:
        return self.a_plus[i] if sign > 0 else self.a_minus[i]


@lru_cache(maxsize=None)
def operator_set(
    sig: Signature,
    mode: ScalarMode = EXACT,
    convention: BasisConvention = UNNORMALIZED,
) -> OperatorSet:
    rng = range(1, sig.width + 1)
    return OperatorSet(
        sig,
        mode,
        convention,
        a_plus={i: build_a_plus(sig, i, mode, convention) for i in rng},
        a_minus={i: build_a_minus(sig, i, mode, convention) for i in rng},
        H={i: build_H(sig, i, mode) for i in rng},
        L={i: build_L(sig, i, mode) for i in rng},
        Lbar={i: build_Lbar(sig, i, mode) for i in rng},
    )


# -- change of basis oracle ------------------------------------------------------


def change_of_basis_check(sig: Signature, q_value) -> float:
    """Conjugate the unnormalized matrices by the diagonal normalization and
    compare with the orthonormal ones; returns the largest entry deviation.

    The diagonal is D_r = sqrt([p]! prod_l [r_l]! / [p - sum r]!) taken
    factor-wise (one square root per q-integer). Real q must be positive;
    non-real complex q is accepted as well.
    """
    if isinstance(q_value, complex):
        if q_value.imag == 0:
            q_value = q_value.real
    if not isinstance(q_value, complex):
        if q_value <= 0:
            raise ValueError("change of basis check needs q > 0 (or complex)")
    if q_value == 1:
        mode = CLASSICAL
        qv = Fraction(1)
    else:
        mode = numeric_mode(q_value)
        qv = mode.q_value

    basis = enumerate_basis(sig)

    def sqrt_factorial(x: int):
        out = 1.0
        for k in range(1, x + 1):
            out *= _sqrt_qint(k, qv)
        return out

    d = []
    for r in basis:
        val = sqrt_factorial(sig.p) / sqrt_factorial(sig.p - sum(r))
        for occ in r:
            val *= sqrt_factorial(occ)
        d.append(val)

    deviation = 0.0
    for i in range(1, sig.width + 1):
        for build in (build_a_plus, build_a_minus):
            unnorm = build(sig, i, mode, UNNORMALIZED)
            orth = build(sig, i, mode, ORTHONORMAL)
            keys = set(unnorm.entries) | set(orth.entries)
            for row, col in keys:
                conj = d[row] * unnorm.entries.get((row, col), 0) / d[col]
                diff = conj - orth.entries.get((row, col), 0)
                deviation = max(deviation, abs(diff))
    return deviation


# -- reconstructed Chevalley and gl generators at q = 1 ----------------------------


def _theta_full(sig: Signature, i: int) -> int:
    # Grading extended to the distinguished index 0 (always even).
    if i == 0:
        return 0
    return theta(sig, i)


def cartan_matrix(sig: Signature):
    """Integer Cartan matrix: rows/columns indexed by 1..n+m."""
    width = sig.width
    rows = []
    for i in range(1, width + 1):
        sign = -1 if (_theta_full(sig, i - 1) + _theta_full(sig, i)) % 2 else 1
        row = []
        for j in range(1, width + 1):
            val = (1 + sign) * (i == j) - sign * (i == j - 1) - (i - 1 == j)
            row.append(val)
        rows.append(tuple(row))
    return tuple(rows)


@dataclass(frozen=True)
class ChevalleySet:
    """Chevalley triples reconstructed from the ladder matrices at q = 1."""

    signature: Signature
    e: dict
    f: dict
    h: dict
    cartan: tuple


def build_chevalley(sig: Signature, mode: ScalarMode = CLASSICAL) -> ChevalleySet:
    """Reconstruct e_i, f_i, h_i from the ladder operators (classical only).

    e_1 is the first annihilator and f_1 the first creator; higher e_i, f_i
    come from single supercommutators of adjacent ladder operators, and
    h_i = [[e_i, f_i]].
    """
    if not mode.is_classical:
        raise ValueError("Chevalley reconstruction is defined at q = 1 only")
    ops = operator_set(sig, CLASSICAL, UNNORMALIZED)
    e = {1: ops.a_minus[1]}
    f = {1: ops.a_plus[1]}
    for i in range(2, sig.width + 1):
        e[i] = bracket(ops.a_plus[i - 1], ops.a_minus[i])
        f[i] = bracket(ops.a_plus[i], ops.a_minus[i - 1])
    h = {i: bracket(e[i], f[i]) for i in e}
    return ChevalleySet(sig, e, f, h, cartan_matrix(sig))


def build_e00(sig: Signature) -> GradedMatrix:
    """Diagonal weight operator for the distinguished direction: p - sum r."""
    basis = enumerate_basis(sig)
    return GradedMatrix.diagonal([sig.p - sum(r) for r in basis], CLASSICAL)


def build_gl_generator(
    sig: Signature, i: int, j: int, mode: ScalarMode = CLASSICAL
) -> GradedMatrix:
    """The gl basis element E_{ij}, i, j in [0;n+m], on W_p at q = 1.

    E_{i0} and E_{0i} are the ladder matrices themselves, E_{00} the
    distinguished diagonal, and E_{ij} for i, j >= 1 is recovered from a
    single supercommutator plus the diagonal correction when i = j.
    """
    if not mode.is_classical:
        raise ValueError("gl reconstruction is defined at q = 1 only")
    if not (0 <= i <= sig.width and 0 <= j <= sig.width):
        raise IndexError(f"gl indices ({i},{j}) outside [0;{sig.width}]")
    if i == 0 and j == 0:
        return build_e00(sig)
    ops = operator_set(sig, CLASSICAL, UNNORMALIZED)
    if j == 0:
        return ops.a_plus[i]
    if i == 0:
        return ops.a_minus[j]
    out = bracket(ops.a_plus[i], ops.a_minus[j])
    if i == j:
        sign = -1 if theta(sig, i) else 1
        out = out + build_e00(sig).scale(sign)
    return out


# -- matrix dump formats -----------------------------------------------------------


def scalar_json(value):
    """JSON-ready form of one matrix entry."""
    if isinstance(value, LaurentPoly):
        return value.as_json_dict()
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, complex):
        return f"{value.real!r}{value.imag:+}j"
    return value


def matrix_json(mat: GradedMatrix) -> dict:
    """Triplet dump: {"dim":..,"degree":..,"entries":[[row,col,scalar],..]}."""
    return {
        "dim": mat.dim,
        "degree": mat.degree,
        "entries": [[r, c, scalar_json(v)] for (r, c), v in mat.sorted_entries()],
    }


def matrix_coord_text(mat: GradedMatrix) -> str:
    """Plain coordinate format: header "dim nnz", then "row col value" lines.

    Numbers only; exact matrices must be dumped as JSON.
    """
    lines = [f"{mat.dim} {mat.nnz()}"]
    for (r, c), v in mat.sorted_entries():
        if isinstance(v, LaurentPoly):
            raise ValueError("coordinate format is for numeric matrices")
        if isinstance(v, complex):
            text = f"{format(v.real, '.17g')} {format(v.imag, '.17g')}"
        elif isinstance(v, Fraction):
            text = format(float(v), ".17g")
        else:
            text = format(float(v), ".17g")
        lines.append(f"{r} {c} {text}")
    return "\n".join(lines) + "\n"
