"""Exhaustive machine verification of the algebra relations on W_p.

Every suite instantiates one family of defining relations over all admissible
index tuples, evaluates LHS - RHS as a matrix on the Fock space, and reports
the outcome per instance. In exact and classical mode the difference must be
the structurally zero sparse matrix; in numeric mode a scale-free residual is
reported and judged against a tolerance by the caller.

Reports are generated in a fixed nested-loop order, so suite output is
deterministic and independent of any parallel execution of the instances.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .fockspace import Signature, enumerate_basis, theta
from .operators import (
    EXACT,
    GradedMatrix,
    OperatorSet,
    UNNORMALIZED,
    anticommutator,
    bracket,
    build_chevalley,
    build_gl_generator,
    commutator,
    operator_set,
    q_bracket,
)
from .qarith import (
    LaurentPoly,
    ScalarMode,
    divide_exact,
    q_minus_qbar,
    q_minus_qbar_scalar,
    q_power,
)

EXACT_ZERO = "exact-zero"
RESIDUAL = "residual"
FAILED = "failed"
SKIPPED = "skipped"


@dataclass(frozen=True)
class RelationReport:
    """Outcome of one relation instance."""

    relation_id: str
    indices: tuple = ()
    signs: tuple = ()
    status: str = EXACT_ZERO
    residual: float | None = None
    variant: str = ""

    def passed(self, tol: float = 1e-9) -> bool:
        if self.status == EXACT_ZERO:
            return True
        if self.status == SKIPPED:
            return True
        if self.status == RESIDUAL:
            return self.residual <= tol
        return False

    def as_json_dict(self) -> dict:
        return {
            "relation": self.relation_id,
            "variant": self.variant,
            "indices": list(self.indices),
            "signs": list(self.signs),
            "status": self.status,
            "residual": self.residual,
        }


def summarize(reports, tol: float = 1e-9) -> dict:
    """Counts of passed / failed / skipped instances at a tolerance."""
    passed = failed = skipped = 0
    for rep in reports:
        if rep.status == SKIPPED:
            skipped += 1
        elif rep.passed(tol):
            passed += 1
        else:
            failed += 1
    return {"passed": passed, "failed": failed, "skipped": skipped}


def _pm(sign: int) -> str:
    return "+" if sign > 0 else "-"

def _compare(lhs: GradedMatrix, rhs: GradedMatrix, exact: bool):
    diff = lhs - rhs
    if exact:
        if diff.is_zero():
            return EXACT_ZERO, None
        return FAILED, None
    scale = max(lhs.max_abs(), rhs.max_abs())
    dev = diff.max_abs()
    return RESIDUAL, (dev / scale if scale else dev)


def _report(rid, indices, signs, lhs, rhs, exact, variant=""):
    status, residual = _compare(lhs, rhs, exact)
    return RelationReport(rid, indices, signs, status, residual, variant)


def _deformed_mode(mode: ScalarMode) -> bool:
    """True when statuses are structural (exact), False for numeric residuals."""
    if mode.is_classical:
        raise ValueError("the deformed relations are stated at generic q, not q = 1")
    return mode.is_exact


def _l_ratio_diag(sig: Signature, i: int, ops: OperatorSet) -> GradedMatrix:
    # (L_i - Lbar_i) / (q - qbar), the only division the relations require.
    mode = ops.mode
    basis = enumerate_basis(sig)
    L, Lbar = ops.L[i], ops.Lbar[i]
    values = []
    if mode.is_exact:
        for k in range(len(basis)):
            num = (L.entries.get((k, k)) or LaurentPoly.zero()) - (
                Lbar.entries.get((k, k)) or LaurentPoly.zero()
            )
            values.append(divide_exact(num, q_minus_qbar))
    else:
        denom = q_minus_qbar_scalar(mode)
        for k in range(len(basis)):
            num = L.entries.get((k, k), 0) - Lbar.entries.get((k, k), 0)
            values.append(num / denom)
    return GradedMatrix.diagonal(values, mode)


def epsilon_order(j: int, k: int, i: int) -> int:
    """Order sign of an index triple: +1 if j > k > i, -1 if j < k < i, else 0."""
    if j > k > i:
        return 1
    if j < k < i:
        return -1
    return 0


# -- deformed defining relations ------------------------------------------------


def verify_deformed_defining(
    sig: Signature,
    mode: ScalarMode = EXACT,
    convention=UNNORMALIZED,
    ops: OperatorSet | None = None,
):
    """Cartan commutation, the L-ratio supercommutator, the adjacent double
    supercommutator family and the q-supercommutation of same-sign operators.
    """
    exact = _deformed_mode(mode)
    if ops is None:
        ops = operator_set(sig, mode, convention)
    N = sig.width
    dim = ops.a_plus[1].dim
    reports = []

    # [H_i, H_j] = 0
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            lhs = commutator(ops.H[i], ops.H[j])
            rhs = GradedMatrix.zeros(dim, mode)
            reports.append(_report("R19a", (i, j), (), lhs, rhs, exact))

    # [H_i, a_j^s] = -s (1 + (-1)^theta_i delta_ij) a_j^s
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            for s in (1, -1):
                coeff = -s * (1 + (1 - 2 * theta(sig, i)) * (i == j))
                lhs = commutator(ops.H[i], ops.a(s, j))
                rhs = ops.a(s, j).scale(coeff)
                reports.append(_report("R19b", (i, j), (_pm(s),), lhs, rhs, exact))

    # [[a_i^-, a_i^+]] = (L_i - Lbar_i)/(q - qbar)
    for i in range(1, N + 1):
        lhs = bracket(ops.a_minus[i], ops.a_plus[i])
        rhs = _l_ratio_diag(sig, i, ops)
        reports.append(_report("R19c", (i,), (), lhs, rhs, exact))

    # [[[[a_i^eta, a_{i+xi}^{-eta}]], a_k^eta]]_{q^{xi (1 + (-1)^theta_i delta_ik)}}
    #   = eta^{theta_k} delta_{k,i+xi} L_k^{-xi eta} a_i^eta
    for i in range(1, N + 1):
        for xi in (1, -1):
            j = i + xi
            if not 1 <= j <= N:
                continue
            for k in range(1, N + 1):
                for eta in (1, -1):
                    inner = bracket(ops.a(eta, i), ops.a(-eta, j))
                    x = q_power(mode, xi * (1 + (1 - 2 * theta(sig, i)) * (i == k)))
                    lhs = q_bracket(inner, ops.a(eta, k), x)
                    if k == j:
                        lmat = ops.Lbar[k] if xi * eta > 0 else ops.L[k]
                        rhs = (lmat @ ops.a(eta, i)).scale(
                            eta if theta(sig, k) else 1
                        )
                    else:
                        rhs = GradedMatrix.zeros(dim, mode, lhs.degree)
                    reports.append(
                        _report(
                            "R19d", (i, k), (_pm(xi), _pm(eta)), lhs, rhs, exact
                        )
                    )

    # [[a_1^s, a_2^s]]_q = 0 and [[a_1^s, a_1^s]] = 0
    for s in (1, -1):
        if N >= 2:
            lhs = q_bracket(ops.a(s, 1), ops.a(s, 2), q_power(mode, 1))
            rhs = GradedMatrix.zeros(dim, mode, lhs.degree)
            reports.append(
                _report("R19e", (1, 2), (_pm(s),), lhs, rhs, exact, variant="12")
            )
        else:
            reports.append(
                RelationReport("R19e", (1, 2), (_pm(s),), SKIPPED, variant="12")
            )
        lhs = bracket(ops.a(s, 1), ops.a(s, 1))
        rhs = GradedMatrix.zeros(dim, mode, lhs.degree)
        reports.append(
            _report("R19e", (1, 1), (_pm(s),), lhs, rhs, exact, variant="11")
        )

    # [[a_i^s, a_j^s]]_q = 0 for all i < j
    if N >= 2:
        for i in range(1, N + 1):
            for j in range(i + 1, N + 1):
                for s in (1, -1):
                    lhs = q_bracket(ops.a(s, i), ops.a(s, j), q_power(mode, 1))
                    rhs = GradedMatrix.zeros(dim, mode, lhs.degree)
                    reports.append(_report("R21", (i, j), (_pm(s),), lhs, rhs, exact))
    else:
        reports.append(RelationReport("R21", (), (), SKIPPED))

    return reports


# -- Cartan-Weyl relations ---------------------------------------------------------


def verify_cartan_weyl(
    sig: Signature,
    mode: ScalarMode = EXACT,
    convention=UNNORMALIZED,
    ops: OperatorSet | None = None,
):
    """L-relations, the L-ratio supercommutator, and the general double
    supercommutator family with the order sign, in both printed arrangements.
    """
    exact = _deformed_mode(mode)
    if ops is None:
        ops = operator_set(sig, mode, convention)
    N = sig.width
    dim = ops.a_plus[1].dim
    reports = []

    # L_i Lbar_i = Lbar_i L_i = 1; L_i L_j = L_j L_i
    ident = GradedMatrix.identity(dim, mode)
    for i in range(1, N + 1):
        reports.append(
            _report("R24", (i,), (), ops.L[i] @ ops.Lbar[i], ident, exact, "LLbar")
        )
        reports.append(
            _report("R24", (i,), (), ops.Lbar[i] @ ops.L[i], ident, exact, "LbarL")
        )
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            lhs = commutator(ops.L[i], ops.L[j])
            reports.append(
                _report("R24", (i, j), (), lhs, GradedMatrix.zeros(dim, mode), exact, "LL")
            )

    # L_i a_j^s = q^{-s (1 + (-1)^theta_i delta_ij)} a_j^s L_i
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            for s in (1, -1):
                lhs = ops.L[i] @ ops.a(s, j)
                x = q_power(mode, -s * (1 + (1 - 2 * theta(sig, i)) * (i == j)))
                rhs = (ops.a(s, j) @ ops.L[i]).scale(x)
                reports.append(
                    _report("R24", (i, j), (_pm(s),), lhs, rhs, exact, "La")
                )

    # [[a_i^-, a_i^+]] = (L_i - Lbar_i)/(q - qbar); [[a_i^e, a_j^e]]_q = 0, i < j
    for i in range(1, N + 1):
        lhs = bracket(ops.a_minus[i], ops.a_plus[i])
        rhs = _l_ratio_diag(sig, i, ops)
        reports.append(_report("R25", (i,), (), lhs, rhs, exact, "ratio"))
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            for s in (1, -1):
                lhs = q_bracket(ops.a(s, i), ops.a(s, j), q_power(mode, 1))
                rhs = GradedMatrix.zeros(dim, mode, lhs.degree)
                reports.append(_report("R25", (i, j), (_pm(s),), lhs, rhs, exact, "qcomm"))

    # [[[[a_i^eta, a_j^{-eta}]], a_k^eta]]_{q^{xi(1+(-1)^theta_i delta_ik)}}
    # with xi(j - i) > 0, against both printed right-hand sides.
    if N >= 2:
        qmq = q_minus_qbar_scalar(mode)
        for i in range(1, N + 1):
            for j in range(1, N + 1):
                if i == j:
                    continue
                xi = 1 if j > i else -1
                for k in range(1, N + 1):
                    for eta in (1, -1):
                        inner = bracket(ops.a(eta, i), ops.a(-eta, j))
                        x = q_power(
                            mode, xi * (1 + (1 - 2 * theta(sig, i)) * (i == k))
                        )
                        lhs = q_bracket(inner, ops.a(eta, k), x)
                        eps = epsilon_order(j, k, i)
                        if k == j:
                            lmat = ops.Lbar[k] if xi * eta > 0 else ops.L[k]
                            delta_term = (lmat @ ops.a(eta, i)).scale(
                                eta if theta(sig, j) else 1
                            )
                        else:
                            delta_term = GradedMatrix.zeros(dim, mode, lhs.degree)
                        if eps:
                            tail = bracket(ops.a(eta, k), ops.a(-eta, j))
                            sign_a = -1 if theta(sig, k) else 1
                            rhs_a = delta_term + (tail @ ops.a(eta, i)).scale(
                                sign_a * eps * qmq
                            )
                            sign_b = -1 if theta(sig, k) and theta(sig, j) else 1
                            rhs_b = delta_term + (ops.a(eta, i) @ tail).scale(
                                sign_b * eps * q_power(mode, xi) * qmq
                            )
                        else:
                            rhs_a = rhs_b = delta_term
                        reports.append(
                            _report("R26a", (i, j, k), (_pm(xi), _pm(eta)), lhs, rhs_a, exact)
                        )
                        reports.append(
                            _report("R26b", (i, j, k), (_pm(xi), _pm(eta)), lhs, rhs_b, exact)
                        )
    else:
        reports.append(RelationReport("R26a", (), (), SKIPPED))
        reports.append(RelationReport("R26b", (), (), SKIPPED))

    return reports


# -- classical (q = 1) relations ------------------------------------------------


def verify_classical(sig: Signature, ops: OperatorSet | None = None):
    """Full triple-relation family of the nondeformed superalgebra, with the
    adjacent-index restriction labeled as a sub-suite.
    """
    from .qarith import CLASSICAL

    if ops is None:
        ops = operator_set(sig, CLASSICAL, UNNORMALIZED)
    N = sig.width
    dim = ops.a_plus[1].dim
    reports = []

    def emit(rid, indices, signs, lhs, rhs, variant, also_restricted):
        rep = _report(rid, indices, signs, lhs, rhs, True, variant)
        reports.append(rep)
        if also_restricted:
            reports.append(
                RelationReport("R16", indices, signs, rep.status, rep.residual, variant)
            )

    # [[a_i^s, a_j^s]] = 0
    for s in (1, -1):
        for i in range(1, N + 1):
            for j in range(1, N + 1):
                lhs = bracket(ops.a(s, i), ops.a(s, j))
                rhs = GradedMatrix.zeros(dim, ops.mode, lhs.degree)
                restricted = (i, j) in ((1, 1), (1, 2))
                emit("R15", (i, j), (_pm(s),), lhs, rhs, "same-sign", restricted)

    inner = {}
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            inner[(i, j)] = bracket(ops.a_plus[i], ops.a_minus[j])

    for i in range(1, N + 1):
        ti = theta(sig, i)
        for j in range(1, N + 1):
            tij = (ti + theta(sig, j)) % 2
            for k in range(1, N + 1):
                tk = theta(sig, k)
                restricted = abs(i - j) <= 1

                # [[[[a_i^+, a_j^-]], a_k^-]] =
                #   -(-1)^{theta_ij theta_k} delta_ik a_j^- - (-1)^theta_i delta_ij a_k^-
                lhs = bracket(inner[(i, j)], ops.a_minus[k])
                rhs = GradedMatrix.zeros(dim, ops.mode, lhs.degree)
                if i == k:
                    rhs = rhs + ops.a_minus[j].scale(-1 * (-1 if tij * tk else 1))
                if i == j:
                    rhs = rhs + ops.a_minus[k].scale(-1 * (-1 if ti else 1))
                emit("R15", (i, j, k), (), lhs, rhs, "lower", restricted)

                # [[[[a_i^+, a_j^-]], a_k^+]] = delta_jk a_i^+ + (-1)^theta_i delta_ij a_k^+
                lhs = bracket(inner[(i, j)], ops.a_plus[k])
                rhs = GradedMatrix.zeros(dim, ops.mode, lhs.degree)
                if j == k:
                    rhs = rhs + ops.a_plus[i]
                if i == j:
                    rhs = rhs + ops.a_plus[k].scale(-1 if ti else 1)
                emit("R15", (i, j, k), (), lhs, rhs, "raise", restricted)

    return reports


def verify_serre(sig: Signature):
    """Cartan-Kac and Serre relations on the reconstructed Chevalley set.

    Instances whose indices do not exist at this rank are reported as
    skipped, never silently dropped.
    """
    chev = build_chevalley(sig)
    e, f, h, alpha = chev.e, chev.f, chev.h, chev.cartan
    N = sig.width
    n = sig.n
    dim = e[1].dim
    mode = e[1].mode
    zero = GradedMatrix.zeros(dim, mode)
    reports = []

    for i in range(1, N + 1):
        for j in range(1, N + 1):
            lhs = commutator(h[i], h[j])
            reports.append(_report("R11", (i, j), (), lhs, zero, True, "hh"))
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            lhs = commutator(h[i], e[j])
            rhs = e[j].scale(alpha[i - 1][j - 1])
            reports.append(_report("R11", (i, j), (), lhs, rhs, True, "he"))
            lhs = commutator(h[i], f[j])
            rhs = f[j].scale(-alpha[i - 1][j - 1])
            reports.append(_report("R11", (i, j), (), lhs, rhs, True, "hf"))
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            lhs = bracket(e[i], f[j])
            rhs = h[i] if i == j else GradedMatrix.zeros(dim, mode, lhs.degree)
            reports.append(_report("R11", (i, j), (), lhs, rhs, True, "ef"))

    # [e_i, e_j] = [f_i, f_j] = 0 when |i - j| != 1
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            if abs(i - j) == 1:
                continue
            reports.append(
                _report("R12a", (i, j), (), commutator(e[i], e[j]), zero, True, "ee")
            )
            reports.append(
                _report("R12a", (i, j), (), commutator(f[i], f[j]), zero, True, "ff")
            )

    # e_{n+1}^2 = f_{n+1}^2 = 0 (the odd pair)
    if sig.m >= 1:
        k = n + 1
        reports.append(_report("R12b", (k,), (), e[k] @ e[k], zero, True, "ee"))
        reports.append(_report("R12b", (k,), (), f[k] @ f[k], zero, True, "ff"))
    else:
        reports.append(RelationReport("R12b", (), (), SKIPPED))

    # [e_i, [e_i, e_{i+1}]] = 0, i != n+1
    found = False
    for i in range(1, N):
        if i == n + 1:
            continue
        found = True
        lhs = commutator(e[i], commutator(e[i], e[i + 1]))
        reports.append(_report("R12c", (i,), (), lhs, zero, True, "ee"))
        lhs = commutator(f[i], commutator(f[i], f[i + 1]))
        reports.append(_report("R12c", (i,), (), lhs, zero, True, "ff"))
    if not found:
        reports.append(RelationReport("R12c", (), (), SKIPPED))

    # [e_{i+1}, [e_{i+1}, e_i]] = 0, i != n
    found = False
    for i in range(1, N):
        if i == n:
            continue
        found = True
        lhs = commutator(e[i + 1], commutator(e[i + 1], e[i]))
        reports.append(_report("R12d", (i,), (), lhs, zero, True, "ee"))
        lhs = commutator(f[i + 1], commutator(f[i + 1], f[i]))
        reports.append(_report("R12d", (i,), (), lhs, zero, True, "ff"))
    if not found:
        reports.append(RelationReport("R12d", (), (), SKIPPED))

    # {[e_{n+1}, e_n], [e_{n+1}, e_{n+2}]} = 0 (needs n >= 1 and m >= 2)
    if sig.n >= 1 and sig.m >= 2:
        k = n + 1
        lhs = anticommutator(commutator(e[k], e[n]), commutator(e[k], e[n + 2]))
        reports.append(_report("R12e", (k,), (), lhs, zero, True, "ee"))
        lhs = anticommutator(commutator(f[k], f[n]), commutator(f[k], f[n + 2]))
        reports.append(_report("R12e", (k,), (), lhs, zero, True, "ff"))
    else:
        reports.append(RelationReport("R12e", (), (), SKIPPED))

    return reports


def verify_gl(sig: Signature):
    """The gl supercommutation relations on all reconstructed E_{ij},
    indices running over the full window including the distinguished 0."""
    N = sig.width
    E = {}
    for i in range(0, N + 1):
        for j in range(0, N + 1):
            E[(i, j)] = build_gl_generator(sig, i, j)
    dim = E[(0, 0)].dim
    mode = E[(0, 0)].mode

    def tf(i):
        return 0 if i == 0 else theta(sig, i)

    reports = []
    for i in range(0, N + 1):
        for j in range(0, N + 1):
            tij = (tf(i) + tf(j)) % 2
            for k in range(0, N + 1):
                for l in range(0, N + 1):
                    tkl = (tf(k) + tf(l)) % 2
                    lhs = bracket(E[(i, j)], E[(k, l)])
                    rhs = GradedMatrix.zeros(dim, mode, lhs.degree)
                    if j == k:
                        rhs = rhs + E[(i, l)]
                    if i == l:
                        rhs = rhs + E[(k, j)].scale(-1 * (-1 if tij * tkl else 1))
                    reports.append(_report("R7", (i, j, k, l), (), lhs, rhs, True))
    return reports


def verify_vacuum(
    sig: Signature,
    mode: ScalarMode = EXACT,
    convention=UNNORMALIZED,
    ops: OperatorSet | None = None,
) -> RelationReport:
    """Vacuum conditions: every annihilator kills the vacuum, mixed
    annihilator-creator supercommutators kill it too, and every H_i holds it
    with eigenvalue p. Returns a single aggregated report (worst case)."""
    if ops is None:
        ops = operator_set(sig, mode, convention)
    exact = not mode.is_numeric
    N = sig.width
    vac = 0  # the all-zero state is lexicographically first
    worst = 0.0
    ok = True

    def col_dev(mat):
        dev = max(
            (abs(v) for (r, c), v in mat.entries.items() if c == vac), default=0
        )
        scale = mat.max_abs() if not exact else 1
        return dev, scale

    for i in range(1, N + 1):
        if exact:
            ok &= not any(c == vac for (_, c) in ops.a_minus[i].entries)
        else:
            dev, scale = col_dev(ops.a_minus[i])
            worst = max(worst, float(dev) / scale if scale else float(dev))
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            if i == j:
                continue
            mat = bracket(ops.a_minus[i], ops.a_plus[j])
            if exact:
                ok &= not any(c == vac for (_, c) in mat.entries)
            else:
                dev, scale = col_dev(mat)
                worst = max(worst, float(dev) / scale if scale else float(dev))
    for i in range(1, N + 1):
        expected = sig.p
        got = ops.H[i].entries.get((vac, vac), 0)
        if exact:
            ok &= got == expected
        else:
            worst = max(worst, abs(got - expected) / max(abs(expected), 1))

    if exact:
        return RelationReport("R20", (), (), EXACT_ZERO if ok else FAILED)
    return RelationReport("R20", (), (), RESIDUAL, worst)


SUITES = {
    "deformed": verify_deformed_defining,
    "cartan-weyl": verify_cartan_weyl,
    "classical": verify_classical,
    "serre": verify_serre,
    "gl": verify_gl,
    "vacuum": verify_vacuum,
}
