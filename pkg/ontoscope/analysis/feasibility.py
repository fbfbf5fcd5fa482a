"""
Finite-space feasibility search for the trine decompositions of I/2.

A dense phase-1 simplex (Bland's rule) decides whether

    A x = b,  x >= 0

has a solution, where x collects the per-point densities of every procedure
and the rows encode normalization, the P_t / P4 / P5 decompositions of I/2
and the within-context disjointness fixed by a per-point sign pattern.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ontoscope.analysis.theorem3 import (
    SIGN_PATTERNS,
    FeasibilityCertificate,
    Theorem3Mode,
    certify_witness,
    parse_mode,
    pattern_table,
)
from ontoscope.errors import CapacityError, ConfigurationError
from ontoscope.models.ontic import OnticSpace
from ontoscope.zoo.witness import assemble_trine_model

logger = logging.getLogger(__name__)

PIVOT_TOL = 1e-12
DEFAULT_RESIDUAL_TOL = 1e-9
DEFAULT_MAX_POINTS = 12
TRINE = (1, 2, 3)


@dataclass
class Phase1Result:
    feasible: bool
    x: Optional[np.ndarray]
    objective: float
    residual: float
    iterations: int


def phase_one(A, b, tol=DEFAULT_RESIDUAL_TOL, max_iterations=None):
    """Find x >= 0 with A x = b, or report that none exists."""
    A = np.array(A, dtype=float)
    b = np.array(b, dtype=float)
    m, n = A.shape
    A_orig, b_orig = A.copy(), b.copy()
    flip = b < 0
    A[flip] *= -1.0
    b[flip] *= -1.0

    tableau = np.zeros((m + 1, n + m + 1))
    tableau[:m, :n] = A
    tableau[:m, n:n + m] = np.eye(m)
    tableau[:m, -1] = b
    tableau[m, :n] = -A.sum(axis=0)
    tableau[m, -1] = -b.sum()
    basis = list(range(n, n + m))
    limit = max_iterations or 50 * (n + m)

    iterations = 0
    while iterations < limit:
        entering = np.flatnonzero(tableau[m, :n + m] < -PIVOT_TOL)
        if entering.size == 0:
            break
        col = int(entering[0])
        column = tableau[:m, col]
        rows = np.flatnonzero(column > PIVOT_TOL)
        if rows.size == 0:
            break
        ratios = tableau[rows, -1] / column[rows]
        best = ratios.min()
        ties = rows[ratios <= best + PIVOT_TOL]
        row = int(min(ties, key=lambda r: basis[r]))

        tableau[row] /= tableau[row, col]
        for r in range(m + 1):
            if r != row and tableau[r, col] != 0.0:
                tableau[r] -= tableau[r, col] * tableau[row]
        basis[row] = col
        iterations += 1
    else:
        logger.warning("phase-1 simplex stopped at the iteration limit (%d)", limit)

    objective = -tableau[m, -1]
    full = np.zeros(n + m)
    for r, var in enumerate(basis):
        full[var] = tableau[r, -1]
    x = np.clip(full[:n], 0.0, None)
    residual = float(np.max(np.abs(A_orig @ x - b_orig))) if m else 0.0
    feasible = objective <= tol and residual <= tol
    return Phase1Result(feasible=feasible, x=x if feasible else None, objective=float(objective),
                        residual=residual, iterations=iterations)


class TrineSystem:
    """Linear system for one mode on N abstract points with fixed sign patterns."""

    def __init__(self, n, mode, patterns):
        self.n = n
        self.mode = mode
        self.patterns = list(patterns)
        self.index = {}
        self.rows = []
        self._build()

    def var(self, *key):
        if key not in self.index:
            self.index[key] = len(self.index)
        return self.index[key]

    def equation(self, terms, rhs=0.0):
        self.rows.append((terms, rhs))

    def nu(self, context):
        return context if self.mode is Theorem3Mode.MIXED_CONTEXTUAL_ALLOWED else 0

    def plus_family(self):
        return "q" if self.mode is Theorem3Mode.PURE_CONTEXTUAL_ALLOWED else "p"

    def minus_family(self):
        return "r" if self.mode is Theorem3Mode.PURE_CONTEXTUAL_ALLOWED else "m"

    def _build(self):
        points = range(self.n)
        nu_contexts = sorted({self.nu(c) for c in (1, 2, 3, 4, 5)})
        families = sorted({"p", "m", self.plus_family(), self.minus_family()})

        for c in nu_contexts:
            self.equation({self.var("nu", c, i): 1.0 for i in points}, 1.0)
        for family in families:
            for t in TRINE:
                self.equation({self.var(family, t, i): 1.0 for i in points}, 1.0)

        for i in points:
            for t in TRINE:
                self.equation({
                    self.var("p", t, i): 1.0,
                    self.var("m", t, i): 1.0,
                    self.var("nu", self.nu(t), i): -2.0,
                })
            terms = {self.var(self.plus_family(), t, i): 1.0 for t in TRINE}
            terms[self.var("nu", self.nu(4), i)] = -3.0
            self.equation(terms)
            terms = {self.var(self.minus_family(), t, i): 1.0 for t in TRINE}
            terms[self.var("nu", self.nu(5), i)] = -3.0
            self.equation(terms)
            for t, sign in zip(TRINE, self.patterns[i]):
                self.equation({self.var("m" if sign == "+" else "p", t, i): 1.0})

    def matrices(self):
        A = np.zeros((len(self.rows), len(self.index)))
        b = np.zeros(len(self.rows))
        for r, (terms, rhs) in enumerate(self.rows):
            for col, coef in terms.items():
                A[r, col] = coef
            b[r] = rhs
        return A, b

    def densities(self, x, family):
        return {t: np.array([x[self.index[(family, t, i)]] for i in range(self.n)]) for t in TRINE}

    def witness(self, x):
        p, m = self.densities(x, "p"), self.densities(x, "m")
        return assemble_trine_model(
            OnticSpace.abstract(self.n),
            own={t: (p[t], m[t]) for t in TRINE},
            plus_extra=self.densities(x, self.plus_family()),
            minus_extra=self.densities(x, self.minus_family()),
            metadata={"kind": "lp-witness", "grid_size": self.n, "mode": self.mode.value,
                      "patterns": self.patterns},
        )


def spread_patterns(n, classes):
    """Assign N points round-robin over the chosen pattern classes."""
    return [classes[i % len(classes)] for i in range(n)]


def candidate_pattern_sets(n):
    """Every set of min(N, 8) distinct sign patterns, spread over the N points."""
    k = min(n, len(SIGN_PATTERNS))
    for classes in itertools.combinations(SIGN_PATTERNS, k):
        yield spread_patterns(n, list(classes))


def _normalize_patterns(n, patterns):
    patterns = ["".join(p) for p in patterns]
    if len(patterns) != n:
        raise ConfigurationError(f"expected {n} sign patterns, got {len(patterns)}")
    for p in patterns:
        if len(p) != 3 or set(p) - {"+", "-"}:
            raise ConfigurationError(f"invalid sign pattern '{p}' (use three of '+'/'-')")
    return patterns


def theorem3_lp(space_size, mode, support_patterns=None, max_points=DEFAULT_MAX_POINTS,
                residual_tol=DEFAULT_RESIDUAL_TOL):
    mode = parse_mode(mode)
    if space_size < 1:
        raise ConfigurationError("space_size must be at least 1")
    if space_size > max_points:
        raise CapacityError(f"space_size {space_size} exceeds the feasibility cap of {max_points} points")

    if support_patterns is not None:
        candidates = [_normalize_patterns(space_size, support_patterns)]
    else:
        candidates = candidate_pattern_sets(space_size)

    certificate = FeasibilityCertificate(
        mode=mode, feasible=False, per_pattern_sums=pattern_table(), source="lp", points=space_size,
    )
    for patterns in candidates:
        certificate.patterns_tried += 1
        system = TrineSystem(space_size, mode, patterns)
        result = phase_one(*system.matrices(), tol=residual_tol)
        if result.feasible:
            certificate.feasible = True
            certificate.witness_patterns = patterns
            certificate.solver_residual = result.residual
            certify_witness(certificate, system.witness(result.x))
            break
    logger.info("Feasibility search (%s, N=%d): %d pattern set(s) tried, feasible=%s",
                mode.value, space_size, certificate.patterns_tried, certificate.feasible)
    return certificate
