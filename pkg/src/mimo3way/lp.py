"""Exact rational linear programming.

Programs are in inequality form over free variables,

    minimize    c . v
    subject to  A v <= b,

with every coefficient a `Fraction`. The Lagrange dual is

    maximize   -b . lam    subject to  A' lam = -c,  lam >= 0,

and a pair (v, lam) with both sides feasible and c.v + b.lam = 0 is an exact
optimality certificate for both programs (weak duality makes the gap
nonnegative, so zero pins both optima).

The solver runs a dense two-phase simplex with Bland's rule on the dual in
standard form; the optimal basic solution is lam and the simplex multipliers
of the equality rows are the primal optimum v, so every solve returns a
certificate pair whose gap is zero by construction. Problem sizes here are a
handful of variables and a few dozen constraints, where exact dense pivoting
is plenty fast.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInputError
from .rational import frac, frac_str

__all__ = [
    "LinearProgram",
    "LPSolution",
    "DualityStatus",
    "DualityCertificate",
    "verify_duality",
    "solve_inequality_min",
]


@dataclass(frozen=True)
class LinearProgram:
    """min c.v subject to rows(a).v <= b, v free; all entries rational."""

    c: tuple[Fraction, ...]
    a: tuple[tuple[Fraction, ...], ...]
    b: tuple[Fraction, ...]
    variables: tuple[str, ...] = ()
    constraints: tuple[str, ...] = ()

    def __post_init__(self):
        c = tuple(frac(x) for x in self.c)
        a = tuple(tuple(frac(x) for x in row) for row in self.a)
        b = tuple(frac(x) for x in self.b)
        if len(a) != len(b):
            raise InvalidInputError(f"{len(a)} constraint rows but {len(b)} right-hand sides")
        if any(len(row) != len(c) for row in a):
            raise InvalidInputError("constraint row width differs from len(c)")
        variables = tuple(self.variables) or tuple(f"v{j}" for j in range(len(c)))
        constraints = tuple(self.constraints) or tuple(f"row{i}" for i in range(len(a)))
        if len(variables) != len(c):
            raise InvalidInputError(f"{len(variables)} variable labels for {len(c)} variables")
        if len(constraints) != len(a):
            raise InvalidInputError(f"{len(constraints)} constraint labels for {len(a)} rows")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "constraints", constraints)

    @property
    def n_variables(self) -> int:
        return len(self.c)

    @property
    def n_constraints(self) -> int:
        return len(self.a)

    def row_dot(self, i: int, v) -> Fraction:
        return sum((aij * vj for aij, vj in zip(self.a[i], v)), Fraction(0))

    def to_json(self) -> dict:
        return {
            "c": [frac_str(x) for x in self.c],
            "a": [[frac_str(x) for x in row] for row in self.a],
            "b": [frac_str(x) for x in self.b],
            "variables": list(self.variables),
            "constraints": list(self.constraints),
        }


@dataclass(frozen=True)
class LPSolution:
    value: Fraction
    v: tuple[Fraction, ...]
    lam: tuple[Fraction, ...]


class DualityStatus(enum.Enum):
    OPTIMAL = "Optimal"
    NOT_PRIMAL_FEASIBLE = "NotPrimalFeasible"
    NOT_DUAL_FEASIBLE = "NotDualFeasible"
    NONZERO_GAP = "NonzeroGap"


@dataclass(frozen=True)
class DualityCertificate:
    status: DualityStatus
    gap: Fraction
    violations: tuple[str, ...] = ()

    @property
    def is_optimal(self) -> bool:
        return self.status is DualityStatus.OPTIMAL

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "gap": frac_str(self.gap),
            "violations": list(self.violations),
        }


def verify_duality(lp: LinearProgram, v, lam) -> DualityCertificate:
    """Check a candidate primal/dual pair exactly.

    Optimal iff v is feasible, lam is dual feasible (lam >= 0, A'lam = -c),
    and the gap c.v + b.lam is exactly zero.
    """
    v = tuple(frac(x) for x in v)
    lam = tuple(frac(x) for x in lam)
    if len(v) != lp.n_variables:
        raise InvalidInputError(f"v has {len(v)} entries, expected {lp.n_variables}")
    if len(lam) != lp.n_constraints:
        raise InvalidInputError(f"lam has {len(lam)} entries, expected {lp.n_constraints}")

    gap = sum((cj * vj for cj, vj in zip(lp.c, v)), Fraction(0)) + sum(
        (bi * li for bi, li in zip(lp.b, lam)), Fraction(0)
    )

    primal_bad = tuple(
        f"{lp.constraints[i]}: {frac_str(lp.row_dot(i, v))} > {frac_str(lp.b[i])}"
        for i in range(lp.n_constraints)
        if lp.row_dot(i, v) > lp.b[i]
    )
    if primal_bad:
        return DualityCertificate(DualityStatus.NOT_PRIMAL_FEASIBLE, gap, primal_bad)

    dual_bad = [f"{lp.constraints[i]}: multiplier {frac_str(li)} < 0" for i, li in enumerate(lam) if li < 0]
    for j in range(lp.n_variables):
        stat = sum((lam[i] * lp.a[i][j] for i in range(lp.n_constraints)), Fraction(0)) + lp.c[j]
        if stat != 0:
            dual_bad.append(f"stationarity[{lp.variables[j]}]: residual {frac_str(stat)}")
    if dual_bad:
        return DualityCertificate(DualityStatus.NOT_DUAL_FEASIBLE, gap, tuple(dual_bad))

    if gap != 0:
        return DualityCertificate(DualityStatus.NONZERO_GAP, gap)
    return DualityCertificate(DualityStatus.OPTIMAL, gap)


class _Unbounded(Exception):
    pass


def _simplex_standard(g_rows, g_rhs, cost):
    """min cost.x s.t. (g_rows) x = g_rhs, x >= 0, exact two-phase simplex.

    Returns (x, pi) with pi the equality-row multipliers, or None when
    infeasible; raises _Unbounded when the minimum is -infinity. Bland's rule
    everywhere, so cycling cannot occur.
    """
    n_eq = len(g_rows)
    n_var = len(cost)
    zero, one = Fraction(0), Fraction(1)

    # normalize rhs >= 0, remembering the sign flips for multiplier recovery
    signs = []
    body = []
    rhs = []
    for i in range(n_eq):
        row = [frac(x) for x in g_rows[i]]
        r = frac(g_rhs[i])
        if r < 0:
            row = [-x for x in row]
            r = -r
            signs.append(-1)
        else:
            signs.append(1)
        # append the artificial identity column block
        art = [zero] * n_eq
        art[i] = one
        body.append(row + art)
        rhs.append(r)

    width = n_var + n_eq
    basis = [n_var + i for i in range(n_eq)]
    live = list(range(n_eq))  # tableau row -> original equality index

    def pivot(prow, pcol, costrow):
        inv = one / body[prow][pcol]
        body[prow] = [x * inv for x in body[prow]]
        rhs[prow] *= inv
        for i in range(len(body)):
            if i != prow and body[i][pcol] != 0:
                f = body[i][pcol]
                body[i] = [x - f * y for x, y in zip(body[i], body[prow])]
                rhs[i] -= f * rhs[prow]
        if costrow[pcol] != 0:
            f = costrow[pcol]
            costrow[:] = [x - f * y for x, y in zip(costrow, body[prow])]
        basis[prow] = pcol

    def reduced_costs(full_cost):
        costrow = list(full_cost)
        for i, b in enumerate(basis):
            if full_cost[b] != 0:
                f = full_cost[b]
                costrow = [x - f * y for x, y in zip(costrow, body[i])]
        return costrow

    def run(costrow, allowed_width):
        while True:
            enter = next((j for j in range(allowed_width) if costrow[j] < 0), None)
            if enter is None:
                return
            prow, best = None, None
            for i in range(len(body)):
                if body[i][enter] > 0:
                    ratio = rhs[i] / body[i][enter]
                    if best is None or ratio < best or (ratio == best and basis[i] < basis[prow]):
                        prow, best = i, ratio
            if prow is None:
                raise _Unbounded()
            pivot(prow, enter, costrow)

    # phase 1: drive the artificials to zero
    phase1_cost = [zero] * n_var + [one] * n_eq
    costrow = reduced_costs(phase1_cost)
    run(costrow, width)
    if sum((phase1_cost[b] * rhs[i] for i, b in enumerate(basis)), zero) > 0:
        return None

    # pivot leftover artificials out of the basis; all-zero rows are redundant
    for i in reversed(range(len(body))):
        if basis[i] >= n_var:
            pcol = next((j for j in range(n_var) if body[i][j] != 0), None)
            if pcol is None:
                del body[i], rhs[i], basis[i], live[i]
            else:
                pivot(i, pcol, costrow)

    # phase 2 over the original columns only
    phase2_cost = list(cost) + [zero] * n_eq
    costrow = reduced_costs(phase2_cost)
    run(costrow, n_var)

    x = [zero] * n_var
    for i, b in enumerate(basis):
        if b < n_var:
            x[b] = rhs[i]
    # multiplier of equality row k: minus the reduced cost of its artificial
    # column, undoing any sign normalization; dropped redundant rows get 0
    pi = [zero] * n_eq
    for orig in live:
        pi[orig] = -costrow[n_var + orig] * signs[orig]
    return x, pi


def solve_inequality_min(lp: LinearProgram) -> LPSolution | None:
    """Solve min c.v s.t. Av <= b exactly; None when the program has no
    finite optimum certified by a dual solution (infeasible or unbounded)."""
    m, n = lp.n_constraints, lp.n_variables
    if n == 0:
        raise InvalidInputError("program has no variables")
    # dual standard form: one equality per primal variable, one lam per row
    g_rows = [[lp.a[i][j] for i in range(m)] for j in range(n)]
    g_rhs = [-cj for cj in lp.c]
    try:
        out = _simplex_standard(g_rows, g_rhs, list(lp.b))
    except _Unbounded:
        return None  # dual unbounded below => primal infeasible
    if out is None:
        return None  # dual infeasible => primal unbounded or infeasible
    lam, v = out
    value = sum((cj * vj for cj, vj in zip(lp.c, v)), Fraction(0))
    return LPSolution(value=value, v=tuple(v), lam=tuple(lam))
