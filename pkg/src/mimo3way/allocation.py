"""Optimal transmit/receive antenna allocation.

Given total antenna counts (m1 >= m2 >= m3), pick the per-node split
maximizing the combined genie bound (unicast) or the combined cut-set bound
(with the node-3 broadcast message). Three independent routes to the unicast
optimum are provided and must agree exactly:

* a closed form, optimal receive split (0, (m1+2m2-m3)/3, (m1+2m3-m2)/3) with
  value m1 + (m2+m3-m1)/3 when m1 <= m2+m3, and (m2+m3, 0, 0) with value
  m2+m3 otherwise;
* exhaustive enumeration of the 2^6 sign patterns of the five-term genie
  objective, each pattern a small rational LP solved exactly, returning the
  winning subproblem's primal/dual pair as a machine-checkable certificate;
* brute-force search over the split grid with a given denominator.

Fractional splits (denominators are always 1 or 3) are realized operationally
by symbol extension: scale every antenna count by the lcm of the denominators
and code over that many channel uses.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bounds import cutset_bound_broadcast, genie_bound_unicast
from .channel import AntennaConfig, AntennaSplit
from .errors import InternalError, InvalidInputError, RegimeError
from .lp import DualityStatus, LinearProgram, LPSolution, solve_inequality_min, verify_duality
from .rational import frac, frac_str

__all__ = [
    "Regime",
    "ClosedFormCertificate",
    "DualityPairCertificate",
    "TransmitSumBand",
    "AllocationResult",
    "unicast_optimal_value",
    "unicast_optimal_split",
    "broadcast_optimal_value",
    "optimal_unicast_closed_form",
    "optimal_unicast_enumerated",
    "optimal_unicast_bruteforce",
    "optimal_broadcast",
    "genie_subproblem",
    "canonical_subproblem",
    "canonical_primal_dual",
]


class Regime(enum.Enum):
    BALANCED = "m1<=m2+m3"
    HUB = "m1>=m2+m3"
    BROADCAST = "broadcast"


@dataclass(frozen=True)
class ClosedFormCertificate:
    """The value follows from a named formula rather than an LP pair."""

    tag: str

    def to_json(self) -> dict:
        return {"type": "closed-form", "tag": self.tag}


@dataclass(frozen=True)
class DualityPairCertificate:
    """Primal point and dual multipliers with exactly zero gap for `lp`."""

    lp: LinearProgram
    v: tuple[Fraction, ...]
    lam: tuple[Fraction, ...]
    gap: Fraction

    def to_json(self) -> dict:
        return {
            "type": "duality-pair",
            "lp": self.lp.to_json(),
            "v": [frac_str(x) for x in self.v],
            "lam": [frac_str(x) for x in self.lam],
            "gap": frac_str(self.gap),
        }


@dataclass(frozen=True)
class TransmitSumBand:
    """Optimality condition for broadcast splits: every transmit allocation
    with low <= tx1+tx2+tx3 <= high (and 0 <= tx_l <= m_l) is optimal."""

    low: Fraction
    high: Fraction

    def contains(self, config: AntennaConfig, tx) -> bool:
        tx = tuple(frac(t) for t in tx)
        if len(tx) != 3 or any(t < 0 for t in tx):
            return False
        if any(t > m for t, m in zip(tx, config.totals)):
            return False
        return self.low <= sum(tx) <= self.high

    def to_json(self) -> dict:
        return {"low": frac_str(self.low), "high": frac_str(self.high)}


@dataclass(frozen=True)
class AllocationResult:
    optimal_dof: Fraction
    split: AntennaSplit
    certificate: ClosedFormCertificate | DualityPairCertificate
    regime: Regime
    extension_factor: int
    broadcast_band: TransmitSumBand | None = None

    def to_json(self) -> dict:
        return {
            "optimal_dof": frac_str(self.optimal_dof),
            "split": self.split.to_json(),
            "certificate": self.certificate.to_json(),
            "regime": self.regime.value,
            "extension_factor": self.extension_factor,
            "broadcast_band": None if self.broadcast_band is None else self.broadcast_band.to_json(),
        }


def _ordered(m1, m2, m3) -> tuple[Fraction, Fraction, Fraction]:
    m1, m2, m3 = frac(m1), frac(m2), frac(m3)
    if not (m1 >= m2 >= m3 >= 0):
        raise InvalidInputError(f"antenna counts must satisfy m1 >= m2 >= m3 >= 0, got ({m1}, {m2}, {m3})")
    return m1, m2, m3


def unicast_optimal_value(m1, m2, m3) -> Fraction:
    """Optimal unicast sum-DoF; works for rational totals (used by the
    ratio sweep). min(m1 + (m2+m3-m1)/3, m2+m3): the first term wins iff
    m1 <= m2+m3."""
    m1, m2, m3 = _ordered(m1, m2, m3)
    return min(m1 + (m2 + m3 - m1) / 3, m2 + m3)


def broadcast_optimal_value(m1, m2, m3) -> Fraction:
    """Optimal weighted sum-DoF with the node-3 broadcast message: m2+m3."""
    m1, m2, m3 = _ordered(m1, m2, m3)
    return m2 + m3


def _unicast_regime(config: AntennaConfig) -> Regime:
    # boundary configs satisfy both formulas; report the balanced tag
    return Regime.BALANCED if config.m1 <= config.m2 + config.m3 else Regime.HUB


def unicast_optimal_split(config: AntennaConfig) -> AntennaSplit:
    """Canonical optimal split for the unicast messages."""
    m1, m2, m3 = (Fraction(m) for m in config.totals)
    if config.m1 <= config.m2 + config.m3:
        rx = (Fraction(0), (m1 + 2 * m2 - m3) / 3, (m1 + 2 * m3 - m2) / 3)
    else:
        rx = (m2 + m3, Fraction(0), Fraction(0))
    tx = tuple(m - r for m, r in zip((m1, m2, m3), rx))
    return AntennaSplit(tx, rx)


def optimal_unicast_closed_form(config: AntennaConfig) -> AllocationResult:
    """Unicast optimum by formula, with the canonical optimal split."""
    if not isinstance(config, AntennaConfig):
        raise InvalidInputError(f"expected an AntennaConfig, got {type(config).__name__}")
    value = unicast_optimal_value(*config.totals)
    split = unicast_optimal_split(config)
    regime = _unicast_regime(config)
    if genie_bound_unicast(split).combined != value:
        raise InternalError("closed-form split does not attain the closed-form value")
    return AllocationResult(
        optimal_dof=value,
        split=split,
        certificate=ClosedFormCertificate(f"closed-form({regime.value})"),
        regime=regime,
        extension_factor=split.extension_factor,
    )


# the five-term genie objective min(sum_tx, sum_rx, g{2,3}, g{1,2}, g{1,3})
# contains six max(rx_a, tx_b) terms, listed here as (a, b) in fixed order;
# consecutive entries pair up into one g{.,.} total each
_GENIE_MAX_TERMS: tuple[tuple[int, int], ...] = ((2, 3), (3, 2), (2, 1), (1, 2), (3, 1), (1, 3))


def _mirror_bits(bits: tuple[bool, ...]) -> tuple[bool, ...]:
    """Image of a sign pattern under swapping every node's tx and rx counts.

    Swapping maps max(rx_a, tx_b) onto the partner term max(rx_b, tx_a) with
    the opposite branch active, so orbits have size at most 2 and only one
    representative per orbit needs solving.
    """
    return (not bits[1], not bits[0], not bits[3], not bits[2], not bits[5], not bits[4])


def genie_subproblem(config: AntennaConfig, bits: tuple[bool, ...]) -> LinearProgram:
    """LP for one sign pattern of the genie objective.

    Variables (dof, rx1, rx2, rx3); bit k True picks the rx side of max term
    k, False the tx side, each choice enforced by a branch inequality so the
    union of the 2^6 polytopes is the full feasible set.
    """
    if len(bits) != len(_GENIE_MAX_TERMS):
        raise InvalidInputError(f"expected {len(_GENIE_MAX_TERMS)} pattern bits, got {len(bits)}")
    m = tuple(Fraction(v) for v in config.totals)
    zero, one = Fraction(0), Fraction(1)

    def side(k):
        # affine form of max term k under its chosen branch: (rx coeffs, const)
        a, b = _GENIE_MAX_TERMS[k]
        coeffs = [zero, zero, zero]
        if bits[k]:
            coeffs[a - 1] = one
            return coeffs, zero
        coeffs[b - 1] = -one
        return coeffs, m[b - 1]

    rows, rhs, labels = [], [], []

    def add(row, bound, label):
        rows.append(tuple(row))
        rhs.append(bound)
        labels.append(label)

    add((one, -one, -one, -one), zero, "dof<=sum_rx")
    add((one, one, one, one), m[0] + m[1] + m[2], "dof<=sum_tx")
    for name, (k1, k2) in zip(("genie{2,3}", "genie{1,2}", "genie{1,3}"), ((0, 1), (2, 3), (4, 5))):
        c1, d1 = side(k1)
        c2, d2 = side(k2)
        add((one, -(c1[0] + c2[0]), -(c1[1] + c2[1]), -(c1[2] + c2[2])), d1 + d2, f"dof<={name}")
    for k, (a, b) in enumerate(_GENIE_MAX_TERMS):
        row = [zero, zero, zero, zero]
        if bits[k]:
            # rx_a >= tx_b = m_b - rx_b
            row[a] = -one
            row[b] -= one
            add(row, -m[b - 1], f"rx{a}>=tx{b}")
        else:
            row[a] = one
            row[b] += one
            add(row, m[b - 1], f"tx{b}>=rx{a}")
    for l in range(3):
        row = [zero] * 4
        row[l + 1] = one
        add(tuple(row), m[l], f"rx{l + 1}<=m{l + 1}")
    for l in range(3):
        row = [zero] * 4
        row[l + 1] = -one
        add(tuple(row), zero, f"rx{l + 1}>=0")
    add((-one, zero, zero, zero), zero, "dof>=0")

    return LinearProgram(
        c=(-one, zero, zero, zero),
        a=tuple(rows),
        b=tuple(rhs),
        variables=("dof", "rx1", "rx2", "rx3"),
        constraints=tuple(labels),
    )


def optimal_unicast_enumerated(config: AntennaConfig) -> AllocationResult:
    """Unicast optimum by exhaustive sign-pattern enumeration.

    Solves one exact LP per tx/rx-swap orbit of the 2^6 patterns, keeps the
    best value, re-verifies the winning primal/dual pair, and cross-checks
    the value against the closed form; any disagreement is an internal error,
    never a silent maximum.
    """
    closed = optimal_unicast_closed_form(config)
    best: tuple[Fraction, LinearProgram, LPSolution] | None = None
    seen: set[tuple[bool, ...]] = set()
    for bits in itertools.product((False, True), repeat=len(_GENIE_MAX_TERMS)):
        canon = min(bits, _mirror_bits(bits))
        if canon in seen:
            continue
        seen.add(canon)
        lp = genie_subproblem(config, canon)
        sol = solve_inequality_min(lp)
        if sol is None:
            continue  # empty branch polytope
        value = -sol.value
        if best is None or value > best[0]:
            best = (value, lp, sol)
    if best is None:
        raise InternalError("no genie subproblem was feasible")
    value, lp, sol = best
    if value != closed.optimal_dof:
        raise InternalError(
            f"enumerated optimum {frac_str(value)} != closed form {frac_str(closed.optimal_dof)}"
        )
    cert_check = verify_duality(lp, sol.v, sol.lam)
    if cert_check.status is not DualityStatus.OPTIMAL:
        raise InternalError(f"simplex produced a non-optimal certificate: {cert_check.status.value}")
    return AllocationResult(
        optimal_dof=value,
        split=closed.split,
        certificate=DualityPairCertificate(lp=lp, v=sol.v, lam=sol.lam, gap=cert_check.gap),
        regime=closed.regime,
        extension_factor=closed.extension_factor,
    )


def _genie_value_grid(s1: int, s2: int, s3: int) -> np.ndarray:
    """Combined genie bound on the integer grid of tx counts.

    Entry [t1, t2, t3] is the bound for tx = (t1, t2, t3), rx = s - tx.
    Plain int64 arithmetic, so values are exact.
    """
    t1 = np.arange(s1 + 1, dtype=np.int64)[:, None, None]
    t2 = np.arange(s2 + 1, dtype=np.int64)[None, :, None]
    t3 = np.arange(s3 + 1, dtype=np.int64)[None, None, :]
    r1, r2, r3 = s1 - t1, s2 - t2, s3 - t3
    terms = (
        t1 + t2 + t3,
        r1 + r2 + r3,
        np.maximum(r2, t3) + np.maximum(r3, t2),
        np.maximum(r2, t1) + np.maximum(r1, t2),
        np.maximum(r3, t1) + np.maximum(r1, t3),
    )
    out = np.broadcast_to(terms[0], (s1 + 1, s2 + 1, s3 + 1)).copy()
    for t in terms[1:]:
        np.minimum(out, t, out=out)
    return out


def optimal_unicast_bruteforce(config: AntennaConfig, denominator: int = 3) -> AllocationResult:
    """Unicast optimum by exhaustive search over the 1/denominator grid.

    Evaluates the combined genie bound at every split whose entries are
    multiples of 1/denominator, vectorized over the integer grid scaled by
    the denominator. Ties resolve to the lexicographically smallest transmit
    triple. With denominator 3 the value matches the closed form exactly.
    """
    if not isinstance(denominator, int) or isinstance(denominator, bool) or denominator < 1:
        raise InvalidInputError(f"denominator must be a positive integer, got {denominator!r}")
    n = denominator
    scaled = tuple(n * m for m in config.totals)
    grid = _genie_value_grid(*scaled)
    best = int(grid.max())
    flat = int(grid.argmax())  # first occurrence in C order = lexicographic tie-break
    idx = np.unravel_index(flat, grid.shape)
    tx = tuple(Fraction(int(t), n) for t in idx)
    rx = tuple(Fraction(m) - t for m, t in zip(config.totals, tx))
    split = AntennaSplit(tx, rx)
    value = Fraction(best, n)
    if genie_bound_unicast(split).combined != value:
        raise InternalError("vectorized grid bound disagrees with genie_bound_unicast")
    return AllocationResult(
        optimal_dof=value,
        split=split,
        certificate=ClosedFormCertificate(f"grid-search(denominator={n})"),
        regime=_unicast_regime(config),
        extension_factor=split.extension_factor,
    )


def optimal_broadcast(config: AntennaConfig) -> AllocationResult:
    """Optimal allocation with the node-3 broadcast message.

    The weighted optimum is m2+m3; the canonical split transmits with
    (m1-m2, m2-m3, m3) and listens with (m2, m3, 0), and any transmit total
    inside [m2, m1] (within the per-node boxes) is equally optimal, which the
    attached band records.
    """
    if not isinstance(config, AntennaConfig):
        raise InvalidInputError(f"expected an AntennaConfig, got {type(config).__name__}")
    m1, m2, m3 = (Fraction(m) for m in config.totals)
    tx = (m1 - m2, m2 - m3, m3)
    rx = (m2, m3, Fraction(0))
    split = AntennaSplit(tx, rx)
    value = m2 + m3
    band = TransmitSumBand(low=m2, high=m1)
    if not band.contains(config, tx):
        raise InternalError("canonical broadcast split fell outside its own optimality band")
    if cutset_bound_broadcast(split).combined != value:
        raise InternalError("canonical broadcast split does not attain m2+m3")
    return AllocationResult(
        optimal_dof=value,
        split=split,
        certificate=ClosedFormCertificate("closed-form(broadcast)"),
        regime=Regime.BROADCAST,
        extension_factor=1,
        broadcast_band=band,
    )


def canonical_subproblem(config: AntennaConfig) -> LinearProgram:
    """The 17-constraint subproblem whose optimum is the balanced-regime
    unicast value (2m1+m2+m3)/3.

    Variables (dof, rx1, rx2, rx3). Rows 11..16 pin the sign pattern with
    every max term resolved; row 17 restricts to the m1 <= m2+m3 regime
    (written 0.v <= m2+m3-m1 so the program is simply infeasible outside it).
    """
    m1, m2, m3 = (Fraction(m) for m in config.totals)
    zero, one = Fraction(0), Fraction(1)
    rows = (
        (one, zero, -one, -one),
        (one, one, one, zero),
        (one, one, zero, one),
        (zero, one, zero, zero),
        (zero, zero, one, zero),
        (zero, zero, zero, one),
        (-one, zero, zero, zero),
        (zero, -one, zero, zero),
        (zero, zero, -one, zero),
        (zero, zero, zero, -one),
        (zero, zero, -one, -one),
        (zero, zero, -one, -one),
        (zero, one, one, zero),
        (zero, one, one, zero),
        (zero, one, zero, one),
        (zero, one, zero, one),
        (zero, zero, zero, zero),
    )
    rhs = (
        zero,
        m1 + m2,
        m1 + m3,
        m1,
        m2,
        m3,
        zero,
        zero,
        zero,
        zero,
        -m3,
        -m2,
        m1,
        m2,
        m1,
        m3,
        m2 + m3 - m1,
    )
    labels = (
        "dof<=rx2+rx3",
        "dof+rx1+rx2<=m1+m2",
        "dof+rx1+rx3<=m1+m3",
        "rx1<=m1",
        "rx2<=m2",
        "rx3<=m3",
        "dof>=0",
        "rx1>=0",
        "rx2>=0",
        "rx3>=0",
        "rx2+rx3>=m3",
        "rx2+rx3>=m2",
        "rx1+rx2<=m1",
        "rx1+rx2<=m2",
        "rx1+rx3<=m1",
        "rx1+rx3<=m3",
        "regime:m1<=m2+m3",
    )
    return LinearProgram(
        c=(-one, zero, zero, zero),
        a=rows,
        b=rhs,
        variables=("dof", "rx1", "rx2", "rx3"),
        constraints=labels,
    )


def canonical_primal_dual(config: AntennaConfig):
    """Closed-form optimal pair for `canonical_subproblem`.

    Returns (lp, v, lam): v = ((2m1+m2+m3)/3, 0, (m1+2m2-m3)/3,
    (m1+2m3-m2)/3) and lam supported on rows {1, 2, 3, 8} with values
    (1/3, 1/3, 1/3, 2/3). Only defined in the m1 <= m2+m3 regime, where the
    pair verifies with exactly zero gap.
    """
    if config.m1 > config.m2 + config.m3:
        raise RegimeError(
            f"canonical pair needs m1 <= m2+m3, got ({config.m1}, {config.m2}, {config.m3})"
        )
    m1, m2, m3 = (Fraction(m) for m in config.totals)
    lp = canonical_subproblem(config)
    v = (
        (2 * m1 + m2 + m3) / 3,
        Fraction(0),
        (m1 + 2 * m2 - m3) / 3,
        (m1 + 2 * m3 - m2) / 3,
    )
    lam = [Fraction(0)] * 17
    lam[0] = lam[1] = lam[2] = Fraction(1, 3)
    lam[7] = Fraction(2, 3)
    return lp, v, tuple(lam)
