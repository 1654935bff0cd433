"""Three-node full-duplex MIMO channel model.

Every node transmits to and receives from both other nodes at once, so there
are six cross links and no self links. A node with M antennas operates with a
transmit/receive partition (mt, mr), mt + mr = M; the partition is the design
variable everything downstream (bounds, allocation, schemes) optimizes over.
Node indices are 1-based on all public surfaces.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

import numpy as np

from .errors import InvalidInputError
from .linalg import CHANNEL_STREAM, as_matrix, complex_gaussian, generator
from .rational import denominator_lcm, frac, frac_str, triple

__all__ = [
    "PAIR_ORDER",
    "AntennaConfig",
    "AntennaSplit",
    "ChannelSet",
    "MessageConfig",
    "MessageSet",
    "draw_channels",
    "receive",
    "total_dof",
]

# fixed (tx, rx) enumeration order; also the draw order inside draw_channels
PAIR_ORDER: tuple[tuple[int, int], ...] = ((1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2))

NODES = (1, 2, 3)


def _check_node(node: int) -> int:
    if node not in NODES:
        raise InvalidInputError(f"node index must be 1, 2, or 3, got {node}")
    return node


@dataclass(frozen=True)
class AntennaConfig:
    """Total antenna counts (m1, m2, m3), ordered m1 >= m2 >= m3 >= 0."""

    m1: int
    m2: int
    m3: int

    def __post_init__(self):
        for name, m in zip(("m1", "m2", "m3"), (self.m1, self.m2, self.m3)):
            if not isinstance(m, int) or isinstance(m, bool) or m < 0:
                raise InvalidInputError(f"{name} must be a nonnegative integer, got {m!r}")
        if not (self.m1 >= self.m2 >= self.m3):
            raise InvalidInputError(
                f"antenna counts must satisfy m1 >= m2 >= m3, got ({self.m1}, {self.m2}, {self.m3})"
            )

    @property
    def totals(self) -> tuple[int, int, int]:
        return (self.m1, self.m2, self.m3)

    def total_of(self, node: int) -> int:
        return self.totals[_check_node(node) - 1]

    def scaled(self, factor: int) -> "AntennaConfig":
        if not isinstance(factor, int) or factor < 1:
            raise InvalidInputError(f"scale factor must be a positive integer, got {factor!r}")
        return AntennaConfig(self.m1 * factor, self.m2 * factor, self.m3 * factor)

    def to_json(self) -> dict:
        return {"m": [self.m1, self.m2, self.m3]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "AntennaConfig":
        try:
            m = obj["m"]
        except (KeyError, TypeError) as exc:
            raise InvalidInputError("antenna config JSON must be {'m': [m1, m2, m3]}") from exc
        if len(m) != 3:
            raise InvalidInputError(f"'m' must have 3 entries, got {len(m)}")
        return cls(*(int(v) for v in m))


@dataclass(frozen=True)
class AntennaSplit:
    """Per-node transmit/receive antenna partition, possibly fractional.

    Fractional entries arise from the closed-form allocations; they become
    integers after scaling by the symbol-extension factor (the lcm of the
    denominators, always 1 or 3 here).
    """

    tx: tuple[Fraction, Fraction, Fraction]
    rx: tuple[Fraction, Fraction, Fraction]

    def __post_init__(self):
        object.__setattr__(self, "tx", triple(self.tx, "tx"))
        object.__setattr__(self, "rx", triple(self.rx, "rx"))

    @property
    def totals(self) -> tuple[Fraction, Fraction, Fraction]:
        return tuple(t + r for t, r in zip(self.tx, self.rx))

    def tx_of(self, node: int) -> Fraction:
        return self.tx[_check_node(node) - 1]

    def rx_of(self, node: int) -> Fraction:
        return self.rx[_check_node(node) - 1]

    def matches(self, config: AntennaConfig) -> bool:
        return self.totals == tuple(Fraction(m) for m in config.totals)

    @property
    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.tx + self.rx)

    @property
    def extension_factor(self) -> int:
        """Smallest integer scale that makes every entry integral."""
        return denominator_lcm(self.tx + self.rx)

    def scaled(self, factor: int) -> "AntennaSplit":
        f = frac(factor)
        return AntennaSplit(tuple(v * f for v in self.tx), tuple(v * f for v in self.rx))

    def integer_pairs(self) -> tuple[tuple[int, int, int], tuple[int, int, int]]:
        if not self.is_integral:
            raise InvalidInputError(f"split is fractional: tx={self.tx}, rx={self.rx}")
        return tuple(int(v) for v in self.tx), tuple(int(v) for v in self.rx)

    def swapped(self) -> "AntennaSplit":
        """Exchange transmit and receive roles at every node."""
        return AntennaSplit(self.rx, self.tx)

    def to_json(self) -> dict:
        return {"mt": [frac_str(v) for v in self.tx], "mr": [frac_str(v) for v in self.rx]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "AntennaSplit":
        try:
            mt, mr = obj["mt"], obj["mr"]
        except (KeyError, TypeError) as exc:
            raise InvalidInputError("antenna split JSON must be {'mt': [...], 'mr': [...]}") from exc
        return cls(triple(mt, "mt"), triple(mr, "mr"))


@dataclass(frozen=True)
class ChannelSet:
    """The six cross-link matrices of one channel realization.

    h(i, j) has shape (rx_j, tx_i): rows are receive antennas at node j,
    columns are transmit antennas at node i.
    """

    split: AntennaSplit
    matrices: tuple[np.ndarray, ...] = field(repr=False)

    def __post_init__(self):
        if not self.split.is_integral:
            raise InvalidInputError("channels require an integer antenna split")
        if len(self.matrices) != len(PAIR_ORDER):
            raise InvalidInputError(f"expected {len(PAIR_ORDER)} matrices, got {len(self.matrices)}")
        mats = []
        for (i, j), h in zip(PAIR_ORDER, self.matrices):
            h = as_matrix(h, name=f"H_{i}{j}")
            want = (int(self.split.rx_of(j)), int(self.split.tx_of(i)))
            if h.shape != want:
                raise InvalidInputError(f"H_{i}{j} must have shape {want}, got {h.shape}")
            h = h.copy()
            h.setflags(write=False)
            mats.append(h)
        object.__setattr__(self, "matrices", tuple(mats))

    def h(self, tx_node: int, rx_node: int) -> np.ndarray:
        _check_node(tx_node)
        _check_node(rx_node)
        if tx_node == rx_node:
            raise InvalidInputError("no self link: tx and rx node coincide")
        return self.matrices[PAIR_ORDER.index((tx_node, rx_node))]


def draw_channels(split: AntennaSplit, seed: int) -> ChannelSet:
    """One i.i.d. CN(0,1) realization of all six links, deterministic in seed.

    Matrices are drawn in PAIR_ORDER from the seed's channel stream, so the
    same (split, seed) pair always reproduces the same ChannelSet.
    """
    if not isinstance(split, AntennaSplit):
        raise InvalidInputError(f"split must be an AntennaSplit, got {type(split).__name__}")
    if not split.is_integral:
        raise InvalidInputError(f"cannot draw channels for fractional split {split.to_json()}")
    rng = generator(seed, CHANNEL_STREAM)
    mats = []
    for i, j in PAIR_ORDER:
        mats.append(complex_gaussian(rng, int(split.rx_of(j)), int(split.tx_of(i))))
    return ChannelSet(split, tuple(mats))


def receive(split: AntennaSplit, channels: ChannelSet, x, noise) -> tuple[np.ndarray, ...]:
    """Receive-side signals y_j = sum_{i != j} H_ij x_i + z_j.

    `x` and `noise` are 3-sequences ordered by node; x_i must have tx_i rows
    and z_j rx_j rows. Full-duplex self-interference is absent by model.
    """
    if channels.split != split:
        raise InvalidInputError("channels were drawn for a different split")
    if len(x) != 3 or len(noise) != 3:
        raise InvalidInputError("x and noise must each contain one vector per node")
    xs, zs = [], []
    for node in NODES:
        xi = np.asarray(x[node - 1], dtype=np.complex128)
        zi = np.asarray(noise[node - 1], dtype=np.complex128)
        if xi.shape[0] != int(split.tx_of(node)):
            raise InvalidInputError(
                f"x{node} must have {int(split.tx_of(node))} rows, got {xi.shape[0]}"
            )
        if zi.shape[0] != int(split.rx_of(node)):
            raise InvalidInputError(
                f"noise{node} must have {int(split.rx_of(node))} rows, got {zi.shape[0]}"
            )
        xs.append(xi)
        zs.append(zi)
    ys = []
    for j in NODES:
        yj = zs[j - 1].astype(np.complex128, copy=True)
        for i in NODES:
            if i != j:
                yj = yj + channels.h(i, j) @ xs[i - 1]
        ys.append(yj)
    return tuple(ys)


class MessageConfig(enum.Enum):
    """Which message sets are active: unicast only, or unicast plus the
    broadcast message sent by node 3 to both other nodes."""

    UNICAST = "unicast"
    UNICAST_BROADCAST = "unicast+broadcast"


@dataclass(frozen=True)
class MessageSet:
    """DoF counts per message: unicast d_ij keyed by (tx, rx) pairs and
    broadcast d_k keyed by source node."""

    config: MessageConfig
    unicast: Mapping[tuple[int, int], Fraction]
    broadcast: Mapping[int, Fraction]

    def __post_init__(self):
        uni = {}
        for key, d in dict(self.unicast).items():
            i, j = key
            _check_node(i)
            _check_node(j)
            if i == j:
                raise InvalidInputError(f"unicast message {key} has tx == rx")
            uni[(i, j)] = frac(d)
        bc = {}
        for k, d in dict(self.broadcast).items():
            _check_node(k)
            bc[k] = frac(d)
        if any(d < 0 for d in uni.values()) or any(d < 0 for d in bc.values()):
            raise InvalidInputError("message DoF counts must be >= 0")
        if self.config is MessageConfig.UNICAST and any(d != 0 for d in bc.values()):
            raise InvalidInputError("unicast-only message set has nonzero broadcast DoF")
        object.__setattr__(self, "unicast", uni)
        object.__setattr__(self, "broadcast", bc)

    @classmethod
    def unicast_only(cls, unicast: Mapping[tuple[int, int], object]) -> "MessageSet":
        return cls(MessageConfig.UNICAST, unicast, {})

    @classmethod
    def with_broadcast(
        cls,
        unicast: Mapping[tuple[int, int], object],
        broadcast: Mapping[int, object],
    ) -> "MessageSet":
        return cls(MessageConfig.UNICAST_BROADCAST, unicast, broadcast)

    def to_json(self) -> dict:
        return {
            "config": self.config.value,
            "unicast": {f"{i}->{j}": frac_str(d) for (i, j), d in sorted(self.unicast.items())},
            "broadcast": {str(k): frac_str(d) for k, d in sorted(self.broadcast.items())},
        }


def total_dof(msgs: MessageSet) -> Fraction:
    """Weighted sum-DoF: unicast counts once, broadcast counts twice (one per
    receiver it must reach)."""
    uni = sum(msgs.unicast.values(), Fraction(0))
    bc = sum(msgs.broadcast.values(), Fraction(0))
    return uni + 2 * bc
