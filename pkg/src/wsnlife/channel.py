"""SINR and channel capacity.

Two physical-layer models are provided:

* Gupta-Kumar: every node transmits with its own fixed power, so the
  received signal (and the capacity) decays with distance.
* Distance-adaptive: the transmitter of link (i, j) scales its power to
  ``P0 / gamma(i, j)`` so the receiver always hears exactly ``P0``. Without
  interference every link then has the same capacity ``C0 = log(1 + P0/N0)``.

Gains are always derived from :func:`~wsnlife.network.pair_inverse_gain`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import ApproximationDomainError, DomainError, InterferenceSetError
from .network import GainSpec, Network, pair_inverse_gain


@dataclass(frozen=True)
class ChannelParams:
    P0: float
    N0: float
    B: float = 1.0
    log_base: float = 2
    beta: float = 1.1

    def __post_init__(self):
        if not (self.P0 > 0 and self.N0 > 0 and self.B > 0):
            raise ValueError("P0, N0 and B must be positive")
        if self.beta < 0:
            raise ValueError("beta must be nonnegative")
        if self.log_base == "e":
            object.__setattr__(self, "log_base", math.e)
        if not (self.log_base > 0 and self.log_base != 1):
            raise ValueError(f"invalid log base {self.log_base!r}")

    def log(self, x: float) -> float:
        if self.log_base == 2:
            return math.log2(x)
        if self.log_base == math.e:
            return math.log(x)
        return math.log(x) / math.log(self.log_base)

    @property
    def C0(self) -> float:
        """Interference-free capacity of the distance-adaptive model (bandwidth 1)."""
        return self.log(1 + self.P0 / self.N0)


@dataclass(frozen=True)
class InterferenceSet:
    """Transmitter/receiver pairs active at the same time as the link being evaluated."""

    pairs: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        pairs = frozenset((int(k), int(m)) for k, m in self.pairs)
        tx = [k for k, _ in pairs]
        rx = [m for _, m in pairs]
        if any(k == m for k, m in pairs):
            raise InterferenceSetError("interference pair with identical transmitter and receiver")
        if len(set(tx)) != len(tx):
            raise InterferenceSetError("a node transmits on two concurrent links")
        if len(set(rx)) != len(rx):
            raise InterferenceSetError("a node receives on two concurrent links")
        object.__setattr__(self, "pairs", pairs)

    @property
    def transmitters(self) -> frozenset:
        return frozenset(k for k, _ in self.pairs)

    def check_link(self, i: int, j: int) -> None:
        """Reject a set that contains, or collides with, the evaluated link (i, j)."""
        if (i, j) in self.pairs:
            raise InterferenceSetError(f"link ({i}, {j}) cannot interfere with itself")
        if i in self.transmitters:
            raise InterferenceSetError(f"node {i} is already transmitting in the interference set")
        if any(m == j for _, m in self.pairs):
            raise InterferenceSetError(f"node {j} is already receiving in the interference set")
        if j in self.transmitters:
            # gamma(j, j) is the gain at distance zero
            raise InterferenceSetError(f"receiver {j} cannot transmit while it receives")

    def with_pair(self, k: int, m: int) -> "InterferenceSet":
        return InterferenceSet(self.pairs | {(k, m)})

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(sorted(self.pairs))


NO_INTERFERENCE = InterferenceSet()


def _gain(net, g, i, j) -> float:
    return 1 / pair_inverse_gain(net, g, i, j)


def _check_link(i, j):
    if i == j:
        raise DomainError(f"self-link ({i}, {j})")


def shannon_capacity(p: ChannelParams, signal_power: float) -> float:
    """B log(1 + S/N0) in the configured log base."""
    if signal_power < 0:
        raise DomainError(f"signal power must be nonnegative, got {signal_power!r}")
    return p.B * p.log(1 + signal_power / p.N0)


def sinr_gupta_kumar(net: Network, g: GainSpec, p: ChannelParams, i: int, j: int,
                     u: InterferenceSet, powers: Mapping[int, float]) -> float:
    """P_i gamma(i,j) / (N0 + sum_{k in u} P_k gamma(k,j)) with fixed per-node powers."""
    _check_link(i, j)
    u.check_link(i, j)
    interference = sum(powers[k] * _gain(net, g, k, j) for k in sorted(u.transmitters))
    return powers[i] * _gain(net, g, i, j) / (p.N0 + interference)


def capacity_gupta_kumar(net, g, p, i, j, u, powers) -> float:
    # bandwidth fixed to one for this model
    return p.log(1 + sinr_gupta_kumar(net, g, p, i, j, u, powers))


def required_power(p: ChannelParams, net: Network, g: GainSpec, i: int, j: int):
    """Transmit power that delivers exactly P0 at the receiver: P0 * gamma^{-1}(i, j)."""
    _check_link(i, j)
    return p.P0 * pair_inverse_gain(net, g, i, j)


def interference_term(net: Network, g: GainSpec, j: int, u: InterferenceSet) -> float:
    """sum over (k, m) in u of gamma^{-1}(k, m) * gamma(k, j): relative power leaking into j."""
    return sum(pair_inverse_gain(net, g, k, m) / pair_inverse_gain(net, g, k, j)
               for k, m in sorted(u.pairs))


def capacity_proposed(net: Network, g: GainSpec, p: ChannelParams, i: int, j: int,
                      u: InterferenceSet = NO_INTERFERENCE) -> float:
    """Capacity of link (i, j) under distance-adaptive power with concurrent pairs ``u``.

    Equals ``p.C0`` for every link when ``u`` is empty.
    """
    _check_link(i, j)
    u.check_link(i, j)
    if not u.pairs:
        return p.C0
    return p.log(1 + p.P0 / (p.N0 + p.P0 * interference_term(net, g, j, u)))


def link_feasible(s: float, p: ChannelParams) -> bool:
    return s >= p.beta


def capacity_gk_no_interference(net: Network, g: GainSpec, p: ChannelParams, i: int, j: int) -> float:
    """log(1 + (P0/N0) gamma(i, j)): fixed power P0, no concurrent transmitters."""
    _check_link(i, j)
    return p.log(1 + p.P0 / p.N0 * _gain(net, g, i, j))


def gk_linearized_capacity(net: Network, g: GainSpec, p: ChannelParams, i: int, j: int) -> float:
    """First-order form of :func:`capacity_gk_no_interference`, log(1+x) ~ x.

    Only defined for x = (P0/N0) gamma(i, j) < 1; the result is converted to
    the configured log base.
    """
    _check_link(i, j)
    x = p.P0 / p.N0 * _gain(net, g, i, j)
    if not x < 1:
        raise ApproximationDomainError(f"linearisation needs (P0/N0)*gamma < 1, got {x!r}")
    return x / math.log(p.log_base)


def interfering_pairs(links: Iterable[tuple[int, int]]) -> InterferenceSet:
    return InterferenceSet(frozenset(links))
