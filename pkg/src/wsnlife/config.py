"""Run configuration: TOML files with [network], [gain], [channel], [service],
[solver], [battery], [output] and optional [sweep] tables.

See ``configs/`` in the repository for annotated samples. Every problem is
reported as a :class:`~wsnlife.errors.ConfigError` naming the offending
field (``service.Q``) or the TOML line.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .channel import ChannelParams
from .errors import ConfigError
from .network import GainSpec, Network, build_line_network

SOLVERS = ("closed_form", "lp", "both")
FORMATS = ("json", "csv")
SWEEP_PARAMS = ("N", "a", "lambda_scale", "P0/N0", "k")

_ALLOWED = {
    "network": {"kind", "N", "with_collector", "positions", "ids", "collectors"},
    "gain": {"lambdas", "exponents"},
    "channel": {"P0", "N0", "B", "log_base", "beta"},
    "service": {"type", "Q", "source", "Qk", "rate", "trees"},
    "solver": {"method", "exact"},
    "battery": {"E0"},
    "output": {"path", "format"},
    "sweep": {"param", "values"},
}


@dataclass
class NetworkConfig:
    kind: str = "line"
    N: int | None = None
    with_collector: bool | None = None
    positions: list | None = None
    ids: list | None = None
    collectors: list = field(default_factory=list)


@dataclass
class ServiceConfig:
    type: str
    Q: Any = None
    source: int | None = None
    Qk: Any = None
    rate: float | None = None
    trees: Any = "all"


@dataclass
class RunConfig:
    network: NetworkConfig
    gain: GainSpec
    channel: ChannelParams
    service: ServiceConfig
    solver: str = "both"
    exact: bool = False
    battery_E0: float | None = None
    output_path: Path | None = None
    output_format: str = "json"
    sweep_param: str | None = None
    sweep_values: list = field(default_factory=list)
    source_path: Path | None = None

    def build_network(self) -> Network:
        net = self.network
        if net.kind == "line":
            return build_line_network(net.N, bool(net.with_collector))
        ids = net.ids if net.ids is not None else list(range(len(net.positions)))
        return Network(dict(zip(ids, (tuple(p) if isinstance(p, list) else (p,) for p in net.positions))),
                       frozenset(net.collectors))

    @property
    def rate(self):
        return self.service.rate if self.service.rate is not None else self.channel.C0

    def data_amounts(self, network: Network) -> list:
        Q = self.service.Q
        if isinstance(Q, list):
            return list(Q)
        return [Q] * network.N

    def with_changes(self, **changes) -> "RunConfig":
        return replace(copy.deepcopy(self), **changes)


def _num(value, where, positive=False, nonneg=False):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where}: expected a number, got {value!r}")
    if positive and not value > 0:
        raise ConfigError(f"{where}: must be positive, got {value!r}")
    if nonneg and value < 0:
        raise ConfigError(f"{where}: must be nonnegative, got {value!r}")
    return value


def _int(value, where, minimum=None):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{where}: expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise ConfigError(f"{where}: must be >= {minimum}, got {value}")
    return value


def _choice(value, options, where):
    if value not in options:
        raise ConfigError(f"{where}: expected one of {', '.join(options)}, got {value!r}")
    return value


def parse_config(data: dict, source_path: Path | None = None) -> RunConfig:
    """Validate a decoded TOML document and build a :class:`RunConfig`."""
    for section, body in data.items():
        if section not in _ALLOWED:
            raise ConfigError(f"{section}: unknown section")
        if not isinstance(body, dict):
            raise ConfigError(f"{section}: expected a table")
        for key in body:
            if key not in _ALLOWED[section]:
                raise ConfigError(f"{section}.{key}: unknown field")
    for required in ("network", "service"):
        if required not in data:
            raise ConfigError(f"{required}: missing section")

    svc = data["service"]
    stype = _choice(svc.get("type"), ("m2m", "broadcast"), "service.type")

    nd = data["network"]
    kind = _choice(nd.get("kind", "line"), ("line", "explicit"), "network.kind")
    net = NetworkConfig(kind=kind)
    if kind == "line":
        net.N = _int(nd.get("N"), "network.N", minimum=1)
        net.with_collector = nd.get("with_collector", stype == "m2m")
        if not isinstance(net.with_collector, bool):
            raise ConfigError("network.with_collector: expected true or false")
        if "positions" in nd or "collectors" in nd or "ids" in nd:
            raise ConfigError("network: positions/ids/collectors only apply to kind = \"explicit\"")
    else:
        pos = nd.get("positions")
        if not isinstance(pos, list) or not pos:
            raise ConfigError("network.positions: expected a non-empty list of coordinates")
        for n, p in enumerate(pos):
            coords = p if isinstance(p, list) else [p]
            for c in coords:
                _num(c, f"network.positions[{n}]")
        net.positions = pos
        if "ids" in nd:
            ids = nd["ids"]
            if not isinstance(ids, list) or len(ids) != len(pos):
                raise ConfigError("network.ids: expected one integer id per position")
            net.ids = [_int(i, "network.ids") for i in ids]
        net.collectors = [_int(c, "network.collectors") for c in nd.get("collectors", [])]
        if "N" in nd or "with_collector" in nd:
            raise ConfigError("network: N/with_collector only apply to kind = \"line\"")

    gd = data.get("gain", {"lambdas": [1.0], "exponents": [2]})
    try:
        gain = GainSpec(tuple(_num(x, "gain.lambdas") for x in gd.get("lambdas", [1.0])),
                        tuple(_num(x, "gain.exponents") for x in gd.get("exponents", [2])))
    except ValueError as exc:
        raise ConfigError(f"gain: {exc}") from None

    cd = data.get("channel", {})
    try:
        channel = ChannelParams(
            P0=_num(cd.get("P0", 1.0), "channel.P0"), N0=_num(cd.get("N0", 1.0), "channel.N0"),
            B=_num(cd.get("B", 1.0), "channel.B"),
            log_base=cd.get("log_base", 2) if cd.get("log_base", 2) == "e" else _num(cd.get("log_base", 2), "channel.log_base"),
            beta=_num(cd.get("beta", 1.1), "channel.beta"))
    except ValueError as exc:
        raise ConfigError(f"channel: {exc}") from None

    service = ServiceConfig(type=stype)
    if stype == "m2m":
        if "source" in svc or "Qk" in svc:
            raise ConfigError("service: source/Qk only apply to type = \"broadcast\"")
        Q = svc.get("Q", 1.0)
        service.Q = [_num(q, "service.Q", nonneg=True) for q in Q] if isinstance(Q, list) \
            else _num(Q, "service.Q", nonneg=True)
        if svc.get("trees", "all") != "all":
            raise ConfigError("service.trees: only applies to type = \"broadcast\"")
    else:
        if "Q" in svc:
            raise ConfigError("service.Q: broadcast uses service.Qk")
        service.source = _int(svc.get("source"), "service.source")
        service.Qk = _num(svc.get("Qk", 1.0), "service.Qk", nonneg=True)
        trees = svc.get("trees", "all")
        if isinstance(trees, list):
            for n, t in enumerate(trees):
                if not isinstance(t, list) or not all(isinstance(e, list) and len(e) == 2 for e in t):
                    raise ConfigError(f"service.trees[{n}]: expected a list of [from, to] edges")
        else:
            _choice(trees, ("all", "lemma2"), "service.trees")
        service.trees = trees
    if "rate" in svc:
        service.rate = _num(svc["rate"], "service.rate", positive=True)

    sd = data.get("solver", {})
    method = _choice(sd.get("method", "both"), SOLVERS, "solver.method")
    exact = sd.get("exact", False)
    if not isinstance(exact, bool):
        raise ConfigError("solver.exact: expected true or false")

    E0 = data.get("battery", {}).get("E0")
    if E0 is not None:
        E0 = _num(E0, "battery.E0", nonneg=True)

    od = data.get("output", {})
    fmt = _choice(od.get("format", "json"), FORMATS, "output.format")
    out = od.get("path")
    if out is not None:
        out = Path(out)
        if not out.is_absolute() and source_path is not None:
            out = source_path.parent / out

    cfg = RunConfig(network=net, gain=gain, channel=channel, service=service, solver=method,
                    exact=exact, battery_E0=E0, output_path=out, output_format=fmt,
                    source_path=source_path)

    if "sweep" in data:
        sw = data["sweep"]
        cfg.sweep_param = _choice(sw.get("param"), SWEEP_PARAMS, "sweep.param")
        values = sw.get("values", [])
        if not isinstance(values, list):
            raise ConfigError("sweep.values: expected a list")
        cfg.sweep_values = [_num(v, "sweep.values") for v in values]

    validate(cfg)
    return cfg


def validate(cfg: RunConfig) -> Network:
    """Cross-field checks; returns the network the config describes."""
    try:
        network = cfg.build_network()
    except ValueError as exc:
        raise ConfigError(f"network: {exc}") from None
    if cfg.service.type == "broadcast":
        if network.collectors:
            raise ConfigError("network: broadcast service requires a network without collectors")
        if cfg.service.source not in network.positions:
            raise ConfigError(f"service.source: node {cfg.service.source} is not in the network")
        if network.N < 2:
            raise ConfigError("network: broadcast needs at least two nodes")
    else:
        if not network.collectors:
            raise ConfigError("network: multipoint-to-multipoint service requires at least one collector")
        if isinstance(cfg.service.Q, list) and len(cfg.service.Q) != network.N:
            raise ConfigError(f"service.Q: expected {network.N} values (one per sensor), got {len(cfg.service.Q)}")
    if cfg.solver in ("closed_form", "both") and cfg.network.kind != "line":
        raise ConfigError("solver.method: the closed form is only available for kind = \"line\" networks")
    return network


def load_config(path) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read ({exc.strerror})") from None
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    return parse_config(data, path)
