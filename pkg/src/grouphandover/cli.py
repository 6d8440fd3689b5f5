"""Command-line entry point.

Exit codes: 0 success, 1 scenario failure, 2 usage or configuration error.
Diagnostics go to stderr; data goes to files under ``--out`` and to stdout.

Config files are flat ``key = value`` lines; ``#`` starts a comment.  Values
use the same syntax as the matching command-line flag.  See
``docs/config-schema.json`` for the key list.  Flags override file values.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

from . import __version__
from .auth import PublicCredential, initialize_group
from .errors import GroupHandoverError
from .groups import GROUPS, get_group
from .handover import BaseStationState, Role, authenticate_uxnb, receive_secret_function
from .sim import (
    AdversaryKind,
    Protocol,
    Scenario,
    adversary_csv,
    adversary_trials,
    capacity_plan,
    default_metadata,
    handover_time_csv,
    packet_counts_csv,
    rule_of_thumb_uxnbs,
    run_scenario,
    seconds_str,
    sweep,
    write_text,
    PER_UE_DEMAND_MBPS,
    TERRESTRIAL_DOWNLINK_MBPS,
    UXNB_DOWNLINK_MBPS,
)

COMMANDS = ("keygen", "authenticate-uxnb", "handover", "sweep", "adversary", "capacity")


class ConfigError(Exception):
    pass


class ParseError(ConfigError):
    def __init__(self, path, line: int, col: int, msg: str):
        super().__init__(f"{path}:{line}:{col}: {msg}")
        self.line, self.col = line, col


class SchemaError(ConfigError):
    def __init__(self, key: str, msg: str):
        super().__init__(f"{key}: {msg}")
        self.key = key


# Value parsers shared by flags and config files ---------------------------------

def parse_range(text: str) -> list[int]:
    """``A:B`` (inclusive) or ``a,b,c``."""
    text = text.strip()
    try:
        if ":" in text:
            a, b = text.split(":", 1)
            lo, hi = int(a), int(b)
            if lo > hi:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ValueError(f"expected A:B or a comma list of integers, got {text!r}") from None


def parse_int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise ValueError(f"expected comma-separated integers, got {text!r}") from None


def parse_protocols(text: str) -> list[str]:
    out = []
    for name in (v.strip() for v in text.split(",")):
        if name not in {p.value for p in Protocol}:
            raise ValueError(f"unknown protocol {name!r}; choose from lte, nr, group")
        out.append(name)
    return out


def parse_kinds(text: str) -> list[str]:
    valid = {k.value for k in AdversaryKind}
    out = []
    for name in (v.strip() for v in text.split(",")):
        if name not in valid:
            raise ValueError(f"unknown adversary {name!r}; choose from {', '.join(sorted(valid))}")
        out.append(name)
    return out


def parse_bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"expected true/false, got {text!r}")


def _choice(options):
    def parse(text: str) -> str:
        text = text.strip()
        if text not in options:
            raise ValueError(f"expected one of {', '.join(options)}, got {text!r}")
        return text
    return parse


@dataclass
class CliConfig:
    command: str = ""
    ue_count: int = 10
    ue_counts: list[int] = field(default_factory=lambda: list(range(1, 101)))
    protocols: list[str] = field(default_factory=lambda: ["lte", "group"])
    protocol: str = "group"
    threshold: int = 3
    corrupt: list[int] = field(default_factory=list)
    seed: int = 0
    group: str = "toy"
    output_dir: str | None = None
    kinds: list[str] = field(default_factory=lambda: [k.value for k in AdversaryKind])
    trials: int = 100
    control: bool = False
    forge: bool = False
    per_ue_demand: float = float(PER_UE_DEMAND_MBPS)
    terrestrial_capacity: float = float(TERRESTRIAL_DOWNLINK_MBPS)
    uxnb_capacity: float = float(UXNB_DOWNLINK_MBPS)
    overrides: list[str] = field(default_factory=list)

    def validate(self) -> None:
        def need(cond, key, msg):
            if not cond:
                raise SchemaError(key, msg)
        need(self.command in COMMANDS, "command", f"must be one of {', '.join(COMMANDS)}")
        need(self.ue_count >= 1 or (self.command == "capacity" and self.ue_count >= 0),
             "ue_count", f"must be >= 1 (got {self.ue_count})")
        need(self.ue_counts and min(self.ue_counts) >= 1, "ue_counts", "all UE counts must be >= 1")
        need(self.protocols, "protocols", "at least one protocol is required")
        need(self.threshold >= 1, "threshold", f"must be >= 1 (got {self.threshold})")
        need(self.trials >= 1, "trials", f"must be >= 1 (got {self.trials})")
        need(self.group in GROUPS, "group", f"must be one of {', '.join(GROUPS)}")
        for key in ("per_ue_demand", "terrestrial_capacity", "uxnb_capacity"):
            need(getattr(self, key) > 0, key, f"must be positive (got {getattr(self, key)})")
        if self.command == "handover":
            bad = [i for i in self.corrupt if not 0 <= i < self.ue_count]
            need(not bad, "corrupt", f"indices {bad} outside [0, {self.ue_count - 1}]")
            need(not self.corrupt or self.protocol == "group", "corrupt",
                 "corruption only applies to the group protocol")

    def as_dict(self) -> dict:
        d = asdict(self)
        d.pop("overrides")
        return d


def _nonneg_int(text: str) -> int:
    v = int(text)
    if v < 0:
        raise ValueError(f"must be >= 0, got {v}")
    return v


# key -> parser for config files.  Keep in step with docs/config-schema.json.
CONFIG_KEYS = {
    "command": _choice(COMMANDS),
    "ue_count": _nonneg_int,
    "ue_counts": parse_range,
    "protocols": parse_protocols,
    "protocol": _choice(tuple(p.value for p in Protocol)),
    "threshold": int,
    "corrupt": parse_int_list,
    "seed": int,
    "group": _choice(tuple(GROUPS)),
    "output_dir": str,
    "kinds": parse_kinds,
    "trials": int,
    "control": parse_bool,
    "forge": parse_bool,
    "per_ue_demand": float,
    "terrestrial_capacity": float,
    "uxnb_capacity": float,
}


def load_config(path) -> dict:
    """Parse a ``key = value`` config file into typed values (not yet merged)."""
    path = Path(path)
    out: dict = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.rstrip("\n")
            stripped = line.split("#", 1)[0]
            if not stripped.strip():
                continue
            if "=" not in stripped:
                col = len(stripped) - len(stripped.lstrip()) + 1
                raise ParseError(path, lineno, col, "expected 'key = value'")
            key_part, value = stripped.split("=", 1)
            key = key_part.strip()
            col = len(key_part) - len(key_part.lstrip()) + 1
            if not key or not key.replace("_", "").isalnum():
                raise ParseError(path, lineno, col, f"invalid key {key!r}")
            if key not in CONFIG_KEYS:
                raise SchemaError(key, f"unknown key (line {lineno})")
            if key in out:
                raise ParseError(path, lineno, col, f"duplicate key {key!r}")
            try:
                out[key] = CONFIG_KEYS[key](value.strip())
            except ValueError as exc:
                raise SchemaError(key, f"{exc} (line {lineno})") from None
    if "ue_count" in out and out["ue_count"] < 0:
        raise SchemaError("ue_count", "must be >= 0")
    return out


def _flag_type(parser_fn):
    def conv(text):
        try:
            return parser_fn(text)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None
    conv.__name__ = getattr(parser_fn, "__name__", "value")
    return conv


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    S = argparse.SUPPRESS
    common.add_argument("--seed", type=int, default=S, help="RNG seed (default 0)")
    common.add_argument("--group", choices=sorted(GROUPS), default=S, help="toy or standard (P-256)")
    common.add_argument("--out", dest="output_dir", default=S, help="output directory")
    common.add_argument("--config", default=S, help="key=value config file")
    common.add_argument("--threshold", type=int, default=S, help="threshold t (default 3)")

    p = argparse.ArgumentParser(prog="grouphandover", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"grouphandover {__version__}")
    p.add_argument("--config", default=S, help="key=value config file naming the command")
    sub = p.add_subparsers(dest="command", metavar="command")

    k = sub.add_parser("keygen", parents=[common], help="create a group and issue key shares")
    k.add_argument("--ue-count", type=_flag_type(_nonneg_int), default=S)

    a = sub.add_parser("authenticate-uxnb", parents=[common], help="admit a UxNB and transfer f(x)")
    a.add_argument("--forge", action="store_true", default=S, help="present a forged credential")

    h = sub.add_parser("handover", parents=[common], help="run one handover scenario")
    h.add_argument("--ue-count", type=_flag_type(_nonneg_int), default=S)
    h.add_argument("--protocol", choices=[q.value for q in Protocol], default=S)
    h.add_argument("--corrupt", type=_flag_type(parse_int_list), default=S, help="i[,j...] UE indices")

    s = sub.add_parser("sweep", parents=[common], help="sweep UE counts over protocols")
    s.add_argument("--ue-counts", type=_flag_type(parse_range), default=S, help="A:B or list")
    s.add_argument("--protocols", type=_flag_type(parse_protocols), default=S, help="e.g. lte,group")

    v = sub.add_parser("adversary", parents=[common], help="run scripted attacks")
    v.add_argument("--kinds", type=_flag_type(parse_kinds), default=S)
    v.add_argument("--trials", type=int, default=S)
    v.add_argument("--ue-count", type=_flag_type(_nonneg_int), default=S)
    v.add_argument("--control", action="store_true", default=S,
                   help="also run the stolen-share control adversaries")

    c = sub.add_parser("capacity", parents=[common], help="how many UxNBs a load needs")
    c.add_argument("--ue-count", type=_flag_type(_nonneg_int), default=S)
    c.add_argument("--per-ue-demand", type=float, default=S, help="Mbps per UE")
    c.add_argument("--terrestrial-capacity", type=float, default=S, help="Mbps")
    c.add_argument("--uxnb-capacity", type=float, default=S, help="Mbps")
    return p


def resolve_config(argv) -> CliConfig:
    """Defaults, then config file, then flags; raises ConfigError or SystemExit(2)."""
    parser = build_parser()
    ns = vars(parser.parse_args(argv))
    config_path = ns.pop("config", None)
    file_values = load_config(config_path) if config_path else {}
    command = ns.pop("command", None) or file_values.get("command")
    if command is None:
        parser.print_usage(sys.stderr)
        raise ConfigError("a command is required")
    cfg = CliConfig(command=command)
    if command == "adversary" and "group" not in ns and "group" not in file_values:
        cfg.group = "standard"
    known = {f.name for f in fields(CliConfig)}
    for key, value in file_values.items():
        if key != "command":
            setattr(cfg, key, value)
    for key, value in ns.items():
        if key not in known:
            continue
        if key in file_values and file_values[key] != value:
            cfg.overrides.append(key)
        setattr(cfg, key, value)
    cfg.validate()
    return cfg


def _meta(cfg: CliConfig) -> dict:
    digest_input = cfg.as_dict()
    digest_input.pop("output_dir")  # where results land does not change them
    meta = default_metadata(cfg.seed, cfg.group, digest_input)
    if cfg.overrides:
        meta["overrides"] = ",".join(sorted(cfg.overrides))
    return meta


def _out(cfg: CliConfig) -> Path | None:
    return Path(cfg.output_dir) if cfg.output_dir else None


def cmd_keygen(cfg: CliConfig) -> int:
    g = get_group(cfg.group)
    issuer = initialize_group(g, cfg.threshold, cfg.seed)
    shares = [issuer.issue_share(f"UE{i}") for i in range(cfg.ue_count)]
    doc = {
        "group": g.curve_id,
        "threshold": cfg.threshold,
        "params": issuer.params.to_bytes().hex(),
        "credentials": [s.public.to_bytes().hex() for s in shares],
    }
    secret = {"shares": {s.ue_id: s.to_bytes().hex() for s in shares}}
    out = _out(cfg)
    if out:
        write_text(out / "group.json", json.dumps(doc, indent=2) + "\n")
        write_text(out / "shares.json", json.dumps(secret, indent=2) + "\n")
        print(f"wrote {out / 'group.json'} and {out / 'shares.json'}", file=sys.stderr)
    else:
        print(json.dumps(doc, indent=2))
    return 0


def cmd_authenticate(cfg: CliConfig) -> int:
    g = get_group(cfg.group)
    issuer = initialize_group(g, cfg.threshold, cfg.seed)
    share = issuer.issue_share("UxNB-1", uxnb=True)
    terrestrial = BaseStationState("t-BS", Role.TERRESTRIAL, issuer.params, secret_fn=issuer.polynomial)
    cred = share.public
    if cfg.forge:
        cred = PublicCredential(cred.ue_id, cred.public_x, cred.public_point + g.generator)
    payload = authenticate_uxnb(terrestrial, cred)
    if payload is None:
        print("UxNB-1: not a valid UxNB")
        return 0 if cfg.forge else 1
    uxnb = BaseStationState("UxNB-1", Role.UXNB, issuer.params, own_share=share)
    receive_secret_function(uxnb, payload)
    print(f"UxNB-1: authenticated; secret function received ({len(payload.ciphertext)} ciphertext bytes)")
    return 1 if cfg.forge else 0


def cmd_handover(cfg: CliConfig) -> int:
    sc = Scenario(Protocol(cfg.protocol), cfg.ue_count, cfg.threshold, frozenset(cfg.corrupt),
                  rng_seed=cfg.seed, group=cfg.group)
    report = run_scenario(sc)
    print(f"protocol={report.protocol.value} ue_count={report.ue_count} "
          f"handover_time={seconds_str(report.handover_time)}s aggregate_hit={report.aggregate_hit}")
    print(f"accepted={len(report.accepted_ues)} rejected={list(report.rejected_ues)}")
    out = _out(cfg)
    if out:
        meta = _meta(cfg)
        write_text(out / "handover_time.csv", handover_time_csv([report], meta))
        write_text(out / "packet_counts.csv", packet_counts_csv([report], meta))
        write_text(out / "report.json", json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n")
    unexpected = set(report.rejected_ues) - set(cfg.corrupt)
    missed = set(cfg.corrupt) - set(report.rejected_ues)
    if unexpected or missed:
        print(f"error: unexpected outcome: rejected {sorted(unexpected)} not scripted, "
              f"{sorted(missed)} corrupted but accepted", file=sys.stderr)
        return 1
    return 0


def cmd_sweep(cfg: CliConfig) -> int:
    reports = sweep(cfg.ue_counts, [Protocol(p) for p in cfg.protocols], cfg.seed, cfg.threshold, cfg.group)
    meta = _meta(cfg)
    t_csv = handover_time_csv(reports, meta)
    p_csv = packet_counts_csv(reports, meta)
    out = _out(cfg)
    if out:
        write_text(out / "handover_time.csv", t_csv)
        write_text(out / "packet_counts.csv", p_csv)
        print(f"wrote {len(reports)} scenarios to {out}", file=sys.stderr)
    else:
        sys.stdout.write(t_csv)
    for r in reports:
        if r.rejected_ues:
            print(f"error: {r.protocol.value} with {r.ue_count} UEs rejected {list(r.rejected_ues)}",
                  file=sys.stderr)
            return 1
    return 0


def cmd_adversary(cfg: CliConfig) -> int:
    tallies = []
    status = 0
    for name in cfg.kinds:
        kind = AdversaryKind(name)
        tally = adversary_trials(kind, cfg.trials, cfg.seed, max(cfg.ue_count, 1), cfg.threshold, cfg.group)
        tallies.append(tally)
        print(f"{kind.value}: thwarted {tally.thwarted}/{tally.trials}")
        if tally.thwarted != tally.trials:
            status = 1
        if cfg.control and kind is not AdversaryKind.FAKE_BS_DESYNC:
            ctl = adversary_trials(kind, cfg.trials, cfg.seed, max(cfg.ue_count, 1), cfg.threshold,
                                   cfg.group, stolen_share=True)
            tallies.append(ctl)
            print(f"{kind.value}+stolen-share (control): succeeded {ctl.trials - ctl.thwarted}/{ctl.trials}")
            if ctl.thwarted:
                status = 1
    text = adversary_csv(tallies, _meta(cfg))
    out = _out(cfg)
    if out:
        write_text(out / "adversary.csv", text)
    if status:
        print("error: adversary outcome differs from expectation", file=sys.stderr)
    return status


def cmd_capacity(cfg: CliConfig) -> int:
    n = capacity_plan(cfg.ue_count, cfg.per_ue_demand, cfg.terrestrial_capacity, cfg.uxnb_capacity)
    load = cfg.ue_count * cfg.per_ue_demand
    print(f"ue_count={cfg.ue_count} offered_load={load:g} Mbps terrestrial={cfg.terrestrial_capacity:g} Mbps")
    print(f"capacity basis: {n} UxNB(s) at {cfg.uxnb_capacity:g} Mbps each")
    print(f"rule-of-thumb basis (1 UxNB per ~10 UEs): {rule_of_thumb_uxnbs(cfg.ue_count)} UxNB(s)")
    return 0


HANDLERS = {
    "keygen": cmd_keygen,
    "authenticate-uxnb": cmd_authenticate,
    "handover": cmd_handover,
    "sweep": cmd_sweep,
    "adversary": cmd_adversary,
    "capacity": cmd_capacity,
}


def main(argv=None) -> int:
    try:
        cfg = resolve_config(argv)
    except SystemExit as exc:  # argparse usage errors
        return exc.code if isinstance(exc.code, int) else 2
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        return HANDLERS[cfg.command](cfg)
    except GroupHandoverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
