"""Deterministic scenario engine, latency model and scripted adversaries.

Timing is analytic: each scenario accumulates fixed per-packet constants
rather than queueing events.  All durations are exact ``Fraction`` seconds
so that the constant-time and linearity properties hold with equality.

Adversaries see only bytes that crossed the simulated :class:`Wire`; the
:class:`AdversaryScript` refuses to store anything else.
"""

from __future__ import annotations

import csv
import enum
import hashlib
import io
import json
import math
import random
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from . import __version__
from .auth import KeyShare, PublicCredential, initialize_group
from .baseline import (
    PACKET_CATEGORIES,
    Category,
    Kind,
    LinkClass,
    Node,
    NodeRole,
    SequenceTrace,
    derive_key_hierarchy,
    handover_key_exchange,
    integrity_tag,
    network_key_hierarchy,
    run_lte_handover,
    run_nr_handover,
    ue_name,
    verify_integrity,
)
from .errors import (
    DecryptionFailure,
    GroupHandoverError,
    InvalidCount,
    InvalidRate,
    ScenarioError,
    WireKnowledgeViolation,
)
from .groups import GroupDescriptor, get_group
from .handover import (
    BaseStationState,
    EncryptedPayload,
    Role,
    ServiceRequest,
    authenticate_uxnb,
    bs_handle_service_request,
    decrypt,
    derive_symmetric_key,
    encrypt,
    group_handover,
    receive_secret_function,
    release_ues,
    ue_send_service_request,
)


# Latency ---------------------------------------------------------------------

@dataclass(frozen=True)
class LatencyModel:
    bs_bs_per_packet: Fraction = Fraction(75, 10**10)  # 7.5 ns
    base_handover_time: Fraction = Fraction(5, 100)  # 0.05 s
    completion_ack: Fraction = Fraction(10, 10**6)  # 10 us

    def __post_init__(self):
        for name in ("bs_bs_per_packet", "base_handover_time", "completion_ack"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


def seconds_str(value: Fraction) -> str:
    """Exact decimal rendering of a duration whose denominator is 2^a 5^b."""
    d = Decimal(value.numerator) / Decimal(value.denominator)
    if Fraction(d) != value:
        raise ValueError(f"{value} has no exact decimal form")
    return format(d.normalize(), "f")


# Scenario types --------------------------------------------------------------

class Protocol(enum.Enum):
    LTE = "lte"
    NR = "nr"
    GROUP = "group"


class AdversaryKind(enum.Enum):
    REPLAY_UXNB_CREDENTIAL = "ReplayUxnbCredential"
    REPLAY_UE_CREDENTIAL = "ReplayUeCredential"
    EAVESDROP_SERVICE_TRAFFIC = "EavesdropServiceTraffic"
    FAKE_BS_DESYNC = "FakeBsDesync"


class Outcome(enum.Enum):
    THWARTED = "Thwarted"
    SUCCEEDED = "Succeeded"
    NOT_APPLICABLE = "NotApplicable"


@dataclass
class Wire:
    """Log of every byte string sent on the simulated air and backhaul links."""

    frames: list[tuple[str, str, str, bytes]] = field(default_factory=list)
    _seen: set[bytes] = field(default_factory=set, repr=False)

    def send(self, sender: str, receiver: str, kind: str, data: bytes) -> bytes:
        self.frames.append((sender, receiver, kind, data))
        self._seen.add(data)
        return data

    def carried(self, data: bytes) -> bool:
        return data in self._seen


@dataclass
class AdversaryScript:
    """An attacker that knows only what it intercepted.

    ``stolen_share`` exists solely for the control experiment that checks the
    harness can register a success; real scripts never set it.
    """

    kind: AdversaryKind
    intercepted: list[bytes] = field(default_factory=list)
    stolen_share: KeyShare | None = field(default=None, repr=False)

    def capture(self, data: bytes, wire: Wire) -> None:
        if not wire.carried(data):
            raise WireKnowledgeViolation("adversary tried to store bytes never seen on the wire")
        self.intercepted.append(data)

    def candidate_scalars(self, group: GroupDescriptor) -> set[int]:
        """Every share guess the attacker can form from what it holds.

        Intercepted frames are parsed as credentials or service requests;
        public x values, key hints and point coordinates are all tried.
        """
        guesses: set[int] = set()
        for frame in self.intercepted:
            guesses.add(int.from_bytes(hashlib.sha256(frame).digest(), "big") % group.q)
            for parse in (PublicCredential.from_bytes, ServiceRequest.from_bytes, EncryptedPayload.from_bytes):
                try:
                    obj = parse(group, frame)
                except (GroupHandoverError, ValueError):
                    continue
                if isinstance(obj, PublicCredential):
                    guesses.add(obj.public_x)
                    if not obj.public_point.is_identity:
                        guesses.add(obj.public_point.x % group.q)
                        guesses.add(obj.public_point.y % group.q)
                elif isinstance(obj, ServiceRequest):
                    guesses.update({obj.sender_x, obj.payload.key_hint})
                else:
                    guesses.add(obj.key_hint)
        if self.stolen_share is not None:
            guesses.add(self.stolen_share.private_share)
        return guesses

    def candidate_keys(self, group: GroupDescriptor) -> list[bytes]:
        return [derive_symmetric_key(group, s) for s in sorted(self.candidate_scalars(group))]


@dataclass(frozen=True)
class Scenario:
    protocol: Protocol
    ue_count: int
    threshold_t: int = 3
    corruption_set: frozenset[int] = frozenset()
    adversary: AdversaryKind | None = None
    rng_seed: int = 0
    group: str = "toy"
    stolen_share: bool = False
    service_requests: int = 100

    def __post_init__(self):
        if not isinstance(self.ue_count, int) or self.ue_count < 1:
            raise InvalidCount(f"ue_count must be >= 1, got {self.ue_count!r}")
        if self.threshold_t < 1:
            raise ValueError(f"threshold must be >= 1, got {self.threshold_t}")
        object.__setattr__(self, "corruption_set", frozenset(self.corruption_set))
        bad = [i for i in self.corruption_set if not 0 <= i < self.ue_count]
        if bad:
            raise ValueError(f"corruption indices {sorted(bad)} outside [0, {self.ue_count})")
        if self.corruption_set and self.protocol is not Protocol.GROUP:
            raise ValueError("credential corruption only applies to the group protocol")
        if self.stolen_share and self.adversary is AdversaryKind.FAKE_BS_DESYNC:
            raise ValueError("the stolen-share control has no meaning for FakeBsDesync")


@dataclass(frozen=True)
class ScenarioReport:
    protocol: Protocol
    ue_count: int
    handover_time: Fraction
    bs_bs_transfer_time: Fraction
    packets: dict[Category, int]
    link_counts: dict[LinkClass, int]
    accepted_ues: tuple[int, ...]
    rejected_ues: tuple[int, ...]
    aggregate_hit: bool | None = None
    adversary: AdversaryKind | None = None
    adversary_outcome: Outcome = Outcome.NOT_APPLICABLE
    adversary_detail: str = ""

    def __post_init__(self):
        acc, rej = set(self.accepted_ues), set(self.rejected_ues)
        if acc & rej or acc | rej != set(range(self.ue_count)):
            raise ScenarioError("accepted and rejected UEs must partition the scenario")

    def to_dict(self) -> dict:
        return {
            "protocol": self.protocol.value,
            "ue_count": self.ue_count,
            "handover_time": seconds_str(self.handover_time),
            "bs_bs_transfer_time": seconds_str(self.bs_bs_transfer_time),
            "packets": {c.value: n for c, n in self.packets.items()},
            "link_counts": {lc.value: n for lc, n in self.link_counts.items()},
            "accepted_ues": list(self.accepted_ues),
            "rejected_ues": list(self.rejected_ues),
            "aggregate_hit": self.aggregate_hit,
            "adversary": self.adversary.value if self.adversary else None,
            "adversary_outcome": self.adversary_outcome.value,
            "adversary_detail": self.adversary_detail,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


# Group-handover message model --------------------------------------------------

def run_group_trace(ue_count: int) -> SequenceTrace:
    """Per UE: one credential upload to the UxNB, then the six core-update steps."""
    if ue_count < 1:
        raise InvalidCount(f"ue_count must be >= 1, got {ue_count!r}")
    uxnb = Node("UxNB", NodeRole.BS)
    amf, upf = Node("AMF", NodeRole.CORE), Node("UPF", NodeRole.CORE)
    trace = SequenceTrace()
    for i in range(ue_count):
        ue = Node(ue_name(i), NodeRole.UE)
        trace.emit(ue, uxnb, Kind.UeCredentialTransfer, ue.name)
    for i in range(ue_count):
        ue = Node(ue_name(i), NodeRole.UE)
        u = ue.name
        trace.emit(ue, uxnb, Kind.Attach, u)
        trace.emit(uxnb, ue, Kind.UplinkAllocation, u)
        trace.emit(uxnb, amf, Kind.PathSwitch, u)
        trace.emit(amf, upf, Kind.ModifyBearer, u)
        trace.emit(upf, amf, Kind.PathUpdated, u)
        trace.emit(amf, uxnb, Kind.PathSwitchAck, u)
    return trace


def _packets(trace: SequenceTrace) -> tuple[dict[Category, int], dict[LinkClass, int]]:
    cats = trace.per_category_counts
    links = trace.per_link_counts
    return ({c: cats[c] for c in PACKET_CATEGORIES},
            {lc: links[lc] for lc in LinkClass if lc is not LinkClass.LOCAL})


def handover_time(protocol: Protocol, ue_count: int, latency: LatencyModel = LatencyModel()) -> tuple[Fraction, Fraction]:
    """``(total handover time, BS-BS credential transfer time)`` in seconds."""
    if protocol is Protocol.GROUP:
        return latency.base_handover_time, Fraction(0)
    transfer = ue_count * 2 * latency.bs_bs_per_packet
    return latency.base_handover_time + latency.completion_ack + transfer, transfer


# Group world -----------------------------------------------------------------

@dataclass
class _World:
    group: GroupDescriptor
    rng: random.Random
    wire: Wire
    terrestrial: BaseStationState
    uxnb: BaseStationState
    uxnb_share: KeyShare
    ue_shares: list[KeyShare]


def _build_world(sc: Scenario) -> _World:
    group = get_group(sc.group)
    issuer = initialize_group(group, sc.threshold_t, sc.rng_seed)
    rng = random.Random(f"world:{sc.rng_seed}")
    wire = Wire()
    terrestrial = BaseStationState("t-BS", Role.TERRESTRIAL, issuer.params, secret_fn=issuer.polynomial)
    uxnb_share = issuer.issue_share("UxNB-1", uxnb=True)
    ue_shares = [issuer.issue_share(ue_name(i)) for i in range(sc.ue_count)]
    params = issuer.params
    terrestrial.params = params
    terrestrial.served_ues = {s.ue_id: s.public_x for s in ue_shares}
    uxnb = BaseStationState("UxNB-1", Role.UXNB, params, own_share=uxnb_share)
    return _World(group, rng, wire, terrestrial, uxnb, uxnb_share, ue_shares)


def _admit_uxnb(w: _World) -> EncryptedPayload:
    g = w.group
    cred = w.uxnb_share.public
    w.wire.send("UxNB-1", "t-BS", "UxnbCredential", cred.to_bytes())
    payload = authenticate_uxnb(w.terrestrial, cred, w.rng)
    if payload is None:
        raise ScenarioError("terrestrial BS rejected the legitimate UxNB")
    w.wire.send("t-BS", "UxNB-1", "SecretFunction", payload.to_bytes(g))
    receive_secret_function(w.uxnb, payload)
    return payload


def _corrupt(cred: PublicCredential, group: GroupDescriptor, rng: random.Random) -> PublicCredential:
    while True:
        pt = group.random_point(rng)
        if pt != cred.public_point:
            return PublicCredential(cred.ue_id, cred.public_x, pt)


def _run_group(sc: Scenario, w: _World):
    _admit_uxnb(w)
    creds = []
    for i, share in enumerate(w.ue_shares):
        cred = share.public
        if i in sc.corruption_set:
            cred = _corrupt(cred, w.group, w.rng)
        w.wire.send(share.ue_id, "UxNB-1", "UeCredential", cred.to_bytes())
        creds.append(cred)
    result = group_handover(w.uxnb, creds)
    release_ues(w.terrestrial, result)
    index = {ue_name(i): i for i in range(sc.ue_count)}
    accepted = tuple(sorted(index[u] for u in result.accepted))
    rejected = tuple(sorted(index[u] for u in result.rejected))
    return accepted, rejected, result.aggregate_hit


def run_scenario(sc: Scenario, latency: LatencyModel = LatencyModel()) -> ScenarioReport:
    """Run one scenario to completion and collect its metrics."""
    try:
        return _run_scenario(sc, latency)
    except ScenarioError:
        raise
    except GroupHandoverError as exc:
        raise ScenarioError(f"{sc.protocol.value} scenario with {sc.ue_count} UEs "
                            f"(seed {sc.rng_seed}) failed: {exc}") from exc


def _run_scenario(sc: Scenario, latency: LatencyModel, world: _World | None = None) -> ScenarioReport:
    if sc.protocol is Protocol.GROUP:
        trace = run_group_trace(sc.ue_count)
        w = world or _build_world(sc)
        accepted, rejected, hit = _run_group(sc, w)
    else:
        trace = (run_lte_handover if sc.protocol is Protocol.LTE else run_nr_handover)(sc.ue_count)
        accepted, rejected, hit = tuple(range(sc.ue_count)), (), None
    packets, links = _packets(trace)
    total, transfer = handover_time(sc.protocol, sc.ue_count, latency)
    return ScenarioReport(sc.protocol, sc.ue_count, total, transfer, packets, links,
                          accepted, rejected, hit)


# Adversaries -----------------------------------------------------------------

def _attack_replay_uxnb(sc: Scenario, w: _World, adv: AdversaryScript) -> tuple[Outcome, str]:
    g = w.group
    # Legitimate UxNB admission; the attacker listens.
    legit = w.uxnb_share.public
    frame = w.wire.send("UxNB-1", "t-BS", "UxnbCredential", legit.to_bytes())
    adv.capture(frame, w.wire)
    payload = authenticate_uxnb(w.terrestrial, legit, w.rng)
    adv.capture(w.wire.send("t-BS", "UxNB-1", "SecretFunction", payload.to_bytes(g)), w.wire)
    receive_secret_function(w.uxnb, payload)

    # Replay the captured credential as a rogue UxNB.
    replayed = PublicCredential.from_bytes(g, adv.intercepted[0])
    w.wire.send("rogue-UxNB", "t-BS", "UxnbCredential", replayed.to_bytes())
    answer = authenticate_uxnb(w.terrestrial, replayed, w.rng)
    if answer is None:
        return Outcome.THWARTED, "credential rejected"
    adv.capture(w.wire.send("t-BS", "rogue-UxNB", "SecretFunction", answer.to_bytes(g)), w.wire)
    for key in adv.candidate_keys(g):
        try:
            decrypt(g, key, answer)
        except DecryptionFailure:
            continue
        return Outcome.SUCCEEDED, "secret function decrypted"
    return Outcome.THWARTED, "credential accepted but secret function undecryptable"


def _attack_replay_ue(sc: Scenario, w: _World, adv: AdversaryScript) -> tuple[Outcome, str]:
    g = w.group
    victim = w.ue_shares[0]
    adv.capture(w.wire.send(victim.ue_id, "UxNB-1", "UeCredential", victim.public.to_bytes()), w.wire)
    req = ue_send_service_request(victim, b"victim traffic", w.rng)
    adv.capture(w.wire.send(victim.ue_id, "UxNB-1", "ServiceRequest", req.to_bytes(g)), w.wire)

    stolen = PublicCredential.from_bytes(g, adv.intercepted[0])
    chosen = b"attacker-chosen request"
    for key in adv.candidate_keys(g):
        forged = ServiceRequest(stolen.public_x, encrypt(g, key, chosen, stolen.public_x, w.rng))
        w.wire.send("rogue-UE", "UxNB-1", "ServiceRequest", forged.to_bytes(g))
        if bs_handle_service_request(w.uxnb, forged) == chosen:
            return Outcome.SUCCEEDED, "forged request accepted"
    return Outcome.THWARTED, "every forged request rejected"


def _attack_eavesdrop(sc: Scenario, w: _World, adv: AdversaryScript) -> tuple[Outcome, str]:
    g = w.group
    sent: list[tuple[ServiceRequest, bytes]] = []
    served = [s for s in w.ue_shares if s.ue_id in w.uxnb.served_ues]
    for k in range(sc.service_requests):
        share = served[k % len(served)]
        body = f"{share.ue_id} request {k}".encode()
        req = ue_send_service_request(share, body, w.rng)
        frame = w.wire.send(share.ue_id, "UxNB-1", "ServiceRequest", req.to_bytes(g))
        adv.capture(frame, w.wire)
        if bs_handle_service_request(w.uxnb, req) != body:
            raise ScenarioError(f"UxNB failed to serve {share.ue_id}")
        sent.append((req, body))
    keys = adv.candidate_keys(g)
    recovered = 0
    for req, body in sent:
        for key in keys:
            try:
                if decrypt(g, key, req.payload) == body:
                    recovered += 1
                    break
            except DecryptionFailure:
                continue
    outcome = Outcome.SUCCEEDED if recovered else Outcome.THWARTED
    return outcome, f"{recovered}/{len(sent)} plaintexts recovered"


def _attack_desync(sc: Scenario, w: _World, adv: AdversaryScript) -> tuple[Outcome, str]:
    k_amf = w.rng.randbytes(32)
    ue = derive_key_hierarchy(k_amf)
    net = network_key_hierarchy(k_amf)
    # A fake BS drives a handover the UE never takes part in.
    net = handover_key_exchange(net)
    adv.capture(w.wire.send("fake-BS", "t-BS", "HandoverRequest", b"fake handover"), w.wire)
    # The next genuine handover.
    ue = handover_key_exchange(ue)
    net = handover_key_exchange(net)
    msg = b"RRCReconfiguration"
    tag = integrity_tag(net, msg)
    w.wire.send("t-BS", "UE0", "RRCReconfiguration", msg + tag)
    if verify_integrity(ue, msg, tag):
        return Outcome.SUCCEEDED, "desynchronised chains went unnoticed"
    return Outcome.THWARTED, f"key mismatch detected (UE ncc={ue.ncc}, network ncc={net.ncc})"


_ATTACKS = {
    AdversaryKind.REPLAY_UXNB_CREDENTIAL: _attack_replay_uxnb,
    AdversaryKind.REPLAY_UE_CREDENTIAL: _attack_replay_ue,
    AdversaryKind.EAVESDROP_SERVICE_TRAFFIC: _attack_eavesdrop,
    AdversaryKind.FAKE_BS_DESYNC: _attack_desync,
}


def run_adversary(sc: Scenario, latency: LatencyModel = LatencyModel()) -> ScenarioReport:
    """Run the group-handover scenario, then the scripted attack against it."""
    if sc.adversary is None:
        raise ValueError("scenario has no adversary")
    if sc.protocol is not Protocol.GROUP:
        raise ValueError("adversaries target the group protocol")
    w = _build_world(sc)
    try:
        report = _run_scenario(sc, latency, world=w)
        adv = AdversaryScript(sc.adversary)
        if sc.stolen_share:
            target = w.uxnb_share if sc.adversary is AdversaryKind.REPLAY_UXNB_CREDENTIAL else w.ue_shares[0]
            adv.stolen_share = target
        outcome, detail = _ATTACKS[sc.adversary](sc, w, adv)
    except ScenarioError:
        raise
    except GroupHandoverError as exc:
        raise ScenarioError(f"adversary {sc.adversary.value} (seed {sc.rng_seed}) failed: {exc}") from exc
    return ScenarioReport(
        report.protocol, report.ue_count, report.handover_time, report.bs_bs_transfer_time,
        report.packets, report.link_counts, report.accepted_ues, report.rejected_ues,
        report.aggregate_hit, sc.adversary, outcome, detail,
    )


@dataclass(frozen=True)
class AdversaryTally:
    kind: AdversaryKind
    trials: int
    thwarted: int
    stolen_share: bool = False


def adversary_trials(kind: AdversaryKind, trials: int, seed: int = 0, ue_count: int = 5,
                     threshold: int = 3, group: str = "standard", stolen_share: bool = False) -> AdversaryTally:
    thwarted = 0
    for k in range(trials):
        sc = Scenario(Protocol.GROUP, ue_count, threshold, adversary=kind, rng_seed=seed * 1_000_003 + k,
                      group=group, stolen_share=stolen_share)
        if run_adversary(sc).adversary_outcome is Outcome.THWARTED:
            thwarted += 1
    return AdversaryTally(kind, trials, thwarted, stolen_share)


# Sweeps and CSV ----------------------------------------------------------------

def sweep(ue_counts: Sequence[int], protocols: Sequence[Protocol], seed: int = 0,
          threshold: int = 3, group: str = "toy") -> list[ScenarioReport]:
    """Cross product of protocols and UE counts, protocol-major order."""
    if not ue_counts or not protocols:
        raise ValueError("sweep needs at least one UE count and one protocol")
    return [run_scenario(Scenario(p, n, threshold, rng_seed=seed, group=group))
            for p in protocols for n in ue_counts]


HANDOVER_TIME_HEADER = ["protocol", "ue_count", "seconds"]
PACKET_COUNTS_HEADER = ["protocol", "ue_count", "link_class", "count"]
ADVERSARY_HEADER = ["kind", "trials", "thwarted"]


def metadata_lines(meta: dict[str, object]) -> str:
    return "".join(f"# {k}={v}\n" for k, v in meta.items())


def _csv_text(header: list[str], rows: Iterable[list], meta: dict | None) -> str:
    buf = io.StringIO()
    if meta:
        buf.write(metadata_lines(meta))
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def handover_time_csv(reports: Iterable[ScenarioReport], meta: dict | None = None) -> str:
    rows = [[r.protocol.value, r.ue_count, seconds_str(r.handover_time)] for r in reports]
    return _csv_text(HANDOVER_TIME_HEADER, rows, meta)


def packet_counts_csv(reports: Iterable[ScenarioReport], meta: dict | None = None) -> str:
    rows = [[r.protocol.value, r.ue_count, c.value, r.packets[c]]
            for r in reports for c in PACKET_CATEGORIES]
    return _csv_text(PACKET_COUNTS_HEADER, rows, meta)


def adversary_csv(tallies: Iterable[AdversaryTally], meta: dict | None = None) -> str:
    rows = [[t.kind.value + ("+stolen-share" if t.stolen_share else ""), t.trials, t.thwarted]
            for t in tallies]
    return _csv_text(ADVERSARY_HEADER, rows, meta)


def write_text(path: Path, text: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write(text)
    return path


def default_metadata(seed: int, group: str, config: dict | None = None) -> dict[str, object]:
    blob = json.dumps(config or {}, sort_keys=True, default=str).encode()
    return {
        "tool": f"grouphandover {__version__}",
        "seed": seed,
        "group_size": group,
        "config_digest": hashlib.sha256(blob).hexdigest()[:16],
    }


# Capacity --------------------------------------------------------------------

TERRESTRIAL_DOWNLINK_MBPS = Fraction(100)
TERRESTRIAL_UPLINK_MBPS = Fraction(50)
UXNB_DOWNLINK_MBPS = Fraction(160)
PER_UE_DEMAND_MBPS = Fraction(110, 100)  # 110 Mbps offered by 100 UEs
UES_PER_UXNB_RULE = 10


def _rate(value, name: str) -> Fraction:
    try:
        r = Fraction(str(value)) if isinstance(value, float) else Fraction(value)
    except (TypeError, ValueError):
        raise InvalidRate(f"{name} must be a number, got {value!r}") from None
    if r <= 0:
        raise InvalidRate(f"{name} must be positive, got {value!r}")
    return r


def capacity_plan(ue_count: int, per_ue_demand=PER_UE_DEMAND_MBPS,
                  terrestrial_capacity=TERRESTRIAL_DOWNLINK_MBPS,
                  uxnb_capacity=UXNB_DOWNLINK_MBPS) -> int:
    """Fewest UxNBs that absorb the load the terrestrial BS cannot carry."""
    if not isinstance(ue_count, int) or ue_count < 0:
        raise InvalidCount(f"ue_count must be >= 0, got {ue_count!r}")
    d = _rate(per_ue_demand, "per_ue_demand")
    t = _rate(terrestrial_capacity, "terrestrial_capacity")
    u = _rate(uxnb_capacity, "uxnb_capacity")
    overflow = ue_count * d - t
    if overflow <= 0:
        return 0
    return math.ceil(overflow / u)


def rule_of_thumb_uxnbs(ue_count: int) -> int:
    """The coarse one-UxNB-per-ten-UEs figure, reported next to the planner."""
    return math.ceil(ue_count / UES_PER_UXNB_RULE)
