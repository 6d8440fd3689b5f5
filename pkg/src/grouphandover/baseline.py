"""3GPP baseline: LTE and 5G NR handover message sequences, and the 5G key chain.

Messages are simulated records, not encoded PDUs.  Each UE is handed over
one at a time with the 13-step X2 (LTE) / Xn (NR) procedure:

    step  LTE sender -> receiver        kind                 category
    1     s-BS -> UE                    MeasurementControl   PREPARATION
    2     UE -> s-BS                    MeasurementReport    PREPARATION
    3     s-BS (local)                  HandoverDecision     LOCAL
    4     s-BS -> t-BS                  HandoverRequest      BS_BS
    5     t-BS -> s-BS                  HandoverAck          BS_BS
    6     t-BS -> UE   (NR: s-BS -> UE) HandoverCommand      PREPARATION
    7     UE -> t-BS                    Attach               UE_CORE
    8     t-BS -> UE                    UplinkAllocation     UE_CORE
    9     t-BS -> MME                   PathSwitch           UE_CORE
    10    MME -> SGW                    ModifyBearer         UE_CORE
    11    SGW -> MME                    PathUpdated          UE_CORE
    12    MME -> t-BS                   PathSwitchAck        UE_CORE
    13    t-BS -> s-BS                  HandoverComplete     BS_BS_COMPLETION

Steps 7-12 are the six per-UE transmissions that update the core network.
In NR the AMF and UPF take the MME and SGW roles.
"""

from __future__ import annotations

import enum
import hashlib
import hmac
from collections import Counter
from dataclasses import dataclass, field, replace

from .errors import EmptyKey, InvalidCount


class NodeRole(enum.Enum):
    UE = "UE"
    BS = "BS"
    CORE = "CORE"
    LOCAL = "LOCAL"


class LinkClass(enum.Enum):
    UE_BS = "UE_BS"
    BS_BS = "BS_BS"
    BS_CORE = "BS_CORE"
    CORE_CORE = "CORE_CORE"
    LOCAL = "LOCAL"


class Category(enum.Enum):
    """What a packet is for, in the terms used for the performance comparison."""

    UE_CORE = "UE_CORE"
    BS_BS = "BS_BS"
    BS_BS_COMPLETION = "BS_BS_COMPLETION"
    PREPARATION = "PREPARATION"
    CREDENTIAL_UPLOAD = "CREDENTIAL_UPLOAD"
    LOCAL = "LOCAL"


PACKET_CATEGORIES = [c for c in Category if c is not Category.LOCAL]


class Kind(enum.Enum):
    MeasurementControl = 1
    MeasurementReport = 2
    HandoverDecision = 3
    HandoverRequest = 4
    HandoverAck = 5
    HandoverCommand = 6
    Attach = 7
    UplinkAllocation = 8
    PathSwitch = 9
    ModifyBearer = 10
    PathUpdated = 11
    PathSwitchAck = 12
    HandoverComplete = 13
    UeCredentialTransfer = 100


CATEGORY_OF = {
    Kind.MeasurementControl: Category.PREPARATION,
    Kind.MeasurementReport: Category.PREPARATION,
    Kind.HandoverDecision: Category.LOCAL,
    Kind.HandoverRequest: Category.BS_BS,
    Kind.HandoverAck: Category.BS_BS,
    Kind.HandoverCommand: Category.PREPARATION,
    Kind.Attach: Category.UE_CORE,
    Kind.UplinkAllocation: Category.UE_CORE,
    Kind.PathSwitch: Category.UE_CORE,
    Kind.ModifyBearer: Category.UE_CORE,
    Kind.PathUpdated: Category.UE_CORE,
    Kind.PathSwitchAck: Category.UE_CORE,
    Kind.HandoverComplete: Category.BS_BS_COMPLETION,
    Kind.UeCredentialTransfer: Category.CREDENTIAL_UPLOAD,
}


@dataclass(frozen=True)
class Node:
    name: str
    role: NodeRole


def link_class(sender: Node, receiver: Node) -> LinkClass:
    roles = {sender.role, receiver.role}
    if NodeRole.LOCAL in roles or sender == receiver:
        return LinkClass.LOCAL
    if roles == {NodeRole.UE, NodeRole.BS}:
        return LinkClass.UE_BS
    if roles == {NodeRole.BS}:
        return LinkClass.BS_BS
    if roles == {NodeRole.BS, NodeRole.CORE}:
        return LinkClass.BS_CORE
    if roles == {NodeRole.CORE}:
        return LinkClass.CORE_CORE
    raise ValueError(f"no link class between {sender.role} and {receiver.role}")


@dataclass(frozen=True)
class ControlMessage:
    seq: int
    sender: Node
    receiver: Node
    kind: Kind
    ue: str
    payload_size: int = 1

    @property
    def link_class(self) -> LinkClass:
        return link_class(self.sender, self.receiver)

    @property
    def category(self) -> Category:
        return CATEGORY_OF[self.kind]

    @property
    def is_packet(self) -> bool:
        return self.link_class is not LinkClass.LOCAL


@dataclass
class SequenceTrace:
    messages: list[ControlMessage] = field(default_factory=list)

    def emit(self, sender: Node, receiver: Node, kind: Kind, ue: str, payload_size: int = 1) -> None:
        self.messages.append(ControlMessage(len(self.messages), sender, receiver, kind, ue, payload_size))

    @property
    def per_link_counts(self) -> dict[LinkClass, int]:
        counts = Counter(m.link_class for m in self.messages)
        return {lc: counts.get(lc, 0) for lc in LinkClass}

    @property
    def per_category_counts(self) -> dict[Category, int]:
        counts = Counter(m.category for m in self.messages)
        return {c: counts.get(c, 0) for c in Category}

    def to_text(self) -> str:
        """One line per message: ``seq,sender,receiver,kind,link_class``."""
        return "".join(
            f"{m.seq},{m.sender.name},{m.receiver.name},{m.kind.name},{m.link_class.value}\n"
            for m in self.messages
        )


class Generation(enum.Enum):
    LTE = "lte"
    NR = "nr"


def _core_nodes(gen: Generation) -> tuple[Node, Node]:
    if gen is Generation.LTE:
        return Node("MME", NodeRole.CORE), Node("SGW", NodeRole.CORE)
    return Node("AMF", NodeRole.CORE), Node("UPF", NodeRole.CORE)


def ue_name(i: int) -> str:
    return f"UE{i}"


def _run(gen: Generation, ue_count: int) -> SequenceTrace:
    if not isinstance(ue_count, int) or ue_count < 1:
        raise InvalidCount(f"ue_count must be >= 1, got {ue_count!r}")
    s_bs, t_bs = Node("s-BS", NodeRole.BS), Node("t-BS", NodeRole.BS)
    mm, gw = _core_nodes(gen)
    commander = t_bs if gen is Generation.LTE else s_bs
    trace = SequenceTrace()
    for i in range(ue_count):
        ue = Node(ue_name(i), NodeRole.UE)
        u = ue.name
        trace.emit(s_bs, ue, Kind.MeasurementControl, u)
        trace.emit(ue, s_bs, Kind.MeasurementReport, u)
        trace.emit(s_bs, s_bs, Kind.HandoverDecision, u, payload_size=0)
        trace.emit(s_bs, t_bs, Kind.HandoverRequest, u)
        trace.emit(t_bs, s_bs, Kind.HandoverAck, u)
        trace.emit(commander, ue, Kind.HandoverCommand, u)
        trace.emit(ue, t_bs, Kind.Attach, u)
        trace.emit(t_bs, ue, Kind.UplinkAllocation, u)
        trace.emit(t_bs, mm, Kind.PathSwitch, u)
        trace.emit(mm, gw, Kind.ModifyBearer, u)
        trace.emit(gw, mm, Kind.PathUpdated, u)
        trace.emit(mm, t_bs, Kind.PathSwitchAck, u)
        trace.emit(t_bs, s_bs, Kind.HandoverComplete, u)
    return trace


def run_lte_handover(ue_count: int) -> SequenceTrace:
    """LTE inter-BS, intra-MME handover of ``ue_count`` UEs, one after another."""
    return _run(Generation.LTE, ue_count)


def run_nr_handover(ue_count: int) -> SequenceTrace:
    """5G NR variant: the s-BS issues the command; AMF/UPF replace MME/SGW."""
    return _run(Generation.NR, ue_count)


# Key hierarchy ---------------------------------------------------------------

AMF_UE_INT = "amf_ue_int"
AMF_UE_ENC = "amf_ue_enc"
GNB_UE_INT = "gnb_ue_int"
GNB_UE_ENC = "gnb_ue_enc"

DEFAULT_SHARED_PARAMS = b"PCI=1|EARFCN-DL=1"


def kdf(key: bytes, label: str, *params: bytes) -> bytes:
    """Labeled HMAC-SHA256 derivation standing in for the 3GPP KDF."""
    msg = label.encode("ascii") + b"\x00" + b"".join(len(p).to_bytes(2, "big") + p for p in params)
    return hmac.new(key, msg, hashlib.sha256).digest()


@dataclass(frozen=True)
class KeyChainState:
    k_amf: bytes = field(repr=False)
    k_gnb: bytes = field(repr=False)
    k_gnb_star: bytes | None = field(default=None, repr=False)
    ncc: int = 0
    derived: dict[str, bytes] = field(default_factory=dict, repr=False)

    @property
    def current_bs_key(self) -> bytes:
        return self.k_gnb_star if self.k_gnb_star is not None else self.k_gnb

    def nodes(self) -> dict[str, bytes]:
        """Every key in the chain, for node-by-node comparison."""
        out = {"k_amf": self.k_amf, "k_gnb": self.k_gnb}
        if self.k_gnb_star is not None:
            out["k_gnb_star"] = self.k_gnb_star
        out.update(self.derived)
        return out


def _bs_keys(k_bs: bytes) -> dict[str, bytes]:
    return {GNB_UE_INT: kdf(k_bs, "K_gNB-UE-INT"), GNB_UE_ENC: kdf(k_bs, "K_gNB-UE-ENC")}


def derive_key_hierarchy(k_amf: bytes) -> KeyChainState:
    """UE-side view: every key of the chain computed from K_AMF."""
    if not k_amf:
        raise EmptyKey("K_AMF must be nonempty")
    k_gnb = kdf(k_amf, "K_gNB")
    derived = {
        AMF_UE_INT: kdf(k_amf, "K_AMF-UE-INT"),
        AMF_UE_ENC: kdf(k_amf, "K_AMF-UE-ENC"),
        **_bs_keys(k_gnb),
    }
    return KeyChainState(k_amf, k_gnb, None, 0, derived)


def amf_side_keys(k_amf: bytes) -> tuple[bytes, dict[str, bytes]]:
    """What the AMF derives itself: K_gNB (sent to the BS) and its own NAS keys."""
    if not k_amf:
        raise EmptyKey("K_AMF must be nonempty")
    return kdf(k_amf, "K_gNB"), {AMF_UE_INT: kdf(k_amf, "K_AMF-UE-INT"), AMF_UE_ENC: kdf(k_amf, "K_AMF-UE-ENC")}


def gnb_side_keys(k_gnb: bytes) -> dict[str, bytes]:
    """What the BS derives after receiving K_gNB from the AMF."""
    return _bs_keys(k_gnb)


def network_key_hierarchy(k_amf: bytes) -> KeyChainState:
    """Network-side view assembled from the AMF and BS halves."""
    k_gnb, amf_keys = amf_side_keys(k_amf)
    return KeyChainState(k_amf, k_gnb, None, 0, {**amf_keys, **gnb_side_keys(k_gnb)})


def handover_key_exchange(state: KeyChainState, shared_params: bytes = DEFAULT_SHARED_PARAMS) -> KeyChainState:
    """Derive K_gNB* from the current BS key, NCC and shared parameters; advance NCC."""
    k_star = kdf(state.current_bs_key, "K_gNB*", state.ncc.to_bytes(4, "big"), shared_params)
    derived = {**state.derived, **_bs_keys(k_star)}
    return replace(state, k_gnb_star=k_star, ncc=state.ncc + 1, derived=derived)


def integrity_tag(state: KeyChainState, message: bytes) -> bytes:
    return hmac.new(state.derived[GNB_UE_INT], message, hashlib.sha256).digest()


def verify_integrity(state: KeyChainState, message: bytes, tag: bytes) -> bool:
    """UE-side check of a BS message; fails when the two chains have drifted."""
    return hmac.compare_digest(integrity_tag(state, message), tag)
