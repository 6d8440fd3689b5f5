"""Baseline message sequences and the 5G key chain."""

import random
from collections import Counter
from pathlib import Path

import pytest

from grouphandover.baseline import (
    Category,
    Kind,
    LinkClass,
    derive_key_hierarchy,
    handover_key_exchange,
    integrity_tag,
    kdf,
    network_key_hierarchy,
    run_lte_handover,
    run_nr_handover,
    verify_integrity,
)
from grouphandover.errors import EmptyKey, InvalidCount

GOLDEN = Path(__file__).parent / "golden"


class TestSequences:
    @pytest.mark.parametrize("n", [1, 2, 10, 100])
    def test_counts(self, n):
        trace = run_lte_handover(n)
        links = trace.per_link_counts
        cats = trace.per_category_counts
        assert len(trace.messages) == 13 * n
        assert links[LinkClass.BS_BS] == 3 * n
        assert links[LinkClass.LOCAL] == n
        assert cats[Category.BS_BS] == 2 * n
        assert cats[Category.BS_BS_COMPLETION] == n
        assert cats[Category.UE_CORE] == 6 * n
        assert cats[Category.PREPARATION] == 3 * n
        assert cats[Category.CREDENTIAL_UPLOAD] == 0

    def test_hundred_ues_six_hundred_core_updates(self):
        assert run_lte_handover(100).per_category_counts[Category.UE_CORE] == 600

    def test_per_ue_steps(self):
        trace = run_lte_handover(4)
        for i in range(4):
            kinds = [m.kind.value for m in trace.messages if m.ue == f"UE{i}"]
            assert kinds == list(range(1, 14))

    def test_linear_scaling(self):
        one = run_nr_handover(1).per_link_counts
        many = run_nr_handover(37).per_link_counts
        assert all(many[k] == 37 * one[k] for k in LinkClass)

    def test_nr_command_from_source(self):
        cmd = [m for m in run_nr_handover(3).messages if m.kind is Kind.HandoverCommand]
        assert {m.sender.name for m in cmd} == {"s-BS"}
        cmd = [m for m in run_lte_handover(3).messages if m.kind is Kind.HandoverCommand]
        assert {m.sender.name for m in cmd} == {"t-BS"}

    def test_nr_matches_lte_up_to_renaming(self):
        rename = {"MME": "AMF", "SGW": "UPF"}

        def steps(trace):
            return Counter(
                (m.kind, rename.get(m.sender.name, m.sender.name), rename.get(m.receiver.name, m.receiver.name))
                for m in trace.messages if m.kind is not Kind.HandoverCommand
            )
        assert steps(run_lte_handover(5)) == steps(run_nr_handover(5))

    @pytest.mark.parametrize("runner", [run_lte_handover, run_nr_handover])
    def test_well_formed(self, runner):
        trace = runner(20)
        assert [m.seq for m in trace.messages] == list(range(len(trace.messages)))
        for m in trace.messages:
            if m.link_class is LinkClass.LOCAL:
                assert m.sender == m.receiver
            else:
                assert m.sender != m.receiver

    def test_golden_text(self):
        assert run_lte_handover(1).to_text() == (GOLDEN / "lte_trace_1ue.txt").read_text()

    @pytest.mark.parametrize("bad", [0, -1, 2.0, "3"])
    def test_invalid_count(self, bad):
        with pytest.raises(InvalidCount):
            run_lte_handover(bad)


class TestKeyChain:
    def test_ue_and_network_agree(self):
        rng = random.Random(5)
        for _ in range(100):
            k = rng.randbytes(32)
            ue, net = derive_key_hierarchy(k), network_key_hierarchy(k)
            assert ue.nodes() == net.nodes()
            ue2, net2 = handover_key_exchange(ue), handover_key_exchange(net)
            assert ue2.nodes() == net2.nodes()

    def test_kdf_matches_hmac_oracle(self):
        import hashlib
        import hmac
        key = b"k" * 32
        expected = hmac.new(key, b"K_gNB*\x00\x00\x04\x00\x00\x00\x01\x00\x02ab", hashlib.sha256).digest()
        assert kdf(key, "K_gNB*", b"\x00\x00\x00\x01", b"ab") == expected

    def test_ncc_advances(self):
        s = derive_key_hierarchy(b"\x01" * 32)
        assert s.ncc == 0 and s.k_gnb_star is None
        s1 = handover_key_exchange(s)
        s2 = handover_key_exchange(s1)
        assert (s1.ncc, s2.ncc) == (1, 2)
        assert len({s.current_bs_key, s1.current_bs_key, s2.current_bs_key}) == 3

    def test_integrity_round_trip(self):
        s = handover_key_exchange(derive_key_hierarchy(b"\x02" * 32))
        tag = integrity_tag(s, b"msg")
        assert verify_integrity(s, b"msg", tag)
        assert not verify_integrity(s, b"msh", tag)

    def test_desync_detected(self):
        rng = random.Random(9)
        for _ in range(100):
            net = handover_key_exchange(network_key_hierarchy(rng.randbytes(32)))
            stale = derive_key_hierarchy(net.k_amf)
            tag = integrity_tag(net, b"RRCReconfiguration")
            assert not verify_integrity(stale, b"RRCReconfiguration", tag)

    def test_mismatched_shared_params(self):
        base = derive_key_hierarchy(b"\x03" * 32)
        a, b = handover_key_exchange(base, b"PCI=1"), handover_key_exchange(base, b"PCI=2")
        assert a.k_gnb_star != b.k_gnb_star

    def test_empty_key(self):
        with pytest.raises(EmptyKey):
            derive_key_hierarchy(b"")
        with pytest.raises(EmptyKey):
            network_key_hierarchy(b"")
