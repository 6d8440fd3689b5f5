"""How the group scheme compares with one-by-one X2/Xn handover.

Prints handover time and packet counts as the batch grows, shows how a
fake base station desynchronises the 5G key chain, and sizes the UxNB
fleet for a congested cell.
"""

from grouphandover.baseline import (
    Category,
    derive_key_hierarchy,
    handover_key_exchange,
    integrity_tag,
    network_key_hierarchy,
    verify_integrity,
)
from grouphandover.sim import (
    Protocol,
    Scenario,
    capacity_plan,
    rule_of_thumb_uxnbs,
    run_scenario,
    seconds_str,
)

print(f"{'UEs':>5} {'LTE time (s)':>14} {'group time (s)':>15} {'LTE BS-BS':>10} {'group BS-BS':>12} {'UE-core':>8}")
for n in (1, 10, 50, 100, 500):
    lte = run_scenario(Scenario(Protocol.LTE, n))
    grp = run_scenario(Scenario(Protocol.GROUP, n))
    print(f"{n:>5} {seconds_str(lte.handover_time):>14} {seconds_str(grp.handover_time):>15} "
          f"{lte.packets[Category.BS_BS]:>10} {grp.packets[Category.BS_BS]:>12} {grp.packets[Category.UE_CORE]:>8}")

print("\nkey chain under a fake-BS handover")
k_amf = bytes(range(32))
ue, net = derive_key_hierarchy(k_amf), network_key_hierarchy(k_amf)
print(f"  chains agree before any handover: {ue.nodes() == net.nodes()}")
net = handover_key_exchange(net)  # the UE never sees this one
ue, net = handover_key_exchange(ue), handover_key_exchange(net)
tag = integrity_tag(net, b"RRCReconfiguration")
print(f"  NCC: UE {ue.ncc}, network {net.ncc}; integrity check passes: "
      f"{verify_integrity(ue, b'RRCReconfiguration', tag)}")

print("\nUxNBs needed (1.1 Mbps per UE, 100 Mbps terrestrial, 160 Mbps per UxNB)")
for n in (50, 100, 200, 300):
    print(f"  {n:>3} UEs: capacity basis {capacity_plan(n)}, rule of thumb {rule_of_thumb_uxnbs(n)}")
