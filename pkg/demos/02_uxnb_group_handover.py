"""An aerial base station joins the cell and takes over fifty UEs at once.

The terrestrial BS checks the UxNB credential and ships f encrypted under
a key only the UxNB's private share can rebuild.  With f in hand the UxNB
admits the whole batch in one comparison; one bad credential sends it to
per-UE checks, which single out the culprit.
"""

import random

from grouphandover import (
    BaseStationState,
    PublicCredential,
    Role,
    TOY,
    authenticate_uxnb,
    bs_handle_service_request,
    group_handover,
    initialize_group,
    receive_secret_function,
    release_ues,
    ue_send_service_request,
)

rng = random.Random(7)
issuer = initialize_group(TOY, 5, rng_seed=7)
uxnb_share = issuer.issue_share("UxNB-1", uxnb=True)
ues = [issuer.issue_share(f"UE{i}") for i in range(50)]

terrestrial = BaseStationState("gNB", Role.TERRESTRIAL, issuer.params, secret_fn=issuer.polynomial)
terrestrial.served_ues = {s.ue_id: s.public_x for s in ues}
uxnb = BaseStationState("UxNB-1", Role.UXNB, issuer.params, own_share=uxnb_share)

payload = authenticate_uxnb(terrestrial, uxnb_share.public, rng)
receive_secret_function(uxnb, payload)
print(f"UxNB-1 admitted; f arrived as {len(payload.ciphertext)} bytes of ciphertext")

creds = [s.public for s in ues]
bad = creds[17]
creds[17] = PublicCredential(bad.ue_id, bad.public_x, bad.public_point + TOY.generator)

result = group_handover(uxnb, creds)
print(f"aggregate hit: {result.aggregate_hit}; per-UE checks run: {result.single_checks}")
print(f"accepted {len(result.accepted)} UEs, rejected {list(result.rejected)}")
release_ues(terrestrial, result)
print(f"gNB still serves: {sorted(terrestrial.served_ues)}")

print("\nservice traffic after handover")
req = ue_send_service_request(ues[3], b"GET /status", rng)
print(f"  UE3 request decrypted by UxNB: {bs_handle_service_request(uxnb, req)!r}")
req = ue_send_service_request(ues[17], b"GET /status", rng)
print(f"  UE17 request (never admitted): {bs_handle_service_request(uxnb, req)!r}")
