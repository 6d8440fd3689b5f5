"""Threshold credentials on the toy curve.

A group manager draws a degree t-1 polynomial f, publishes Q = f(0) P and
hands each UE a share (x_i, f(x_i)) together with the public point
f(x_i) P.  Any t public points rebuild Q by Lagrange interpolation in the
exponent, while t-1 points do not.
"""

from grouphandover import (
    AggregateVerdict,
    PublicCredential,
    TOY,
    initialize_group,
    interpolate_in_exponent,
    verify_group_aggregate,
)

t = 3
issuer = initialize_group(TOY, t, rng_seed=2024)
params = issuer.params
print(f"curve {TOY.curve_id}, group order q = {TOY.q}, threshold t = {t}")
print(f"public commitment Q = {params.commitment_Q}")

shares = [issuer.issue_share(f"UE{i}") for i in range(5)]
for s in shares:
    print(f"  {s.ue_id}: x = {s.public_x:5d}  public point = {s.public_point}")

points = [(s.public_x, s.public_point) for s in shares]
print("\nrebuilding Q from public points only")
for m in (2, 3, 5):
    rebuilt = interpolate_in_exponent(points[:m], TOY)
    print(f"  {m} points -> {'matches Q' if rebuilt == params.commitment_Q else 'does not match'}")

creds = [s.public for s in shares]
print(f"\naggregate verdict, honest batch: {verify_group_aggregate(params, creds).value}")

tampered = list(creds)
c = tampered[1]
tampered[1] = PublicCredential(c.ue_id, c.public_x, c.public_point + TOY.generator)
verdict = verify_group_aggregate(params, tampered)
print(f"aggregate verdict, UE1 tampered: {verdict.value}")
assert verdict is AggregateVerdict.REJECT
print(f"aggregate verdict, two credentials: {verify_group_aggregate(params, creds[:2]).value}")
