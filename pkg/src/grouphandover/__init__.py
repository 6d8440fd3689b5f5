"""Threshold group authentication and group handover for drone-mounted base stations."""

__version__ = "0.1.0"

from .auth import (
    AggregateVerdict,
    GroupParams,
    Issuer,
    KeyShare,
    PublicCredential,
    initialize_group,
    verify_credential_gm,
    verify_group_aggregate,
)
from .groups import P256, TOY, GroupDescriptor, Point, get_group
from .handover import (
    BaseStationState,
    EncryptedPayload,
    GroupResult,
    Role,
    ServiceRequest,
    authenticate_uxnb,
    bs_handle_service_request,
    derive_symmetric_key,
    group_handover,
    receive_secret_function,
    release_ues,
    ue_send_service_request,
    verify_single_ue,
)
from .shamir import (
    SecretPolynomial,
    evaluate_polynomial,
    hash_to_digest,
    interpolate_in_exponent,
    lagrange_coefficient,
)
