"""Krohn-Rhodes decomposition of finite transformation monoids via local divisors."""

from .constants import U2, BarMonoid, bar, group_with_constants_split, u_monoid, u_x_decompose
from .division import (
    CoveringCertificate,
    VerificationReport,
    Witness,
    compose_coverings,
    identity_certificate,
    is_cover,
    lift_wreath_division,
    verify_covering,
)
from .errors import (
    CertificateError,
    DimensionError,
    DomainError,
    FormatError,
    KrDecompError,
    ResourceError,
    WordError,
)
from .groups import composition_decomposition, regular_representation
from .localdiv import LocalDivisor, local_action_certificate, local_divisor
from .pipeline import (
    DecompositionNode,
    decompose_to_groups,
    factor_count_bound,
    krohn_rhodes,
    main_split,
)
from .tmonoid import (
    Dfa,
    MonoidAction,
    StateSet,
    TMonoid,
    full_transformation_monoid,
    generate,
    make_faithful,
    transition_monoid,
)
from .wreath import Factor, FactorSequence, ProductSpace, WreathElement

__version__ = "0.1.0"
