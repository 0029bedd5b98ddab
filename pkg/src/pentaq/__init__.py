"""Special-function library and verification harness for a family of
pentagon identities (five-term relations) and two gamma-function limits.

Layers:

- :mod:`pentaq.special_functions` — gamma, q-Pochhammer, hyperbolic gamma,
  dilogarithms, and the shared truncation policy.
- :mod:`pentaq.weyl_series` — exact series algebra in two q-commuting
  variables for the operator pentagon identity.
- :mod:`pentaq.kernels` — the four B kernels and balanced parameter sets.
- :mod:`pentaq.integrators` — real-line quadrature, unit-circle quadrature,
  and tail-controlled integer sums.
- :mod:`pentaq.identities` — LHS/RHS evaluators, verification reports, and
  the two limit studies.
- :mod:`pentaq.cli` — the ``pentaq`` command-line front end.
"""

from .special_functions import (
    ModularPair,
    Nome,
    TruncationPolicy,
    DEFAULT_POLICY,
    PoleError,
    ConvergenceError,
)
from .kernels import (
    BetaParams,
    GammaParams,
    HyperbolicParams,
    IndexParams,
)
from .identities import (
    IdentityId,
    LimitStudyResult,
    VerificationReport,
)

__version__ = "0.1.0"

__all__ = [
    "ModularPair",
    "Nome",
    "TruncationPolicy",
    "DEFAULT_POLICY",
    "PoleError",
    "ConvergenceError",
    "BetaParams",
    "GammaParams",
    "HyperbolicParams",
    "IndexParams",
    "IdentityId",
    "LimitStudyResult",
    "VerificationReport",
    "__version__",
]
