"""Cyclotomic hemisystems ((q+1)/2-ovoids) of the elliptic quadric Q^-(5, q), q = 3 (mod 4)."""

__version__ = "0.1.0"

from .charsums import MultChar, gauss_sum, run_charsum_suite  # noqa: E402
from .conic import ConicData, build_conic, check_conic  # noqa: E402
from .construction import (  # noqa: E402
    HemisystemDescriptor,
    PointSet,
    build_descriptor,
    build_point_set,
    membership_D,
)
from .errors import *  # noqa: E402,F401,F403
from .field import FElem, FieldCtx, FieldParams, Level, build_field, field_for_q  # noqa: E402
from .geometry import QuadricGeometry  # noqa: E402
from .report import CheckResult, VerificationReport  # noqa: E402
from .verify import verify_all  # noqa: E402

__all__ = [
    "CheckResult",
    "ConicData",
    "FElem",
    "FieldCtx",
    "FieldParams",
    "HemisystemDescriptor",
    "Level",
    "MultChar",
    "PointSet",
    "QuadricGeometry",
    "VerificationReport",
    "build_conic",
    "build_descriptor",
    "build_field",
    "build_point_set",
    "check_conic",
    "field_for_q",
    "gauss_sum",
    "membership_D",
    "run_charsum_suite",
    "verify_all",
]
