"""modcert: certifying decision engine for elliptic-curve modularity.

The package decides modularity of elliptic curves over Q and over real
quadratic fields (plus externally described totally real fields with
supplied local data) and emits machine-checkable certificates naming
every applied theorem and every verified or assumed hypothesis.
"""

__version__ = "0.1.0"

from .exact import INF, QuadElem, PrimeSlot, Rat, ff_point_count, prime_split, val_p, val_frak
from .model import BaseField, Curve, quadratic_twist, short_model_at
from .localred import (
    KodairaType,
    LocalInvariants,
    ReductionClass,
    classify_reduction,
    is_semistable,
    supersingular_j_set,
    tate,
)
from .inertia import InertiaDescriptor, kraus_descriptor, matrix_order_oracle, order_table
from .grouptheory import audit_borel, element_order, exceptional_threshold
from .galois import frobenius_irreducibility, irreducibility_status, isogeny_reducibility
from .certify import (
    Certificate,
    CertStep,
    ExternalCurveData,
    HypothesisRecord,
    certify,
    certify_at_7,
    find_semistabilizing_twist,
    local_modularity_analysis,
)
from .curvefile import CurveFile, CurveFileError, load_curve_file, parse_curve_file
from .sstest import SemistabilizationReport, semistabilization_report
