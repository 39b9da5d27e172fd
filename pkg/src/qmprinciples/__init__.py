"""Descent-type variational and fixed-point principles on finite quasi-metric
spaces carrying a preorder, computed in exact arithmetic and cross-checked by
brute force."""

from .errors import *  # noqa: F401,F403
from .fileformat import dumps, loads, parse, serialize
from .generate import GenParams, corpus, gen_instance, gen_phi, gen_preorder, gen_space
from .lab import (
    build_witness,
    check_equivalences,
    metric_specialization_suite,
    oracle_wek,
    witness_noncompleteness_report,
)
from .picard import (
    caristi_multi,
    caristi_single,
    full_ekeland,
    picard_iterate,
    t1_strengthen,
    takahashi,
    weak_ekeland,
)
from .preorder import (
    Instance,
    Phi,
    Preorder,
    audit_phi_order,
    audit_s_properties,
    check_d_ord,
    closure_of_pairs,
    conjugate_specialization_preorder,
    discrete_preorder,
    is_increasingly_lsc,
    phi_leq,
    s_set,
    specialization_preorder,
    total_preorder,
    validate_preorder,
)
from .qspace import (
    INF,
    QSpace,
    SeqSample,
    classify_cauchy,
    closure_of_point,
    conjugate,
    is_t1,
    subsequence_limit_check,
    symmetrize,
    validate_space,
)

__version__ = "0.1.0"
