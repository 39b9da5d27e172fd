"""Report rendering with a stable field order.

Reports are plain nested dicts built by the ``*_report`` helpers below.  The
text form is ``name: value`` lines nested by two-space indentation; the machine
form is JSON with the same keys in the same order.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .lab import EquivalenceReport, MetricReport, WitnessReport
from .picard import (
    CaristiResult,
    EkelandCertificate,
    FullEkelandCertificate,
    PicardRun,
    T1Certificate,
    TakahashiReport,
)
from .preorder import Instance, audit_phi_order, audit_s_properties, standing_report
from .qspace import INF, is_t1


def _scalar(v):
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, Fraction):
        return str(v)
    if v == INF:
        return "inf"
    return v


def plain(obj):
    """Convert to JSON-compatible values (Fractions to ``p/q`` strings)."""
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    return _scalar(obj)


def render_text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    for key, value in obj.items():
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.append(render_text(value, indent + 1))
        elif isinstance(value, list):
            body = " ".join(_text_scalar(v) for v in value) if value else "[]"
            lines.append(f"{pad}{key}: {body}")
        else:
            lines.append(f"{pad}{key}: {_text_scalar(value)}")
    return "\n".join(line for line in lines if line)


def _text_scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "none"
    if isinstance(v, list):
        return "[" + " ".join(_text_scalar(x) for x in v) + "]"
    return str(v)


def render(obj: dict, fmt: str = "text") -> str:
    obj = plain(obj)
    if fmt == "machine":
        return json.dumps(obj, indent=2) + "\n"
    return render_text(obj) + "\n"


def _labels(inst: Instance, pts) -> list[str]:
    return [inst.label(x) for x in sorted(pts)]


def audit_report(inst: Instance) -> dict:
    st = standing_report(inst)
    phi_order = audit_phi_order(inst)
    s_props = audit_s_properties(inst)

    def wit(w):
        return None if w is None else _labels_ordered(inst, w)

    return {
        "points": inst.n,
        "t1": is_t1(inst.space),
        "symmetric": inst.space.is_symmetric(),
        "audits": {
            "d_ord": st["d_ord"],
            "d_ord_witness": wit(st["d_ord_witness"]),
            "inc_lsc": st["inc_lsc"],
            "inc_lsc_witness": wit(st["inc_lsc_witness"]),
            "proper": st["proper"],
        },
        "phi_order": {name: name not in phi_order.failures for name in phi_order.checks},
        "s_properties": {name: name not in s_props.failures for name in s_props.checks},
        "ok": inst.audits.ok and phi_order.ok and s_props.ok,
    }


def _labels_ordered(inst: Instance, pts) -> list[str]:
    return [inst.label(x) for x in pts]


def run_report(inst: Instance, run: PicardRun) -> dict:
    return {
        "start": inst.label(run.start),
        "termination": run.termination,
        "steps": len(run.steps) - 1,
        "trace": {
            str(k): {
                "point": inst.label(st.point),
                "phi": st.phi_value,
                "J": st.j_value,
                "S": _labels(inst, st.s_set),
            }
            for k, st in enumerate(run.steps)
        },
        "z": inst.label(run.z),
    }


def wek_report(inst: Instance, cert: EkelandCertificate) -> dict:
    out = {
        "certificate": "weak-ekeland",
        "z": inst.label(cert.z),
        "phi_z": inst.phi[cert.z],
        "S_z": _labels(inst, cert.s_of_z.members),
        "J_z": cert.s_of_z.j_value,
        "checks": {
            "phi_constant_on_Sz": cert.phi_constant_on_Sz,
            "Sy_in_closure_y": all(cert.Sy_in_closure_y.values()),
            "strict_outside": cert.strict_outside,
        },
    }
    if cert.run is not None:
        out["run"] = run_report(inst, cert.run)
    return out


def full_ekeland_report(inst: Instance, cert: FullEkelandCertificate) -> dict:
    return {
        "certificate": "full-ekeland",
        "z": inst.label(cert.z),
        "x0": inst.label(cert.x0),
        "epsilon": cert.epsilon,
        "lambda": cert.lam,
        "gamma": cert.gamma,
        "X0": _labels(inst, cert.x0_subspace),
        "S_gamma_z": _labels(inst, cert.s_gamma_of_z),
        "clauses": {
            "i_decrease": cert.clauses[0],
            "ii_distance": cert.clauses[1],
            "iii_constant": cert.clauses[2],
            "iv_strict": cert.clauses[3],
        },
        "run": run_report(inst, cert.run),
    }


def takahashi_report(inst: Instance, rep: TakahashiReport) -> dict:
    return {
        "certificate": "takahashi",
        "variant": rep.variant,
        "hypothesis_ok": rep.hypothesis_ok,
        "violation": None if rep.violation is None else inst.label(rep.violation),
        "minimizer": None if rep.minimizer is None else inst.label(rep.minimizer),
        "min_attained": rep.min_attained,
        "oracle_minimizers": _labels(inst, rep.oracle_minimizers),
    }


def caristi_report(inst: Instance, res: CaristiResult) -> dict:
    return {
        "certificate": "caristi-" + res.map_kind,
        "feasible": res.feasible,
        "z": inst.label(res.z),
        "phi_equal": res.phi_equal,
        "in_closure": res.in_closure,
    }


def t1_report(inst: Instance, cert: T1Certificate) -> dict:
    return {
        "kind": cert.kind,
        "z": None if cert.z is None else inst.label(cert.z),
        "checks": dict(cert.checks),
    }


def equivalence_report(inst: Instance, rep: EquivalenceReport) -> dict:
    return {
        "wEk_holds": rep.wEk_holds,
        "wEk_points": _labels(inst, rep.wEk_points),
        "tak_negation": rep.tak_negation,
        "adversarial_T": None if rep.adversarial_T is None
        else {inst.label(x): inst.label(rep.adversarial_T[x]) for x in sorted(rep.checked)},
        "caristi_consistent": rep.caristi_consistent,
        "maps_checked": rep.maps_checked,
    }


def witness_report(inst: Instance, rep: WitnessReport) -> dict:
    return {
        "N": rep.N,
        "modulus": {
            str(e): {"n_eps": n, "bound": rep.modulus_bounds[e]} for e, n in rep.modulus.items()
        },
        "modulus_ok": rep.modulus_ok,
        "step_bound_ok": rep.step_bound_ok,
        "limit_candidates": _labels(inst, rep.limit_candidates),
        "subsequential_candidates": _labels(inst, rep.subsequential_candidates),
        "strict_successors": all(rep.strict_successors.values()),
        "s_tails_ok": rep.s_tails_ok,
        "phi_decreasing": rep.phi_decreasing,
        "sublevels_ok": rep.sublevels_ok,
        "telescoping_ok": rep.telescoping_ok,
        "picard_termination": rep.picard_termination,
        "ok": rep.ok,
        "conclusion": rep.conclusion,
    }


def metric_report(rep: MetricReport) -> dict:
    return {
        "r_equals_s": rep.r_equals_s,
        "wek_R_singleton": rep.wek_R_singleton,
        "takahashi_forms_agree": rep.takahashi_forms_agree,
        "caristi_fixed_points": rep.caristi_fixed_points,
        "maps_checked": rep.maps_checked,
        "ok": rep.ok,
    }
