"""Plain-object (JSON-ready) encodings for every value the toolkit emits.

Conventions:

* exact rationals are ``[numerator, denominator]`` pairs;
* permutations are image lists;
* group elements are dicts tagged with their ``family``;
* high-precision floats are decimal strings (30 significant digits);
* wall-clock fields (``elapsed_s``) are excluded everywhere so that equal
  computations serialize to identical bytes.

Every ``*_to_obj`` has a ``*_from_obj`` inverse; round-tripping re-validates
the data rather than trusting it.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

import mpmath

from . import approx as approxmod
from . import conjsearch as conjmod
from . import groups as groupsmod
from . import heuristic as heurmod
from . import higman as higmod
from .groups import (
    BSElem,
    FreeWord,
    GenWord,
    HeisElem,
    WreathElem,
    Z2Elem,
)
from .perm import Perm

__all__ = [
    "fraction_to_obj", "fraction_from_obj",
    "perm_to_obj", "perm_from_obj",
    "genword_to_obj", "genword_from_obj",
    "elem_to_obj", "elem_from_obj",
    "spec_to_obj", "spec_from_obj",
    "problem_to_obj", "problem_from_obj",
    "verify_report_to_obj", "verify_report_from_obj",
    "search_report_to_obj", "search_report_from_obj",
    "alignment_report_to_obj",
    "poly_result_to_obj",
    "heis_fixed_to_obj",
    "action_table_to_obj", "action_table_from_obj",
    "relation_report_to_obj",
    "heuristic_report_to_obj",
    "MPF_DIGITS",
]

MPF_DIGITS = 30


# ---------------------------------------------------------------------------
# scalars
# ---------------------------------------------------------------------------

def fraction_to_obj(fr: Fraction) -> list:
    return [fr.numerator, fr.denominator]


def fraction_from_obj(obj) -> Fraction:
    num, den = obj
    return Fraction(int(num), int(den))


def _opt(fn, value):
    return None if value is None else fn(value)


def mpf_to_obj(x) -> str:
    with mpmath.workprec(heurmod.PRECISION_BITS):
        return mpmath.nstr(x, MPF_DIGITS)


def mpf_from_obj(obj: str):
    with mpmath.workprec(heurmod.PRECISION_BITS):
        return mpmath.mpf(obj)


# ---------------------------------------------------------------------------
# permutations and words
# ---------------------------------------------------------------------------

def perm_to_obj(p: Perm) -> list[int]:
    return p.tolist()


def perm_from_obj(obj) -> Perm:
    return Perm([int(v) for v in obj])


def genword_to_obj(w: GenWord) -> list:
    return [[gen, exp] for gen, exp in w.letters]


def genword_from_obj(obj) -> GenWord:
    return GenWord(tuple((str(g), int(e)) for g, e in obj))


# ---------------------------------------------------------------------------
# group elements, tagged by family
# ---------------------------------------------------------------------------

def elem_to_obj(x) -> dict:
    if isinstance(x, Z2Elem):
        return {"family": "z2", "lam": x.lam, "mu": x.mu}
    if isinstance(x, HeisElem):
        return {"family": "heis", "lam": x.lam, "mu": x.mu, "nu": x.nu}
    if isinstance(x, BSElem):
        return {"family": "bs", "m": x.m, "num": x.num,
                "den_exp": x.den_exp, "pow": x.pow}
    if isinstance(x, WreathElem):
        return {"family": "zwrz",
                "poly": [[e, c] for e, c in x.poly], "pow": x.pow}
    if isinstance(x, FreeWord):
        return {"family": "metab",
                "word": [[g, e] for g, e in x.word.letters]}
    raise TypeError(f"not a group element: {x!r}")


def elem_from_obj(obj: dict):
    family = obj["family"]
    if family == "z2":
        return Z2Elem(int(obj["lam"]), int(obj["mu"]))
    if family == "heis":
        return HeisElem(int(obj["lam"]), int(obj["mu"]), int(obj["nu"]))
    if family == "bs":
        return BSElem(int(obj["m"]), int(obj["num"]),
                      int(obj["den_exp"]), int(obj["pow"]))
    if family == "zwrz":
        return groupsmod._wreath_make(
            {int(e): int(c) for e, c in obj["poly"]}, int(obj["pow"]))
    if family == "metab":
        return FreeWord(GenWord(tuple((str(g), int(e)) for g, e in obj["word"])))
    raise ValueError(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# approximation specs
# ---------------------------------------------------------------------------

def spec_to_obj(spec: approxmod.ApproxSpec) -> dict:
    out: dict[str, Any] = {"family": spec.family}
    out.update(spec.params())
    out["psi_a"] = perm_to_obj(spec.psi_a)
    out["psi_b"] = perm_to_obj(spec.psi_b)
    return out


def spec_from_obj(obj: dict) -> approxmod.ApproxSpec:
    """Rebuild from parameters, then insist the stored images agree."""
    spec = approxmod.make_approx(
        obj["family"], int(obj["n"]),
        p=_opt(int, obj.get("p")),
        q=_opt(int, obj.get("q")),
        m=_opt(int, obj.get("m")),
    )
    amplified_to = obj.get("amplified_to")
    if amplified_to is not None:
        spec = approxmod.amplify_spec(spec, int(amplified_to))
    for name in ("psi_a", "psi_b"):
        stored = obj.get(name)
        if stored is not None and perm_from_obj(stored) != getattr(spec, name):
            raise ValueError(f"stored {name} disagrees with parameters")
    return spec


# ---------------------------------------------------------------------------
# conjugation search
# ---------------------------------------------------------------------------

def problem_to_obj(prob: conjmod.ConjProblem) -> dict:
    return {
        "n": prob.n,
        "k": prob.k,
        "alpha": perm_to_obj(prob.alpha),
        "beta": perm_to_obj(prob.beta),
        "orientation": prob.orientation,
    }


def problem_from_obj(obj: dict) -> conjmod.ConjProblem:
    prob = conjmod.ConjProblem(
        int(obj["n"]), int(obj["k"]),
        perm_from_obj(obj["alpha"]), perm_from_obj(obj["beta"]),
    )
    orientation = obj.get("orientation")
    if orientation is not None and orientation != prob.orientation:
        raise ValueError(f"unsupported orientation {orientation!r}")
    return prob


def search_report_to_obj(rep: conjmod.SearchReport) -> dict:
    # elapsed_s deliberately left out: it would break byte-reproducibility
    return {
        "problem": problem_to_obj(rep.problem),
        "algorithm": rep.algorithm,
        "seed": rep.seed,
        "f": perm_to_obj(rep.f),
        "order_of_f": rep.order_of_f,
        "agreement_count": rep.agreement_count,
        "agreement_fraction": fraction_to_obj(rep.agreement_fraction),
        "iterations": rep.iterations,
    }


def search_report_from_obj(obj: dict) -> conjmod.SearchReport:
    prob = problem_from_obj(obj["problem"])
    f = perm_from_obj(obj["f"])
    count = conjmod.agreement(f, prob)
    if count != int(obj["agreement_count"]):
        raise ValueError("agreement_count disagrees with f")
    return conjmod.SearchReport(
        problem=prob,
        algorithm=str(obj["algorithm"]),
        seed=_opt(int, obj.get("seed")),
        f=f,
        order_of_f=int(obj["order_of_f"]),
        agreement_count=count,
        agreement_fraction=fraction_from_obj(obj["agreement_fraction"]),
        iterations=int(obj["iterations"]),
        elapsed_s=0.0,
    )


def alignment_report_to_obj(rep: conjmod.AlignmentReport) -> dict:
    return {
        "tau": perm_to_obj(rep.tau),
        "per_element": [
            {"element": elem_to_obj(g), "distance": fraction_to_obj(d)}
            for g, d in rep.per_element
        ],
        "max_distance": fraction_to_obj(rep.max_distance),
        "iterations": rep.iterations,
    }


# ---------------------------------------------------------------------------
# verification and diagnostics
# ---------------------------------------------------------------------------

def verify_report_to_obj(rep: approxmod.VerifyReport) -> dict:
    return {
        "family": rep.family,
        "npoints": rep.npoints,
        "delta": fraction_to_obj(rep.delta),
        "worst_hom_defect": fraction_to_obj(rep.worst_hom_defect),
        "hom_witness": _opt(
            lambda w: [elem_to_obj(w[0]), elem_to_obj(w[1])], rep.hom_witness),
        "worst_id_closeness": _opt(fraction_to_obj, rep.worst_id_closeness),
        "id_witness": _opt(elem_to_obj, rep.id_witness),
        "passed": rep.passed,
        "elements_checked": rep.elements_checked,
        "pairs_checked": rep.pairs_checked,
    }


def verify_report_from_obj(obj: dict) -> approxmod.VerifyReport:
    witness = obj.get("hom_witness")
    return approxmod.VerifyReport(
        family=str(obj["family"]),
        npoints=int(obj["npoints"]),
        delta=fraction_from_obj(obj["delta"]),
        worst_hom_defect=fraction_from_obj(obj["worst_hom_defect"]),
        hom_witness=None if witness is None else (
            elem_from_obj(witness[0]), elem_from_obj(witness[1])),
        worst_id_closeness=_opt(fraction_from_obj, obj.get("worst_id_closeness")),
        id_witness=_opt(elem_from_obj, obj.get("id_witness")),
        passed=bool(obj["passed"]),
        elements_checked=int(obj["elements_checked"]),
        pairs_checked=int(obj["pairs_checked"]),
    )


def poly_result_to_obj(res: approxmod.PolyConditionResult) -> dict:
    return {
        "ok": res.ok,
        "witness": _opt(list, res.witness),
        "witness_value": res.witness_value,
        "mode": res.mode,
    }


def heis_fixed_to_obj(rep: approxmod.HeisFixedReport) -> dict:
    return {
        "n": rep.n, "lam": rep.lam, "mu": rep.mu, "nu": rep.nu,
        "count": rep.count, "bound": rep.bound, "bound_ok": rep.bound_ok,
    }


# ---------------------------------------------------------------------------
# finite actions
# ---------------------------------------------------------------------------

def action_table_to_obj(act: higmod.ActionTable) -> dict:
    return {
        "p": act.p,
        "f_table": list(act.f_table),
        "lambda_table": list(act.lambda_table),
        "perms": {name: perm_to_obj(g) for name, g in act.perms.items()},
    }


def action_table_from_obj(obj: dict) -> higmod.ActionTable:
    act = higmod.make_action(
        int(obj["p"]),
        [int(v) for v in obj["f_table"]],
        [int(v) for v in obj["lambda_table"]],
    )
    stored = obj.get("perms")
    if stored is not None:
        for name, images in stored.items():
            if perm_from_obj(images) != act.perms[name]:
                raise ValueError(f"stored perm {name!r} disagrees with tables")
    return act


def relation_report_to_obj(rep: higmod.RelationReport) -> dict:
    return {
        "checks": [
            {"name": c.name, "ok": c.ok,
             "witness": _opt(list, c.witness)}
            for c in rep.checks
        ],
        "t_order_ok": rep.t_order_ok,
        "t_cycle": _opt(list, rep.t_cycle),
        "passed": rep.passed,
    }


# ---------------------------------------------------------------------------
# counting heuristic
# ---------------------------------------------------------------------------

def heuristic_report_to_obj(rep: heurmod.HeuristicReport) -> dict:
    return {
        "n": rep.n,
        "k": rep.k,
        "eps": fraction_to_obj(rep.eps),
        "eps_prime": fraction_to_obj(rep.eps_prime),
        "count": rep.count,
        "log_P": mpf_to_obj(rep.log_P),
        "log_K": mpf_to_obj(rep.log_K),
        "log_PK": mpf_to_obj(rep.log_PK),
        "log_factorial": mpf_to_obj(rep.log_factorial),
        "asymptotic_ratio": mpf_to_obj(rep.asymptotic_ratio),
        "pk_model_coeff": fraction_to_obj(rep.pk_model_coeff),
        "log_PK_model": mpf_to_obj(rep.log_PK_model),
    }
