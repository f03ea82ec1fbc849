"""Arithmetic volumes, valuation images and Okounkov bodies."""

import json

from ._core import (
    ArithvolError,
    Bundle,
    comparison_constant,
    hzero_band,
    hzero_exact,
    intersection_number,
    nu,
    section_rank,
    sup_norm,
    volume_closed_form,
)
from . import _core

__all__ = [
    "ArithvolError",
    "Bundle",
    "comparison_constant",
    "convex_hull",
    "corollary_checks",
    "enumerate_effective",
    "hull_svg",
    "hzero_band",
    "hzero_exact",
    "intersection_number",
    "nu",
    "okounkov_run",
    "run_theorem_a",
    "section_rank",
    "sup_norm",
    "valuation_image",
    "verify_compatibility",
    "verify_fujita",
    "verify_reduction",
    "verify_rescaling",
    "volume_closed_form",
]


def enumerate_effective(bundle, m, threads=0, budget=2_000_000_000):
    return json.loads(_core.enumerate_effective_json(bundle, m, threads, budget))


def valuation_image(bundle, m, p, alpha=0, at_infinity=False, line=(0, 0, 1), point=(1, 0, 0), mode="auto"):
    return json.loads(_core.valuation_image_json(bundle, m, p, alpha, at_infinity, list(line), list(point), mode))


def okounkov_run(bundle, schedule, p, alpha=0, at_infinity=False, mode="auto"):
    return json.loads(_core.okounkov_run_json(bundle, list(schedule), p, alpha, at_infinity, mode))


def convex_hull(points):
    """Hull of points given as ints or "num/den" strings."""
    return json.loads(_core.convex_hull_json([[str(x) for x in p] for p in points]))


def hull_svg(polytope):
    return _core.hull_svg(json.dumps(polytope))


def corollary_checks(b1, b2):
    return json.loads(_core.corollary_checks_json(b1, b2))


def run_theorem_a(config):
    """Returns (csv_text, report_dict) for a config dict."""
    csv, report = _core.run_theorem_a(json.dumps(config))
    return csv, json.loads(report)


def verify_rescaling(bundle, m, alphas):
    """alphas: list of (q, n) meaning q + log n, q an int or "num/den"."""
    return json.loads(_core.verify_rescaling_json(bundle, m, [(str(q), n) for q, n in alphas]))


def verify_reduction(bundle, m, n):
    return json.loads(_core.verify_reduction_json(bundle, m, n))


def verify_compatibility(bundle, m, p, alpha=0):
    return json.loads(_core.verify_compatibility_json(bundle, m, p, alpha))


def verify_fujita(bundle, p, alpha, n_list, k_max):
    return json.loads(_core.verify_fujita_json(bundle, p, alpha, list(n_list), k_max))
