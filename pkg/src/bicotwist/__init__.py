"""Exact verification of bicovariant bimodules, their braidings and metrics, and 2-cocycle twists.

All arithmetic takes place in cyclotomic fields, so every identity is checked with
zero tolerance.
"""

from __future__ import annotations

import json
from importlib import resources

from .bicovariant import BicovBimodule, YDModule, build_bimodule, tensor_product, verify_bicovariance, verify_yd
from .braiding import Braiding, construct_braiding, verify_braiding
from .hopf import HopfAlgebra, builtin_group, function_algebra, group_algebra, verify_hopf
from .instances import InstanceError, InstanceSpec, build, builtin, parse_instance, serialize, validate
from .linalg import Matrix, kernel, rank, solve
from .metric import Metric, check_metric, enumerate_biinvariant
from .report import Check, Report, VerificationError
from .scalars import Cyclotomic, field_arithmetic, root_of_unity
from .suites import run_suite
from .twist import Cocycle, metric_twist, sigma_twist, twist_algebra, twist_bimodule, verify_cocycle, xi_maps

__version__ = "0.1.0"


def report_schema() -> dict:
    """The JSON schema that every ``--format json`` report satisfies."""
    return json.loads(resources.files(__name__).joinpath("report.schema.json").read_text(encoding="utf-8"))


__all__ = [
    "BicovBimodule", "Braiding", "Check", "Cocycle", "Cyclotomic", "HopfAlgebra", "InstanceError",
    "InstanceSpec", "Matrix", "Metric", "Report", "VerificationError", "YDModule", "build", "build_bimodule",
    "builtin", "builtin_group", "check_metric", "construct_braiding", "enumerate_biinvariant",
    "field_arithmetic", "function_algebra", "group_algebra", "kernel", "metric_twist", "parse_instance",
    "rank", "report_schema", "root_of_unity", "run_suite", "serialize", "sigma_twist", "solve",
    "tensor_product", "twist_algebra", "twist_bimodule", "validate", "verify_bicovariance",
    "verify_braiding", "verify_cocycle", "verify_hopf", "verify_yd", "xi_maps",
]
