"""Python front end for the oredual C++ core.

Systems are plain dicts in the SystemDoc layout
{"vars", "params", "unknowns", "equations", "labels"}.
"""

import json

from . import _core
from ._core import BudgetExceeded, OredualError

__all__ = [
    "BudgetExceeded",
    "OredualError",
    "adjoint",
    "compatibility_conditions",
    "differential_rank",
    "fixture",
    "fixture_names",
    "localize_parametrize",
    "modules_equal",
    "parametrize",
    "torsion_test",
]


def _doc(system):
    return system if isinstance(system, str) else json.dumps(system)


def _str_values(assume):
    return {k: str(v) for k, v in (assume or {}).items()}


def fixture_names():
    return _core.fixture_names()


def fixture(name):
    return json.loads(_core.fixture(name))


def adjoint(system):
    return json.loads(_core.adjoint(_doc(system)))


def compatibility_conditions(system, budget=-1, assume=None):
    return json.loads(_core.compatibility_conditions(_doc(system), budget, _str_values(assume)))


def differential_rank(system, budget=-1):
    return _core.differential_rank(_doc(system), budget)


def torsion_test(system, budget=-1, assume=None):
    """Five-step double-duality test; returns the report as a dict.

    report["verdict"] is "torsion-free", "torsion" or "unknown" and
    report["text"] holds the rendered five boxes.
    """
    return json.loads(_core.torsion_test(_doc(system), budget, _str_values(assume)))


def parametrize(system, budget=-1):
    return json.loads(_core.parametrize(_doc(system), budget))


def localize_parametrize(system):
    return json.loads(_core.localize_parametrize(_doc(system)))


def modules_equal(a, b):
    return _core.modules_equal(_doc(a), _doc(b))
