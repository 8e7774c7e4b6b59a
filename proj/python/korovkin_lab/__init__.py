"""Choquet-type operator lab: grid functions, capacities, operators, checks."""

try:
    from ._core import *  # noqa: F401,F403
    from ._core import __doc__ as _core_doc
except ImportError:  # in-tree builds keep _core next to the build dir
    from _core import *  # noqa: F401,F403
    from _core import __doc__ as _core_doc

__all__ = [
    "Grid",
    "GridFunction",
    "FunctionSpec",
    "Capacity",
    "OperatorSpec",
    "PropertyReport",
    "ConvergenceRow",
    "ConvergenceReport",
    "HarnessResult",
    "ParseError",
    "sample",
    "choquet_integral",
    "apply_operator",
    "check_properties",
    "korovkin_verdict",
    "run_cli",
]
