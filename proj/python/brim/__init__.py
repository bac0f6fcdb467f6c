"""Exact Buchsbaum-Rim multiplicities of direct sums of cyclic modules.

Thin conveniences over the compiled core: big integers arrive from C++ as
decimal strings and verification reports as JSON strings; this layer turns
them into ints and dicts.
"""

import json

try:
    from . import _core  # installed layout: extension inside the package
except ImportError:  # pragma: no cover - build-tree layout
    import _core

MonomialIdeal = _core.MonomialIdeal
Module = _core.Module
parse_ideal = _core.parse_ideal
random_module = _core.random_module


def _module(arg, dim=2):
    if isinstance(arg, Module):
        return arg
    return Module(dim, list(arg))


def colength(ideal, dim=2):
    if isinstance(ideal, str):
        ideal = parse_ideal(ideal, dim)
    return int(_core.colength(ideal))


def hs(ideal, dim=2):
    if isinstance(ideal, str):
        ideal = parse_ideal(ideal, dim)
    return int(_core.hs_multiplicity(ideal))


def br(module, dim=2):
    return int(_core.br_multiplicity(_module(module, dim)))


def mixed(module, dim=2):
    table = _core.mixed_multiplicities(_module(module, dim))
    return {key: int(value) for key, value in table.items()}


def assoc(module, dim=2):
    return [int(v) for v in _core.associated_multiplicities(_module(module, dim))]


def lambda_value(module, p, dim=2):
    return int(_core.lambda_value(_module(module, dim), p))


def Lambda_value(module, p, q, dim=2):
    return int(_core.Lambda_value(_module(module, dim), p, q))


def _report(raw):
    return json.loads(raw)


def verify(identity, module, dim=2, **kwargs):
    """Run one identity check; returns the report as a dict."""
    C = _module(module, dim)
    if identity == "main":
        return _report(_core.verify_main(C))
    if identity == "last":
        return _report(_core.verify_last(C))
    if identity == "kirby-sum":
        return _report(_core.verify_kirby_sum(C))
    if identity == "nested":
        return _report(_core.verify_nested(C, kwargs.get("j", 0)))
    if identity == "corollary":
        return _report(_core.verify_corollary(C))
    if identity == "regions":
        return _report(_core.verify_regions(C, kwargs["p"], kwargs["q"]))
    if identity == "props":
        return _report(_core.verify_props(C, kwargs["p"], kwargs["q"]))
    raise ValueError(f"unknown identity: {identity}")


def conjecture(name, module, dim=2, **kwargs):
    """Probe an open question; the report's verdict is informational."""
    C = _module(module, dim)
    if name == "q43":
        return _report(_core.question_43(C, kwargs["k"]))
    if name == "q44":
        return _report(_core.question_44(C, kwargs["j"]))
    raise ValueError(f"unknown question: {name}")


__all__ = [
    "MonomialIdeal",
    "Module",
    "parse_ideal",
    "random_module",
    "colength",
    "hs",
    "br",
    "mixed",
    "assoc",
    "lambda_value",
    "Lambda_value",
    "verify",
    "conjecture",
]
