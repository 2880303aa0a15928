"""Exact pattern densities, perturbation derivatives and non-forcing certificates."""

import json
from fractions import Fraction

from . import _core
from ._core import ParseError, classify, enumerate_allone, enumerate_zerocombo

__version__ = _core.version()

__all__ = [
    "ParseError",
    "certify",
    "check_evidence",
    "classify",
    "density",
    "enumerate_allone",
    "enumerate_zerocombo",
    "exceptional_facts",
    "exceptional_witness",
    "gradient",
    "h_value",
    "hessian",
    "mc_pattern_counts",
    "pattern_density",
    "reproduce",
    "uniform_permuton",
]


def _frac(s):
    return Fraction(s)


def _permuton_json(permuton):
    if isinstance(permuton, str):
        return permuton
    if "A" in permuton:
        permuton = dict(permuton, A=[[str(v) for v in row] for row in permuton["A"]])
    if "weights" in permuton:
        permuton = dict(permuton, weights=[str(w) for w in permuton["weights"]])
    return json.dumps(permuton)


def pattern_density(sigma, pi):
    return _frac(_core.pattern_density(sigma, pi))


def density(sigma, permuton):
    """Exact density of sigma in a step permuton given as {"k", "A"} or {"perms", "weights"}."""
    return _frac(_core.density(sigma, _permuton_json(permuton)))


def uniform_permuton(k):
    return json.loads(_core.uniform_permuton(k))


def h_value(sigma, k, x):
    return _frac(_core.h_value(sigma, k, [str(v) for v in x]))


def gradient(sigma, k):
    return [_frac(v) for v in json.loads(_core.gradient(sigma, k))]


def hessian(sigma, k):
    return [[_frac(v) for v in row] for row in json.loads(_core.hessian(sigma, k))]


def certify(quad, n=0, alpha=()):
    """Evidence as a dict; n=0 searches n in 4..7."""
    return json.loads(_core.certify(quad, n, [str(a) for a in alpha]))


def check_evidence(evidence):
    return _core.check_evidence(json.dumps(evidence))


def exceptional_facts(case_id):
    return json.loads(_core.exceptional_facts(case_id))


def exceptional_witness(case_id):
    return json.loads(_core.exceptional_witness(case_id))


def mc_pattern_counts(permuton, m, trials, seed):
    return _core.mc_pattern_counts(_permuton_json(permuton), m, trials, seed)


def reproduce(only=(), mc_trials=0):
    return json.loads(_core.reproduce(list(only), mc_trials))
