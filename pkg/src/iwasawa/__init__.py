"""Exact p-adic arithmetic, the Iwasawa algebra, and the Kubota-Leopoldt
p-adic L-function built three independent ways (Stickelberger elements,
elementary Kummer-congruence limits, Coleman series), with cross-checks."""

from .padic import PadicNumber, decompose_unit, padic_binomial, pexp, plog, teichmuller, unit_power
from .exactq import BernoulliCache, bernoulli, bernoulli_poly, irregular_indices, zeta_neg
from .iwaseries import DistinguishedFactorization, IndeterminateWithinTruncation, TruncatedSeries
from .characters import DirichletCharacter, gen_bernoulli, teichmuller_char
from .group_algebra import GroupRingElement, PadicCharSpec, evaluate_char, stickelberger
from .lambda_modules import ElementaryModule, growth_sequence, invariants

__all__ = [
    "PadicNumber",
    "decompose_unit",
    "padic_binomial",
    "pexp",
    "plog",
    "teichmuller",
    "unit_power",
    "BernoulliCache",
    "bernoulli",
    "bernoulli_poly",
    "irregular_indices",
    "zeta_neg",
    "DistinguishedFactorization",
    "IndeterminateWithinTruncation",
    "TruncatedSeries",
    "DirichletCharacter",
    "gen_bernoulli",
    "teichmuller_char",
    "GroupRingElement",
    "PadicCharSpec",
    "evaluate_char",
    "stickelberger",
    "ElementaryModule",
    "growth_sequence",
    "invariants",
]
