"""Odd values of tau_{2k}(n) for the level-1 eigenforms of weight 12..26."""

from ._core import (
    certify,
    dset,
    rule_out,
    solve,
    supported_weights,
    tau,
    theorem,
    verify,
)

__all__ = [
    "certify",
    "dset",
    "rule_out",
    "solve",
    "supported_weights",
    "tau",
    "theorem",
    "verify",
]
