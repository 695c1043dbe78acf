"""Bundled instance files exercising every engine regime.

z3-trivial          field coefficients, two commuting variables
z4-regular          one variable over a ring with zero divisors
z6-commutative      two variables; large enough to trip the search guards
z2xz2-swap          nontrivial sigma, the classic compatibility failure
weyl-dual-quotient  nonzero derivation acting on a proper quotient module
quantum-plane-z5    nontrivial commutation constant, quasi-commutative
"""

from importlib import resources

_NAMES = (
    "quantum-plane-z5",
    "weyl-dual-quotient",
    "z2xz2-swap",
    "z3-trivial",
    "z4-regular",
    "z6-commutative",
)


def names() -> tuple:
    return _NAMES


def load(name: str) -> str:
    if name not in _NAMES:
        raise KeyError(name)
    return (resources.files(__package__) / f"{name}.json").read_text("utf-8")
