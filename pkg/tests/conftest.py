"""Shared fixtures: parsed corpus instances and the acceptance result ledger."""

import random

import pytest

from spbw import corpus
from spbw.cli import parse_instance

# (number, description, passed, detail) tuples, printed in the terminal summary
ACCEPTANCE_RESULTS = []


@pytest.fixture(scope="session")
def acceptance_record():
    def record(num, description, passed, detail=""):
        ACCEPTANCE_RESULTS.append((num, description, bool(passed), detail))
        assert passed, f"criterion {num}: {description} [{detail}]"

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num, desc, ok, detail in sorted(ACCEPTANCE_RESULTS):
        line = "criterion %2d: %s - %s" % (num, "PASS" if ok else "FAIL", desc)
        if detail:
            line += " (%s)" % detail
        terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def instances():
    return {name: parse_instance(corpus.load(name)) for name in corpus.names()}


@pytest.fixture(scope="session")
def z3(instances):
    return instances["z3-trivial"]


@pytest.fixture(scope="session")
def z4(instances):
    return instances["z4-regular"]


@pytest.fixture(scope="session")
def z6(instances):
    return instances["z6-commutative"]


@pytest.fixture(scope="session")
def swap(instances):
    return instances["z2xz2-swap"]


@pytest.fixture(scope="session")
def weyl(instances):
    return instances["weyl-dual-quotient"]


@pytest.fixture(scope="session")
def quantum(instances):
    return instances["quantum-plane-z5"]


def random_exponent(rng, n, max_deg):
    total = rng.randrange(max_deg + 1)
    alpha = [0] * n
    for _ in range(total):
        alpha[rng.randrange(n)] += 1
    return tuple(alpha)


def random_poly(rng, presentation, max_deg, max_terms):
    terms = []
    for _ in range(rng.randrange(1, max_terms + 1)):
        alpha = random_exponent(rng, presentation.n, max_deg)
        terms.append((alpha, rng.randrange(presentation.ring.order)))
    return presentation.from_terms(terms)


def random_mpoly(rng, module, presentation, max_deg, max_terms):
    from spbw.polymodule import module_poly

    terms = []
    for _ in range(rng.randrange(1, max_terms + 1)):
        alpha = random_exponent(rng, presentation.n, max_deg)
        terms.append((alpha, rng.randrange(module.order)))
    return module_poly(module, presentation, terms)


@pytest.fixture
def rng():
    return random.Random(0x5B77)
