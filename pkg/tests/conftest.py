import random

import pytest
from hypothesis import settings

from koszulkit.quadratic import QuadraticPresentation
from koszulkit.words import Commutator, Letter, Power, product

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

ACCEPTANCE_LINES = []


def random_presentation(rng: random.Random, p=None, d=None, k=None) -> QuadraticPresentation:
    """Random Omega of a chosen dimension k (rank may drop; RREF keeps what survives)."""
    p = p or rng.choice((2, 3, 5))
    d = d or rng.randint(1, 4)
    n = d * d
    k = rng.randint(0, n) if k is None else k
    # build k independent vectors by rejection
    from oracles import rank_mod_p
    rows = []
    while len(rows) < k:
        v = [rng.randrange(p) for _ in range(n)]
        if rank_mod_p(rows + [v], p) == len(rows) + 1:
            rows.append(v)
    return QuadraticPresentation(p, d, rows)


def random_word(rng, d, length):
    """Random nested word with at most ``length`` leaves."""
    if length <= 1 or rng.random() < 0.3:
        return Letter(rng.randrange(d), rng.choice([-3, -2, -1, 1, 2, 3]))
    kind = rng.random()
    left = random_word(rng, d, length // 2)
    right = random_word(rng, d, length - length // 2)
    if kind < 0.5:
        return product(left, right)
    if kind < 0.8:
        return Commutator(left, right)
    return Power(left, rng.choice([-2, 2, 3]))



@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
