from __future__ import annotations

import random

import pytest

from braidgrowth.words import Alphabet, Word

# lines collected by the acceptance suite, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []

ALPHABETS = [Alphabet.artin(3), Alphabet.dual(3), Alphabet.artin(4), Alphabet.dual(4)]


def alphabet_id(a: Alphabet) -> str:
    return f"{a.kind.value}{a.n}"


def random_word(rng: random.Random, alphabet: Alphabet, length: int) -> Word:
    return Word(alphabet, tuple(rng.randrange(alphabet.size) for _ in range(length)))


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        criterion, text = marker.args
        status = "PASS" if report.passed else ("SKIP" if report.skipped else "FAIL")
        ACCEPTANCE_LINES.append(f"[{status}] criterion {criterion}: {text} ({item.name})")
