import importlib.resources as ir

import pytest

from theoria.parser import parse_formula
from theoria.prooftree import Sequent
from theoria.rulebase import RuleBase
from theoria.theoryio import parse_theory
from theoria.typecheck import TypeEnvironment, typecheck_group


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "acceptance(name): headline acceptance criterion")


_acceptance_results = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when != "call":
        return
    marker = item.get_closest_marker("acceptance")
    if marker:
        _acceptance_results[marker.args[0]] = report.passed


def pytest_terminal_summary(terminalreporter):
    for name, ok in _acceptance_results.items():
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"ACCEPTANCE {name}: {verdict}")


def _bundled(name):
    return (ir.files("theoria") / f"theories/{name}").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def list_theory_text():
    return _bundled("list.thy")


@pytest.fixture(scope="session")
def real_theory_text():
    return _bundled("real.thy")


@pytest.fixture(scope="session")
def list_theory(list_theory_text):
    return parse_theory(list_theory_text)


@pytest.fixture(scope="session")
def real_theory(real_theory_text):
    return parse_theory(real_theory_text)


@pytest.fixture(scope="session")
def list_rb(list_theory):
    return RuleBase([list_theory])


@pytest.fixture(scope="session")
def real_rb(real_theory):
    return RuleBase([real_theory])


@pytest.fixture(scope="session")
def both_rb(list_theory, real_theory):
    return RuleBase([list_theory, real_theory])


def make_sequent(rb, goal_text, hyps=(), idents=None, origin="test"):
    fac = rb.factory
    goal = parse_formula(goal_text, fac)
    hs = [parse_formula(h, fac) for h in hyps]
    typed, _ = typecheck_group(
        [*hs, goal], TypeEnvironment(idents or {}), fac, generalize=True
    )
    return Sequent(tuple(typed[:-1]), typed[-1], fac, origin)


@pytest.fixture
def sequent_of():
    return make_sequent
