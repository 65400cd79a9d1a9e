from pathlib import Path

import pytest

from birchzero.poly import parse

DATA = Path(__file__).parent / "data"
XY = ["x", "y"]


def load_system(name: str):
    lines = [l.split("#")[0].strip() for l in (DATA / f"{name}.txt").read_text().splitlines()]
    return [parse(l, XY) for l in lines if l]


@pytest.fixture(scope="session")
def ex1():
    return load_system("ex1")


@pytest.fixture(scope="session")
def ex2():
    return load_system("ex2")


@pytest.fixture(scope="session")
def ex3():
    return load_system("ex3")


def P(text, variables=XY):
    return parse(text, variables)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        ok, detail = mod.RESULTS[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
