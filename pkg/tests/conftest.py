import json
from pathlib import Path

import pytest
import sympy as sp

from ecad.ecprop import Designation
from ecad.formula import parse_formula
from ecad.polycore import Polynomial, VariableOrder

DATA = Path(__file__).parent / "data"

EX1 = r"x+y^2+z=0 /\ x-y^2+z=0 /\ x^2+y^2+z^2-1>=0"
WORKED = (r"x-y+z^2=0 /\ z^2-u^2+v^2-1=0 /\ x+y+z^2=0 /\ z^2+u^2-v^2-1=0"
          r" /\ x^2-1>=0 /\ z>=0")
WORKED_EC = {5: "x-y+z^2", 4: "u^2-v^2+x-y+1", 3: "u^2-v^2+x+1", 2: "u^2-v^2"}


def to_sympy(p):
    return sp.sympify(str(p).replace("^", "**"))


def from_sympy(expr, order):
    return Polynomial.parse(str(sp.expand(expr)).replace("**", "^"), order)


@pytest.fixture(scope="session")
def derived():
    return json.loads((DATA / "derived.json").read_text())


@pytest.fixture(scope="session")
def ex1():
    order = VariableOrder("x y z")
    phi = parse_formula(EX1, order)
    P = lambda s: Polynomial.parse(s, order)  # noqa: E731
    D = Designation.from_map({3: P("x+y^2+z"), 2: P("y")})
    return order, phi, D


@pytest.fixture(scope="session")
def worked():
    order = VariableOrder("v u x y z")
    phi = parse_formula(WORKED, order)
    D = Designation.from_map({k: Polynomial.parse(s, order) for k, s in WORKED_EC.items()})
    return order, phi, D


ACCEPTANCE_LINES = {}


def record_criterion(number, ok, detail):
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
