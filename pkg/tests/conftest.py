import sys

import numpy as np
import pytest

from robinkg import ParametricCurve, PhysicsParams, ProblemSpec, RobinData

Y_STAR = (4.0, 0.0)
EX1A_PROBES = np.array([(0.0, 0.5), (1.0, 0.0), (-0.5, 0.4), (-0.5, -0.2)])
EX1B_PROBES = np.array([(1.0, 1.0), (-1.0, 0.7), (0.0, -1.5), (1.8, -0.3)])
EX2_PROBES = np.array([(0.0, 0.4), (1.0, 0.0), (-0.5, 0.4), (-0.6, -0.4)])


def ellipse_outer():
    return ParametricCurve.ellipse(1.3, 1.0)


def kidney_inner():
    # (0.5 cos t, 0.4 sin t - 0.3 sin^2 t) with sin^2 t = 1/2 - cos(2t)/2
    return ParametricCurve.trig(x1_cos=[0.5], x2_const=-0.15, x2_sin=[0.4], x2_cos=[0.0, 0.15])


UNIT = PhysicsParams(1.0, 1.0, 1.0)


def example1a(y_star=Y_STAR):
    return ProblemSpec(UNIT, ellipse_outer(), kidney_inner(), RobinData.fundamental(y_star))


def example1b(y_star=Y_STAR):
    return ProblemSpec(
        UNIT, ParametricCurve.circle(2.0), ParametricCurve.circle(0.5), RobinData.fundamental(y_star)
    )


def example2():
    return ProblemSpec(UNIT, ellipse_outer(), kidney_inner(), RobinData.polynomial_example2())


@pytest.fixture
def ex1a():
    return example1a()


@pytest.fixture
def ex1b():
    return example1b()


@pytest.fixture
def ex2():
    return example2()


CATALOG = {
    "circle2": ParametricCurve.circle(2.0),
    "circle05": ParametricCurve.circle(0.5),
    "ellipse": ellipse_outer(),
    "kidney": kidney_inner(),
}


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
