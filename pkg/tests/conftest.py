import math

import numpy as np
from hypothesis import settings, strategies as st

settings.register_profile("default", deadline=None, max_examples=60, derandomize=True)
settings.load_profile("default")

coord = st.floats(-1.0, 1.0, allow_nan=False)


@st.composite
def unit_vectors(draw):
    v = np.array([draw(coord), draw(coord), draw(coord)])
    n = np.linalg.norm(v)
    if n < 0.2:
        v = v + np.array([0.3, -0.5, 0.8])
    return v / np.linalg.norm(v)


@st.composite
def separated_pair(draw, lo=0.05, hi=math.pi - 0.05):
    p = draw(unit_vectors())
    q = draw(unit_vectors())
    d = math.acos(max(-1.0, min(1.0, float(p @ q))))
    if not lo < d < hi:
        q = np.cross(p, [0.3, 0.9, -0.2])
        q = 0.6 * q / np.linalg.norm(q) + 0.8 * p
    return p, q / np.linalg.norm(q)


@st.composite
def sss_sides(draw, lo=0.1, hi=2.9):
    """Side triples that satisfy the strict spherical triangle inequalities."""
    a = draw(st.floats(lo, hi))
    b = draw(st.floats(lo, hi))
    lo_c = max(lo, abs(a - b) + 1e-3)
    hi_c = min(hi, a + b - 1e-3, 2 * math.pi - a - b - 1e-3)
    c = draw(st.floats(lo_c, max(lo_c, hi_c)))
    if not (lo_c < hi_c):
        a, b, c = 1.0, 1.1, 1.2
    return a, b, c


# acceptance results, printed at the end of the run whatever the capture mode
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split("]")[1].split(".")[0])):
            terminalreporter.write_line(line)
