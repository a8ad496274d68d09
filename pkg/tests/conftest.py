import pytest


def pytest_configure(config):
    config._acceptance_lines = []


@pytest.fixture
def acceptance_log(request):
    """Record one PASS/FAIL line per acceptance criterion."""
    lines = request.config._acceptance_lines

    def log(number, title, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title}"
        if detail:
            line += f" ({detail})"
        lines.append(line)
        print(line)

    return log


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(lines, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
        terminalreporter.write_line(line)


# ---------------------------------------------------------------------------
# shared instances

from fractions import Fraction as _F  # noqa: E402

from isopade.exact import Poly, TruncatedSeries  # noqa: E402
from isopade.type1 import TypeIProblem  # noqa: E402


def _series(poly_coeffs, order):
    return TruncatedSeries([_F(c) for c in poly_coeffs], order)


@pytest.fixture
def worked():
    """``f = (1, 1/(1-w))`` with ``n = 1``."""
    return TypeIProblem([_series([1], 4), TruncatedSeries.geometric(1, 4)], 1)


# L = 3, n = 2 instance with type I rows and the inverse matrix computed by
# an independent sympy solve (see the project notes)
FROZEN_F = [
    [1, 2, -1, 3, 0, -1, 0, 2],
    [_F(1, 2), -1, 4, 0, 1, 0, -3, 0, 1],
    [2, 0, 1, -1, _F(5, 3), 1, 0, 0, 0, -1],
]

FROZEN_TYPE_I = [
    [[0, -510, 1], [0, -108, 362], [0, 282, 365]],
    [[_F(-5, 4618), _F(-6507, 4618)], [_F(5, 2309), _F(-685, 2309), 1], [0, _F(1803, 2309), _F(4645, 4618)]],
    [[_F(-459, 1555), _F(-7231, 26435)], [_F(-12102, 26435), _F(946, 5287)], [_F(6927, 26435), _F(837, 5287), 1]],
]

# w^6 times the inverse of the type I matrix; its columns are the type II columns
FROZEN_TYPE_II = [
    [[_F(3, 5287), _F(7404, 26435), _F(14222, 26435), _F(-99, 311), 1],
     [0, _F(-504, 5), _F(-972, 5), 116, -362],
     [0, _F(-1410, 2309), _F(-3379, 2309), _F(743, 2309), _F(-2040, 2309)]],
    [[_F(3, 10574), _F(216, 1555), _F(-15139, 52870), _F(5995, 5287)],
     [0, _F(-252, 5), _F(522, 5), -410, 1],
     [0, _F(-705, 2309), _F(2261, 4618), _F(-9711, 4618), _F(-4645, 4618)]],
    [[_F(6, 5287), _F(14748, 26435), _F(-1007, 26435), _F(7231, 26435)],
     [0, _F(-1008, 5), _F(72, 5), _F(-496, 5)],
     [0, _F(-2820, 2309), _F(-1118, 2309), _F(-508, 2309), 1]],
]


@pytest.fixture
def frozen():
    return TypeIProblem([_series(c, 9) for c in FROZEN_F], 2)


@pytest.fixture
def frozen_rows():
    return [[Poly(c) for c in row] for row in FROZEN_TYPE_I]


@pytest.fixture
def frozen_cols():
    # column j of the frozen matrix, as a list of entries
    return [[Poly(FROZEN_TYPE_II[a][j]) for a in range(3)] for j in range(3)]
