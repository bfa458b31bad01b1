import sys
from fractions import Fraction
from pathlib import Path

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from plorders.pl import PLHomeo  # noqa: E402

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def rationals(max_num=40, max_den=8):
    return st.builds(Fraction, st.integers(-max_num, max_num), st.integers(1, max_den))


def positive_rationals(max_num=16, max_den=4):
    return st.builds(Fraction, st.integers(1, max_num), st.integers(1, max_den))


@st.composite
def homeos(draw, max_breaks=6):
    xs = sorted(set(draw(st.lists(rationals(), min_size=1, max_size=max_breaks))))
    y = draw(rationals())
    ys = [y]
    for a, b in zip(xs, xs[1:]):
        ys.append(ys[-1] + (b - a) * draw(positive_rationals()))
    return PLHomeo.from_breaks(list(zip(xs, ys)), draw(positive_rationals()),
                               draw(positive_rationals()))


@st.composite
def compact_homeos(draw, max_breaks=5):
    """Maps equal to the identity outside a bounded interval."""
    xs = sorted(set(draw(st.lists(rationals(20, 4), min_size=2, max_size=max_breaks))))
    nodes = [(xs[0], xs[0])]
    for x in xs[1:-1]:
        nodes.append((x, None))
    nodes.append((xs[-1], xs[-1]))
    out = [nodes[0]]
    for i, (x, _) in enumerate(nodes[1:-1], 1):
        lo = out[-1][1]
        hi = xs[-1] - (xs[-1] - lo) / 4
        w = draw(st.integers(1, 7))
        out.append((x, lo + (hi - lo) * w / 8))
    out.append(nodes[-1])
    return PLHomeo.interpolate(out, 1, 1)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
