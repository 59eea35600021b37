import random

from hypothesis import strategies as st

from linset.epset import EPSet


def random_epset(rng: random.Random, max_period: int = 12, span: int = 40) -> EPSet:
    g = rng.randint(1, max_period)
    width = rng.randint(0, span)
    lo = rng.randint(-span, span - width)  # window stays inside [-span, span]
    window = rng.getrandbits(width) if width else 0
    neg = rng.getrandbits(g)
    pos = rng.getrandbits(g)
    return EPSet(g, lo, lo + width - 1, window, neg, pos)


@st.composite
def epsets(draw, max_period: int = 12, span: int = 24):
    g = draw(st.integers(1, max_period))
    lo = draw(st.integers(-span, span))
    width = draw(st.integers(0, span))
    window = draw(st.integers(0, (1 << width) - 1)) if width else 0
    neg = draw(st.integers(0, (1 << g) - 1))
    pos = draw(st.integers(0, (1 << g) - 1))
    return EPSet(g, lo, lo + width - 1, window, neg, pos)
