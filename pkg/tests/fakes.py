"""Deterministic stand-ins for RngHandle in decay-path tests."""


class AlwaysAccept:
    """Drives bernoulli_exp_neg to True: the series sampler's first factor
    fails immediately (K = 1, odd) whenever the draw is >= gamma/1, which
    holds for every gamma < 0.999999 used in tests."""

    def random(self):
        return 0.999999


class AlwaysReject:
    """Drives bernoulli_exp_neg to False: succeed at k = 1, fail at k = 2,
    so the first factor stops at even K for any gamma > 0."""

    def __init__(self):
        self._flip = False

    def random(self):
        self._flip = not self._flip
        return 0.0 if self._flip else 0.999999
