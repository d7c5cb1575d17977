import numpy as np
import pytest

from threshrank import UNIFORM, BetaParams
from threshrank.model import Instance


def make_instance(scores, thresholds, fx=UNIFORM, fy=UNIFORM, seed=0) -> Instance:
    """Hand-built instance with explicit values, for deterministic traces."""
    s = np.asarray(scores, dtype=float)
    t = np.asarray(thresholds, dtype=float)
    s.flags.writeable = False
    t.flags.writeable = False
    return Instance(len(s), len(t), s, t, fx, fy, seed)


@pytest.fixture
def mismatch_params() -> tuple[BetaParams, BetaParams]:
    return BetaParams(2, 3), BetaParams(2, 2)
