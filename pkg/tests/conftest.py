import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)


def random_closed_polygon(rng, m, dim=3):
    """Random closed m-gon; not necessarily prodigal."""
    from polyspace.polygon import Polygon
    edges = rng.standard_normal((m, dim))
    edges -= edges.mean(axis=0)
    return Polygon(dim, edges)
