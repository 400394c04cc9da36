import numpy as np
import pytest

from sktdpc.dataset import Dataset, generate_gaussian_blobs


@pytest.fixture
def two_blobs():
    """300-point two-cluster fixture with widely separated centers."""
    return generate_gaussian_blobs(
        [[0.0, 0.0], [6.0, 6.0]], spread=0.8, points_per_cluster=150,
        seed=42, name="ss2",
    )


@pytest.fixture
def fig1_fixture():
    """16-point, k=3 fixture where exactly three points (including the
    densest) have no denser point among their nearest neighbors."""
    return generate_gaussian_blobs(
        np.random.default_rng(4).uniform(0, 10, size=(4, 2)),
        spread=0.45, points_per_cluster=4, seed=4, name="fig1",
    )


def random_dataset(seed: int, n=None, dim=None) -> Dataset:
    """Seeded random dataset for oracle-equivalence corpora."""
    rng = np.random.default_rng(seed)
    n = n if n is not None else int(rng.integers(20, 501))
    dim = dim if dim is not None else int(rng.integers(2, 6))
    n_clusters = int(rng.integers(2, 6))
    centers = rng.uniform(0, 20, size=(n_clusters, dim))
    counts = np.full(n_clusters, n // n_clusters)
    counts[: n % n_clusters] += 1
    return generate_gaussian_blobs(
        centers, spread=float(rng.uniform(0.5, 1.5)),
        points_per_cluster=counts.tolist(), seed=seed, name=f"rand{seed}",
    )
