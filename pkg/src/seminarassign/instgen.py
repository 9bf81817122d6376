"""Synthetic instance generation.

Real application data is confidential, so benchmarks run on generated
stand-ins: weight rows concentrate most of the total on a few favored
topics, and favored topics are drawn from a skewed popularity distribution
so that some topics are much more requested than others.  A base instance
can be resized into a whole family by discarding or duplicating students.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidInstanceError
from .model import Instance, Labels, default_capacities


def contiguous_groups(m: int, k: int) -> tuple[tuple[int, ...], ...]:
    """Partition topics 0..m-1 into k contiguous blocks.

    The first k-1 blocks get floor(m/k) topics each; the last absorbs the
    rest, so (m=15, k=4) gives sizes (3, 3, 3, 6).
    """
    if k < 1 or k > m:
        raise InvalidInstanceError(f"need 1 <= K <= m, got K={k}, m={m}")
    base = m // k
    bounds = [base * i for i in range(k)] + [m]
    return tuple(tuple(range(bounds[i], bounds[i + 1])) for i in range(k))


def random_instance(n: int, m: int, w_max: int = 100, k: int = 1,
                    seed: int = 0, favored_topics: int | None = None,
                    favored_share: float = 0.8) -> Instance:
    """Generate an instance with skewed topic popularity.

    Each student spreads ``favored_share`` of ``w_max`` over
    ``favored_topics`` topics (default 2, or 1 when m == 1) drawn from a
    popularity distribution that decays with topic index, and the rest
    uniformly over the other topics.  Capacities are the floor/ceil
    defaults; groups are contiguous blocks.
    """
    if n < 1 or m < 1 or w_max < 1 or k < 1:
        raise InvalidInstanceError(
            f"need n, m, w_max, K >= 1, got n={n}, m={m}, w_max={w_max}, K={k}")
    if k > m:
        raise InvalidInstanceError(f"need K <= m, got K={k}, m={m}")
    if favored_topics is None:
        favored_topics = min(2, m)
    if not 1 <= favored_topics <= m:
        raise InvalidInstanceError(
            f"favored_topics must be in 1..m, got {favored_topics}")
    if not 0.0 <= favored_share <= 1.0:
        raise InvalidInstanceError(
            f"favored_share must be in [0, 1], got {favored_share}")
    rng = np.random.default_rng(seed)
    popularity = 1.0 / np.arange(1, m + 1)
    popularity /= popularity.sum()
    favored_amount = round(w_max * favored_share)
    weights = np.zeros((n, m), dtype=np.int64)
    for i in range(n):
        favored = rng.choice(m, size=favored_topics, replace=False, p=popularity)
        rest = np.setdiff1d(np.arange(m), favored)
        if rest.size == 0:
            weights[i, favored] += rng.multinomial(w_max, np.full(favored.size, 1.0 / favored.size))
            continue
        weights[i, favored] += rng.multinomial(
            favored_amount, np.full(favored.size, 1.0 / favored.size))
        weights[i, rest] += rng.multinomial(
            w_max - favored_amount, np.full(rest.size, 1.0 / rest.size))
    a, b = default_capacities(n, m)
    groups = contiguous_groups(m, k)
    return Instance(n=n, m=m, w_max=w_max, weights=weights, a=a, b=b,
                    groups=groups, labels=Labels.default(n, m, k))


def derive_family(base: Instance, n_target: int, seed: int = 0) -> Instance:
    """Resize a base instance by discarding or duplicating random students.

    Shrinking keeps a uniform subset in original order; growing appends
    copies of uniformly chosen existing students' weight rows.  Capacities
    are always the floor/ceil defaults for the new size; groups, w_max, and
    topic/staff labels carry over.
    """
    if n_target < 1:
        raise InvalidInstanceError(f"n_target must be >= 1, got {n_target}")
    rng = np.random.default_rng(seed)
    m = base.m
    if n_target < base.n:
        drop = rng.choice(base.n, size=base.n - n_target, replace=False)
        keep = np.setdiff1d(np.arange(base.n), drop)
        weights = base.weights[keep]
        students = tuple(base.labels.students[i] for i in keep)
    elif n_target > base.n:
        extra = rng.integers(0, base.n, size=n_target - base.n)
        weights = np.vstack([base.weights, base.weights[extra]])
        students = base.labels.students + tuple(
            f"s{i + 1}" for i in range(base.n, n_target))
    else:
        weights = base.weights
        students = base.labels.students
    a, b = default_capacities(n_target, m)
    labels = Labels(students=students, topics=base.labels.topics,
                    staff=base.labels.staff)
    return Instance(n=n_target, m=m, w_max=base.w_max, weights=weights,
                    a=a, b=b, groups=base.groups, labels=labels)
