"""Seed plumbing.

Every random object in the package is a pure function of a master seed and
a stream id.  Streams are derived with :class:`numpy.random.SeedSequence`
spawn keys, so trial ``k`` of an experiment can be regenerated on its own
without replaying the trials before it.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

#: Seed used when the caller does not supply one (CLI default as well).
DEFAULT_SEED = 20240917


def make_rng(seed: int | None = None, stream: int | Sequence[int] = ()) -> np.random.Generator:
    """Return a PCG64 generator for ``(seed, stream)``.

    Args:
        seed: Master seed. ``None`` means :data:`DEFAULT_SEED`.
        stream: Stream id, or a tuple of ids for nested streams
            (for example ``(trial, purpose)``).

    Returns:
        A fresh generator whose output depends only on the arguments.
    """
    if seed is None:
        seed = DEFAULT_SEED
    key = (int(stream),) if isinstance(stream, (int, np.integer)) else tuple(int(s) for s in stream)
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed), spawn_key=key)))


def as_rng(rng: np.random.Generator | int | None) -> np.random.Generator:
    """Coerce a seed or ``None`` into a generator; generators pass through."""
    if isinstance(rng, np.random.Generator):
        return rng
    return make_rng(rng)
