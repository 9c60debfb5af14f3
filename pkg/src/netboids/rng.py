"""Named, seedable random streams.

Every consumer of randomness asks for a stream by ``(seed, label)``.  Streams
with different labels are statistically independent, so e.g. re-seeding the
optimizer never perturbs the initial placement of the swarm.
"""

from __future__ import annotations

import zlib

import numpy as np

PLACEMENT = "placement"
GRAPH = "graph"
DE = "de"

_U64 = (1 << 64) - 1


def _label_key(label: str) -> int:
    # crc32 rather than hash(): hash() is salted per process
    return zlib.crc32(label.encode("utf-8"))


def stream(seed: int, label: str) -> np.random.Generator:
    """Return an independent generator for ``label`` under ``seed``."""
    seq = np.random.SeedSequence(entropy=int(seed) & _U64, spawn_key=(_label_key(label),))
    return np.random.Generator(np.random.PCG64(seq))


def derive_seed(seed: int, label: str) -> int:
    """Derive a child 64-bit seed, for handing to code that takes a plain integer."""
    seq = np.random.SeedSequence(entropy=int(seed) & _U64, spawn_key=(_label_key(label),))
    return int(seq.generate_state(1, dtype=np.uint64)[0])
