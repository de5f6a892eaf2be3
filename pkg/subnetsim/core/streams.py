from enum import IntEnum

import numpy as np


class Purpose(IntEnum):
    DEPLOYMENT = 0
    SHADOWING = 1
    MOBILITY = 2
    FADING = 3
    ARRIVALS = 4
    POLICY = 5


class RandomStreams:
    """Deterministic random substreams derived from one master seed.

    Every stream is keyed by (run, purpose, index) through the spawn key of a
    ``numpy.random.SeedSequence``, so streams never overlap and a run's draws do
    not depend on how many other runs are executed or in which process.
    """

    def __init__(self, seed: int) -> None:
        self.seed = int(seed)

    def generator(self, run: int, purpose: Purpose, index: int = 0) -> np.random.Generator:
        sequence = np.random.SeedSequence(self.seed, spawn_key=(int(run), int(purpose), int(index)))
        return np.random.default_rng(sequence)

    def deployment(self, run: int) -> np.random.Generator:
        return self.generator(run, Purpose.DEPLOYMENT)

    def shadowing(self, run: int) -> np.random.Generator:
        return self.generator(run, Purpose.SHADOWING)

    def mobility(self, run: int, subnetwork: int) -> np.random.Generator:
        return self.generator(run, Purpose.MOBILITY, subnetwork)

    def fading(self, run: int, slot: int) -> np.random.Generator:
        return self.generator(run, Purpose.FADING, slot)

    def arrivals(self, run: int, subnetwork: int) -> np.random.Generator:
        return self.generator(run, Purpose.ARRIVALS, subnetwork)

    def policy(self, run: int, subnetwork: int) -> np.random.Generator:
        return self.generator(run, Purpose.POLICY, subnetwork)
