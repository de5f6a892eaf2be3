import math
from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from subnetsim.core.config import ServiceOrder
from subnetsim.core.errors import AoiInvariantError


@dataclass(frozen=True, slots=True)
class Packet:
    generation_slot: int
    generation_time: float


class SensorQueue:
    """Unbounded sensor output buffer, oldest packet at the head."""

    def __init__(self, service_order: ServiceOrder = ServiceOrder.FIFO) -> None:
        self.service_order = service_order
        self._packets: deque[Packet] = deque()

    def __len__(self) -> int:
        return len(self._packets)

    def __iter__(self):
        return iter(self._packets)

    def extend(self, packets: Iterable[Packet]) -> None:
        self._packets.extend(packets)

    def pop_many(self, count: int) -> list[Packet]:
        pop = self._packets.popleft if self.service_order is ServiceOrder.FIFO else self._packets.pop
        return [pop() for _ in range(count)]

    @property
    def generation_times(self) -> list[float]:
        return [packet.generation_time for packet in self._packets]


@dataclass(frozen=True)
class AoiState:
    """AoI at a slot boundary, kept as whole slots to avoid float drift."""

    age_slots: int
    last_generation_slot: int
    slot_duration: float

    @property
    def aoi(self) -> float:
        return self.age_slots * self.slot_duration

    @property
    def last_delivered_generation(self) -> float:
        return self.last_generation_slot * self.slot_duration

    @classmethod
    def initial(cls, slot_duration: float) -> "AoiState":
        return cls(age_slots=0, last_generation_slot=0, slot_duration=slot_duration)


def generate_arrivals(
    arrival_rate: float,
    t: int,
    rng: np.random.Generator,
    slot_duration: float,
) -> list[Packet]:
    """Sample floor(A) packets plus one more with probability frac(A), stamped at slot start."""
    if arrival_rate < 0:
        raise ValueError("Arrival rate must be non-negative")
    whole = math.floor(arrival_rate)
    extra = int(rng.random() < arrival_rate - whole)
    stamp = t * slot_duration
    return [Packet(generation_slot=t, generation_time=stamp) for _ in range(whole + extra)]


def deliver_and_update(queue: SensorQueue, rate: float) -> tuple[list[Packet], SensorQueue]:
    """Serve floor(rate) packets; the fractional remainder is not carried over."""
    if rate < 0:
        raise ValueError("Rate must be non-negative")
    count = min(len(queue), math.floor(rate))
    return queue.pop_many(count), queue


def update_aoi(state: AoiState, delivered: list[Packet], t: int) -> AoiState:
    """AoI at the start of slot t+1 given the packets delivered during slot t.

    Raises:
        AoiInvariantError: If a delivered packet was generated after slot t started
    """
    if not delivered:
        return AoiState(state.age_slots + 1, state.last_generation_slot, state.slot_duration)

    freshest = max(packet.generation_slot for packet in delivered)
    if freshest > t:
        raise AoiInvariantError(f"Packet generated in slot {freshest} delivered during slot {t}")
    # an older delivery than the one already held never rejuvenates the controller
    last = max(freshest, state.last_generation_slot)
    return AoiState(age_slots=t + 1 - last, last_generation_slot=last, slot_duration=state.slot_duration)
