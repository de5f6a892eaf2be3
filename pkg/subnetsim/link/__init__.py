from subnetsim.link.queue import (
    Packet,
    SensorQueue,
    AoiState,
    generate_arrivals,
    deliver_and_update,
    update_aoi
)

__all__ = [
    "Packet",
    "SensorQueue",
    "AoiState",
    "generate_arrivals",
    "deliver_and_update",
    "update_aoi"
]
