from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class MobilityState:
    """AP positions (N x 2, meters) and unit headings (N x 2) of all subnetworks."""

    positions: np.ndarray
    headings: np.ndarray

    @property
    def num_subnetworks(self) -> int:
        return self.positions.shape[0]


@dataclass(frozen=True)
class DeploymentState:
    """Subnetwork geometry; each sensor is rigidly attached to its AP."""

    ap_positions: np.ndarray
    headings: np.ndarray
    sensor_offsets: np.ndarray

    @property
    def num_subnetworks(self) -> int:
        return self.ap_positions.shape[0]

    @property
    def sensor_positions(self) -> np.ndarray:
        return self.ap_positions + self.sensor_offsets

    @property
    def mobility(self) -> MobilityState:
        return MobilityState(positions=self.ap_positions, headings=self.headings)

    def with_mobility(self, state: MobilityState) -> "DeploymentState":
        return DeploymentState(
            ap_positions=state.positions,
            headings=state.headings,
            sensor_offsets=self.sensor_offsets,
        )

    def link_distances(self) -> np.ndarray:
        """Distance from the sensor of subnetwork n' (rows) to the AP of subnetwork n (columns)."""
        delta = self.sensor_positions[:, None, :] - self.ap_positions[None, :, :]
        return np.linalg.norm(delta, axis=-1)


@dataclass(frozen=True)
class LinkGainTensor:
    """Linear power gains h[n', n, b] of one slot: sensor n' to AP n on RB b."""

    gains: np.ndarray

    @property
    def num_subnetworks(self) -> int:
        return self.gains.shape[0]

    @property
    def num_rbs(self) -> int:
        return self.gains.shape[2]

    @property
    def direct(self) -> np.ndarray:
        """Own-link gains h[n, n, b] as an N x B matrix."""
        idx = np.arange(self.num_subnetworks)
        return self.gains[idx, idx, :]
