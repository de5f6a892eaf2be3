"""Propagation, interference and achievable rate of the uplink sensor links."""

import numpy as np

from subnetsim.core.config import ScenarioConfig
from subnetsim.radio.models import DeploymentState, LinkGainTensor


def path_loss_db(
    distance_m: float | np.ndarray,
    carrier_freq_ghz: float,
    intercept_db: float = 31.84,
    distance_slope: float = 21.5,
    frequency_slope: float = 19.0,
    min_distance_m: float = 1.0,
) -> float | np.ndarray:
    """Indoor-factory line-of-sight path loss with the distance floored at 1 m.

    Raises:
        ValueError: If any distance is not strictly positive
    """
    distance = np.asarray(distance_m, dtype=float)
    if np.any(distance <= 0):
        raise ValueError("Path loss requires strictly positive distances")
    loss = (
        intercept_db
        + distance_slope * np.log10(np.maximum(distance, min_distance_m))
        + frequency_slope * np.log10(carrier_freq_ghz)
    )
    if loss.ndim == 0:
        return float(loss)
    return loss


def config_path_loss_db(distance_m: float | np.ndarray, cfg: ScenarioConfig) -> float | np.ndarray:
    return path_loss_db(
        distance_m,
        cfg.carrier_freq_ghz,
        intercept_db=cfg.pl_intercept_db,
        distance_slope=cfg.pl_distance_slope,
        frequency_slope=cfg.pl_frequency_slope,
        min_distance_m=cfg.pl_min_distance_m,
    )


def sample_shadowing_db(
    rng: np.random.Generator,
    std_db: float = 7.0,
    size: int | tuple[int, ...] | None = None,
) -> float | np.ndarray:
    """Zero-mean log-normal shadowing in dB."""
    return rng.normal(0.0, std_db, size=size)


def sample_rician_power_gain(
    k_factor: float,
    rng: np.random.Generator,
    size: int | tuple[int, ...] | None = None,
) -> float | np.ndarray:
    """Unit-mean power gain of a Rician channel with linear K-factor ``k_factor``."""
    if np.isinf(k_factor):
        return 1.0 if size is None else np.ones(size)
    theta = rng.uniform(0.0, 2.0 * np.pi, size=size)
    z1 = rng.standard_normal(size=size)
    z2 = rng.standard_normal(size=size)
    los = np.sqrt(k_factor / (k_factor + 1.0)) * np.exp(1j * theta)
    scatter = np.sqrt(1.0 / (2.0 * (k_factor + 1.0))) * (z1 + 1j * z2)
    return np.abs(los + scatter) ** 2


def build_gain_tensor(
    deployment: DeploymentState,
    shadowing_db: np.ndarray,
    cfg: ScenarioConfig,
    rng: np.random.Generator,
) -> LinkGainTensor:
    """Draw the per-slot gain tensor from geometry, static shadowing and fresh fading.

    Args:
        deployment: Current AP positions and sensor offsets
        shadowing_db: N x N static shadowing of each ordered sensor-to-AP pair
        cfg: Scenario configuration
        rng: Fading stream of this slot

    Returns:
        Gains h[n', n, b] for every sensor n', AP n and resource block b
    """
    n = deployment.num_subnetworks
    loss_db = config_path_loss_db(deployment.link_distances(), cfg) + shadowing_db
    large_scale = 10.0 ** (-loss_db / 10.0)
    fading = sample_rician_power_gain(cfg.rician_k_linear, rng, size=(n, n, cfg.num_rbs))
    return LinkGainTensor(gains=large_scale[:, :, None] * fading)


def interference_matrix(power: np.ndarray, gains: LinkGainTensor) -> np.ndarray:
    """Interference I[n, b] received at every AP on every RB from all other sensors.

    Args:
        power: N x B transmit powers in watts
        gains: Gain tensor of the slot
    """
    received = np.einsum("kb,knb->nb", power, gains.gains)
    return received - power * gains.direct


def interference(n: int, b: int, power: np.ndarray, gains: LinkGainTensor) -> float:
    """Interference in watts at the AP of subnetwork n on RB b."""
    others = np.arange(power.shape[0]) != n
    return float(np.sum(power[others, b] * gains.gains[others, n, b]))


def _rate_from_sinr(sinr: np.ndarray, cfg: ScenarioConfig) -> np.ndarray:
    per_rb = cfg.rb_bandwidth_hz * np.log2(1.0 + sinr)
    return cfg.slot_duration_s / cfg.packet_size_bits * per_rb.sum(axis=-1)


def transmission_rates(
    power: np.ndarray,
    gains: LinkGainTensor,
    cfg: ScenarioConfig,
    interference_w: np.ndarray | None = None,
) -> np.ndarray:
    """Rates R_n in packets per slot for all subnetworks at once."""
    if interference_w is None:
        interference_w = interference_matrix(power, gains)
    sinr = power * gains.direct / (cfg.noise_power_w + interference_w)
    return _rate_from_sinr(sinr, cfg)


def transmission_rate(n: int, power: np.ndarray, gains: LinkGainTensor, cfg: ScenarioConfig) -> float:
    """Rate of subnetwork n in packets per slot (real-valued)."""
    interference_w = np.array([interference(n, b, power, gains) for b in range(power.shape[1])])
    sinr = power[n] * gains.gains[n, n, :] / (cfg.noise_power_w + interference_w)
    return float(_rate_from_sinr(sinr, cfg))
