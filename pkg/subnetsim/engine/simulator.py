import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from tqdm import tqdm

from subnetsim.core.config import ScenarioConfig, validate_config
from subnetsim.core.streams import RandomStreams
from subnetsim.engine.metrics import compute_metrics
from subnetsim.engine.models import MetricsSummary, SlotTrace
from subnetsim.learning.brr import BrrPosterior, SampleWindow, fit_posteriors, push_sample
from subnetsim.learning.features import FeatureTransformer
from subnetsim.link.queue import AoiState, SensorQueue, deliver_and_update, generate_arrivals, update_aoi
from subnetsim.policies import build_policy
from subnetsim.policies.actions import PowerAction, actions_for, power_matrix
from subnetsim.policies.base_policy import ActionChoice, BasePolicy
from subnetsim.policies.default_policy import select_action_default
from subnetsim.radio.channel import build_gain_tensor, interference_matrix, sample_shadowing_db, transmission_rates
from subnetsim.radio.deployment import init_deployment
from subnetsim.radio.mobility import RestrictedRandomDirection
from subnetsim.radio.models import DeploymentState

logger = logging.getLogger(__name__)


@dataclass
class SubnetworkState:
    """Per-subnetwork link, learner and random-stream state of one run."""

    queue: SensorQueue
    aoi: AoiState
    window: SampleWindow | None
    arrivals_rng: np.random.Generator
    policy_rng: np.random.Generator
    mobility_rng: np.random.Generator
    last_action: int | None = None
    last_raw: np.ndarray | None = None
    last_features: np.ndarray | None = None


@dataclass
class SimulationState:
    run: int
    slot: int
    deployment: DeploymentState
    shadowing_db: np.ndarray
    subnetworks: list[SubnetworkState] = field(default_factory=list)


@dataclass(frozen=True)
class SlotRows:
    """Trace entries of one slot, one element per subnetwork."""

    aoi: np.ndarray
    action_id: np.ndarray
    mu: np.ndarray
    var: np.ndarray
    next_aoi: np.ndarray
    rate: np.ndarray
    interference: np.ndarray


class RunContext:
    """Immutable per-run collaborators shared by every slot of the run."""

    def __init__(
        self,
        cfg: ScenarioConfig,
        streams: RandomStreams,
        run: int,
        policy: BasePolicy | None = None,
    ) -> None:
        self.cfg = cfg
        self.streams = streams
        self.run = run
        self.actions: list[PowerAction] = actions_for(cfg)
        self.action_power = power_matrix(self.actions)
        self.transformer = FeatureTransformer.from_config(cfg)
        self.policy = policy or build_policy(cfg, self.actions)
        self.mobility = RestrictedRandomDirection(cfg)
        self.min_fit_samples = min(cfg.min_fit_samples, cfg.window_size)


def init_state(ctx: RunContext) -> SimulationState:
    cfg, streams, run = ctx.cfg, ctx.streams, ctx.run
    deployment = init_deployment(cfg, streams.deployment(run))
    n = cfg.num_subnetworks
    shadowing = sample_shadowing_db(streams.shadowing(run), cfg.shadow_std_db, size=(n, n))

    subnetworks = []
    for index in range(n):
        window = None
        if ctx.policy.learns:
            window = SampleWindow(cfg.window_size, cfg.raw_feature_dim, ctx.transformer.feature_dim)
        subnetworks.append(SubnetworkState(
            queue=SensorQueue(cfg.service_order),
            aoi=AoiState.initial(cfg.slot_duration_s),
            window=window,
            arrivals_rng=streams.arrivals(run, index),
            policy_rng=streams.policy(run, index),
            mobility_rng=streams.mobility(run, index),
        ))
    return SimulationState(run=run, slot=0, deployment=deployment, shadowing_db=shadowing, subnetworks=subnetworks)


def _candidate_features(ctx: RunContext, aoi: np.ndarray) -> np.ndarray:
    """Features of every (subnetwork, action) pair, shaped N x |P| x r."""
    n, num_actions = aoi.shape[0], len(ctx.actions)
    raw = np.empty((n, num_actions, ctx.cfg.raw_feature_dim))
    raw[:, :, 0] = aoi[:, None]
    raw[:, :, 1:] = ctx.action_power[None, :, :]
    features = ctx.transformer.transform(raw.reshape(n * num_actions, -1))
    return features.reshape(n, num_actions, -1)


def _fit_learners(ctx: RunContext, subs: list[SubnetworkState], t: int) -> list[BrrPosterior | None]:
    """Posterior of every learning subnetwork, None while it still acts at random."""
    if not ctx.policy.learns:
        return [None] * len(subs)
    ready = [
        index for index, sub in enumerate(subs)
        if t >= ctx.cfg.warmup_slots and len(sub.window) >= ctx.min_fit_samples
    ]
    fitted = fit_posteriors([subs[index].window for index in ready], ctx.cfg.ridge_lambda, ctx.cfg.sigma2_floor)
    posteriors: list[BrrPosterior | None] = [None] * len(subs)
    for index, posterior in zip(ready, fitted):
        posteriors[index] = posterior
    return posteriors


def _choose(
    ctx: RunContext,
    sub: SubnetworkState,
    aoi: float,
    posterior: BrrPosterior | None,
    candidates: np.ndarray | None,
) -> ActionChoice:
    policy = ctx.policy
    if not policy.learns:
        return policy.select(aoi, None, None, sub.policy_rng)
    if posterior is None:
        return ActionChoice(index=select_action_default(ctx.actions, sub.policy_rng).action_id)
    return policy.select(aoi, posterior, candidates, sub.policy_rng)


def run_slot(state: SimulationState, ctx: RunContext) -> tuple[SimulationState, SlotRows]:
    """Advance one slot through its five phases.

    1. record AoI and push the previous (input, outcome) sample into each window
    2. refit each learner and select each subnetwork's action
    3. draw gains, then interference and rates from all actions jointly
    4. generate arrivals, deliver and update AoI
    5. move the subnetworks

    Actions depend only on start-of-slot information, so no subnetwork sees
    another subnetwork's current action.
    """
    cfg = ctx.cfg
    t = state.slot
    n = cfg.num_subnetworks
    subs = state.subnetworks

    aoi_now = np.array([sub.aoi.aoi for sub in subs])
    for sub, aoi in zip(subs, aoi_now):
        if sub.window is not None and sub.last_raw is not None:
            push_sample(sub.window, sub.last_raw, aoi, sub.last_features)

    candidates = _candidate_features(ctx, aoi_now) if ctx.policy.learns else None
    posteriors = _fit_learners(ctx, subs, t)
    action_ids = np.empty(n, dtype=int)
    mu = np.full(n, np.nan)
    var = np.full(n, np.nan)
    for index, sub in enumerate(subs):
        sub_candidates = None if candidates is None else candidates[index]
        choice = _choose(ctx, sub, float(aoi_now[index]), posteriors[index], sub_candidates)
        action_ids[index] = choice.index
        if choice.prediction is not None:
            mu[index] = choice.prediction.mu
            var[index] = choice.prediction.var

    power = ctx.action_power[action_ids]
    gains = build_gain_tensor(state.deployment, state.shadowing_db, cfg, ctx.streams.fading(state.run, t))
    interference_w = interference_matrix(power, gains)
    rates = transmission_rates(power, gains, cfg, interference_w)

    next_aoi = np.empty(n)
    for index, sub in enumerate(subs):
        sub.queue.extend(generate_arrivals(cfg.arrival_rate, t, sub.arrivals_rng, cfg.slot_duration_s))
        delivered, _ = deliver_and_update(sub.queue, float(rates[index]))
        sub.aoi = update_aoi(sub.aoi, delivered, t)
        next_aoi[index] = sub.aoi.aoi
        sub.last_action = int(action_ids[index])
        if sub.window is not None:
            sub.last_raw = np.concatenate(([aoi_now[index]], power[index]))
            sub.last_features = candidates[index, action_ids[index]]

    moved = ctx.mobility.step(state.deployment.mobility, [sub.mobility_rng for sub in subs])
    state.deployment = state.deployment.with_mobility(moved)
    state.slot = t + 1

    rows = SlotRows(
        aoi=aoi_now,
        action_id=action_ids,
        mu=mu,
        var=var,
        next_aoi=next_aoi,
        rate=rates,
        interference=interference_w,
    )
    return state, rows


def run_single(
    cfg: ScenarioConfig,
    seed: int,
    run: int,
    policy: BasePolicy | None = None,
    progress: bool = False,
) -> SlotTrace:
    """Simulate one independent Monte Carlo run of ``cfg.horizon_slots`` slots."""
    ctx = RunContext(cfg, RandomStreams(seed), run, policy)
    state = init_state(ctx)
    horizon, n = cfg.horizon_slots, cfg.num_subnetworks
    logger.info("Run %d: %s policy, %d slots, %d subnetworks", run, ctx.policy.policy_id, horizon, n)

    columns = {
        name: np.empty((horizon, n)) for name in ("aoi", "mu", "var", "next_aoi", "rate")
    }
    action_ids = np.empty((horizon, n), dtype=int)
    interference_w = np.empty((horizon, n, cfg.num_rbs))

    slots = tqdm(range(horizon), desc=f"run {run}", disable=not progress, leave=False)
    for t in slots:
        if t == cfg.warmup_slots:
            logger.debug("Run %d: warmup over after %d slots", run, t)
        state, rows = run_slot(state, ctx)
        for name, values in columns.items():
            values[t] = getattr(rows, name)
        action_ids[t] = rows.action_id
        interference_w[t] = rows.interference

    slot_index = np.repeat(np.arange(horizon), n)
    return SlotTrace(
        run=np.full(horizon * n, run),
        slot=slot_index,
        subnetwork=np.tile(np.arange(n), horizon),
        aoi=columns["aoi"].ravel(),
        action_id=action_ids.ravel(),
        mu=columns["mu"].ravel(),
        var=columns["var"].ravel(),
        next_aoi=columns["next_aoi"].ravel(),
        rate=columns["rate"].ravel(),
        interference=interference_w.reshape(horizon * n, cfg.num_rbs),
    )


def run_simulation(
    cfg: ScenarioConfig,
    seed: int | None = None,
    policy: BasePolicy | None = None,
    progress: bool = False,
) -> tuple[SlotTrace, MetricsSummary]:
    """Run ``cfg.num_runs`` independent runs and aggregate post-warmup metrics.

    Runs are keyed by their index in the seeded stream tree, so the result is
    the same whether they execute sequentially or across ``cfg.workers``
    processes. A custom ``policy`` object forces sequential execution.
    """
    cfg = validate_config(cfg)
    seed = cfg.seed if seed is None else seed
    runs = range(cfg.num_runs)

    if cfg.workers > 1 and policy is None and cfg.num_runs > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            traces = list(pool.map(run_single, [cfg] * cfg.num_runs, [seed] * cfg.num_runs, runs))
    else:
        traces = [run_single(cfg, seed, run, policy, progress) for run in runs]

    trace = SlotTrace.concat(traces)
    summary = compute_metrics(
        trace.from_slot(cfg.warmup_slots),
        cfg.aoi_threshold_s,
        slot_duration=cfg.slot_duration_s,
        max_multiple=cfg.ccdf_max_multiple,
    )
    logger.info(
        "Finished %d runs: violation %.4g, mean AoI %.4g s",
        cfg.num_runs, summary.violation_probability, summary.avg_aoi_s,
    )
    return trace, summary
