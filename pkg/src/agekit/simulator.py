"""Discrete-time feedback-loop simulator of a streaming server that ages.

One tick is 15 seconds of server time. The state couples a media cache, the
process working set, the disk request queue, the disk read block size, the
delivered client bandwidth, and the pool of stale cached blocks (cached data
nobody references anymore but the default reclaimer cannot free).

The positive loop: uncached requests pull data into the cache and, when the
requested file mix keeps rotating (more allowed files than concurrently
active ones), previously hot blocks go stale and stay resident. Memory
pressure rises, per-read latency rises, the server widens its disk read
block, wider blocks pile up the disk queue, and the backlog parks even more
unconsumed data in memory. Bandwidth falls as queue and pressure grow.

The negative loop: a reclaim daemon frees blocks whose reference count is at
or below a threshold (default 0, i.e. only fully unreferenced blocks), paced
by a reclaim rate.

Rejuvenation policies intervene once the observed aging degree (one minus
trailing bandwidth over nominal) reaches the policy's trigger threshold:
admit only cache hits, admit a fixed fraction of requests, pin the block size
back to base, or enlarge the reclaim threshold.

Every coupling below is a single-coefficient affine or saturating law. The
coefficients live in SimConfig and in the shipped key=value config file; the
defaults were calibrated once against the stable/aging reference workloads
and are not meant to be tuned per run.
"""

import math
from dataclasses import dataclass, fields
from enum import Enum, IntEnum

import numpy as np

from .errors import DomainError, ParseError
from .normalize import to_aging_curve
from .smoothing import SmoothingConfig
from .timeseries import MetricSeries, Orientation, format_float, write_text_atomic

TRACE_HEADER = (
    "tick",
    "cache_mb",
    "working_set_mb",
    "disk_queue_len",
    "block_kb",
    "bandwidth_kbyte",
    "sfr_mb",
)


class FileDist(IntEnum):
    """How clients choose files from the allowed set."""

    RANDOM = 0
    SEQUENTIAL = 1
    POISSON = 2
    SINGLE_FILE = 3


class FileDifference(IntEnum):
    """Whether clients request different files or all hammer the same one."""

    DIFFERENT = 0
    SAME = 1


@dataclass(frozen=True)
class WorkloadSpec:
    """Client load description, written on the CLI as a 6-number tuple.

    Order: client_count, file_dist, file_object, file_max_object,
    sleep_time_ms, file_difference. The stable reference load is
    (600,0,20,20,1000,0) and the aging one is (600,0,100,20,1000,0): same
    pressure, but the second rotates over five times more files than are ever
    concurrently active.
    """

    client_count: int
    file_dist: FileDist
    file_object: int
    file_max_object: int
    sleep_time_ms: int
    file_difference: FileDifference

    def __post_init__(self):
        object.__setattr__(self, "file_dist", FileDist(self.file_dist))
        object.__setattr__(self, "file_difference", FileDifference(self.file_difference))
        for name in ("client_count", "file_object", "file_max_object", "sleep_time_ms"):
            value = getattr(self, name)
            if int(value) != value or value < 0:
                raise DomainError(f"{name} must be a nonnegative integer, got {value}")
            object.__setattr__(self, name, int(value))
        if self.file_object < 1:
            raise DomainError("file_object must be at least 1")
        if self.file_max_object < 1:
            raise DomainError("file_max_object must be at least 1")
        if self.file_max_object > self.file_object:
            raise DomainError(
                f"file_max_object ({self.file_max_object}) exceeds file_object ({self.file_object})"
            )


def parse_workload(text):
    """Parse '600,0,100,20,1000,0' (optionally parenthesized) into a WorkloadSpec."""
    cleaned = text.strip().strip("()")
    parts = [p.strip() for p in cleaned.split(",")]
    if len(parts) != 6:
        raise ParseError(f"workload tuple needs 6 comma-separated integers, got {len(parts)}")
    numbers = []
    for i, part in enumerate(parts):
        try:
            numbers.append(int(part))
        except ValueError:
            raise ParseError(f"workload field {i + 1} is not an integer: {part!r}") from None
    for index, what in ((1, "file_dist"), (5, "file_difference")):
        allowed = {int(v) for v in (FileDist if index == 1 else FileDifference)}
        if numbers[index] not in allowed:
            raise ParseError(f"workload {what} must be one of {sorted(allowed)}, got {numbers[index]}")
    return WorkloadSpec(*numbers)


@dataclass(frozen=True)
class SimConfig:
    """Server capacity constants plus one coefficient per coupling law."""

    # capacity and protocol constants
    catalog_files: int = 100
    total_memory_mb: float = 1100.0
    base_block_kb: float = 4.0
    max_block_kb: float = 16.0
    bandwidth_nominal_kbyte: float = 120.0
    bandwidth_fail_kbyte: float = 30.0
    capacity_clients: int = 900
    refcount_threshold: int = 0
    tick_seconds: float = 15.0
    # initial memory layout
    initial_cache_mb: float = 80.0
    baseline_working_set_mb: float = 520.0
    # request -> cache coupling
    file_footprint_mb: float = 5.0
    cache_growth_mb_per_miss: float = 0.0003
    backlog_cache_gain: float = 0.001
    cache_turnover_rate: float = 0.001
    # stale-block (software free radical) generation and reclaim
    sfr_stale_rate: float = 0.004
    sfr_reclaim_rate: float = 0.02
    refcount_survival: float = 0.85
    live_refcount_scale: float = 30.0
    # memory -> latency -> block size
    pressure_latency_gain: float = 2.0
    blocksize_trigger_ratio: float = 6.0
    # disk queue service
    queue_service_rate: float = 8.0
    queue_drain_rate: float = 0.1
    queue_gain: float = 1.0
    # working-set growth beyond the cache (sessions, buffers, fragmentation)
    heap_growth_per_queue: float = 0.02
    heap_decay_rate: float = 0.0001
    # bandwidth response
    bandwidth_queue_gain: float = 0.002
    bandwidth_pressure_gain: float = 0.06
    # workload shape
    poisson_mean_fraction: float = 0.25
    activity_norm_requests: float = 1000.0
    # rejuvenation trigger smoothing window (ticks)
    trigger_window_ticks: int = 200

    def __post_init__(self):
        positive = (
            "catalog_files",
            "total_memory_mb",
            "base_block_kb",
            "max_block_kb",
            "bandwidth_nominal_kbyte",
            "bandwidth_fail_kbyte",
            "capacity_clients",
            "tick_seconds",
            "file_footprint_mb",
            "queue_drain_rate",
            "blocksize_trigger_ratio",
            "queue_gain",
            "live_refcount_scale",
            "poisson_mean_fraction",
            "activity_norm_requests",
            "trigger_window_ticks",
        )
        nonnegative = (
            "refcount_threshold",
            "initial_cache_mb",
            "baseline_working_set_mb",
            "cache_growth_mb_per_miss",
            "backlog_cache_gain",
            "cache_turnover_rate",
            "sfr_stale_rate",
            "sfr_reclaim_rate",
            "pressure_latency_gain",
            "queue_service_rate",
            "heap_growth_per_queue",
            "heap_decay_rate",
            "bandwidth_queue_gain",
            "bandwidth_pressure_gain",
        )
        for name in positive:
            if not getattr(self, name) > 0:
                raise DomainError(f"config {name} must be positive, got {getattr(self, name)}")
        for name in nonnegative:
            if not getattr(self, name) >= 0:
                raise DomainError(f"config {name} must be nonnegative, got {getattr(self, name)}")
        if self.max_block_kb < self.base_block_kb:
            raise DomainError("max_block_kb must be at least base_block_kb")
        if self.bandwidth_fail_kbyte >= self.bandwidth_nominal_kbyte:
            raise DomainError("bandwidth_fail_kbyte must be below bandwidth_nominal_kbyte")
        if not (0.0 < self.refcount_survival < 1.0):
            raise DomainError("refcount_survival must lie strictly inside (0, 1)")
        if self.queue_drain_rate > 1.0:
            raise DomainError("queue_drain_rate must be at most 1")
        if self.sfr_reclaim_rate > 1.0:
            raise DomainError("sfr_reclaim_rate must be at most 1")
        if self.sfr_stale_rate + self.cache_turnover_rate > 1.0:
            raise DomainError("sfr_stale_rate + cache_turnover_rate must not exceed 1")
        if self.initial_cache_mb + self.baseline_working_set_mb > self.total_memory_mb:
            raise DomainError("initial cache plus baseline working set exceeds total memory")


_INT_CONFIG_FIELDS = {"catalog_files", "capacity_clients", "refcount_threshold", "trigger_window_ticks"}


def load_sim_config(path):
    """Parse a flat key=value config file; unknown keys are parse errors."""
    known = {f.name for f in fields(SimConfig)}
    overrides = {}
    try:
        with open(path, "r", encoding="utf-8-sig") as handle:
            lines = handle.readlines()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    for line_num, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"{path}: line {line_num}: expected key=value, got {raw.strip()!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in known:
            raise ParseError(f"{path}: line {line_num}: unknown config key {key!r}")
        try:
            if key in _INT_CONFIG_FIELDS:
                overrides[key] = int(value)
            else:
                overrides[key] = float(value)
        except ValueError:
            raise ParseError(
                f"{path}: line {line_num}: value for {key} is not numeric: {value!r}"
            ) from None
    try:
        return SimConfig(**overrides)
    except DomainError as exc:
        raise DomainError(f"{path}: {exc}") from None


class PolicyVariant(Enum):
    NONE = "none"
    CACHE_HIT_ADMISSION = "cache-hit"
    PROBABILISTIC_ADMISSION = "probabilistic"
    DISK_BLOCK_RESET = "block-reset"
    MEM_REAP_ENLARGE = "memreap"


@dataclass(frozen=True)
class RejuvenationPolicy:
    """A rejuvenation method plus the aging-degree level that arms it."""

    variant: PolicyVariant = PolicyVariant.NONE
    trigger_threshold: float = 0.5
    admit_probability: float | None = None
    refcount: int | None = None

    def __post_init__(self):
        if not isinstance(self.variant, PolicyVariant):
            raise DomainError(f"unknown policy variant: {self.variant!r}")
        if not (0.0 < self.trigger_threshold <= 1.0):
            raise DomainError(f"trigger threshold out of range (0, 1]: {self.trigger_threshold}")
        if self.variant is PolicyVariant.PROBABILISTIC_ADMISSION:
            if self.admit_probability is None or not (0.0 <= self.admit_probability <= 1.0):
                raise DomainError("probabilistic admission needs admit_probability in [0, 1]")
        elif self.admit_probability is not None:
            raise DomainError("admit_probability is only valid for probabilistic admission")
        if self.variant is PolicyVariant.MEM_REAP_ENLARGE:
            if self.refcount is None or int(self.refcount) != self.refcount or self.refcount < 1:
                raise DomainError("memreap enlargement needs an integer refcount >= 1")
            object.__setattr__(self, "refcount", int(self.refcount))
        elif self.refcount is not None:
            raise DomainError("refcount is only valid for memreap enlargement")

    @classmethod
    def none(cls):
        return cls(PolicyVariant.NONE)

    @classmethod
    def cache_hit(cls, trigger_threshold=0.5):
        return cls(PolicyVariant.CACHE_HIT_ADMISSION, trigger_threshold)

    @classmethod
    def probabilistic(cls, admit_probability, trigger_threshold=0.5):
        return cls(
            PolicyVariant.PROBABILISTIC_ADMISSION, trigger_threshold, admit_probability=admit_probability
        )

    @classmethod
    def disk_block_reset(cls, trigger_threshold=0.5):
        return cls(PolicyVariant.DISK_BLOCK_RESET, trigger_threshold)

    @classmethod
    def mem_reap_enlarge(cls, refcount, trigger_threshold=0.5):
        return cls(PolicyVariant.MEM_REAP_ENLARGE, trigger_threshold, refcount=refcount)


NO_POLICY = RejuvenationPolicy.none()


@dataclass(frozen=True)
class SimState:
    """Snapshot of the server at one tick.

    ``bw_avg_kbyte`` is the trailing smoothed bandwidth feeding the
    rejuvenation trigger; the trace CSV keeps only the seven observable
    columns.
    """

    tick: int
    cache_mb: float
    working_set_mb: float
    disk_queue_len: float
    block_kb: float
    bandwidth_kbyte: float
    sfr_mb: float
    bw_avg_kbyte: float

    def validate(self, cfg):
        if self.tick < 0:
            raise DomainError(f"tick must be nonnegative, got {self.tick}")
        if not (0.0 <= self.sfr_mb <= self.cache_mb):
            raise DomainError(f"sfr_mb {self.sfr_mb} outside [0, cache_mb={self.cache_mb}]")
        if self.cache_mb > self.working_set_mb:
            raise DomainError(
                f"cache_mb {self.cache_mb} exceeds working_set_mb {self.working_set_mb}"
            )
        if self.working_set_mb > cfg.total_memory_mb:
            raise DomainError(
                f"working_set_mb {self.working_set_mb} exceeds total memory {cfg.total_memory_mb}"
            )
        if not (cfg.base_block_kb <= self.block_kb <= cfg.max_block_kb):
            raise DomainError(f"block_kb {self.block_kb} outside configured range")
        if self.disk_queue_len < 0:
            raise DomainError(f"disk_queue_len must be nonnegative, got {self.disk_queue_len}")
        if not (0.0 < self.bandwidth_kbyte <= cfg.bandwidth_nominal_kbyte):
            raise DomainError(f"bandwidth_kbyte {self.bandwidth_kbyte} outside (0, nominal]")


def memory_pressure(working_set_mb, cfg):
    """Saturating pressure m/(1-m) with m = working set over total, clamped."""
    m = min(working_set_mb / cfg.total_memory_mb, 0.995)
    return m / (1.0 - m)


def read_latency(state, cfg):
    """Per-read latency as a multiple of the unloaded read time."""
    return 1.0 + cfg.pressure_latency_gain * memory_pressure(state.working_set_mb, cfg)


def bandwidth_for(queue_len, working_set_mb, cfg):
    """Delivered per-client bandwidth: nominal divided down by queue and pressure."""
    divisor = (
        1.0
        + cfg.bandwidth_queue_gain * queue_len
        + cfg.bandwidth_pressure_gain * memory_pressure(working_set_mb, cfg)
    )
    return cfg.bandwidth_nominal_kbyte / divisor


def aging_level(state, cfg):
    """Online aging degree: one minus trailing bandwidth over nominal."""
    return max(0.0, 1.0 - state.bw_avg_kbyte / cfg.bandwidth_nominal_kbyte)


def init_state(cfg):
    """Freshly started server: cold-ish cache, empty queue, base block size."""
    working = cfg.baseline_working_set_mb + cfg.initial_cache_mb
    bandwidth = bandwidth_for(0.0, working, cfg)
    return SimState(
        tick=0,
        cache_mb=cfg.initial_cache_mb,
        working_set_mb=working,
        disk_queue_len=0.0,
        block_kb=cfg.base_block_kb,
        bandwidth_kbyte=bandwidth,
        sfr_mb=0.0,
        bw_avg_kbyte=bandwidth,
    )


def validate_workload(load, cfg):
    """Checks that need the config: catalog coverage and client capacity."""
    if load.file_object > cfg.catalog_files:
        raise DomainError(
            f"file_object ({load.file_object}) exceeds catalog_files ({cfg.catalog_files})"
        )
    if load.client_count > cfg.capacity_clients:
        raise DomainError(
            f"client_count ({load.client_count}) exceeds capacity_clients "
            f"({cfg.capacity_clients}); the server restarts at that point"
        )


def _poisson_top_mass(file_object, cached_files, cfg):
    """Probability mass of the cached (most popular) files under Poisson popularity."""
    lam = max(cfg.poisson_mean_fraction * file_object, 1e-9)
    pmf = np.empty(file_object)
    pmf[0] = math.exp(-lam)
    for k in range(1, file_object):
        pmf[k] = pmf[k - 1] * lam / k
    pmf /= pmf.sum()
    ranked = np.sort(pmf)[::-1]
    whole = int(math.floor(cached_files))
    mass = float(ranked[:whole].sum())
    if whole < file_object:
        mass += (cached_files - whole) * float(ranked[whole])
    return min(mass, 1.0)


def _miss_probability(load, cached_files, file_object):
    """Fraction of requests that cannot be served from cache."""
    if load.file_dist is FileDist.SINGLE_FILE:
        return 0.0 if cached_files >= 1.0 else 1.0
    coverage = min(cached_files / file_object, 1.0)
    return 1.0 - coverage


def step(state, load, cfg, policy=NO_POLICY, rng=None):
    """Advance one 15-second tick; pure function of (state, load, cfg, policy, rng)."""
    state.validate(cfg)
    validate_workload(load, cfg)
    if rng is None:
        rng = np.random.default_rng(0)

    active = policy.variant is not PolicyVariant.NONE and aging_level(state, cfg) >= policy.trigger_threshold

    # --- request arrivals -------------------------------------------------
    admitted_clients = min(load.client_count, cfg.capacity_clients)
    tick_ms = cfg.tick_seconds * 1000.0
    requests = int(round(admitted_clients * tick_ms / max(load.sleep_time_ms, 1)))
    if active and policy.variant is PolicyVariant.PROBABILISTIC_ADMISSION:
        # mean-value thinning keeps p=1.0 bit-identical to no policy at all
        requests = int(round(requests * policy.admit_probability))

    # --- file mix and cache misses ---------------------------------------
    if load.file_difference is FileDifference.SAME:
        file_object = 1
        file_max = 1
    else:
        file_object = load.file_object
        file_max = min(load.file_max_object, file_object)
    churn = (file_object - file_max) / file_object

    live_mb = state.cache_mb - state.sfr_mb
    cached_files = min(float(file_object), live_mb / cfg.file_footprint_mb)
    if load.file_dist is FileDist.POISSON:
        p_miss = 1.0 - _poisson_top_mass(file_object, cached_files, cfg)
    else:
        p_miss = _miss_probability(load, cached_files, file_object)
    p_miss = min(max(p_miss, 0.0), 1.0)

    if requests == 0 or (active and policy.variant is PolicyVariant.CACHE_HIT_ADMISSION):
        # cache-hit admission turns every would-be miss away at the door
        misses = 0
    elif load.file_dist in (FileDist.RANDOM, FileDist.POISSON):
        misses = int(rng.binomial(requests, p_miss))
    else:
        misses = int(round(requests * p_miss))
    activity = min(1.0, requests / cfg.activity_norm_requests)

    # --- block size escalation (or pinned reset) --------------------------
    latency = read_latency(state, cfg)
    if active and policy.variant is PolicyVariant.DISK_BLOCK_RESET:
        block = cfg.base_block_kb
    else:
        block = state.block_kb
        if block < cfg.max_block_kb and latency > cfg.blocksize_trigger_ratio * (
            block / cfg.base_block_kb
        ):
            block = min(block * 2.0, cfg.max_block_kb)

    # --- disk queue -------------------------------------------------------
    demand = misses * (block / cfg.base_block_kb) / 1000.0
    queue = max(
        0.0,
        (1.0 - cfg.queue_drain_rate) * state.disk_queue_len
        + cfg.queue_gain * (demand - cfg.queue_service_rate),
    )

    # --- cache, stale pool, reclaim ---------------------------------------
    damp = max(0.0, 1.0 - state.working_set_mb / cfg.total_memory_mb)
    # backlog data is parked in memory whether or not memory is tight; only
    # fresh read-ahead growth is throttled by free memory
    growth = misses * cfg.cache_growth_mb_per_miss * damp + cfg.backlog_cache_gain * state.disk_queue_len
    threshold = (
        policy.refcount
        if (active and policy.variant is PolicyVariant.MEM_REAP_ENLARGE)
        else cfg.refcount_threshold
    )
    stale_reclaimable = 1.0 - cfg.refcount_survival ** (threshold + 1)
    live_reclaimable = 1.0 - math.exp(-threshold / cfg.live_refcount_scale)
    reclaim_stale = cfg.sfr_reclaim_rate * stale_reclaimable * state.sfr_mb
    reclaim_live = cfg.sfr_reclaim_rate * live_reclaimable * live_mb
    stale_gen = cfg.sfr_stale_rate * churn * live_mb * activity
    turnover = cfg.cache_turnover_rate * live_mb * activity

    sfr = max(0.0, state.sfr_mb + stale_gen - reclaim_stale)
    live = max(0.0, live_mb + growth - stale_gen - turnover - reclaim_live)
    cache = sfr + live

    # --- working set beyond the cache --------------------------------------
    heap = state.working_set_mb - cfg.baseline_working_set_mb - state.cache_mb
    heap = max(
        0.0,
        heap + cfg.heap_growth_per_queue * state.disk_queue_len * damp - cfg.heap_decay_rate * heap,
    )
    working = cfg.baseline_working_set_mb + cache + heap
    if working > cfg.total_memory_mb:  # damping keeps this unreachable; stay safe
        overflow = working - cfg.total_memory_mb
        shaved = min(heap, overflow)
        heap -= shaved
        overflow -= shaved
        if overflow > 0.0:
            live = max(0.0, live - overflow)
            cache = sfr + live
        working = min(cfg.baseline_working_set_mb + cache + heap, cfg.total_memory_mb)

    # --- observable bandwidth and the trailing trigger average ------------
    bandwidth = bandwidth_for(queue, working, cfg)
    bw_avg = state.bw_avg_kbyte + (bandwidth - state.bw_avg_kbyte) / cfg.trigger_window_ticks

    new_state = SimState(
        tick=state.tick + 1,
        cache_mb=cache,
        working_set_mb=working,
        disk_queue_len=queue,
        block_kb=block,
        bandwidth_kbyte=bandwidth,
        sfr_mb=sfr,
        bw_avg_kbyte=bw_avg,
    )
    new_state.validate(cfg)
    return new_state


def run(cfg, load, policy=NO_POLICY, ticks=4000, seed=0):
    """Simulate ticks steps from a fresh server; returns ticks+1 states."""
    if ticks < 0:
        raise DomainError(f"ticks must be nonnegative, got {ticks}")
    validate_workload(load, cfg)
    rng = np.random.default_rng(seed)
    states = [init_state(cfg)]
    for _ in range(ticks):
        states.append(step(states[-1], load, cfg, policy, rng))
    return states


def apply_policy_experiment(cfg, load, policy, ticks, rejuvenation_tick, seed=0):
    """Run unpoliced until rejuvenation_tick, then with the policy; one RNG stream.

    Returns (before, after): states 0..rejuvenation_tick and the rest.
    """
    if not (0 < rejuvenation_tick < ticks):
        raise DomainError(
            f"rejuvenation_tick must fall inside (0, {ticks}), got {rejuvenation_tick}"
        )
    validate_workload(load, cfg)
    rng = np.random.default_rng(seed)
    before = [init_state(cfg)]
    for _ in range(rejuvenation_tick):
        before.append(step(before[-1], load, cfg, NO_POLICY, rng))
    after = []
    current = before[-1]
    for _ in range(ticks - rejuvenation_tick):
        current = step(current, load, cfg, policy, rng)
        after.append(current)
    return before, after


def trace_csv(states):
    """Render states as CSV text with the pinned seven-column header."""
    lines = [",".join(TRACE_HEADER)]
    for s in states:
        lines.append(
            ",".join(
                [
                    str(s.tick),
                    format_float(s.cache_mb),
                    format_float(s.working_set_mb),
                    format_float(s.disk_queue_len),
                    format_float(s.block_kb),
                    format_float(s.bandwidth_kbyte),
                    format_float(s.sfr_mb),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def write_trace(path, states):
    write_text_atomic(path, trace_csv(states))


def load_trace(path):
    """Read a trace CSV back as {column: array}; validates the header."""
    try:
        with open(path, "r", encoding="utf-8-sig") as handle:
            lines = [line.rstrip("\r\n") for line in handle if line.strip()]
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    if not lines:
        raise ParseError(f"{path}: file is empty")
    header = tuple(cell.strip() for cell in lines[0].split(","))
    if header != TRACE_HEADER:
        raise ParseError(f"{path}: expected trace header '{','.join(TRACE_HEADER)}'")
    columns = {name: [] for name in TRACE_HEADER}
    for line_num, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != len(TRACE_HEADER):
            raise ParseError(f"{path}: row {line_num}: expected {len(TRACE_HEADER)} fields")
        for name, part in zip(TRACE_HEADER, parts):
            try:
                columns[name].append(float(part))
            except ValueError:
                raise ParseError(
                    f"{path}: row {line_num}: field {name} is not numeric: {part!r}"
                ) from None
    if not columns["tick"]:
        raise ParseError(f"{path}: no data rows")
    return {name: np.asarray(vals) for name, vals in columns.items()}


def aging_degree(states, cfg, smoothing=None):
    """Bandwidth trace -> smoothed, normalized aging curve on an hour axis."""
    if len(states) < 3:
        raise DomainError("aging_degree needs at least 3 states")
    t_hours = np.array([s.tick * cfg.tick_seconds / 3600.0 for s in states])
    bandwidth = np.array([s.bandwidth_kbyte for s in states])
    series = MetricSeries(
        name="bandwidth_kbyte",
        unit="kbyte",
        orientation=Orientation.LOWER_IS_WORSE,
        t=t_hours,
        values=bandwidth,
    )
    return to_aging_curve(series, smoothing or SmoothingConfig())
