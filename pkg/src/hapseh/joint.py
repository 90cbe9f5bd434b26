"""Joint optimisation of the platform offset and the EH time-switch factor.

Three solvers share one discretised search space (:class:`GridSpec`):

* :func:`idfa` -- alternating argmax over offset and factor;
* :func:`qlearn_train` -- tabular Q-learning where every cell is a state
  and every cell is an action (the action *is* the next state);
* :func:`exhaustive_joint` -- full scan, the reference ceiling.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError
from .geometry import MIN_OFFSET
from .link import EH_MODELS, Scenario

MAX_CELLS = 10**6

#: Offsets and factors of the three fixed-offset scenarios used as the
#: unoptimised reference.
REFERENCE_D_A = (8e3, 10e3, 15e3)
REFERENCE_TAU = (0.1, 0.4, 0.9)


@dataclass(frozen=True)
class GridSpec:
    d_a_points: np.ndarray
    tau_points: np.ndarray

    def __post_init__(self):
        d_a = np.asarray(self.d_a_points, dtype=float).ravel()
        tau = np.asarray(self.tau_points, dtype=float).ravel()
        object.__setattr__(self, "d_a_points", d_a)
        object.__setattr__(self, "tau_points", tau)
        for name, v in (("d_a_points", d_a), ("tau_points", tau)):
            if v.size == 0:
                raise ConfigError("must not be empty", name)
            if np.any(np.diff(v) <= 0):
                raise ConfigError("must be strictly increasing", name)
            if not np.all(np.isfinite(v)):
                raise ConfigError("must be finite", name)
        if d_a[0] <= 0:
            raise ConfigError("[27c] offsets must be > 0", "d_a_points")
        if tau[0] <= 0 or tau[-1] >= 1:
            raise ConfigError("[27b] factors must lie in (0, 1)", "tau_points")

    @property
    def shape(self) -> tuple[int, int]:
        return (self.d_a_points.size, self.tau_points.size)

    @property
    def size(self) -> int:
        return self.d_a_points.size * self.tau_points.size

    def check_span(self, d_z: float):
        if self.d_a_points[-1] > d_z:
            raise ConfigError(f"[27c] offsets must not exceed d_z={d_z}", "d_a_points")

    def nearest(self, d_a: float, tau: float) -> tuple[int, int]:
        return (int(np.argmin(np.abs(self.d_a_points - d_a))),
                int(np.argmin(np.abs(self.tau_points - tau))))

    @classmethod
    def default(cls, d_z: float, n_d_a: int = 201, n_tau: int = 99) -> "GridSpec":
        """Uniform grid on ``[0, d_z] x [0.01, 0.99]`` with the zero offset lifted to 1 m."""
        d_a = np.linspace(0.0, d_z, n_d_a)
        d_a[0] = min(MIN_OFFSET, d_a[1] / 2) if n_d_a > 1 else max(d_a[0], MIN_OFFSET)
        return cls(d_a, np.linspace(0.01, 0.99, n_tau))

    @classmethod
    def reference_pairs(cls) -> "GridSpec":
        return cls(np.array(REFERENCE_D_A), np.array(REFERENCE_TAU))


@dataclass(frozen=True)
class IdfaConfig:
    n_max: int = 50
    epsilon: float = 1.0  # bit/s
    init_d_a: float | None = None
    init_tau: float | None = None

    def __post_init__(self):
        if self.n_max < 1:
            raise ConfigError("must be >= 1", "n_max")
        if not self.epsilon > 0:
            raise ConfigError("must be > 0", "epsilon")


@dataclass(frozen=True)
class QLearnConfig:
    learning_rate: float = 0.1
    discount: float = 0.9
    eps_initial: float = 1.0
    eps_decay: float = 0.995
    eps_floor: float = 0.05
    episodes: int = 2000
    steps_per_episode: int = 50
    seed: int = 0
    initial_q: float = 0.0

    def __post_init__(self):
        for name in ("learning_rate", "discount", "eps_initial", "eps_decay", "eps_floor"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ConfigError(f"must lie in [0, 1], got {v}", name)
        if self.episodes < 1 or self.steps_per_episode < 1:
            raise ConfigError("episodes and steps_per_episode must be >= 1")

    def epsilon(self, episode: int) -> float:
        return max(self.eps_floor, self.eps_initial * self.eps_decay ** episode)


@dataclass
class OptimizationResult:
    d_a_star: float
    tau_star: float
    rate: float
    trace: np.ndarray
    method: str
    model: str
    metadata: dict = field(default_factory=dict)


def _check_model(model):
    if model not in EH_MODELS:
        raise ConfigError(f"unknown model {model!r}; expected one of {EH_MODELS}", "model")


def rate_grid(scenario: Scenario, model: str, grid: GridSpec) -> np.ndarray:
    """Rate over the full grid, shape ``(n_d_a, n_tau)``."""
    return np.asarray(scenario.rate(model, grid.d_a_points[:, None], grid.tau_points[None, :]))


def _grid_meta(grid: GridSpec) -> dict:
    return {"d_a_points": grid.d_a_points.tolist(), "tau_points": grid.tau_points.tolist()}


def exhaustive_joint(scenario: Scenario, model: str, grid: GridSpec) -> OptimizationResult:
    """Best grid cell; ties go to the smaller factor, then the smaller offset."""
    _check_model(model)
    if grid.size > MAX_CELLS:
        raise ConfigError(f"grid has {grid.size} cells, limit is {MAX_CELLS}", "grid")
    grid.check_span(scenario.geometry.d_z)
    rates = rate_grid(scenario, model, grid)
    # tau-major order puts smaller tau first, then smaller d_a
    k = int(np.argmax(rates.T.ravel()))
    j, i = divmod(k, grid.shape[0])
    return OptimizationResult(float(grid.d_a_points[i]), float(grid.tau_points[j]),
                              float(rates[i, j]), np.array([rates[i, j]]), "exhaustive",
                              model, {"grid": _grid_meta(grid), "shape": list(grid.shape)})


def idfa(scenario: Scenario, model: str, grid: GridSpec,
         cfg: IdfaConfig = IdfaConfig()) -> OptimizationResult:
    """Iterative distance and EH-factor algorithm (coordinate ascent on the grid).

    Each round maximises the rate over all offsets with the factor held,
    then over all factors with the offset held. Stops once a round improves
    the rate by less than ``cfg.epsilon`` or after ``cfg.n_max`` rounds.
    """
    _check_model(model)
    grid.check_span(scenario.geometry.d_z)
    d_a0 = scenario.geometry.d_a if cfg.init_d_a is None else cfg.init_d_a
    tau0 = scenario.time_switch.tau if cfg.init_tau is None else cfg.init_tau
    i, j = grid.nearest(d_a0, tau0)
    d_pts, t_pts = grid.d_a_points, grid.tau_points

    r_prev = 0.0
    trace = []
    for _ in range(cfg.n_max):
        i = int(np.argmax(scenario.rate(model, d_pts, t_pts[j])))
        j = int(np.argmax(scenario.rate(model, d_pts[i], t_pts)))
        r = float(scenario.rate(model, d_pts[i], t_pts[j]))
        trace.append(r)
        if r - r_prev < cfg.epsilon:
            break
        r_prev = r
    meta = {"grid": _grid_meta(grid), "n_max": cfg.n_max, "epsilon": cfg.epsilon,
            "init": [float(d_pts[grid.nearest(d_a0, tau0)[0]]),
                     float(t_pts[grid.nearest(d_a0, tau0)[1]])],
            "rounds": len(trace)}
    return OptimizationResult(float(d_pts[i]), float(t_pts[j]), trace[-1], np.array(trace),
                              "idfa", model, meta)


class SparseQTable:
    """Action-value table with lazily materialised rows.

    The state and action sets are both the grid cells, so a dense table has
    ``n**2`` entries. Unvisited entries hold ``initial``.
    """

    def __init__(self, n_cells: int, initial: float = 0.0):
        self.n = n_cells
        self.initial = float(initial)
        self.rows: list[dict[int, float]] = [dict() for _ in range(n_cells)]
        self.row_max = np.full(n_cells, self.initial)
        self.row_argmax = np.full(n_cells, -1, dtype=np.int64)

    def get(self, s: int, a: int) -> float:
        return self.rows[s].get(a, self.initial)

    def set(self, s: int, a: int, value: float):
        row = self.rows[s]
        row[a] = value
        if value > self.row_max[s] or (value == self.row_max[s] and self.row_argmax[s] < 0):
            self.row_max[s] = value
            self.row_argmax[s] = a
        elif a == self.row_argmax[s] and value < self.row_max[s]:
            best_a = max(row, key=row.get)
            best = row[best_a]
            if len(row) < self.n and best < self.initial:
                self.row_max[s], self.row_argmax[s] = self.initial, -1
            else:
                self.row_max[s], self.row_argmax[s] = best, best_a

    def max_entry(self) -> float:
        vals = [v for row in self.rows for v in row.values()]
        return max(vals, default=self.initial)

    def column_max(self) -> np.ndarray:
        """``max_s Q(s, a)`` over materialised entries (``-inf`` if never stored)."""
        out = np.full(self.n, -np.inf)
        for row in self.rows:
            for a, v in row.items():
                if v > out[a]:
                    out[a] = v
        return out

    def to_dense(self) -> np.ndarray:
        if self.n > 4096:
            raise MemoryError(f"dense table would have {self.n ** 2} entries")
        q = np.full((self.n, self.n), self.initial)
        for s, row in enumerate(self.rows):
            for a, v in row.items():
                q[s, a] = v
        return q


def qlearn_train(scenario: Scenario, model: str, grid: GridSpec,
                 cfg: QLearnConfig = QLearnConfig()):
    """Train a tabular Q-learning agent over the grid.

    Each episode starts in a uniformly random cell. An action selects the
    next cell outright; its reward is that cell's rate. Exploration is
    epsilon-greedy with a per-episode geometric decay. The returned cell is
    the action with the largest learned value (ties broken by observed
    reward, then by smaller cell index).

    Returns
    -------
    (OptimizationResult, SparseQTable)
        The result trace holds the mean reward of each episode.
    """
    _check_model(model)
    n = grid.size
    if n > MAX_CELLS:
        raise ConfigError(f"grid has {n} cells, limit is {MAX_CELLS}", "grid")
    grid.check_span(scenario.geometry.d_z)
    n_tau = grid.shape[1]
    rewards = rate_grid(scenario, model, grid).ravel()  # cell = i * n_tau + j
    r_list = rewards.tolist()

    rng = np.random.default_rng(cfg.seed)
    q = SparseQTable(n, cfg.initial_q)
    alpha, gamma = cfg.learning_rate, cfg.discount
    visited = np.zeros(n, dtype=bool)
    trace = np.empty(cfg.episodes)

    for ep in range(cfg.episodes):
        eps = cfg.epsilon(ep)
        s = int(rng.integers(n))
        explore = (rng.random(cfg.steps_per_episode) < eps).tolist()
        random_a = rng.integers(n, size=cfg.steps_per_episode).tolist()
        total = 0.0
        for t in range(cfg.steps_per_episode):
            greedy = int(q.row_argmax[s])
            a = random_a[t] if explore[t] or greedy < 0 else greedy
            r = r_list[a]
            old = q.get(s, a)
            target = r + gamma * q.row_max[a]
            if alpha > 0:
                q.set(s, a, old + alpha * (target - old))
            visited[a] = True
            total += r
            s = a
        trace[ep] = total / cfg.steps_per_episode

    colmax = q.column_max()
    cand = np.flatnonzero(visited)
    # lexsort: last key is primary
    order = np.lexsort((cand, -rewards[cand], -colmax[cand]))
    best = int(cand[order[0]])
    i, j = divmod(best, n_tau)
    meta = {"grid": _grid_meta(grid), "learning_rate": alpha, "discount": gamma,
            "eps_initial": cfg.eps_initial, "eps_decay": cfg.eps_decay,
            "eps_floor": cfg.eps_floor, "episodes": cfg.episodes,
            "steps_per_episode": cfg.steps_per_episode, "seed": cfg.seed,
            "initial_q": cfg.initial_q, "cells_visited": int(visited.sum())}
    res = OptimizationResult(float(grid.d_a_points[i]), float(grid.tau_points[j]),
                             float(rewards[best]), trace, "qlearn", model, meta)
    return res, q


def random_selection(scenario: Scenario, model: str, d_a_points=REFERENCE_D_A,
                     draws: int = 10, seed: int = 0) -> OptimizationResult:
    """Unoptimised reference: per fixed offset, best of ``draws`` random factors."""
    _check_model(model)
    if draws < 1:
        raise ConfigError("must be >= 1", "draws")
    rng = np.random.default_rng(seed)
    d_a = np.asarray(d_a_points, dtype=float)
    taus = rng.uniform(0.01, 0.99, size=(d_a.size, draws))
    rates = np.asarray(scenario.rate(model, d_a[:, None], taus))
    per = rates.max(axis=1)
    i = int(np.argmax(per))
    j = int(np.argmax(rates[i]))
    return OptimizationResult(float(d_a[i]), float(taus[i, j]), float(per[i]), per,
                              "random", model, {"draws": draws, "seed": seed,
                                                "d_a_points": d_a.tolist()})
