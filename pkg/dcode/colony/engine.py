# Standard
from typing import List, Optional, Sequence
import time

# Third Party
import numpy as np

# Local
from dcode.base.instance import Instance
from dcode.base.parallel import run_batch
from dcode.base.record import RunRecord
from dcode.colony.config import ColonyConfig
from dcode.colony.fields import (
    DISTANCE_FLOOR,
    HeuristicField,
    PheromoneField,
    candidate_lists,
    deposit,
    evaporate,
    log_weights,
    normalize_log_weights,
)
from dcode.efficiency.controller import EfficiencyController
from dcode.problems.core import Tour, TspInstance, make_tour, nearest_neighbor_tour
from dcode.problems.rng import SeededRng, derive_rng
from dcode.utils import dcode_logger


def roulette(probs: np.ndarray, u: float) -> int:
    """Cumulative-sum selection; the last bucket absorbs floating-point residue"""
    idx = int(np.searchsorted(np.cumsum(probs), u, side="right"))
    return min(idx, probs.shape[0] - 1)


def construct_tour(
    instance: TspInstance,
    pher: PheromoneField,
    heur: HeuristicField,
    cfg: ColonyConfig,
    rng: SeededRng,
    candidates: Optional[Sequence[np.ndarray]] = None,
    choice_info: Optional[np.ndarray] = None,
) -> Tour:
    """One ant: uniform start city, then a weighted draw over the unvisited cities at every step

    With candidate lists the draw is restricted to unvisited candidates, falling back to all
    unvisited cities once every candidate has been visited. `choice_info` is the precomputed
    log-weight matrix shared by all ants of an iteration.
    """
    n = instance.n
    if pher.n != n or heur.eta.shape[0] != n:
        raise ValueError(f"Fields are sized {pher.n}, instance {instance.name} has {n} cities")
    if choice_info is None:
        choice_info = log_weights(pher.tau, heur.eta, cfg.alpha, cfg.beta)

    visited = np.zeros(n, dtype=bool)
    current = rng.integers(0, n)
    visited[current] = True
    order = [current]
    for _ in range(n - 1):
        allowed = None
        if candidates is not None:
            cand = candidates[current]
            allowed = cand[~visited[cand]]
        if allowed is None or allowed.size == 0:
            allowed = np.flatnonzero(~visited)
        if allowed.size == 1:
            current = int(allowed[0])
        else:
            probs = normalize_log_weights(choice_info[current, allowed])
            current = int(allowed[roulette(probs, rng.random())])
        visited[current] = True
        order.append(current)
    return make_tour(instance, order)


def initial_pheromone(instance: TspInstance, cfg: ColonyConfig) -> PheromoneField:
    """MAX-MIN style start: tau_max = tau_init = 1/(rho C_nn), tau_min = tau_max/(2n)"""
    if cfg.tau_init is not None:
        tau_init = cfg.tau_init
    else:
        nn_cost = max(nearest_neighbor_tour(instance, 0).cost, DISTANCE_FLOOR)
        tau_init = 1.0 / (cfg.rho * nn_cost) if cfg.rho > 0 else 1.0 / nn_cost
    if cfg.use_bounds:
        return PheromoneField.uniform(instance.n, tau_init, tau_init / (2 * instance.n), tau_init)
    return PheromoneField.uniform(instance.n, tau_init)


def run_dco(
    instance: TspInstance,
    cfg: ColonyConfig,
    controller: Optional[EfficiencyController],
    rng: SeededRng,
    candidates: Optional[List[np.ndarray]] = None,
    threads: int = 1,
) -> RunRecord:
    """Colony search: per iteration recalibrate, construct m tours, evaporate, deposit

    Without a controller this is the classic MAX-MIN style ant system. Every ant draws from
    its own derived stream, so the record does not depend on `threads`.
    """
    if cfg.max_iterations < 1:
        raise ValueError("run_dco needs a budget of at least one iteration")

    # a fresh controller per run; schedule resets must not leak between runs
    if controller is not None:
        controller = EfficiencyController(controller.schedule, controller.policy)

    start_time = time.perf_counter()
    heur = HeuristicField.from_instance(instance)
    pher = initial_pheromone(instance, cfg)
    if candidates is None and cfg.candidate_list_size > 0:
        candidates = candidate_lists(instance, cfg.candidate_list_size)
    stride = controller.max_colony_size(cfg) if controller is not None else cfg.m

    record = RunRecord()
    global_best: Optional[Tour] = None
    for t in range(1, cfg.max_iterations + 1):
        cfg_t = controller.config_for(cfg, t) if controller is not None else cfg
        choice_info = log_weights(pher.tau, heur.eta, cfg_t.alpha, cfg_t.beta)

        inputs = [
            Instance(
                args=(instance, pher, heur, cfg_t, derive_rng(rng, t * stride + ant)),
                kwargs={"candidates": candidates, "choice_info": choice_info},
                idx=ant,
            )
            for ant in range(cfg_t.m)
        ]
        run_batch(construct_tour, inputs, threads)
        tours: List[Tour] = [x.result for x in inputs]
        record.evaluations += len(tours)

        iteration_best = min(tours, key=lambda tour: tour.cost)
        if global_best is None or iteration_best.cost < global_best.cost:
            global_best = iteration_best

        pher = evaporate(pher, cfg_t.rho)
        pher = deposit(pher, iteration_best, global_best, cfg.q_deposit, t, cfg.global_best_period)
        assert pher.within_bounds(), f"Pheromone left [tau_min, tau_max] at iteration {t}"

        record.append(global_best.cost)
        record.parameter_trace.append((float(cfg_t.rho), int(cfg_t.m)))
        if controller is not None and controller.observe(record, t):
            record.resets += 1

        if t % 50 == 0 or t == cfg.max_iterations:
            dcode_logger.debug(
                "%s iteration %s: best %.3f (rho %.4f, m %s)",
                instance.name,
                t,
                global_best.cost,
                cfg_t.rho,
                cfg_t.m,
            )

    record.best_tour = global_best
    record.wall_time = time.perf_counter() - start_time
    return record

