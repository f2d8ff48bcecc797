import logging
from collections import deque
from heapq import heappop, heappush
from typing import Callable, Deque, Final, List, Optional, Set, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from pyscaleq.model import SystemParams
from pyscaleq.variates import VariateStream

from .config import SimConfig
from .seq_counter import EventSequence

log = logging.getLogger('pyscaleq.Simulator')


# priorities of simultaneous events
DEPARTURE: Final = 0
SETUP_DONE: Final = 1
ARRIVAL: Final = 2

# (time, active dynamic instances, jobs, instances in setup)
TYPE_OBSERVER = Callable[[float, int, int, int], None]


class ReplicationStats(BaseModel):
    """Statistics of one replication, collected after the warmup"""
    model_config = ConfigDict(extra='forbid', frozen=True)

    index: int
    L: float
    W: float
    Wq: float
    Pb: float
    S: float
    accepted: int
    blocked: int
    arrivals: int
    observed_time: float


def replication_streams(config: SimConfig, index: int) -> Tuple[np.random.Generator, ...]:
    """Independent generators for interarrival, service and setup durations of one replication"""
    seq = np.random.SeedSequence(config.seed, spawn_key=(index, ))
    return tuple(np.random.default_rng(child) for child in seq.spawn(3))


def simulate_once(params: SystemParams, config: SimConfig, index: int,
                  observer: Optional[TYPE_OBSERVER] = None) -> ReplicationStats:
    """Run one replication of the system.

    :param params: model configuration
    :param config: simulation configuration, means default to the model rates
    :param index: replication index, selects the random substream
    :param observer: called with the state after every processed event
    """
    config = config.bound(params)
    arrival_rng, service_rng, setup_rng = replication_streams(config, index)
    next_interarrival = VariateStream(config.interarrival.sampler(), arrival_rng).next
    next_service = VariateStream(config.service.sampler(), service_rng).next
    next_setup = VariateStream(config.setup.sampler(), setup_rng).next

    n0 = params.n0
    N = params.N
    K = params.K
    horizon = config.horizon
    warmup = config.effective_warmup

    seq = EventSequence()
    events: List[tuple] = []
    heappush(events, (next_interarrival(), ARRIVAL, seq.value, 0.0))

    i = 0
    j = 0
    queue: Deque[float] = deque()   # arrival times of waiting jobs
    setups: List[int] = []          # running setups in start order
    pending: Set[int] = set()

    last = 0.0
    area_jobs = 0.0
    area_instances = 0.0
    accepted = 0
    blocked = 0
    wait_sum = 0.0
    wait_count = 0
    sojourn_sum = 0.0
    sojourn_count = 0

    while True:
        t, kind, key, arrived = heappop(events)
        if t > horizon:
            break

        # cancelled setup
        if kind == SETUP_DONE and key not in pending:
            continue

        if t > warmup:
            dt = t - (last if last > warmup else warmup)
            area_jobs += j * dt
            area_instances += (i + len(setups)) * dt
        last = t

        if kind == ARRIVAL:
            heappush(events, (t + next_interarrival(), ARRIVAL, seq.value, 0.0))
            observed = t >= warmup
            if j == K:
                if observed:
                    blocked += 1
            else:
                if observed:
                    accepted += 1
                j += 1
                if j <= n0 + i:
                    if observed:
                        wait_count += 1
                    heappush(events, (t + next_service(), DEPARTURE, seq.value, t))
                else:
                    queue.append(t)

        elif kind == DEPARTURE:
            if arrived >= warmup:
                sojourn_sum += t - arrived
                sojourn_count += 1
            j -= 1
            if queue:
                head = queue.popleft()
                if head >= warmup:
                    wait_sum += t - head
                    wait_count += 1
                heappush(events, (t + next_service(), DEPARTURE, seq.value, head))
            elif i > 0 and j < n0 + i:
                # idle dynamic server is powered off
                i -= 1

        else:
            pending.discard(key)
            setups.remove(key)
            i += 1
            head = queue.popleft()
            if head >= warmup:
                wait_sum += t - head
                wait_count += 1
            heappush(events, (t + next_service(), DEPARTURE, seq.value, head))

        n_i = n0 + i
        needed = min(max(j - n_i, 0), N - n_i)
        while len(setups) < needed:
            key = seq.value
            setups.append(key)
            pending.add(key)
            heappush(events, (t + next_setup(), SETUP_DONE, key, 0.0))
        while len(setups) > needed:
            pending.discard(setups.pop())

        if observer is not None:
            observer(t, i, j, len(setups))

    dt = horizon - (last if last > warmup else warmup)
    area_jobs += j * dt
    area_instances += (i + len(setups)) * dt

    observed_time = horizon - warmup
    arrivals = accepted + blocked
    stats = ReplicationStats(
        index=index,
        L=area_jobs / observed_time,
        W=sojourn_sum / sojourn_count if sojourn_count else 0.0,
        Wq=wait_sum / wait_count if wait_count else 0.0,
        Pb=blocked / arrivals if arrivals else 0.0,
        S=area_instances / observed_time,
        accepted=accepted,
        blocked=blocked,
        arrivals=arrivals,
        observed_time=observed_time,
    )
    log.debug(f'Replication {index:d}: {arrivals:d} arrivals, L={stats.L:.4g} Wq={stats.Wq:.4g} '
              f'S={stats.S:.4g} Pb={stats.Pb:.4g}')
    return stats
