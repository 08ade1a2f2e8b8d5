from enum import StrEnum
from statistics import fmean, pvariance

from pydantic import BaseModel, Field

from hoodhash.errors import ContractViolation
from hoodhash.kcas import PAYLOAD_LIMIT
from hoodhash.oracle.serial import LinearProbeTable, SerialTable
from hoodhash.rng import SplitMix64
from hoodhash.table.hashing import NIL, calc_dist


class ProbeStrategy(StrEnum):
    ROBIN_HOOD = "robin-hood"
    LINEAR = "linear"


class ProbeStats(BaseModel):
    strategy: ProbeStrategy
    capacity_log2: int
    load_factor: float
    seeds: list[int]
    members: int
    mean_successful: float = Field(description="Mean cells probed to find a stored key (DFB + 1).")
    mean_unsuccessful: float = Field(description="Mean cells probed for an absent key, averaged over home buckets.")
    max_dfb: int
    dfb_variance: float


def fill(table: SerialTable | LinearProbeTable, load_factor: float, seed: int) -> list[int]:
    """Insert uniform random keys until ``round(load_factor * capacity)`` are stored."""
    target = round(load_factor * table.capacity)
    rng = SplitMix64(seed)
    keys: list[int] = []
    while len(keys) < target:
        key = rng.below(PAYLOAD_LIMIT - 1) + 1
        if table.seq_add(key):
            keys.append(key)
    return keys


def _unsuccessful_probes(cells: list[int], mask: int, strategy: ProbeStrategy) -> list[int]:
    """Probe length an absent key would need, for every possible home bucket."""
    lengths = []
    for home in range(mask + 1):
        i, cur_dist = home, 0
        while cur_dist <= mask:
            cur_key = cells[i]
            if cur_key == NIL:
                break
            if strategy is ProbeStrategy.ROBIN_HOOD and calc_dist(cur_key, i, mask) < cur_dist:
                break
            i = (i + 1) & mask
            cur_dist += 1
        lengths.append(cur_dist + 1)
    return lengths


def probe_stats(
    load_factor: float,
    capacity_log2: int = 16,
    seeds: list[int] | int = 0,
    strategy: ProbeStrategy = ProbeStrategy.ROBIN_HOOD,
) -> ProbeStats:
    """
    Fill fresh tables to ``load_factor`` and measure probe counts.

    Results over several seeds are pooled: means are over all stored keys (or all
    home buckets) of all tables.
    """
    if not 0 < load_factor < 1:
        raise ContractViolation(f"load_factor must be in (0, 1), got {load_factor}")
    seed_list = [seeds] if isinstance(seeds, int) else list(seeds)
    dfbs: list[int] = []
    unsuccessful: list[int] = []
    for seed in seed_list:
        table: SerialTable | LinearProbeTable
        table = SerialTable(capacity_log2) if strategy is ProbeStrategy.ROBIN_HOOD else LinearProbeTable(capacity_log2)
        fill(table, load_factor, seed)
        dfbs.extend(calc_dist(k, i, table.mask) for i, k in enumerate(table.cells) if k != NIL)
        unsuccessful.extend(_unsuccessful_probes(table.cells, table.mask, strategy))
    return ProbeStats(
        strategy=strategy,
        capacity_log2=capacity_log2,
        load_factor=load_factor,
        seeds=seed_list,
        members=len(dfbs),
        mean_successful=fmean(d + 1 for d in dfbs) if dfbs else 1.0,
        mean_unsuccessful=fmean(unsuccessful),
        max_dfb=max(dfbs, default=0),
        dfb_variance=pvariance(dfbs) if len(dfbs) > 1 else 0.0,
    )
