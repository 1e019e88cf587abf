import csv, logging
from dataclasses import dataclass
from typing      import List, Optional, TextIO, Tuple, Union

import anyio, anyio.to_thread

from .config     import RunConfig, SweepSpec
from .engine     import ValuationTable, check
from .logic      import parse_property
from .params     import GameParams
from .statespace import TransitionModel, build_model

log = logging.getLogger(__name__)

ERROR = "ERROR"

@dataclass
class SweepCell(object):
    value:  Union[int, float]
    k:      int
    result: Optional[float] = None
    error:  Optional[str]   = None

    def formatted(self) -> str:
        if self.result is None:
            return ERROR
        return f"{self.result:.6f}"

def sweep_cells(config: RunConfig, spec: SweepSpec) -> List[SweepCell]:
    cells: List[SweepCell] = []
    for value in spec.values:
        # a k_max sweep truncates to every horizon up to the value itself
        last = int(value) if spec.param == "k_max" else config.params.k_max
        for k in range(1, last+1):
            cells.append(SweepCell(value, k))
    return cells

def cell_params(config: RunConfig, spec: SweepSpec, cell: SweepCell
        ) -> GameParams:
    if spec.param == "k_max":
        return config.params.with_values(k_max=cell.k)
    return config.params.with_values(**{spec.param: cell.value,
        "k_max": cell.k})

def evaluate(params: GameParams, prop: str, cap: int) -> float:
    model = build_model(params, cap)
    return check(model, parse_property(prop, params)).value

class Sweep(object):
    def __init__(self, config: RunConfig, spec: SweepSpec):
        self.config = config
        self.spec   = spec
        self.cells  = sweep_cells(config, spec)

    def _evaluate(self, cell: SweepCell):
        try:
            params = cell_params(self.config, self.spec, cell)
            cell.result = evaluate(params, self.spec.prop, self.config.cap)
        except Exception as e:
            cell.error = str(e) or type(e).__name__
            log.warning("sweep cell %s=%s k=%d failed: %s", self.spec.param,
                self.spec.format_value(cell.value), cell.k, cell.error)

    async def _run_cell(self, cell: SweepCell, limiter: anyio.CapacityLimiter):
        await anyio.to_thread.run_sync(self._evaluate, cell, limiter=limiter)

    async def _run(self):
        limiter = anyio.CapacityLimiter(self.config.threads)
        async with anyio.create_task_group() as tg:
            for cell in self.cells:
                tg.start_soon(self._run_cell, cell, limiter)

    def run(self) -> List[SweepCell]:
        log.info("sweeping %s over %d cells on %d threads", self.spec.param,
            len(self.cells), self.config.threads)
        anyio.run(self._run)
        return self.cells

def run_sweep(config: RunConfig, spec: SweepSpec) -> List[SweepCell]:
    return Sweep(config, spec).run()

def _writer(sink: TextIO):
    return csv.writer(sink, delimiter=",", lineterminator="\n")

def write_sweep_csv(spec: SweepSpec, cells: List[SweepCell], sink: TextIO):
    writer = _writer(sink)
    writer.writerow([spec.param, "k", "value"])
    for cell in cells:
        writer.writerow([spec.format_value(cell.value), cell.k,
            cell.formatted()])

def write_valuation_csv(model: TransitionModel, valuation: ValuationTable,
        sink: TextIO):
    writer = _writer(sink)
    writer.writerow(["id", "k"] +
        [f"c{i+1}" for i in range(model.params.n)] + ["value"])
    for state_id, state in enumerate(model.states):
        writer.writerow([state_id, state.k] + list(state.c) +
            [f"{valuation[state_id]:.6f}"])

def correctness_property(params: GameParams, bound: int) -> str:
    players = ",".join(f"p{i+1}" for i in range(params.n))
    return f'<<{players}>> P>=1.0 [ F<={bound} "good" ]'

def correctness_verdicts(model: TransitionModel
        ) -> List[Tuple[int, bool]]:
    """
    the reachability of "good" within every bound 1..k_max, counting the
    initial round as the first one
    """
    verdicts: List[Tuple[int, bool]] = []
    for bound in range(1, model.params.k_max+1):
        prop   = parse_property(
            correctness_property(model.params, bound), model.params)
        result = check(model, prop)
        verdicts.append((bound, bool(result.verdict)))
    return verdicts
