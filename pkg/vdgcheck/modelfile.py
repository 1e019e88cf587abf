from typing import BinaryIO, Dict, List, Optional, Tuple

import numpy

from .errors     import ModelFormatError, ModelInvariantError, ParamsError
from .game       import GameState, JointAction
from .params     import GameParams
from .statespace import TransitionModel

FORMAT_MAGIC   = "vdgmodel"
FORMAT_VERSION = 1

_PARAM_KEYS = {
    "n":         ("n", int),
    "kmax":      ("k_max", int),
    "rinit":     ("r_init", int),
    "rneeded":   ("r_needed", int),
    "rmax":      ("r_max", int),
    "f":         ("f", float),
    "slope":     ("decay_slope", float)
}

def _format_params(params: GameParams) -> str:
    fractions = ",".join(repr(f) for f in params.fractions)
    return (f"params n={params.n} kmax={params.k_max} "
        f"rinit={params.r_init} rneeded={params.r_needed} "
        f"rmax={params.r_max} f={params.f!r} slope={params.decay_slope!r} "
        f"fractions={fractions}")

def export_model(model: TransitionModel, destination: BinaryIO):
    def _write(line: str):
        destination.write(f"{line}\n".encode("utf8"))

    params = model.params
    _write(f"{FORMAT_MAGIC} {FORMAT_VERSION}")
    _write(_format_params(params))

    _write(f"states {len(model)}")
    for state_id, state in enumerate(model.states):
        resources = ",".join(str(c_i) for c_i in state.c)
        _write(f"{state_id} {state.k} {resources}")

    _write(f"transitions {model.first_terminal*params.action_count}")
    for src, action, dst, reward in model.transitions():
        choice = ",".join(str(i) for i in action.choice)
        _write(f"{src} {choice} {dst} {reward!r}")

class _Lines(object):
    def __init__(self, source: BinaryIO):
        self._source = source
        self.number  = 0

    def next(self, what: str) -> str:
        raw = self._source.readline()
        self.number += 1
        if not raw:
            raise ModelFormatError(f"unexpected end of input, "
                f"expected {what}", self.number)
        try:
            return raw.decode("utf8").rstrip("\r\n")
        except UnicodeDecodeError:
            raise ModelFormatError("not valid UTF-8", self.number)

    def error(self, message: str) -> ModelFormatError:
        return ModelFormatError(message, self.number)

def _parse_int(lines: _Lines, value: str, what: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise lines.error(f"{what} {value!r} is not an integer")

def _parse_params(lines: _Lines, line: str) -> GameParams:
    keyword, *pairs = line.split()
    if not keyword == "params":
        raise lines.error("expected params line")

    values: Dict[str, object] = {}
    for pair in pairs:
        key, _, value = pair.partition("=")
        try:
            if key == "fractions":
                values["fractions"] = tuple(
                    float(f) for f in value.split(","))
            elif key in _PARAM_KEYS:
                name, cast = _PARAM_KEYS[key]
                values[name] = cast(value)
            else:
                raise lines.error(f"unknown parameter {key!r}")
        except ValueError:
            raise lines.error(f"bad value for {key!r}: {value!r}")

    missing = (set(v[0] for v in _PARAM_KEYS.values()) | {"fractions"}
        ) - set(values)
    if missing:
        raise lines.error(f"missing parameters {sorted(missing)}")
    try:
        return GameParams(**values) # type: ignore
    except ParamsError as e:
        raise lines.error(str(e))

def _parse_count(lines: _Lines, keyword: str) -> int:
    line = lines.next(f"'{keyword} <count>'")
    parts = line.split()
    if not len(parts) == 2 or not parts[0] == keyword:
        raise lines.error(f"expected '{keyword} <count>'")
    return _parse_int(lines, parts[1], "count")

def import_model(source: BinaryIO) -> TransitionModel:
    lines = _Lines(source)

    header = lines.next("format header").split()
    if not header[:1] == [FORMAT_MAGIC] or not len(header) == 2:
        raise lines.error(f"expected '{FORMAT_MAGIC} {FORMAT_VERSION}'")
    if not _parse_int(lines, header[1], "version") == FORMAT_VERSION:
        raise lines.error(f"unsupported format version {header[1]}")

    params = _parse_params(lines, lines.next("params line"))

    states: List[GameState] = []
    for expected_id in range(_parse_count(lines, "states")):
        parts = lines.next("state line").split()
        if not len(parts) == 3:
            raise lines.error("state line needs '<id> <k> <resources>'")
        state_id = _parse_int(lines, parts[0], "state id")
        if not state_id == expected_id:
            raise lines.error(f"state id {state_id} out of order "
                f"(expected {expected_id})")
        k = _parse_int(lines, parts[1], "round")
        c = tuple(_parse_int(lines, c_i, "resource")
            for c_i in parts[2].split(","))
        states.append(GameState(k, c))

    non_terminal = sum(1 for state in states if state.k <= params.k_max)
    actions      = params.action_count
    successors   = numpy.full((non_terminal, actions), -1, numpy.int64)
    rewards      = numpy.zeros((non_terminal, actions), numpy.float64)

    previous: Optional[Tuple[int, int]] = None
    for _ in range(_parse_count(lines, "transitions")):
        parts = lines.next("transition line").split()
        if not len(parts) == 4:
            raise lines.error("transition line needs "
                "'<src> <action> <dst> <reward>'")
        src    = _parse_int(lines, parts[0], "source id")
        choice = tuple(_parse_int(lines, i, "action index")
            for i in parts[1].split(","))
        dst    = _parse_int(lines, parts[2], "target id")
        try:
            reward = float(parts[3])
        except ValueError:
            raise lines.error(f"reward {parts[3]!r} is not a number")

        action = JointAction(choice)
        try:
            action.validate(params)
        except ParamsError as e:
            raise lines.error(str(e))
        if not 0 <= src < non_terminal:
            raise ModelInvariantError("transition from a terminal or "
                "unknown state", src)
        if not 0 <= dst < len(states):
            raise ModelInvariantError("dangling successor", dst)

        key = (src, action.index(params))
        if previous is not None and not previous < key:
            raise lines.error("transitions not sorted by (src, action)")
        previous = key
        successors[key] = dst
        rewards[key]    = reward

    missing = numpy.argwhere(successors < 0)
    if len(missing):
        raise ModelInvariantError("missing transitions", int(missing[0][0]))

    return TransitionModel(params, states, successors, rewards)

def save_model(model: TransitionModel, path: str):
    with open(path, "wb") as destination:
        export_model(model, destination)

def load_model(path: str) -> TransitionModel:
    with open(path, "rb") as source:
        return import_model(source)
