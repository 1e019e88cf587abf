import os
from dataclasses import dataclass, field
from typing      import Any, Callable, Dict, List, Union

from .errors     import ConfigError, ParamsError
from .params     import GameParams
from .statespace import DEFAULT_STATE_CAP

ENV_THREADS = "VDG_THREADS"

def _fractions(value: str) -> List[float]:
    return [float(part) for part in value.split(",") if part.strip()]

_PARAM_TYPES: Dict[str, Callable[[str], Any]] = {
    "n":           int,
    "k_max":       int,
    "r_init":      int,
    "r_needed":    int,
    "r_max":       int,
    "f":           float,
    "decay_slope": float,
    "fractions":   _fractions
}
_RUN_TYPES: Dict[str, Callable[[str], Any]] = {
    "out":     str,
    "cap":     int,
    "threads": int
}
PROPERTY_KEY = "property"

def default_threads() -> int:
    value = os.environ.get(ENV_THREADS, "")
    if not value.strip():
        return 1
    try:
        threads = int(value)
    except ValueError:
        raise ConfigError(f"{ENV_THREADS} must be an integer "
            f"(got {value!r})", ENV_THREADS)
    return max(1, threads)

@dataclass
class RunConfig(object):
    params:     GameParams = field(default_factory=GameParams)
    out:        str        = "out"
    cap:        int        = DEFAULT_STATE_CAP
    threads:    int        = field(default_factory=default_threads)
    properties: List[str]  = field(default_factory=list)

    def __post_init__(self):
        if self.cap < 1:
            raise ConfigError(f"cap must be positive (got {self.cap})",
                "cap")
        if self.threads < 1:
            raise ConfigError("threads must be positive "
                f"(got {self.threads})", "threads")

    def with_values(self, **values: Any) -> "RunConfig":
        # game parameter names go to params, the rest to the run
        params = {k: v for k, v in values.items() if k in _PARAM_TYPES}
        run    = {k: v for k, v in values.items() if not k in _PARAM_TYPES}
        return RunConfig(
            params     =self.params.with_values(**params),
            out        =run.get("out",     self.out),
            cap        =run.get("cap",     self.cap),
            threads    =run.get("threads", self.threads),
            properties =list(run.get("properties", self.properties)))

    @staticmethod
    def from_text(text: str) -> "RunConfig":
        params: Dict[str, Any] = {}
        run:    Dict[str, Any] = {}
        properties: List[str]  = []

        for line_no, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue

            key, sep, value = line.partition("=")
            key = key.strip()
            if not key == PROPERTY_KEY:
                value = value.split("#", 1)[0]
            value = value.strip()
            if not sep or not key:
                raise ConfigError(f"line {line_no}: expected 'key = value'",
                    key or None)

            if key == PROPERTY_KEY:
                # "#" is not a comment inside a property
                properties.append(value)
            elif key in _PARAM_TYPES:
                params[key] = _convert(key, value, _PARAM_TYPES[key])
            elif key in _RUN_TYPES:
                run[key] = _convert(key, value, _RUN_TYPES[key])
            else:
                raise ConfigError(f"line {line_no}: unknown key {key!r}",
                    key)

        try:
            game_params = GameParams(**params)
        except ParamsError as e:
            raise ConfigError(str(e), e.key)
        return RunConfig(game_params, properties=properties, **run)

    @staticmethod
    def from_file(path: str) -> "RunConfig":
        try:
            with open(path, "r", encoding="utf8") as config_file:
                text = config_file.read()
        except OSError as e:
            raise ConfigError(f"cannot read config {path!r}: {e.strerror}")
        return RunConfig.from_text(text)

def _convert(key: str, value: str, convert: Callable[[str], Any]) -> Any:
    try:
        return convert(value)
    except ValueError:
        raise ConfigError(f"bad value {value!r} for {key!r}", key)

SWEEP_PARAMS: Dict[str, Callable[[str], Any]] = {
    "r_init":   int,
    "r_needed": int,
    "f":        float,
    "k_max":    int
}

@dataclass
class SweepSpec(object):
    param:  str
    values: List[Union[int, float]]
    prop:   str

    def __post_init__(self):
        if not self.param in SWEEP_PARAMS:
            raise ConfigError(f"cannot sweep over {self.param!r} (choose "
                f"from {', '.join(SWEEP_PARAMS)})", self.param)
        if not self.values:
            raise ConfigError("sweep needs at least one value", self.param)
        for value in self.values:
            if self.param == "f" and not value > 0:
                raise ConfigError(f"f must be positive (got {value})", "f")
            if self.param == "r_init" and value < 0:
                raise ConfigError(f"r_init must not be negative "
                    f"(got {value})", "r_init")
            if self.param in ["r_needed", "k_max"] and value < 1:
                raise ConfigError(f"{self.param} must be positive "
                    f"(got {value})", self.param)

    @staticmethod
    def parse(param: str, values: str, prop: str) -> "SweepSpec":
        convert = SWEEP_PARAMS.get(param)
        if convert is None:
            raise ConfigError(f"cannot sweep over {param!r}", param)
        return SweepSpec(param,
            [_convert(param, part.strip(), convert)
                for part in values.split(",") if part.strip()],
            prop)

    def format_value(self, value: Union[int, float]) -> str:
        return repr(float(value)) if self.param == "f" else str(value)
