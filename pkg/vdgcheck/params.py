from dataclasses import dataclass, field, replace
from typing      import Any, Dict, Tuple

from .errors import ParamsError

DEFAULT_FRACTIONS = (0.0, 0.5, 1.0)

@dataclass(frozen=True)
class GameParams(object):
    n:           int   = 3
    k_max:       int   = 4
    r_init:      int   = 100
    r_needed:    int   = 200
    r_max:       int   = 1000
    f:           float = 2.0
    decay_slope: float = -0.014
    fractions:   Tuple[float, ...] = field(default=DEFAULT_FRACTIONS)

    def __post_init__(self):
        # lists are accepted but stored as tuples so params stay hashable
        object.__setattr__(self, "fractions",
            tuple(float(f) for f in self.fractions))

        for name in ["n", "k_max", "r_needed", "r_max"]:
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ParamsError(f"{name} must be a positive integer "
                    f"(got {value!r})", name)
        if not isinstance(self.r_init, int) or self.r_init < 0:
            raise ParamsError("r_init must be a non-negative integer "
                f"(got {self.r_init!r})", "r_init")
        if not self.f > 0:
            raise ParamsError(f"f must be positive (got {self.f!r})", "f")

        if self.r_init > self.r_max:
            raise ParamsError(f"r_init ({self.r_init}) exceeds "
                f"r_max ({self.r_max})", "r_init")
        if not self.r_needed < self.n*self.r_max:
            raise ParamsError(f"r_needed ({self.r_needed}) must be below "
                f"n*r_max ({self.n*self.r_max})", "r_needed")

        if not self.fractions:
            raise ParamsError("fractions must not be empty", "fractions")
        for fraction in self.fractions:
            if not 0.0 <= fraction <= 1.0:
                raise ParamsError(f"fraction {fraction} outside [0, 1]",
                    "fractions")
        for low, high in zip(self.fractions, self.fractions[1:]):
            if not low < high:
                raise ParamsError("fractions must be strictly ascending "
                    f"({list(self.fractions)})", "fractions")

    @property
    def action_count(self) -> int:
        return len(self.fractions)**self.n

    def with_values(self, **values: Any) -> "GameParams":
        return replace(self, **values)

    def constants(self) -> Dict[str, int]:
        # integer names usable inside properties
        return {
            "n":       self.n,
            "kmax":    self.k_max,
            "rinit":   self.r_init,
            "rneeded": self.r_needed,
            "rmax":    self.r_max
        }
