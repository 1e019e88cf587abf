from .params     import GameParams
from .game       import (GameState, JointAction, RoundOutcome, apply_round,
    joint_actions)
from .statespace import TransitionModel, LevelStats, build_model, level_stats
from .modelfile  import export_model, import_model, load_model, save_model
from .logic      import PropertyAst, parse_property, format_property
from .engine     import (CheckResult, QualClassification, ValuationTable,
    check, classify_states)
from .synthesis  import StrategyGraph, export_dot, replay, synthesize
from .config     import RunConfig, SweepSpec
