import argparse, logging, os, sys, traceback
from typing      import List, Optional, TextIO

from .config     import RunConfig, SweepSpec
from .engine     import CheckResult, check, classify_states
from .errors     import USAGE_ERRORS, ConfigError, SynthesisError
from .logic      import ProbBound, PropertyAst, parse_property
from .modelfile  import load_model, save_model
from .statespace import (GROWTH_COEFFICIENT, GROWTH_RATE, TransitionModel,
    build_model, level_stats)
from .synthesis  import replay, synthesize
from .sweep      import (correctness_verdicts, run_sweep, write_sweep_csv,
    write_valuation_csv)

log = logging.getLogger(__name__)

EXIT_OK       = 0
EXIT_FALSE    = 1
EXIT_USAGE    = 2
EXIT_INTERNAL = 3

# Y/(Y+N) reported for the reachability table this game was first
# analysed with
REFERENCE_YES_RATIO = 0.237
MODEL_FILE = "model.vdg"
STATS_FILE = "stats.txt"

def _property_text(value: str) -> str:
    if value.startswith("@"):
        with open(value[1:], "r", encoding="utf8") as prop_file:
            return prop_file.read().strip()
    return value

def _config(args: argparse.Namespace) -> RunConfig:
    config = RunConfig.from_file(args.config)
    overrides = {}
    if getattr(args, "out", None) is not None:
        overrides["out"] = args.out
    if getattr(args, "cap", None) is not None:
        overrides["cap"] = args.cap
    if overrides:
        config = config.with_values(**overrides)
    return config

def _model(args: argparse.Namespace, config: Optional[RunConfig]
        ) -> TransitionModel:
    if getattr(args, "model", None):
        return load_model(args.model)
    assert config is not None
    return build_model(config.params, config.cap)

def _properties(args: argparse.Namespace, config: RunConfig) -> List[str]:
    if args.prop is not None:
        return [_property_text(args.prop)]
    if not config.properties:
        raise ConfigError("no property given (use --prop or a 'property' "
            "line in the config)", "property")
    return config.properties

def format_stats(model: TransitionModel) -> str:
    stats = level_stats(model)
    lines = [f"states {stats.cumulative_count}"]
    for k, count in enumerate(stats.per_round_state_counts, 1):
        lines.append(f"round {k} {count}")
    for horizon, count in enumerate(stats.cumulative_by_horizon):
        lines.append(f"horizon {horizon} {count}")
    if stats.fitted_log_slope is not None:
        lines.append(f"fitted slope {stats.fitted_log_slope:.4f} "
            f"(reference {GROWTH_RATE})")
        lines.append(f"fitted coefficient {stats.fitted_coefficient:.4f} "
            f"(reference {GROWTH_COEFFICIENT})")
    return "\n".join(lines) + "\n"

def format_result(result: CheckResult) -> str:
    if result.verdict is not None:
        return "TRUE" if result.verdict else "FALSE"
    return f"{result.value:.6f}"

def format_classification(model: TransitionModel, prop: PropertyAst) -> str:
    classes = classify_states(model, prop)
    lines = [f"Y {len(classes.yes)} N {len(classes.no)} "
        f"M {len(classes.maybe)}", "round Y N M"]
    for k, (yes, no, maybe) in enumerate(classes.per_round(model), 1):
        lines.append(f"{k} {yes} {no} {maybe}")
    lines.append(f"ratio {classes.ratio:.1%} "
        f"(reference {REFERENCE_YES_RATIO:.1%})")
    return "\n".join(lines) + "\n"

def cmd_build(args: argparse.Namespace, out: TextIO) -> int:
    config = _config(args)
    model  = build_model(config.params, config.cap)

    os.makedirs(config.out, exist_ok=True)
    save_model(model, os.path.join(config.out, MODEL_FILE))
    stats = format_stats(model)
    with open(os.path.join(config.out, STATS_FILE), "w", encoding="utf8",
            newline="\n") as stats_file:
        stats_file.write(stats)
    out.write(stats)
    return EXIT_OK

def cmd_check(args: argparse.Namespace, out: TextIO) -> int:
    config = _config(args)
    texts  = _properties(args, config)
    model  = _model(args, config)

    code = EXIT_OK
    for text in texts:
        prop   = parse_property(text, model.params)
        result = check(model, prop)
        out.write(f"{prop}\n{format_result(result)}\n")
        if result.verdict is False:
            code = EXIT_FALSE

        if args.classify:
            out.write(format_classification(model, prop))
        if args.csv is not None:
            with open(args.csv, "w", encoding="utf8", newline="") as sink:
                write_valuation_csv(model, result.valuation, sink)
    return code

def cmd_synth(args: argparse.Namespace, out: TextIO) -> int:
    config = _config(args)
    text   = _properties(args, config)[0]
    model  = _model(args, config)
    prop   = parse_property(text, model.params)
    if isinstance(prop.query, ProbBound):
        raise SynthesisError("synthesis needs an optimisation query "
            "(Pmax=?, Pmin=?, R{..}max=? or R{..}min=?)")

    result = check(model, prop)
    graph  = synthesize(model, prop, result.valuation)
    with open(args.dot, "wb") as sink:
        graph.export(sink)

    out.write(f"{prop}\nachieved {graph.achieved_value:.6f}\n")
    if graph.cooperative:
        replayed = replay(model, prop, graph)
        if not replayed == graph.achieved_value:
            raise SynthesisError(f"replay reached {replayed}, strategy "
                f"claims {graph.achieved_value}")
        out.write(f"replay {replayed:.6f} ok\n")
    return EXIT_OK

def cmd_sweep(args: argparse.Namespace, out: TextIO) -> int:
    config = _config(args)
    if args.threads is not None:
        config = config.with_values(threads=args.threads)
    spec  = SweepSpec.parse(args.param, args.values,
        _property_text(args.prop))
    cells = run_sweep(config, spec)
    with open(args.csv, "w", encoding="utf8", newline="") as sink:
        write_sweep_csv(spec, cells, sink)

    failed = sum(1 for cell in cells if cell.result is None)
    out.write(f"{len(cells)} cells, {failed} failed\n")
    return EXIT_OK

def cmd_stats(args: argparse.Namespace, out: TextIO) -> int:
    out.write(format_stats(load_model(args.model)))
    return EXIT_OK

def cmd_correctness(args: argparse.Namespace, out: TextIO) -> int:
    config = _config(args)
    model  = build_model(config.params, config.cap)
    for bound, verdict in correctness_verdicts(model):
        out.write(f"F<={bound} {'TRUE' if verdict else 'FALSE'}\n")
    return EXIT_OK

def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vdg",
        description="model checking and strategy synthesis for the "
        "iterated volunteer's dilemma")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    commands = parser.add_subparsers(dest="command", required=True)

    build = commands.add_parser("build", help="build and save a model")
    build.add_argument("--config", required=True)
    build.add_argument("--out")
    build.add_argument("--cap", type=int)
    build.set_defaults(func=cmd_build)

    check = commands.add_parser("check", help="check properties")
    check.add_argument("--config", required=True)
    check.add_argument("--prop", help="property text or @file")
    check.add_argument("--model", help="use a saved model")
    check.add_argument("--cap", type=int)
    check.add_argument("--classify", action="store_true")
    check.add_argument("--csv")
    check.set_defaults(func=cmd_check)

    synth = commands.add_parser("synth", help="synthesise a strategy")
    synth.add_argument("--config", required=True)
    synth.add_argument("--prop", help="property text or @file")
    synth.add_argument("--model", help="use a saved model")
    synth.add_argument("--cap", type=int)
    synth.add_argument("--dot", required=True)
    synth.set_defaults(func=cmd_synth)

    sweep = commands.add_parser("sweep", help="sweep a parameter")
    sweep.add_argument("--config", required=True)
    sweep.add_argument("--param", required=True)
    sweep.add_argument("--values", required=True)
    sweep.add_argument("--prop", required=True)
    sweep.add_argument("--csv", required=True)
    sweep.add_argument("--cap", type=int)
    sweep.add_argument("--threads", type=int)
    sweep.set_defaults(func=cmd_sweep)

    stats = commands.add_parser("stats", help="describe a saved model")
    stats.add_argument("--model", required=True)
    stats.set_defaults(func=cmd_stats)

    correctness = commands.add_parser("correctness",
        help="check reachability of \"good\" at every bound")
    correctness.add_argument("--config", required=True)
    correctness.add_argument("--cap", type=int)
    correctness.set_defaults(func=cmd_correctness)
    return parser

def _setup_logging(verbosity: int):
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s")

def main(argv: Optional[List[str]]=None, out: Optional[TextIO]=None
        ) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    _setup_logging(args.verbose)

    try:
        return args.func(args, out or sys.stdout)
    except USAGE_ERRORS + (OSError,) as e:
        log.error("%s", e)
        return EXIT_USAGE
    except Exception:
        traceback.print_exc()
        return EXIT_INTERNAL
