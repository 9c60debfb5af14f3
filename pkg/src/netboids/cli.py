"""Command-line front end: ``netboids {simulate,learn-offline,learn-online,report}``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from netboids.errors import ConfigError
from netboids.harness import artifacts, experiments
from netboids.harness.scenario import PRESETS, Scenario, scenario_key_help

EXIT_OK, EXIT_CONFIG, EXIT_RUNTIME = 0, 1, 2

COMMANDS = {
    "simulate": ("swarm_quality", "simulate every condition and record order and grouping"),
    "learn-offline": ("offline", "fit boid parameters from fixed observation windows"),
    "learn-online": ("online", "run repeated sample-learn-predict cycles"),
}


def _u64(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer, got {text}")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"--jobs must be >= 1, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    keys = "scenario keys (flat 'key = value' file, '#' comments):\n" + scenario_key_help()
    parser = argparse.ArgumentParser(
        prog="netboids", description="Classic and networked boids under a learning observer.",
        epilog=keys, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text, epilog=keys,
                           formatter_class=argparse.RawDescriptionHelpFormatter)
        p.add_argument("--scenario", required=True, metavar="PATH", help="scenario file")
        p.add_argument("--out", metavar="DIR", help="output directory (default: results/<name>)")
        p.add_argument("--preset", choices=sorted(PRESETS), help="override sizes with a named preset")
        p.add_argument("--seed", type=_u64, metavar="U64", help="override the base seed")
        p.add_argument("--jobs", type=_positive, default=1, metavar="N", help="parallel runs (default 1)")
    p = sub.add_parser("report", help="re-aggregate summaries from persisted per-run files",
                       description="re-aggregate summaries from persisted per-run files", epilog=keys,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--out", required=True, metavar="DIR", help="existing experiment directory")
    return parser


def banner(command: str, s: Scenario, out: Path) -> str:
    last = s.run_seed(s.runs - 1)
    head = (f"# netboids {command}: scenario={s.name} experiment={s.experiment} "
            f"base_seed={s.sim.seed} runs={s.runs} (seeds {s.sim.seed}..{last}) "
            f"config_hash={s.config_hash()} out={out}")
    return head + "\n" + s.dumps()


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(message)s", stream=sys.stderr)
    try:
        if args.command == "report":
            s = artifacts.load_scenario(Path(args.out))
            print(banner("report", s, Path(args.out)), flush=True)
            experiments.report(args.out)
            print(f"summaries rewritten in {args.out}")
            return EXIT_OK
        experiment = COMMANDS[args.command][0]
        s = Scenario.load(args.scenario, preset=args.preset, seed=args.seed, experiment=experiment)
        out = Path(args.out) if args.out else Path("results") / s.name
        print(banner(args.command, s, out), flush=True)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # noqa: BLE001
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    try:
        arts = experiments.run_experiment(s, out, jobs=args.jobs)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # noqa: BLE001
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    print(f"wrote {len(arts.files)} files to {out}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
