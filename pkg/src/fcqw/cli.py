"""Command-line entry point.

    fcqw run <config.json>       run an experiment, print its check lines
    fcqw emit-qasm <config.json> write only the OpenQASM artifacts
    fcqw check <result-dir>      re-validate a result directory

Exit code 0 iff all built-in checks pass.  The FCQW_THREADS environment
variable caps the shot-level worker count.
"""
from __future__ import annotations

import argparse
import sys

from .harness import ConfigError, check_result_dir, emit_experiment_qasm, load_config, run_experiment


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="fcqw", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run an experiment from a JSON config")
    p_run.add_argument("config", help="path to the experiment config")
    p_run.add_argument("--output-dir", default=None, help="override the config's output_dir")

    p_emit = sub.add_parser("emit-qasm", help="emit the experiment's OpenQASM files")
    p_emit.add_argument("config", help="path to the experiment config")
    p_emit.add_argument("--output-dir", default=None)

    p_check = sub.add_parser("check", help="re-validate a result directory")
    p_check.add_argument("result_dir", help="directory produced by 'fcqw run'")

    args = parser.parse_args(argv)

    if args.command == "run":
        try:
            cfg = load_config(args.config)
        except (ConfigError, OSError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        outdir = run_experiment(cfg, args.output_dir)
        ok, messages = check_result_dir(outdir)
        for line in messages:
            print(line)
        print(f"results written to {outdir}")
        return 0 if ok else 1

    if args.command == "emit-qasm":
        try:
            cfg = load_config(args.config)
        except (ConfigError, OSError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        for path in emit_experiment_qasm(cfg, args.output_dir):
            print(path)
        return 0

    ok, messages = check_result_dir(args.result_dir)
    for line in messages:
        print(line)
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
