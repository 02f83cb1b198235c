"""Command line entry point.

Exit codes: 0 when every check passes, 1 on a mathematical failure, 2 for
configuration errors and models that are not bihomogeneous.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .field import PRIME_ENV_VAR, QQ, Field
from .pfaffian import InhomogeneousModel, ModelError, build_family, load_model
from .report import build_report, render_text

COMMANDS = ("invariants", "fibers", "horikawa", "verify")
EXIT_PASS, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class ConfigError(ValueError):
    pass


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("model source (exactly one)")
    src.add_argument("--family", choices=["A", "B", "C"], type=str.upper, help="builtin family")
    src.add_argument("--n", type=int, help="parameter of family A")
    src.add_argument("--a", type=int, help="parameter of family B")
    src.add_argument("--d", type=int, help="parameter of family C")
    src.add_argument("--model", type=Path, help="model file")
    common.add_argument("--grading", choices=["solved", "printed"], default="solved",
                        help="q bidegrees for family B (default: the consistent ones)")
    common.add_argument("--seed", type=int, default=0)
    fld = common.add_mutually_exclusive_group()
    fld.add_argument("--prime", type=int, help=f"coefficient prime (default ${PRIME_ENV_VAR} or 2^31-1)")
    fld.add_argument("--rational", action="store_true", help="exact rational arithmetic")
    common.add_argument("--samples", type=int, default=50, help="random fibres in the scan")
    common.add_argument("--output", type=Path, help="write the JSON report here")
    common.add_argument("--json", action="store_true", help="print JSON instead of the table")
    common.add_argument("--timing", action="store_true", help="add wall-clock timings to the report")

    p = argparse.ArgumentParser(prog="slopefib", description="Slope equality checks for genus-5 Pfaffian fibrations.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return p


def resolve_config(args) -> tuple[dict, object]:
    params = {"A": args.n, "B": args.a, "C": args.d}
    given = [k for k, v in params.items() if v is not None]
    if (args.family is None) == (args.model is None):
        raise ConfigError("give exactly one of --family or --model")
    if args.samples < 0:
        raise ConfigError("--samples must be >= 0")
    try:
        field = QQ if args.rational else Field.prime(args.prime)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    config = {
        "family": args.family,
        "param": None,
        "model_path": None if args.model is None else str(args.model),
        "field": "rational" if field.p is None else field.p,
        "seed": args.seed,
        "samples": args.samples,
        "grading": args.grading,
    }
    if args.family:
        flag = {"A": "--n", "B": "--a", "C": "--d"}[args.family]
        if given != [args.family] and given:
            raise ConfigError(f"family {args.family} takes {flag} only")
        param = params[args.family] if params[args.family] is not None else 1
        if param < 1:
            raise ConfigError(f"{flag} must be >= 1")
        config["param"] = param
        model = build_family(args.family, param, args.seed, field, args.grading)
    else:
        if given:
            raise ConfigError("--n/--a/--d only apply to builtin families")
        try:
            model = load_model(args.model, field)
        except OSError as exc:
            raise ConfigError(f"cannot read {args.model}: {exc}") from exc
    return config, model


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        config, model = resolve_config(args)
        if model.diagnostic is not None and not model.diagnostic.consistent:
            raise InhomogeneousModel(model.diagnostic)
    except InhomogeneousModel as exc:
        print("model is not bihomogeneous:", file=sys.stderr)
        print(exc.diagnostic.describe(), file=sys.stderr)
        return EXIT_CONFIG
    except (ConfigError, ModelError) as exc:
        print(f"slopefib: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    rep = build_report(args.command, model, config, timing=args.timing)
    text = rep.to_json()
    if args.output:
        args.output.write_text(text, encoding="utf-8")
    sys.stdout.write(text if args.json else render_text(rep))
    return EXIT_PASS if rep.status == "PASS" else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
