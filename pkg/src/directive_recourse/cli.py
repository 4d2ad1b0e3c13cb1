"""Command line: train a model, explain a profile, serve the HTTP API.

Exit codes are a stable contract: 0 success, 2 invalid input, 3 infeasible or
unreachable goal, 4 internal cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import EngineConfig
from .errors import CatalogError, InfeasibleError, NoRecourseError, SchemaError, StateCapError, TemplateError
from .explainer import load_templates
from .io import load_catalog, load_dataset_csv, load_model, load_profile, save_model
from .model import train_logistic, training_accuracy
from .pipeline import explain_profile, search_grid_for
from .schema import schema_from_dict

EXIT_OK = 0
EXIT_INVALID_INPUT = 2
EXIT_INFEASIBLE = 3
EXIT_CAP_EXCEEDED = 4


def _parse_desired(value: str) -> int:
    v = value.strip().lower()
    if v in ("1", "approve", "approved", "accept"):
        return 1
    if v in ("0", "deny", "denied", "reject"):
        return 0
    raise SchemaError(f"--desired must be approve/deny or 1/0, got {value!r}")


def _parse_grid_steps(pairs: list[str]) -> dict[str, float]:
    steps: dict[str, float] = {}
    for pair in pairs:
        if "=" not in pair:
            raise SchemaError(f"--grid-step expects feature=value, got {pair!r}")
        name, raw = pair.split("=", 1)
        try:
            steps[name.strip()] = float(raw)
        except ValueError as exc:
            raise SchemaError(f"--grid-step {pair!r}: {exc}") from exc
    return steps


def cmd_train(args: argparse.Namespace) -> int:
    schema = schema_from_dict(json.loads(Path(args.schema).read_text()))
    rows, labels = load_dataset_csv(args.dataset, schema)
    model = train_logistic(
        schema, rows, labels,
        learning_rate=args.learning_rate, epochs=args.epochs, l2=args.l2, seed=args.seed,
    )
    save_model(model, args.out)
    acc = training_accuracy(model, rows, labels)
    print(f"trained on {len(rows)} rows; accuracy {acc:.4f}; model written to {args.out}")
    return EXIT_OK


def cmd_explain(args: argparse.Namespace) -> int:
    model = load_model(args.model)
    catalog = load_catalog(args.catalog)
    templates = load_templates(args.templates)
    profile = load_profile(args.profile)
    steps = _parse_grid_steps(args.grid_step or [])
    grid = search_grid_for(model, steps=steps or None)
    result = explain_profile(
        model, catalog, templates, profile,
        desired=_parse_desired(args.desired),
        kinds=args.kind,
        grid=grid,
        solver=args.solver,
        seed=args.seed,
        state_cap=args.state_cap,
    )
    print("\n\n".join(t.text for t in result.texts))
    if args.json_out:
        de = result.explanation
        payload = {
            "y": de.y,
            "y_prime": de.y_prime,
            "boundary": de.boundary,
            "unreachable": de.unreachable,
            "counterfactual": de.counterfactual.to_dict(),
            "plan": list(de.plan_action_names),
            "reachability": de.goal_reachability,
            "expected_cost": de.expected_cost,
            "texts": [t.to_dict() for t in result.texts],
        }
        Path(args.json_out).write_text(json.dumps(payload, indent=2) + "\n")
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import build_app

    app = build_app(
        model_path=args.model,
        catalog_path=args.catalog,
        templates_path=args.templates,
        session_log=args.sessions_log,
        seed=args.seed,
        state_cap=args.state_cap,
        default_profile=load_profile(args.profile) if args.profile else None,
    )
    host, _, port = args.bind.rpartition(":")
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port))
    return EXIT_OK


def build_parser(defaults: EngineConfig) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="directive-recourse", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_train = sub.add_parser("train", help="fit a logistic model from a CSV dataset")
    p_train.add_argument("--dataset", required=True)
    p_train.add_argument("--schema", required=True)
    p_train.add_argument("--out", required=True)
    p_train.add_argument("--learning-rate", type=float, default=0.5)
    p_train.add_argument("--epochs", type=int, default=500)
    p_train.add_argument("--l2", type=float, default=1e-4)
    p_train.add_argument("--seed", type=int, default=defaults.seed)
    p_train.set_defaults(func=cmd_train)

    p_explain = sub.add_parser("explain", help="render explanations for one profile")
    p_explain.add_argument("--model", default=defaults.model_path, required=defaults.model_path is None)
    p_explain.add_argument("--catalog", default=defaults.catalog_path, required=defaults.catalog_path is None)
    p_explain.add_argument("--templates", default=defaults.templates_path, required=defaults.templates_path is None)
    p_explain.add_argument("--profile", required=True)
    p_explain.add_argument("--desired", default="approve")
    p_explain.add_argument("--kind", default="all",
                           choices=["all", "non-directive", "directive-specific", "directive-generic"])
    p_explain.add_argument("--solver", default="vi", choices=["vi", "q"])
    p_explain.add_argument("--seed", type=int, default=defaults.seed)
    p_explain.add_argument("--grid-step", action="append", metavar="FEATURE=STEP")
    p_explain.add_argument("--state-cap", type=int, default=defaults.state_cap)
    p_explain.add_argument("--json-out")
    p_explain.set_defaults(func=cmd_explain)

    p_serve = sub.add_parser("serve", help="run the what-if HTTP API")
    p_serve.add_argument("--model", default=defaults.model_path, required=defaults.model_path is None)
    p_serve.add_argument("--catalog", default=defaults.catalog_path, required=defaults.catalog_path is None)
    p_serve.add_argument("--templates", default=defaults.templates_path, required=defaults.templates_path is None)
    p_serve.add_argument("--profile", help="default profile preloaded into the dashboard")
    p_serve.add_argument("--bind", default=defaults.bind)
    p_serve.add_argument("--seed", type=int, default=defaults.seed)
    p_serve.add_argument("--state-cap", type=int, default=defaults.state_cap)
    p_serve.add_argument("--sessions-log", default=defaults.session_log)
    p_serve.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        defaults = EngineConfig.from_env()
    except (OSError, ValueError, TypeError, json.JSONDecodeError) as exc:
        print(f"error: bad config: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    parser = build_parser(defaults)
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except StateCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP_EXCEEDED
    except (InfeasibleError, NoRecourseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (SchemaError, CatalogError, TemplateError, ValueError, KeyError,
            OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT


if __name__ == "__main__":
    sys.exit(main())
