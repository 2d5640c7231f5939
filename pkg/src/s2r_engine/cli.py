"""Operator command line for the offline phase and batch workflows.

The model pipeline composes: ``static`` and ``explore`` produce the
declared and explored models, ``union`` merges them, ``refine`` folds
user traces in, and ``build-models`` selects and trains the two
prediction models. ``eval`` emits the model comparison, ``replay`` runs
a persisted report against the simulator, and ``serve`` starts the HTTP
service.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .app_sim import ReplayAction, explore_dft, extract_declared_model, replay
from .app_spec import load_app_spec
from .errors import S2REngineError
from .gui_model import load_model, save_model, union
from .predictor import compare_models, select_model
from .reports import report_from_dict
from .traces import load_trace_dir, refine_model, to_gat, to_get


def _cmd_explore(args) -> int:
    spec = load_app_spec(args.spec)
    gm = explore_dft(spec, step_cap=args.step_cap)
    save_model(gm, args.out)
    print(f"explored {len(gm.screens)} screens, {len(gm.elements)} elements -> {args.out}")
    return 0


def _cmd_static(args) -> int:
    spec = load_app_spec(args.spec)
    gm = extract_declared_model(spec)
    save_model(gm, args.out)
    print(f"declared model: {len(gm.elements)} elements -> {args.out}")
    return 0


def _cmd_union(args) -> int:
    gm = union(load_model(args.left), load_model(args.right))
    save_model(gm, args.out)
    print(f"union: {len(gm.elements)} elements, {len(gm.transitions)} transitions -> {args.out}")
    return 0


def _cmd_refine(args) -> int:
    gm = load_model(args.model)
    traces = load_trace_dir(args.traces)
    gm = refine_model(gm, traces).finalize()
    save_model(gm, args.out)
    print(f"refined with {len(traces)} traces -> {args.out}")
    return 0


def _cmd_build_models(args) -> int:
    traces = load_trace_dir(args.traces)
    if not traces:
        print(f"no *.trace files under {args.traces}", file=sys.stderr)
        return 1
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, value in (("order", args.order), ("sn", args.sn)):
        if value is not None and not 1 <= value <= 10:
            print(f"--{name} must be in [1, 10], got {value}", file=sys.stderr)
            return 1
    corpora = {"GAPM": [to_gat(t).tokens for t in traces], "GEPM": [to_get(t).tokens for t in traces]}
    meta = {}
    for kind, sequences in corpora.items():
        if args.order and args.sn:
            from .lm import NgramModel

            model = NgramModel.train(
                sequences, order=args.order, kind=kind, **_discount_kw(args)
            )
            meta[kind.lower()] = {"order": args.order, "sn": args.sn, "wes": None}
            print(f"{kind}: manual override order={args.order} sn={args.sn}")
        else:
            config, wes, model = select_model(sequences, kind, discount=args.discount)
            meta[kind.lower()] = {
                "order": config.order,
                "sn": config.suggestion_len,
                "wes": wes.wes,
            }
            print(
                f"{kind}: selected order={config.order} sn={config.suggestion_len} "
                f"wes={wes.wes:.3f} over {wes.tasks} predictions"
            )
        model.save(out_dir / f"{kind.lower()}.json")
    (out_dir / "meta.json").write_text(
        json.dumps(meta, indent=1, sort_keys=True) + "\n", encoding="utf-8"
    )
    print(f"artifacts -> {out_dir}")
    return 0


def _discount_kw(args) -> dict:
    return {} if args.discount is None else {"discount": args.discount}


def _cmd_eval(args) -> int:
    traces = load_trace_dir(args.traces)
    if not traces:
        print(f"no *.trace files under {args.traces}", file=sys.stderr)
        return 1
    kinds = [k.strip().upper() for k in args.kinds.split(",") if k.strip()]
    sequences = {"GAPM": [to_gat(t).tokens for t in traces], "GEPM": [to_get(t).tokens for t in traces]}
    report = compare_models(args.app_id, sequences, kinds=kinds, discount=args.discount)
    if args.format == "json":
        print(json.dumps(report.to_dict(), indent=1, sort_keys=True))
    else:
        print(report.render_text())
    return 0


def _cmd_replay(args) -> int:
    spec = load_app_spec(args.spec)
    report_path = Path(args.report)
    if not report_path.is_file() and args.reports_dir:
        report_path = Path(args.reports_dir) / f"{args.report}.json"
    if not report_path.is_file():
        print(f"report not found: {args.report}", file=sys.stderr)
        return 1
    report = report_from_dict(json.loads(report_path.read_text(encoding="utf-8")))
    actions = [
        ReplayAction(
            screen=e.action.element.e_screen,
            e_id=e.action.element.e_id,
            a_type=e.action.a_type,
            param=e.action.params[0] if e.action.params else None,
        )
        for e in report.entities
        if e.action is not None
    ]
    outcome = replay(spec, actions)
    print(f"replayed {len(actions)} actions, final screen: {outcome.final_screen}")
    print(f"triggered failures: {', '.join(sorted(outcome.triggered_failures)) or '(none)'}")
    if not outcome.accepted:
        print(f"rejected at action index {outcome.rejected_at}", file=sys.stderr)
        return 2
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import ServiceConfig, create_app

    app = create_app(
        ServiceConfig(
            apps_dir=Path(args.apps_dir),
            models_dir=Path(args.models_dir),
            reports_dir=Path(args.reports_dir),
            vectors=Path(args.vectors) if args.vectors else None,
            ui_dir=Path(args.ui_dir) if args.ui_dir else None,
            alpha=args.alpha,
            beta=args.beta,
        )
    )
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="s2r-engine")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("explore", help="spec -> dynamic GUI model")
    p.add_argument("--spec", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--step-cap", type=int, default=10_000)
    p.set_defaults(func=_cmd_explore)

    p = sub.add_parser("static", help="spec -> declared GUI model")
    p.add_argument("--spec", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_static)

    p = sub.add_parser("union", help="merge two GUI models")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_union)

    p = sub.add_parser("refine", help="fold traces into a GUI model")
    p.add_argument("--model", required=True)
    p.add_argument("--traces", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_refine)

    p = sub.add_parser("build-models", help="traces -> prediction models")
    p.add_argument("--traces", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--order", type=int, help="manual order override (with --sn)")
    p.add_argument("--sn", type=int, help="manual suggestion-length override (with --order)")
    p.add_argument("--discount", type=float, default=None)
    p.set_defaults(func=_cmd_build_models)

    p = sub.add_parser("eval", help="model comparison report")
    p.add_argument("--traces", required=True)
    p.add_argument("--app-id", default="app")
    p.add_argument("--kinds", default="GAPM,GEPM")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--discount", type=float, default=None)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("replay", help="replay a persisted report on the simulator")
    p.add_argument("--spec", required=True)
    p.add_argument("--report", required=True, help="report file or report id")
    p.add_argument("--reports-dir", default=None)
    p.set_defaults(func=_cmd_replay)

    # flags fall back to S2R_* environment variables
    env = os.environ
    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--apps-dir", default=env.get("S2R_APPS_DIR"), required="S2R_APPS_DIR" not in env)
    p.add_argument(
        "--models-dir", default=env.get("S2R_MODELS_DIR"), required="S2R_MODELS_DIR" not in env
    )
    p.add_argument(
        "--reports-dir", default=env.get("S2R_REPORTS_DIR"), required="S2R_REPORTS_DIR" not in env
    )
    p.add_argument("--vectors", default=env.get("S2R_VECTORS"))
    p.add_argument("--ui-dir", default=env.get("S2R_UI_DIR"))
    p.add_argument("--host", default=env.get("S2R_HOST", "127.0.0.1"))
    p.add_argument("--port", type=int, default=int(env.get("S2R_PORT", "8070")))
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--beta", type=float, default=0.5)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (S2REngineError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
