"""Operator CLI: serve, chat REPL, simulate, safety tools, search queries."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from socialbot.core.config import PipelineConfig, load_config
from socialbot.gateway.factory import build_service, _data_path
from socialbot.gateway.sessions import FileSessionStore
from socialbot.gateway.simulate import load_script, simulate


def _config_from_args(args) -> PipelineConfig:
    return load_config(args.config) if getattr(args, "config", None) else load_config()


def cmd_serve(args) -> int:
    import uvicorn

    from socialbot.gateway.http import create_app

    cfg = _config_from_args(args)
    store = FileSessionStore(args.session_dir) if args.session_dir else None
    service = build_service(cfg=cfg, store=store)
    frontend = Path(args.frontend) if args.frontend else Path("frontend/dist")
    app = create_app(service, frontend_dir=frontend if frontend.is_dir() else None)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def cmd_chat(args) -> int:
    cfg = _config_from_args(args)
    service = build_service(cfg=cfg, seed=args.seed)
    record = service.create_session()
    print(f"session {record.session_id} — type 'quit' to leave")
    while True:
        try:
            text = input("you> ").strip()
        except (EOFError, KeyboardInterrupt):
            print()
            return 0
        if not text:
            continue
        if text.lower() in {"quit", "exit"}:
            return 0
        response = service.handle_turn(record.session_id, text, debug=args.debug)
        print(f"bot> {response.bot_text}")
        if args.debug and response.debug_trace:
            print(json.dumps(response.debug_trace, indent=2))


def cmd_simulate(args) -> int:
    script, file_seed = load_script(args.script)
    seed = args.seed if args.seed is not None else file_seed
    report = simulate(script, seed=seed, cfg=_config_from_args(args))
    output = report.to_json()
    if args.output:
        Path(args.output).write_text(output, encoding="utf-8")
    else:
        sys.stdout.write(output)
    return 1 if report.errors else 0


def cmd_safety_train(args) -> int:
    from socialbot.safety.ngram import PRESET_HYPERPARAMS, Hyperparams, train
    from socialbot.safety.synthetic import load_fasttext_file, load_tsv_file, make_corpus

    if args.corpus:
        path = Path(args.corpus)
        corpus = (
            load_tsv_file(path) if path.suffix == ".tsv" else load_fasttext_file(path)
        )
    else:
        corpus = make_corpus(args.synthetic_size, seed=args.seed)
    if args.preset:
        hp = PRESET_HYPERPARAMS[args.preset]
    else:
        hp = Hyperparams(epoch=args.epoch, lr=args.lr, minn=args.minn, maxn=args.maxn,
                         word_ngrams=args.word_ngrams)
    model = train(corpus, hp, seed=args.seed, name=args.name)
    model.save(args.output)
    print(f"trained on {len(corpus)} examples -> {args.output}")
    return 0


def cmd_safety_eval(args) -> int:
    from socialbot.safety.combine import evaluate
    from socialbot.safety.ngram import NgramClassifier
    from socialbot.safety.rules import RuleList
    from socialbot.safety.synthetic import load_fasttext_file, load_tsv_file

    models = [NgramClassifier.load(p) for p in args.model]
    rules = RuleList.from_file(args.rules) if args.rules else RuleList.from_entries([])
    path = Path(args.test_set)
    test_set = load_tsv_file(path) if path.suffix == ".tsv" else load_fasttext_file(path)
    result = evaluate(models, rules, test_set, threshold=args.threshold)
    print(json.dumps(result, indent=2))
    return 0


def cmd_safety_check(args) -> int:
    cfg = _config_from_args(args)
    from socialbot.gateway.factory import build_safety_filter

    safety = build_safety_filter(cfg, seed=args.seed)
    verdict = safety.verdict(args.text)
    print(json.dumps(verdict.as_dict(), indent=2))
    return 0 if verdict.final.value == "SAFE" else 1


def cmd_apihub_query(args) -> int:
    from socialbot.apihub.keywords import EmptyKeywordsError, keywordize
    from socialbot.gateway.factory import build_hub

    cfg = _config_from_args(args)
    hub = build_hub()
    if args.keyword_query is not None:
        kq = args.keyword_query
    else:
        try:
            kq = keywordize(args.query)
        except EmptyKeywordsError:
            kq = ""
    results = hub.search(args.query, kq, cfg)
    print(json.dumps(results.as_dict(), indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="socialbot")
    parser.add_argument("--config", help="YAML config file", default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the HTTP gateway")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--session-dir", default=None, help="persist sessions to files")
    serve.add_argument("--frontend", default=None, help="static webchat bundle directory")
    serve.set_defaults(func=cmd_serve)

    chat = sub.add_parser("chat", help="terminal REPL against a local service")
    chat.add_argument("--seed", type=int, default=7)
    chat.add_argument("--debug", action="store_true")
    chat.set_defaults(func=cmd_chat)

    sim = sub.add_parser("simulate", help="run a scripted conversation")
    sim.add_argument("script", help="YAML script: {seed, turns: [...]} or a plain list")
    sim.add_argument("--seed", type=int, default=None)
    sim.add_argument("--output", default=None)
    sim.set_defaults(func=cmd_simulate)

    safety = sub.add_parser("safety", help="safety filter tools")
    safety_sub = safety.add_subparsers(dest="safety_command", required=True)

    strain = safety_sub.add_parser("train", help="train an n-gram classifier")
    strain.add_argument("--corpus", default=None, help=".txt (__label__) or .tsv file")
    strain.add_argument("--synthetic-size", type=int, default=200)
    strain.add_argument("--preset", choices=["cyberbully", "diasafety", "tweetoffensive", "stereoset"])
    strain.add_argument("--epoch", type=int, default=5)
    strain.add_argument("--lr", type=float, default=0.1)
    strain.add_argument("--minn", type=int, default=0)
    strain.add_argument("--maxn", type=int, default=0)
    strain.add_argument("--word-ngrams", type=int, default=2)
    strain.add_argument("--seed", type=int, default=7)
    strain.add_argument("--name", default="ngram")
    strain.add_argument("--output", required=True)
    strain.set_defaults(func=cmd_safety_train)

    seval = safety_sub.add_parser("eval", help="classifier-only vs combined F1")
    seval.add_argument("--model", action="append", required=True)
    seval.add_argument("--rules", default=None)
    seval.add_argument("--test-set", required=True)
    seval.add_argument("--threshold", type=float, default=0.8)
    seval.set_defaults(func=cmd_safety_eval)

    scheck = safety_sub.add_parser("check", help="run one text through the filter")
    scheck.add_argument("text")
    scheck.add_argument("--seed", type=int, default=7)
    scheck.set_defaults(func=cmd_safety_check)

    hub = sub.add_parser("apihub", help="knowledge aggregation tools")
    hub_sub = hub.add_subparsers(dest="apihub_command", required=True)
    hquery = hub_sub.add_parser("query", help="run one aggregate search")
    hquery.add_argument("query")
    hquery.add_argument("--keyword-query", default=None)
    hquery.set_defaults(func=cmd_apihub_query)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
