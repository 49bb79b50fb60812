"""Command-line interface: ucds <command>."""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .analysis import build_report, load_dataset, render_json_text, render_text
from .errors import UcdsError
from .session import FileTarget, HttpTarget, ReviewSession


def _default_session_dir() -> Path:
    return Path(os.environ.get("UCDS_HOME", Path.home() / ".ucds"))


def _session(args: argparse.Namespace, targets: list | None = None) -> ReviewSession:
    return ReviewSession(
        storage_dir=args.session_dir,
        offline=args.offline,
        submission_targets=targets,
    )


def _cmd_import(args: argparse.Namespace) -> int:
    session = _session(args)
    chat_id = session.import_export(args.file)
    summary = next(s for s in session.list_chats() if s.chat_id == chat_id)
    print(f"imported chat {summary.chat_label} ({chat_id}), state={summary.state}")
    return 0


def _cmd_list(args: argparse.Namespace) -> int:
    session = _session(args)
    summaries = session.list_chats()
    if not summaries:
        print("no chats imported")
        return 0
    header = ["label", "chat_id", "state", "edited", "users", "urls", "messages", "from", "to"]
    rows = [header] + [
        [
            s.chat_label,
            s.chat_id,
            s.state,
            "yes" if s.edited else "no",
            str(s.num_users),
            str(s.url_count),
            str(s.total_messages),
            s.start_date,
            s.end_date,
        ]
        for s in summaries
    ]
    widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
    for row in rows:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    return 0


def _cmd_show(args: argparse.Namespace) -> int:
    session = _session(args)
    chat_id = session.resolve(args.id)
    sys.stdout.buffer.write(session.preview_bytes(chat_id))
    sys.stdout.buffer.flush()
    return 0


def _cmd_delete_url(args: argparse.Namespace) -> int:
    session = _session(args)
    chat_id = session.resolve(args.id)
    chat = session.delete_url(chat_id, args.index)
    print(f"deleted url {args.index} from chat {chat.chat_label}; "
          f"{len(chat.urls)} url(s) remain; edited=true")
    return 0


def _cmd_submit(args: argparse.Namespace) -> int:
    targets: list = [HttpTarget(url) for url in args.target or []]
    if args.out:
        targets.append(FileTarget(Path(args.out)))
    session = _session(args)
    chat_id = session.resolve(args.id)
    receipt = session.submit(chat_id, targets=targets or None)
    print(f"submitted chat {chat_id}")
    for target in receipt.targets:
        print(f"  -> {target}")
    print(f"payload sha256: {receipt.payload_sha256}")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    from .server import serve

    targets = [HttpTarget(url) for url in args.target or []]
    session = _session(args, targets=targets)
    ui_dir = args.ui_dir
    if ui_dir is None and (Path("frontend") / "dist" / "index.html").is_file():
        ui_dir = Path("frontend") / "dist"
    serve(session, port=args.port, ui_dir=ui_dir)
    return 0


def _cmd_analyze(args: argparse.Namespace) -> int:
    dataset = load_dataset(args.dir)
    report = build_report(dataset)
    sys.stdout.write(render_text(report))
    if args.json:
        Path(args.json).write_text(render_json_text(report), encoding="utf-8")
        print(f"json report written to {args.json}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ucds",
        description="Local-first chat metadata extraction, review, and analysis.",
    )
    parser.add_argument(
        "--session-dir",
        default=_default_session_dir(),
        help="directory where extracted chats persist (default: ~/.ucds or $UCDS_HOME)",
    )
    parser.add_argument(
        "--offline",
        action="store_true",
        help="disable all network use (shorteners degrade, HTTP submission off)",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("import", help="import an exported chat text file")
    p.add_argument("file")
    p.set_defaults(func=_cmd_import)

    p = commands.add_parser("list", help="list imported chats")
    p.set_defaults(func=_cmd_list)

    p = commands.add_parser("show", help="print a chat's exact payload bytes")
    p.add_argument("id", help="chat id or label")
    p.set_defaults(func=_cmd_show)

    p = commands.add_parser("delete-url", help="remove one url from a chat")
    p.add_argument("id", help="chat id or label")
    p.add_argument("index", type=int)
    p.set_defaults(func=_cmd_delete_url)

    p = commands.add_parser("submit", help="deliver an approved payload")
    p.add_argument("id", help="chat id or label")
    p.add_argument("--target", action="append", help="HTTP target URL (repeatable)")
    p.add_argument("--out", help="write the payload to a file")
    p.set_defaults(func=_cmd_submit)

    p = commands.add_parser("serve", help="run the loopback review service")
    p.add_argument("--port", type=int, default=8787)
    p.add_argument("--target", action="append", help="configured HTTP submission target")
    p.add_argument("--ui-dir", help="directory with a built review UI (index.html)")
    p.set_defaults(func=_cmd_serve)

    p = commands.add_parser("analyze", help="aggregate a directory of payloads")
    p.add_argument("dir")
    p.add_argument("--json", help="also write a machine-readable report here")
    p.set_defaults(func=_cmd_analyze)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UcdsError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
