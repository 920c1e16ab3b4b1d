"""Regenerate the CLI transcripts in docs/sessions from the inputs directory.

Usage: python3 scripts/regenerate_sessions.py [--check]

With ``--check`` nothing is written; the exit status is 1 if any stored
transcript differs from a fresh run.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import sys
from pathlib import Path

from tropmirror.cli import main

ROOT = Path(__file__).resolve().parent.parent
INPUTS = ROOT / "inputs"
SESSIONS = ROOT / "docs" / "sessions"
RUNS = {
    "k3": ("complex", "pt1", "tropdef", "dualize", "mirror"),
    "quintic": ("complex", "tropdef", "dualize", "mirror"),
    "elliptic": ("complex", "pt1", "tropdef", "dualize", "mirror"),
    "unit": ("complex",),
}


def transcript(name: str, command: str) -> str:
    path = INPUTS / f"{name}.json"
    out = io.StringIO()
    with contextlib.redirect_stdout(out):
        code = main([command, "--input", str(path)])
    return f"$ tropmirror {command} --input inputs/{name}.json\n{out.getvalue()}[exit {code}]\n"


def sessions() -> dict[str, str]:
    return {f"{name}_{cmd}.txt": transcript(name, cmd) for name, cmds in RUNS.items() for cmd in cmds}


def run(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--check", action="store_true", help="compare instead of writing")
    args = parser.parse_args(argv)
    stale = []
    for fname, text in sessions().items():
        target = SESSIONS / fname
        if args.check:
            if not target.exists() or target.read_text(encoding="utf-8") != text:
                stale.append(fname)
        else:
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_text(text, encoding="utf-8")
    for fname in stale:
        print(f"stale transcript: {fname}", file=sys.stderr)
    return 1 if stale else 0


if __name__ == "__main__":
    sys.exit(run())
