"""Run the HTTP service: python -m optlab.service [--port 8080] [--static DIR]."""

from __future__ import annotations

import argparse
from pathlib import Path

import uvicorn

from optlab.service.app import create_app


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(prog="optlab-service", description=__doc__)
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8080)
    parser.add_argument(
        "--static",
        help="directory with the built web UI (default: ./frontend/dist if present)",
    )
    args = parser.parse_args(argv)

    static = args.static
    if static is None:
        candidate = Path("frontend") / "dist"
        if candidate.is_dir():
            static = str(candidate)

    uvicorn.run(create_app(static_dir=static), host=args.host, port=args.port)


if __name__ == "__main__":
    main()
