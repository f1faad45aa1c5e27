"""Command line for the HTTP service."""

from __future__ import annotations

import argparse
import sys

from pathlib import Path

import uvicorn

from tutorkit.service.app import create_app
from tutorkit.service.config import PROVIDER_SCRIPTED, PROVIDER_WIRE, ServiceConfig


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tutorkit-serve",
        description="Serve the tutoring session API.",
    )
    parser.add_argument("--config", type=Path, default=None,
                        help="JSON config file")
    parser.add_argument("--port", type=int, default=None,
                        help="listen port (overrides config)")
    parser.add_argument("--data-dir", type=Path, default=None,
                        help="session/catalog storage directory (overrides config)")
    parser.add_argument("--provider", choices=(PROVIDER_SCRIPTED, PROVIDER_WIRE),
                        default=None, help="model provider (overrides config)")
    return parser


def config_from_args(args) -> ServiceConfig:
    config = (ServiceConfig.load(args.config) if args.config is not None
              else ServiceConfig())
    if args.port is not None:
        config.port = args.port
    if args.data_dir is not None:
        config.data_dir = args.data_dir
    if args.provider is not None:
        config.provider = args.provider
    # Re-check cross-field constraints the overrides may have broken.
    config.__post_init__()
    return config


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = config_from_args(args)
    except (OSError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    app = create_app(config)
    uvicorn.run(app, host="0.0.0.0", port=config.port)
    return 0


if __name__ == "__main__":
    sys.exit(main())
