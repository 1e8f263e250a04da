"""Command modules; each exposes register(subparsers) and run(args) -> exit code."""
