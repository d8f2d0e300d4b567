"""Shared test utilities: the seeded admissible-parameter draws are the
canonical ones from the CLI module."""

from bethelab.cli import draw_distinct, draw_q, draw_w, draw_z  # noqa: F401
