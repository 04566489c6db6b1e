"""Run-wide guards and defaults.  Mutable on purpose so the CLI can override them."""

from dataclasses import dataclass


@dataclass
class RunConfig:
    rank: int = 2
    vertex_limit: int = 14
    whitehead_limit: int = 200000
    labeling_limit: int = 200000
    exact_tuple_limit: int = 2_000_000
    seed: int = 20240101
    output: str = "json"
    cache_path: str | None = None


CONFIG = RunConfig()
