"""Run-time configuration.

A single immutable dataclass holds every tunable the toolkit consults:
working precision, point-count bounds, modular-symbol level cap, and the
local-solvability search depths.  Reports echo the active configuration so
that runs are reproducible from their output alone.
"""

from __future__ import annotations

import dataclasses
import json
import os

CONFIG_ENV_VAR = "BSD2_CONFIG"


@dataclasses.dataclass(frozen=True)
class Config:
    # bits of mantissa for all numeric (period / L-series) work
    precision_bits: int = 128
    # naive point counting is used up to this prime; baby-step giant-step above
    naive_count_bound: int = 50_000
    # hard cap on primes we will ever count points at
    count_prime_cap: int = 10_000_000
    # default sieve bound for the prime set of a twist family
    sieve_bound: int = 2000
    # modular-symbol spaces are only built for levels up to this cap
    modsym_level_cap: int = 200
    # extra 2-adic digits beyond the certified depth in local searches
    descent_extra_depth: int = 2
    # good primes used to isolate the rational eigenline
    eigen_prime_bound: int = 60

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)

    def replace(self, **kw) -> "Config":
        return dataclasses.replace(self, **kw)


def load_config(path: str | None = None) -> Config:
    """Load configuration from a JSON file, the env override, or defaults."""
    if path is None:
        path = os.environ.get(CONFIG_ENV_VAR)
    if path is None:
        return Config()
    with open(path) as fh:
        data = json.load(fh)
    fields = {f.name for f in dataclasses.fields(Config)}
    unknown = set(data) - fields
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    return Config(**data)


DEFAULT_CONFIG = Config()
