"""Tunable numerical thresholds.

Every strategy switch in the gamma kernel and the sampler reads its cutoff
from a Thresholds instance so the switching logic can be probed and tuned
without code edits.  The CLI loads overrides from a plain ``key = value``
text file (``#`` starts a comment; blank lines ignored).
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class Thresholds:
    # Auto strategy: exact Poisson summation for integer a up to this size.
    exact_sum_max_a: float = 64.0
    # Auto strategy: continued fraction handles x >= a+1 up to this a;
    # beyond it the uniform asymptotic path takes over.
    cf_max_a: float = 1.0e4
    # eta(lambda) switches to its Taylor form when |lambda - 1| is below this.
    eta_taylor_cutoff: float = 1.0e-4
    # Uniform asymptotic Q: switch from the Phi-bar + correction form to the
    # exponentially-scaled cancellation form once sqrt(a)*eta exceeds this.
    temme_eta_switch: float = 25.0
    # Correction brackets evaluate by Taylor series when |lambda/theta - 1|
    # is below this, direct formula otherwise.
    temme_xi_series_cutoff: float = 0.05
    # Minimum x/a ratio accepted by the fixed-lambda (Tricomi-style) expansion.
    tricomi_min_ratio: float = 1.05
    # Sampler: Poisson rejection is used while the acceptance probability
    # Q(n, nu) stays above this; otherwise inverse-CDF with O(n) setup.
    sampler_min_accept: float = 1.0e-3
    # Direct summation budget for exact moments and distribution tables.
    summation_max_n: int = 1_000_000

    def replace(self, **kwargs) -> "Thresholds":
        return dataclasses.replace(self, **kwargs)


DEFAULT = Thresholds()

_FIELD_TYPES = {f.name: f.type for f in dataclasses.fields(Thresholds)}


def parse_config_text(text: str) -> dict:
    """Parse ``key = value`` lines into a kwargs dict for Thresholds."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DomainError(f"config line {lineno}: expected key = value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _FIELD_TYPES:
            known = ", ".join(sorted(_FIELD_TYPES))
            raise DomainError(f"config line {lineno}: unknown key {key!r} (known: {known})")
        try:
            out[key] = int(value) if _FIELD_TYPES[key] == "int" else float(value)
        except ValueError as exc:
            raise DomainError(f"config line {lineno}: bad numeric value {value!r}") from exc
    return out


def load_config(path: str) -> Thresholds:
    with open(path, "r", encoding="utf-8") as fh:
        return DEFAULT.replace(**parse_config_text(fh.read()))
