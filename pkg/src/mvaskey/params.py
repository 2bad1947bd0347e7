"""Exact parameter handling for the BC_n Askey-Wilson family.

Everything is multiplicative: ``q = sigma**2``, ``t = q**g = tau**2`` and
``t_r = q**g_r = tau_r**2``.  The exponents ``g, g_r`` and ``alpha`` never
appear explicitly.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Sequence

__all__ = [
    "ConfigError",
    "ParameterSet",
    "validate",
    "load_config",
    "dual",
    "dual_values",
    "is_self_dual",
    "spectral_point",
    "fmt_fraction",
    "parse_fraction",
]


class ConfigError(ValueError):
    """Raised when a raw configuration violates one or more invariants."""

    def __init__(self, errors: Sequence[str]):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


def parse_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"expected an exact rational, got {value!r}")
    return Fraction(value)


def fmt_fraction(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class ParameterSet:
    """The tuple (q, t, t0..t3) in square-root-free form.

    ``sigma`` is q^(1/2), ``tau`` is t^(1/2) and ``tprod_root`` is
    (t0 t1 t2 t3)^(1/2), i.e. q^((g0+g1+g2+g3)/2).  These are the only
    half powers any formula needs; individual roots of the t_r are not
    stored because they are irrational for typical dual parameters.
    """

    n: int
    sigma: Fraction
    tau: Fraction
    ts: tuple[Fraction, Fraction, Fraction, Fraction]
    tprod_root: Fraction
    warnings: tuple[str, ...] = field(default=(), compare=False)

    @property
    def q(self) -> Fraction:
        return self.sigma * self.sigma

    @property
    def t(self) -> Fraction:
        return self.tau * self.tau

    def fingerprint(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "sigma": fmt_fraction(self.sigma),
            "tau": fmt_fraction(self.tau),
            "t0": fmt_fraction(self.ts[0]),
            "t1": fmt_fraction(self.ts[1]),
            "t2": fmt_fraction(self.ts[2]),
            "t3": fmt_fraction(self.ts[3]),
            "tprod_root": fmt_fraction(self.tprod_root),
        }


_RAW_KEYS = ("n", "sigma", "tau", "tau0", "tau1", "tau2", "tau3")


def validate(raw: Mapping) -> ParameterSet:
    """Build a :class:`ParameterSet` from ``n, sigma, tau, tau0..tau3``.

    All violations are collected and raised together as a
    :class:`ConfigError`.
    """
    errors: list[str] = []
    for key in ("t", "q", "t0", "t1", "t2", "t3"):
        if key in raw:
            errors.append(f"direct '{key}' input is not accepted; give its square root instead")
    missing = [k for k in _RAW_KEYS if k not in raw]
    if missing:
        errors.append("missing keys: " + ", ".join(missing))
        raise ConfigError(errors)

    n = raw["n"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        errors.append(f"n must be a positive integer, got {n!r}")

    vals: dict[str, Fraction] = {}
    for key in _RAW_KEYS[1:]:
        try:
            vals[key] = parse_fraction(raw[key])
        except (TypeError, ValueError, ZeroDivisionError):
            errors.append(f"{key} = {raw[key]!r} is not a rational")
    if len(vals) < len(_RAW_KEYS) - 1:
        raise ConfigError(errors)

    sigma = vals["sigma"]
    q = sigma * sigma
    if sigma <= 0:
        errors.append(f"sigma must be positive, got {fmt_fraction(sigma)}")
    if not 0 < q < 1:
        errors.append(f"q = {q} not in (0,1)")

    names = {"tau": "t", "tau0": "t0", "tau1": "t1", "tau2": "t2", "tau3": "t3"}
    for key, tname in names.items():
        x = vals[key]
        if x <= 0:
            errors.append(f"{tname} must be positive ({key} = {fmt_fraction(x)})")
        elif x * x > 1:
            errors.append(f"{tname} = {x * x} exceeds 1 (negative exponent)")
    if errors:
        raise ConfigError(errors)

    taus = [vals[f"tau{r}"] for r in range(4)]
    return ParameterSet(
        n=n,
        sigma=sigma,
        tau=vals["tau"],
        ts=tuple(x * x for x in taus),
        tprod_root=taus[0] * taus[1] * taus[2] * taus[3],
    )


def load_config(path: str | Path) -> ParameterSet:
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError([f"cannot read config {path}: {exc}"]) from exc
    if not isinstance(raw, dict):
        raise ConfigError(["config must be a JSON object"])
    return validate(raw)


def dual_values(p: ParameterSet):
    """Dual ``(ts, tprod_root)``; plain arithmetic, so symbolic fields pass through."""
    t0, t1, t2, t3 = p.ts
    T = p.tprod_root
    return (T, t0 * t1 / T, t0 * t2 / T, t0 * t3 / T), t0


def dual(p: ParameterSet) -> ParameterSet:
    """Image of ``p`` under the half-Hadamard exponent map.

    With T = (t0 t1 t2 t3)^(1/2): t^0 = T, t^1 = t0 t1 / T,
    t^2 = t0 t2 / T, t^3 = t0 t3 / T, and the dual root product is t0.
    """
    ts, root = dual_values(p)
    warns = tuple(
        f"dual t{r} = {fmt_fraction(x)} > 1 (negative dual exponent)"
        for r, x in enumerate(ts)
        if x > 1
    )
    return ParameterSet(
        n=p.n, sigma=p.sigma, tau=p.tau, ts=ts, tprod_root=root, warnings=warns
    )


def is_self_dual(p: ParameterSet) -> bool:
    t0, t1, t2, t3 = p.ts
    return t0 == t1 * t2 * t3


def spectral_point(p: ParameterSet, lam: Sequence[int] = (), side: str = "primal") -> tuple[Fraction, ...]:
    """Values q^(y_j) for y = rho + lam (primal) or rho^ + lam (dual)."""
    if side == "dual":
        p = dual(p)
    elif side != "primal":
        raise ValueError(f"side must be 'primal' or 'dual', got {side!r}")
    lam = tuple(lam) + (0,) * (p.n - len(lam))
    if len(lam) != p.n:
        raise ValueError(f"partition {lam} longer than n = {p.n}")
    q, t, T = p.q, p.t, p.tprod_root
    return tuple(t ** (p.n - j) * T * q ** lam[j - 1] for j in range(1, p.n + 1))
