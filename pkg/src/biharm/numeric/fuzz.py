"""Exact-point fuzzing of certificates.

Each certificate is evaluated at ``trials`` random rational points that avoid
the zeros of its recorded guard factors.  Three further checks run on top:

* mutation sensitivity: every coefficient of the engine side is bumped by 1
  in turn, and the bumped residual must be nonzero at some sampled point;
* dual route: both compared sides are evaluated separately at a budgeted
  subset of the points and must agree exactly;
* float agreement: double-precision evaluation of the two sides agrees to
  ``1e-9`` relative to the sum of term magnitudes.
"""

import os
import random
from dataclasses import dataclass, field

from gmpy2 import mpq

from ..exact.poly import Poly
from ..exact.rational import as_rational

DEFAULT_SEED = 20240611
FLOAT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class FuzzConfig:
    seed: int = DEFAULT_SEED
    trials: int = 1000
    bound: int = 100
    mutation_terms: int = 50
    dual_points: int = 8

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.bound <= 0:
            raise ValueError("value bound must be positive")


def seed_from_env(default=DEFAULT_SEED):
    raw = os.environ.get("BIHARM_SEED")
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"BIHARM_SEED must be an integer, got {raw!r}") from None


def config_from_env(**overrides):
    overrides.setdefault("seed", seed_from_env())
    return FuzzConfig(**overrides)


def random_rational(rng, bound):
    return mpq(rng.randint(-bound, bound), rng.randint(1, bound))


def _symbols(*polys):
    names = set()
    for p in polys:
        if p is not None:
            names.update(p.symbols())
    return sorted(names)


def sample_points(rng, names, guards, count, bound, max_tries=100):
    """``count`` assignments of ``names`` at which no guard vanishes."""
    points = []
    for _ in range(count):
        for _ in range(max_tries):
            pt = {s: random_rational(rng, bound) for s in names}
            if all(g.evaluate(pt) for g in guards):
                points.append(pt)
                break
        else:
            raise RuntimeError("could not sample a point avoiding the guard factors")
    return points


@dataclass
class FuzzReport:
    name: str
    trials: int
    nonzero_hits: int = 0
    mutations: int = 0
    detected: int = 0
    dual_points: int = 0
    dual_mismatches: int = 0
    float_worst: float = 0.0
    mutated_float_worst: float = 0.0
    notes: list = field(default_factory=list)

    @property
    def passed(self):
        return (self.nonzero_hits == 0 and self.detected == self.mutations
                and self.dual_mismatches == 0 and self.float_worst < FLOAT_TOLERANCE
                and self.mutated_float_worst < FLOAT_TOLERANCE)

    def as_dict(self):
        return {
            "name": self.name, "trials": self.trials, "nonzero_hits": self.nonzero_hits,
            "mutations": self.mutations, "detected": self.detected,
            "dual_points": self.dual_points, "dual_mismatches": self.dual_mismatches,
            "float_worst": self.float_worst, "mutated_float_worst": self.mutated_float_worst,
            "passed": self.passed,
        }


def _mutation_terms(engine, cfg, rng):
    keys = engine.sorted_keys()
    if len(keys) <= cfg.mutation_terms:
        return keys
    return sorted(rng.sample(keys, cfg.mutation_terms))


def _monomial(ring, key):
    return Poly(ring, {key: mpq(1)})


def _relative(value, exact, scale):
    if scale == 0.0:
        return abs(value - float(exact))
    return abs(value - float(exact)) / scale


def _multiple(cert):
    """The multiple the residual was formed with (``None`` is stored for 0 and for exact checks)."""
    if cert.multiple is not None:
        return as_rational(cert.multiple)
    return mpq(1) if cert.engine - cert.reference == cert.residual else mpq(0)


def fuzz_certificate(cert, cfg=None):
    """Run the exact, mutation, dual-route and float checks on one certificate."""
    cfg = cfg or FuzzConfig()
    rep = FuzzReport(cert.name, cfg.trials)
    residual = cert.residual
    if residual is None:
        raise ValueError(f"{cert.name}: no residual to fuzz")
    rng = random.Random(f"{cfg.seed}:{cert.name}")
    guards = [g for g in cert.guards if not g.is_constant()]
    names = _symbols(residual, cert.engine, cert.reference, *guards)
    points = sample_points(rng, names, guards, cfg.trials, cfg.bound)

    for pt in points:
        if residual.evaluate(pt):
            rep.nonzero_hits += 1
    if rep.nonzero_hits and cert.certified:
        raise AssertionError(f"{cert.name}: certified residual is nonzero at a sample point")

    target = cert.engine if cert.engine is not None and cert.engine else None
    if target is not None:
        ring = residual.ring
        for key in _mutation_terms(target, cfg, rng):
            mono = _monomial(ring, key)
            mutated = residual + mono
            rep.mutations += 1
            for pt in points:
                val = mutated.evaluate(pt)
                if val:
                    rep.detected += 1
                    fv, scale = mutated.evaluate_float(pt)
                    rep.mutated_float_worst = max(rep.mutated_float_worst,
                                                  _relative(fv, val, scale))
                    break
    else:
        rep.notes.append("no engine side recorded: mutation and dual-route checks skipped")

    if cert.engine is not None and cert.reference is not None:
        k = _multiple(cert)
        for pt in points[:cfg.dual_points]:
            e = cert.engine.evaluate(pt)
            r = cert.reference.evaluate(pt) if cert.reference else mpq(0)
            rep.dual_points += 1
            if e - k * r != residual.evaluate(pt):
                rep.dual_mismatches += 1
            fe, se = cert.engine.evaluate_float(pt)
            fr, sr = cert.reference.evaluate_float(pt) if cert.reference else (0.0, 0.0)
            exact = e - k * r
            rep.float_worst = max(rep.float_worst,
                                  _relative(fe - float(k) * fr, exact, se + abs(float(k)) * sr))
    return rep


def fuzz_all(certs, cfg=None):
    cfg = cfg or FuzzConfig()
    return [fuzz_certificate(c, cfg) for c in certs if c.residual is not None]
