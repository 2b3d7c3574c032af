"""Certificates: one checked identity with its residual and assumptions."""

import time
from dataclasses import dataclass, field

from .rational import format_rational

CERTIFIED = "certified"
DISCREPANCY = "discrepancy"
ERROR = "error"


@dataclass(frozen=True)
class Certificate:
    name: str
    anchor: str
    assumptions: tuple
    residual: object
    status: str
    elapsed: float = 0.0
    multiple: object = None
    notes: tuple = field(default_factory=tuple)
    # the two sides that were compared, and factors fuzz points must avoid
    engine: object = field(default=None, compare=False, repr=False)
    reference: object = field(default=None, compare=False, repr=False)
    guards: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if self.status == CERTIFIED and (self.residual is None or self.residual):
            raise ValueError("a certified status requires the zero residual")
        if self.status == DISCREPANCY and self.residual is not None and not self.residual:
            raise ValueError("a zero residual must be certified")

    @property
    def certified(self):
        return self.status == CERTIFIED

    def summary(self, timings=False):
        """Report record; ``elapsed_ms`` is null unless timings are requested."""
        return {
            "name": self.name,
            "anchor": self.anchor,
            "status": self.status,
            "assumptions": list(self.assumptions),
            "elapsed_ms": round(self.elapsed, 3) if timings else None,
            "residual_terms": 0 if self.residual is None else len(self.residual),
            "multiple": None if self.multiple is None else format_rational(self.multiple),
            "notes": list(self.notes),
        }


def certify(name, anchor, residual, assumptions=(), multiple=None, notes=(), elapsed=0.0,
            engine=None, reference=None, guards=()):
    status = CERTIFIED if not residual else DISCREPANCY
    return Certificate(name, anchor, tuple(assumptions), residual, status,
                       elapsed, multiple, tuple(notes), engine, reference, tuple(guards))


def failed(name, anchor, exc, assumptions=(), elapsed=0.0):
    return Certificate(name, anchor, tuple(assumptions), None, ERROR, elapsed,
                       None, (f"{type(exc).__name__}: {exc}",))


class Stopwatch:
    def __enter__(self):
        self.start = time.perf_counter()
        self.ms = 0.0
        return self

    def __exit__(self, *exc):
        self.ms = (time.perf_counter() - self.start) * 1000.0
        return False


def run_certificate(name, anchor, program, assumptions=()):
    """Run ``program() -> (residual, multiple, notes[, sides])`` and wrap the outcome.

    ``sides`` is an optional ``{"engine", "reference", "guards"}`` dict for
    programs whose residual is an actual difference of two polynomials, so
    the fuzzer can mutate and re-evaluate them.  Exceptions become an
    ``error`` certificate instead of propagating.
    """
    with Stopwatch() as sw:
        try:
            out = program()
            residual, multiple, notes = out[:3]
            sides = out[3] if len(out) > 3 else {}
        except Exception as exc:  # noqa: BLE001 - surfaced as an error status
            outcome = exc
        else:
            outcome = None
    if outcome is not None:
        return failed(name, anchor, outcome, assumptions, sw.ms)
    return certify(name, anchor, residual, assumptions, multiple, notes, sw.ms, **sides)


def run_comparison(name, anchor, build, assumptions=(), guards=(), up_to_multiple=True):
    """Run ``build() -> (engine, reference, notes)`` and certify ``engine = k*reference``.

    ``k`` is the rational multiple most of the shared coefficients agree on;
    the residual is ``engine - k*reference``.  With ``up_to_multiple=False``
    the comparison is exact (``k = 1``), as for printed values rather than
    printed relations.
    """
    from .elim import compare_up_to_multiple

    with Stopwatch() as sw:
        try:
            engine, reference, notes = build()
            if up_to_multiple:
                k, residual = compare_up_to_multiple(engine, reference)
            else:
                k, residual = None, engine - reference
        except Exception as exc:  # noqa: BLE001 - surfaced as an error status
            outcome = exc
        else:
            outcome = None
    if outcome is not None:
        return failed(name, anchor, outcome, assumptions, sw.ms)
    if k is not None and k == 0:
        k = None
    return certify(name, anchor, residual, assumptions, k, notes, sw.ms,
                   engine=engine, reference=reference, guards=guards)
