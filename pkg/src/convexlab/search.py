"""Simulated-annealing search for near-extremal sets under growth objectives.

Objectives are the normalized growth ratios the theorem chains end with,
e.g.  diffProdRatio = max{|A*A|, |A-A|} * (log2 n)^(2/11) / n^(14/11).
The set size is fixed during a run, so the irrational normalization is a
per-run constant (a 100-bit dyadic approximation, fixed convention: upper
bound of the log power over lower bound of the size power) and objective
comparisons are exact rational arithmetic.

Moves either replace one element inside the window spanned by its neighbors
or shift everything above a chosen gap, both rejecting proposals that break
distinctness or positivity.  Acceptance uses exp(-delta/T) evaluated with
30-digit decimals, so traces are bit-reproducible from the seed.
"""
from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

from .comparison import fraction_to_decimal, pow_frac_bounds
from .audit import clamped_log2
from .errors import DomainError
from .families import FamilySpec, generate
from .functions import ConvexFn, apply_fn, fn_by_name
from .seeding import derive_seed
from .sets import NumberSet, difference_set, product_set, sumset

OBJECTIVES = ("T1ratio", "T2ratio", "diffProdRatio", "sumProdRatio")
MOVES = ("element-replace", "gap-perturb")

_WINDOW_STEPS = 1024
_NORM_PREC_BITS = 100

# (log exponent, size exponent) of the normalization for each objective
_EXPONENTS = {
    "T1ratio": (Fraction(2, 11), Fraction(14, 11)),
    "diffProdRatio": (Fraction(2, 11), Fraction(14, 11)),
    "T2ratio": (Fraction(2, 19), Fraction(24, 19)),
    "sumProdRatio": (Fraction(2, 19), Fraction(24, 19)),
}


@dataclass(frozen=True)
class SearchConfig:
    objective: str
    set_size: int
    iterations: int
    seed: int = 0
    temp_initial: Fraction = Fraction(1)
    temp_decay: Fraction = Fraction(995, 1000)
    move_set: tuple[str, ...] = MOVES
    initial: FamilySpec | None = None
    fn_name: str = "square"
    restarts: int = 1

    def __post_init__(self):
        if self.objective not in OBJECTIVES:
            raise ValueError(f"objective must be one of {OBJECTIVES}")
        if self.set_size < 4:
            raise ValueError("set_size must be at least 4")
        if self.iterations < 0:
            raise ValueError("iterations must be nonnegative")
        if self.temp_initial <= 0 or not 0 < self.temp_decay <= 1:
            raise ValueError("temperature schedule must be positive with decay in (0,1]")
        if self.restarts < 1:
            raise ValueError("restarts must be at least 1")
        if not self.move_set or any(m not in MOVES for m in self.move_set):
            raise ValueError(f"move_set must be a nonempty subset of {MOVES}")

    @classmethod
    def from_json_dict(cls, data: dict) -> "SearchConfig":
        initial = None
        if "initial" in data and data["initial"] is not None:
            d = dict(data["initial"])
            for key in ("ratio", "start", "step"):
                if key in d:
                    d[key] = Fraction(d[key])
            d.setdefault("n", data["set_size"])
            initial = FamilySpec(**d)
        return cls(
            objective=data["objective"],
            set_size=int(data["set_size"]),
            iterations=int(data["iterations"]),
            seed=int(data.get("seed", 0)),
            temp_initial=Fraction(str(data.get("temp_initial", "1"))),
            temp_decay=Fraction(str(data.get("temp_decay", "0.995"))),
            move_set=tuple(data.get("move_set", MOVES)),
            initial=initial,
            fn_name=data.get("fn", "square"),
            restarts=int(data.get("restarts", 1)),
        )

    def to_json_dict(self) -> dict:
        return {
            "objective": self.objective,
            "set_size": self.set_size,
            "iterations": self.iterations,
            "seed": self.seed,
            "temp_initial": str(self.temp_initial),
            "temp_decay": str(self.temp_decay),
            "move_set": list(self.move_set),
            "fn": self.fn_name,
            "restarts": self.restarts,
            "initial": None if self.initial is None else {
                "kind": self.initial.kind,
                "n": self.initial.n,
                "seed": self.initial.seed,
                "power": self.initial.power,
                "ratio": str(self.initial.ratio),
                "start": str(self.initial.start),
                "step": str(self.initial.step),
            },
        }


def normalization_constant(objective: str, n: int) -> Fraction:
    """Dyadic approximation of (log2 n)^a / n^b at 100 bits, fixed convention."""
    log_exp, size_exp = _EXPONENTS[objective]
    log_value, _ = clamped_log2(n)
    num = pow_frac_bounds(log_value, log_exp, _NORM_PREC_BITS)[1]
    den = pow_frac_bounds(Fraction(n), size_exp, _NORM_PREC_BITS)[0]
    return num / den


def objective_core(objective: str, a: NumberSet, fn: ConvexFn) -> int:
    """The integer part of the objective: the max of the two combination sizes."""
    if objective in ("diffProdRatio", "sumProdRatio"):
        grown = len(product_set(a, a, log_equivalence=True))
    else:
        fa = apply_fn(fn, a)
        grown = len(sumset(fa, fa))
    if objective in ("T1ratio", "diffProdRatio"):
        other = len(difference_set(a, a))
    else:
        other = len(sumset(a, a))
    return max(grown, other)


def objective_value(cfg: SearchConfig, a: NumberSet) -> Fraction:
    """Exact current value of the configured objective on a set."""
    fn = fn_by_name(cfg.fn_name)
    return objective_core(cfg.objective, a, fn) * normalization_constant(cfg.objective, len(a))


@dataclass(frozen=True)
class SearchOutcome:
    config: SearchConfig
    best_set: NumberSet
    best_objective: Fraction
    traces: tuple[dict, ...]

    def best_objective_decimal(self, digits: int = 30) -> str:
        return fraction_to_decimal(self.best_objective, digits)


def _initial_set(cfg: SearchConfig, restart_seed: int) -> NumberSet:
    spec = cfg.initial or FamilySpec(kind="geometric", n=cfg.set_size, ratio=Fraction(2))
    spec = FamilySpec(kind=spec.kind, n=cfg.set_size, seed=restart_seed,
                      power=spec.power, ratio=spec.ratio,
                      start=spec.start if spec.kind != "AP" or spec.start > 0 else Fraction(1),
                      step=spec.step)
    a = generate(spec)
    if not a.is_strictly_positive():
        raise DomainError("search requires strictly positive initial sets")
    return a


def _propose(rng: random.Random, a: NumberSet, move: str) -> NumberSet | None:
    e = a.elements
    n = len(e)
    if move == "element-replace":
        i = rng.randrange(n)
        lo = e[i - 1] if i > 0 else e[0] / 2
        hi = e[i + 1] if i < n - 1 else e[-1] + (e[-1] - e[-2])
        k = rng.randint(1, _WINDOW_STEPS - 1)
        candidate = lo + (hi - lo) * Fraction(k, _WINDOW_STEPS)
        if candidate <= 0 or candidate in a:
            return None
        return NumberSet(tuple(e[:i]) + (candidate,) + tuple(e[i + 1:]))
    # gap-perturb: shift everything from index i by a fraction of gap i
    i = rng.randint(1, n - 1)
    gap = e[i] - e[i - 1]
    k = rng.randint(0, _WINDOW_STEPS)
    delta = gap * Fraction(2 * k - _WINDOW_STEPS, 2 * _WINDOW_STEPS)
    if delta == 0:
        return None
    return NumberSet(tuple(e[:i]) + tuple(q + delta for q in e[i:]))


def _accept(rng: random.Random, delta: Fraction, temp: Fraction) -> bool:
    if delta <= 0:
        return True
    u = rng.random()
    with localcontext() as ctx:
        ctx.prec = 30
        x = Decimal(delta.numerator) / Decimal(delta.denominator)
        t = Decimal(temp.numerator) / Decimal(temp.denominator)
        threshold = (-(x / t)).exp()
        return Decimal(u) < threshold


def _run_restart(cfg: SearchConfig, restart: int, digits: int) -> tuple[Fraction, NumberSet, list[dict]]:
    seed = derive_seed(cfg.seed, f"restart:{restart}")
    rng = random.Random(seed)
    fn = fn_by_name(cfg.fn_name)
    norm = normalization_constant(cfg.objective, cfg.set_size)
    current = _initial_set(cfg, seed)
    cur_obj = objective_core(cfg.objective, current, fn) * norm
    best, best_obj = current, cur_obj
    trace: list[dict] = []
    temp = cfg.temp_initial
    for it in range(cfg.iterations):
        move = cfg.move_set[rng.randrange(len(cfg.move_set))]
        proposal = _propose(rng, current, move)
        accepted = False
        if proposal is not None:
            new_obj = objective_core(cfg.objective, proposal, fn) * norm
            if _accept(rng, new_obj - cur_obj, temp):
                current, cur_obj = proposal, new_obj
                accepted = True
                if (new_obj, proposal.elements) < (best_obj, best.elements):
                    best, best_obj = proposal, new_obj
        trace.append({
            "restart": restart,
            "iteration": it,
            "objective": fraction_to_decimal(cur_obj, digits),
            "accepted": accepted,
            "best": fraction_to_decimal(best_obj, digits),
        })
        temp *= cfg.temp_decay
    return best_obj, best, trace


def extremal_search(cfg: SearchConfig, workers: int = 1, digits: int = 30) -> SearchOutcome:
    """Run all restarts (optionally in parallel) and merge deterministically.

    Restarts are independently seeded, so parallel execution is bit-identical
    to serial; the merge takes the best objective with the lexicographically
    smallest set as tie-break.
    """
    indices = list(range(cfg.restarts))
    if workers <= 1 or cfg.restarts == 1:
        results = [_run_restart(cfg, i, digits) for i in indices]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda i: _run_restart(cfg, i, digits), indices))
    best_obj, best = None, None
    for obj, a, _ in results:
        if best_obj is None or (obj, a.elements) < (best_obj, best.elements):
            best_obj, best = obj, a
    traces: list[dict] = []
    for _, _, t in results:
        traces.extend(t)
    return SearchOutcome(config=cfg, best_set=best, best_objective=best_obj, traces=tuple(traces))
