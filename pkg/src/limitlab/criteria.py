"""Finite-horizon, budget-aware checkers for explanatory, behaviourally
correct, strongly monotone and monotone learning, their global variants,
and the text-surgery step turning a strong-monotonicity violation of a
starred learner into a monotonicity violation.

Verdicts are three-valued: a checker never silently asserts a fact it could
not establish within its budgets.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .hypospace import NO, NOT_DECIDABLE, YES, Index, Registry, _LangEqual
from .learnkit import Learner, LearningSequence, run, star
from .textkit import Text, insertion_text, union_with_element

CONFIRMED = "confirmed"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"


class InvalidWitnessError(Exception):
    pass


@dataclass(frozen=True)
class MonWitness:
    """A monotonicity violation: element x proposed at position n is gone
    from the hypothesis at position m."""

    n: int
    m: int
    x: int
    tier: str = "exact"  # "exact" or "budget"
    budget: int | None = None

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "x": self.x, "tier": self.tier,
                "budget": self.budget}


@dataclass
class Verdict:
    criterion: str
    kind: str  # confirmed | refuted | inconclusive
    witness: MonWitness | None = None
    n0: int | None = None
    reason: str | None = None
    evidence: dict = field(default_factory=dict)

    @property
    def confirmed(self) -> bool:
        return self.kind == CONFIRMED

    @property
    def refuted(self) -> bool:
        return self.kind == REFUTED

    def to_json(self) -> dict:
        return {
            "criterion": self.criterion,
            "verdict": self.kind,
            "witness": self.witness.to_json() if self.witness else None,
            "n0": self.n0,
            "reason": self.reason,
            "evidence": self.evidence,
        }


def _runs(seq: LearningSequence) -> list[tuple[int, Index | None]]:
    """Compress a learning sequence into (first position, value) runs."""
    out: list[tuple[int, Index | None]] = []
    for i, value in enumerate(seq):
        if not out or out[-1][1] != value:
            out.append((i, value))
    return out


# --------------------------------------------------------------------------
# Convergence criteria

def check_ex(registry: Registry, seq: LearningSequence, target,
             budget: int, bound: int) -> Verdict:
    """Syntactic convergence to one correct index.

    An undefined entry is a failure.  A sequence still moving at the final
    entry is refuted as unstable when it shows repeated mind changes, and
    inconclusive when the horizon simply cut a single late change short.
    """
    if any(entry is None for entry in seq):
        pos = seq.index(None)
        return Verdict("ex", REFUTED, reason=f"undefined entry at {pos}",
                       evidence={"position": pos})
    runs = _runs(seq)
    n0 = runs[-1][0]
    if n0 == len(seq) - 1 and len(seq) > 1:
        if len(runs) > 2:
            return Verdict("ex", REFUTED, reason="no syntactic convergence",
                           evidence={"mind_changes": len(runs) - 1})
        return Verdict("ex", INCONCLUSIVE, reason="horizon exhausted")
    final = seq[-1]
    eq = registry.lang_equal(final, target, budget, bound)
    if eq.confirmed:
        return Verdict("ex", CONFIRMED, n0=n0,
                       evidence={"final": final, "lang_equal": eq.to_json()})
    if eq.refuted:
        return Verdict("ex", REFUTED, reason="final hypothesis incorrect",
                       evidence={"final": final, "lang_equal": eq.to_json()})
    return Verdict("ex", INCONCLUSIVE, reason="budget exhausted",
                   evidence={"lang_equal": eq.to_json()})


def check_bc(registry: Registry, seq: LearningSequence, target,
             budget: int, bound: int) -> Verdict:
    """Semantic convergence: a cofinite tail of correct hypotheses.  Padding
    changes never refute."""
    results: list[_LangEqual | None] = []
    for entry in seq:
        results.append(None if entry is None else
                       registry.lang_equal(entry, target, budget, bound))
    bad = [i for i, r in enumerate(results) if r is None or r.refuted]
    last = results[-1]
    if last is None or last.refuted:
        return Verdict("bc", REFUTED, reason="tail still incorrect",
                       evidence={"wrong_positions": bad,
                                 "final": None if last is None else last.to_json()})
    # Longest suffix of confirmed entries.
    n0 = len(seq)
    while n0 > 0 and results[n0 - 1] is not None and results[n0 - 1].confirmed:
        n0 -= 1
    if n0 < len(seq):
        return Verdict("bc", CONFIRMED, n0=n0,
                       evidence={"wrong_positions": bad})
    return Verdict("bc", INCONCLUSIVE, reason="budget exhausted")


# --------------------------------------------------------------------------
# Monotonicity criteria

def _monotonicity_scan(registry: Registry, seq: LearningSequence, budget: int,
                       target_decide, allow_budget_witness: bool):
    """Shared scan for SMon/Mon.  ``target_decide`` restricts witness
    elements (None for SMon).  Returns (witness, all_exact, gaps)."""
    runs = _runs(seq)
    all_exact = True
    gaps = 0
    budget_witness: MonWitness | None = None
    for a in range(len(runs)):
        pos_n, hyp_n = runs[a]
        if hyp_n is None:
            continue
        candidates = sorted(registry.enumerate(hyp_n, budget))
        for b in range(a + 1, len(runs)):
            pos_m, hyp_m = runs[b]
            if hyp_m is None or hyp_m == hyp_n:
                continue
            if not registry.is_exact(hyp_m):
                all_exact = False
            for x in candidates:
                if target_decide is not None:
                    keep = target_decide(x)
                    if keep is None:
                        gaps += 1
                        continue
                    if not keep:
                        continue
                d = registry.decide(hyp_m, x)
                if d is NO:
                    return MonWitness(pos_n, pos_m, x), all_exact, gaps
                if d is NOT_DECIDABLE:
                    if not registry.member(hyp_m, x, budget):
                        w = MonWitness(pos_n, pos_m, x, tier="budget",
                                       budget=budget)
                        if allow_budget_witness:
                            return w, all_exact, gaps
                        if budget_witness is None:
                            budget_witness = w
                    gaps += 1
        if not registry.is_exact(hyp_n):
            all_exact = False
    return budget_witness, all_exact, gaps


def check_smon(registry: Registry, seq: LearningSequence, budget: int,
               allow_budget_witness: bool = False) -> Verdict:
    """Hypotheses must form a subset chain of languages."""
    witness, all_exact, gaps = _monotonicity_scan(
        registry, seq, budget, None, allow_budget_witness)
    if witness is not None and (witness.tier == "exact" or allow_budget_witness):
        return Verdict("smon", REFUTED, witness=witness)
    if any(entry is None for entry in seq):
        return Verdict("smon", INCONCLUSIVE, reason="undefined entries")
    if all_exact and gaps == 0:
        return Verdict("smon", CONFIRMED)
    return Verdict("smon", INCONCLUSIVE, reason="budget exhausted",
                   evidence={"near_witness": witness.to_json() if witness else None})


def check_mon(registry: Registry, seq: LearningSequence, text: Text,
              budget: int, allow_budget_witness: bool = False) -> Verdict:
    """Like check_smon, but a violation only counts on elements of the
    text's declared content."""
    desc = text.content_descriptor
    if desc is None:
        return Verdict("mon", INCONCLUSIVE, reason="text has no declared content")
    semi_decidable = not _desc_exact(desc)
    if semi_decidable:
        # Session-generated texts: restrict to elements already enumerated.
        known = _desc_known(desc, budget)
        target_decide = lambda x: True if x in known else None
    else:
        from .hypospace import descriptor_decides

        target_decide = lambda x: descriptor_decides(desc, x)
    witness, all_exact, gaps = _monotonicity_scan(
        registry, seq, budget, target_decide, allow_budget_witness)
    if witness is not None and (witness.tier == "exact" or allow_budget_witness):
        v = Verdict("mon", REFUTED, witness=witness)
        if semi_decidable:
            v.evidence["content_check"] = "restricted to enumerated elements"
        return v
    if any(entry is None for entry in seq):
        return Verdict("mon", INCONCLUSIVE, reason="undefined entries")
    if all_exact and gaps == 0 and not semi_decidable:
        return Verdict("mon", CONFIRMED)
    return Verdict("mon", INCONCLUSIVE, reason="budget exhausted",
                   evidence={"near_witness": witness.to_json() if witness else None})


def _desc_exact(desc) -> bool:
    from .hypospace import Decidable, Finite

    return isinstance(desc, (Decidable, Finite))


def _desc_known(desc, budget: int) -> frozenset[int]:
    from .hypospace import Lazy

    if isinstance(desc, Lazy):
        return desc.generate(budget)
    return frozenset()


# --------------------------------------------------------------------------
# Text surgery (monotone from strongly monotone witnesses)

def mon_from_smon_witness(text: Text, witness: MonWitness,
                          learner: Learner | None = None,
                          registry: Registry | None = None,
                          budget: int = 500) -> Text:
    """Insert the discarded element right after the prefix that dropped it.

    The witness must come from a starred-learner run on ``text``: the
    element x sits in the hypothesis at prefix length n but not at length m.
    The returned text presents text[m], then x, then the rest of the text,
    so the same run refutes plain monotonicity with the same element.
    """
    if witness.n >= witness.m:
        raise InvalidWitnessError("witness needs n < m")
    if learner is not None and registry is not None:
        h = star(learner)
        hyp_n = h.apply(text.prefix(witness.n), budget)
        hyp_m = h.apply(text.prefix(witness.m), budget)
        if hyp_n is None or witness.x not in registry.enumerate(hyp_n, budget):
            raise InvalidWitnessError("element not in earlier hypothesis")
        if hyp_m is None or registry.decide(hyp_m, witness.x) is not NO:
            raise InvalidWitnessError("element not excluded from later hypothesis")
    desc = text.content_descriptor
    new_desc = union_with_element(desc, witness.x) if desc is not None else None
    return insertion_text(text, witness.m, witness.x, new_desc)


# --------------------------------------------------------------------------
# Global (any-text) variants

def check_global(restriction: str, h: Learner, texts: list[Text], horizon: int,
                 budget: int, registry: Registry,
                 allow_budget_witness: bool = False) -> Verdict:
    """Apply the per-text checker to runs of the learner on every supplied
    text; any refutation refutes the global restriction."""
    if restriction not in ("mon", "smon"):
        raise ValueError("restriction must be 'mon' or 'smon'")
    if not texts:
        return Verdict(f"global-{restriction}", CONFIRMED,
                       reason="vacuous: no texts supplied")
    inconclusive = None
    for i, text in enumerate(texts):
        seq = run(star(h), text, horizon, budget)
        if restriction == "smon":
            v = check_smon(registry, seq, budget, allow_budget_witness)
        else:
            v = check_mon(registry, seq, text, budget, allow_budget_witness)
        if v.refuted:
            out = Verdict(f"global-{restriction}", REFUTED, witness=v.witness,
                          evidence={"text": text.label, "text_position": i})
            return out
        if not v.confirmed and inconclusive is None:
            inconclusive = Verdict(f"global-{restriction}", INCONCLUSIVE,
                                   reason=v.reason,
                                   evidence={"text": text.label})
    return inconclusive or Verdict(f"global-{restriction}", CONFIRMED,
                                   evidence={"texts": len(texts)})
