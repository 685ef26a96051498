#!/usr/bin/env python3
"""Run every diagonalization session against the sample restricted learners
and write one JSON report per (session, learner) pair.

Usage: python scripts/run_adversaries.py [--out-dir reports] [--goal N]
"""

from __future__ import annotations

import argparse
import json
from pathlib import Path

from limitlab.adversary import (
    Budgets,
    coolsep_diagnose,
    coolsep_session,
    gsmon_diagnose,
    gsmon_session,
    sd_diagnose,
    sd_session,
    totalpsd_diagnose,
    totalpsd_session,
)
from limitlab.canonical import (
    Workbench,
    always_change,
    constant_learner,
    family_overgeneralizer,
    min_consistent,
    set_copier,
)
from limitlab.hypospace import ind
from limitlab.learnkit import Learner


def copier_psd() -> Learner:
    return Learner("Psd", "set-copier^Psd", lambda view, budget: ind(view[0]))


def constant_nat(kind: str):
    def factory(session) -> Learner:
        return constant_learner(Workbench(session.registry).p2, kind)

    return factory


MATRIX = [
    ("coolsep", coolsep_session, coolsep_diagnose, [
        ("family-overgeneralizer", family_overgeneralizer),
        ("set-copier-psd", copier_psd()),
    ]),
    ("gsmon", gsmon_session, gsmon_diagnose, [
        ("always-change", always_change()),
        ("min-consistent", min_consistent()),
        ("constant-nat", constant_nat("Psd")),
    ]),
    ("totalpsd", totalpsd_session, totalpsd_diagnose, [
        ("set-copier-psd", copier_psd()),
        ("constant-nat", constant_nat("Psd")),
    ]),
    ("sd", sd_session, sd_diagnose, [
        ("set-copier", set_copier()),
        ("constant-nat", constant_nat("Sd")),
    ]),
]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="reports")
    parser.add_argument("--goal", type=int, default=10)
    args = parser.parse_args()

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    budgets = Budgets(mind_change_goal=args.goal, error_goal=args.goal)

    for name, make_session, diagnose, learners in MATRIX:
        for label, learner in learners:
            session = make_session(learner, budgets)
            report = diagnose(session, args.goal)
            path = out_dir / f"{name}-{label}.json"
            path.write_text(
                json.dumps(report.to_json(), sort_keys=True, indent=2) + "\n",
                encoding="utf-8")
            print(f"{name:9s} vs {label:24s} -> {report.variant:22s} {path}")


if __name__ == "__main__":
    main()
