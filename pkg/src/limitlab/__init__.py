"""Simulation workbench for language learning in the limit: tagged index
coding, a budgeted hypothesis-space registry, texts, restricted learners,
success-criterion checkers, and diagonalization sessions with re-verifiable
witness reports.
"""

from .coding import Tag, components, decode, encode, pair, triple, unpair
from .hypospace import (
    NO,
    NOT_DECIDABLE,
    YES,
    Decidable,
    Finite,
    JoinOf,
    Lazy,
    PadOf,
    Registry,
    ind,
    pad,
    unpad,
)
from .learnkit import Learner, g_learner, load_table_learner, psd_learner, run, sd_learner, star
from .textkit import PAUSE, Text, canonical_text, content, finite_text, psd_reachable
from .criteria import (
    MonWitness,
    Verdict,
    check_bc,
    check_ex,
    check_mon,
    check_smon,
    mon_from_smon_witness,
)
from .canonical import Workbench, relations_map
from .adversary import (
    Budgets,
    WitnessReport,
    coolsep_diagnose,
    coolsep_session,
    gsmon_diagnose,
    gsmon_session,
    sd_diagnose,
    sd_session,
    totalpsd_diagnose,
    totalpsd_session,
)

__version__ = "0.1.0"
