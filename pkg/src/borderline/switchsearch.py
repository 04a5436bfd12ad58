"""Property-switching search: walk mutation space back and forth across validity.

Starting from a valid seed, apply one random mutation per step and track the
oracle's verdict. Every change of verdict is a switch; each switch means two
adjacent walk states straddle the boundary. Valid mutants accumulate in the
MVS, invalid ones in the MIS.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .candidates import Candidate, TestSet
from .errors import GeneratorValidityError, NoSwitchFound
from .mutation import MutatorSet, mutate
from .oracles import ValidityOracle
from .seeding import derive_rng

WALK_MODES = ("advance_always", "advance_on_switch")

DEFAULT_NO_SITE_LIMIT = 50


@dataclass(frozen=True)
class SwitchBudget:
    target_switches: int = 20
    max_mutations_per_switch: int = 500
    max_total_mutations: int = 5000


@dataclass(frozen=True)
class WalkEntry:
    string: str
    valid: bool
    operator: str | None  # None only for the seed state


@dataclass(frozen=True)
class Evaluation:
    """One oracle-checked mutant, in walk order."""

    step_index: int
    string: str
    valid: bool
    operator: str


@dataclass
class BoundaryPair:
    """Paired valid/invalid sets produced by one walk, plus the walk itself."""

    seed: Candidate
    mvs: TestSet
    mis: TestSet
    trace: list[WalkEntry]
    evaluations: list[Evaluation] = field(default_factory=list)
    switches: int = 0
    oracle_evaluations: int = 0
    stall_reason: str | None = None


def property_switch_search(
    seed: Candidate | str,
    mutators: MutatorSet,
    oracle: ValidityOracle,
    budget: SwitchBudget = SwitchBudget(),
    rng: random.Random | None = None,
    walk_mode: str = "advance_always",
    no_site_limit: int = DEFAULT_NO_SITE_LIMIT,
) -> BoundaryPair:
    """Walk from one valid seed until target_switches flips or budget runs out.

    Raises NoSwitchFound (with the partial pair attached) when the walk stalls:
    too many mutations since the last flip, or the current string has offered
    no applicable mutation site no_site_limit times in a row.
    """
    if walk_mode not in WALK_MODES:
        raise ValueError(f"unknown walk mode: {walk_mode!r}")
    if rng is None:
        rng = random.Random(0)
    seed_candidate = seed if isinstance(seed, Candidate) else Candidate(seed, True, "tset")
    verdict = oracle.check(seed_candidate.string)
    evals = 1
    if not verdict.valid:
        raise GeneratorValidityError(
            f"walk seed rejected by {oracle.name} oracle: {seed_candidate.string!r}"
        )

    mvs = TestSet("mvs")
    mis = TestSet("mis")
    trace = [WalkEntry(seed_candidate.string, True, None)]
    evaluations: list[Evaluation] = []
    current = seed_candidate.string
    current_valid = True
    switches = 0
    mutations = 0
    since_switch = 0
    no_site_run = 0

    def pair(stall: str | None) -> BoundaryPair:
        return BoundaryPair(
            seed_candidate, mvs, mis, trace, evaluations, switches, evals, stall
        )

    while switches < budget.target_switches and mutations < budget.max_total_mutations:
        mutant, op_name, no_site = mutate(current, mutators, rng)
        if no_site:
            no_site_run += 1
            if no_site_run >= no_site_limit:
                reason = f"no applicable mutation site {no_site_run} times in a row"
                raise NoSwitchFound(reason, partial_pair=pair(reason))
            continue
        no_site_run = 0
        mutations += 1
        evals += 1
        valid = oracle.check(mutant).valid
        evaluations.append(Evaluation(mutations, mutant, valid, op_name))
        target = mvs if valid else mis
        target.add(Candidate(mutant, valid, "step2", {"step": mutations, "operator": op_name}))
        flipped = valid != current_valid
        if flipped:
            switches += 1
            since_switch = 0
        else:
            since_switch += 1
        advance = walk_mode == "advance_always" or flipped
        if advance:
            current = mutant
            current_valid = valid
            trace.append(WalkEntry(mutant, valid, op_name))
        if not flipped and since_switch >= budget.max_mutations_per_switch:
            reason = (
                f"{since_switch} mutations since the last switch "
                f"({switches}/{budget.target_switches} switches found)"
            )
            raise NoSwitchFound(reason, partial_pair=pair(reason))
    return pair(None)


def run_step2(
    tset,
    mutators: MutatorSet,
    oracle: ValidityOracle,
    budget: SwitchBudget,
    master_seed: int,
    preset_name: str,
    walk_mode: str = "advance_always",
    no_site_limit: int = DEFAULT_NO_SITE_LIMIT,
) -> tuple[list[BoundaryPair], list[str]]:
    """One walk per step-1 member; stalled walks keep their partial pairs.

    Returns the pairs in seed order and human-readable notes for every walk
    that ended early.
    """
    pairs: list[BoundaryPair] = []
    notes: list[str] = []
    for index, candidate in enumerate(tset.candidates):
        rng = derive_rng(master_seed, "step2", preset_name, str(index))
        try:
            result = property_switch_search(
                candidate, mutators, oracle, budget, rng, walk_mode, no_site_limit
            )
        except NoSwitchFound as stop:
            result = stop.partial_pair
            notes.append(f"seed {index}: {stop}")
        pairs.append(result)
    return pairs, notes
