"""Branching for general k-SAT and the top-level solve dispatch.

For width k >= 4: greedily collect a maximal set of variable-disjoint
k-clauses. Below the threshold fraction, branch over every satisfying
pattern of the collected clauses (the residual formula is a (k-1)-CNF by
maximality) and recurse; at or above it, hand the instance to the
derandomized local search. Width 3 goes to the specialized 3-SAT branching,
width <= 2 to the polynomial 2-SAT decision.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Optional

from .branching3 import Br3Stats, PhiConfig, br_3
from .bounds import ck_recurrence
from .chains import Chain, Instance, build_chain, build_instance
from .formula import Formula, restrict, satisfies, solve_2sat
from .local_search import DlsStats, dls
from .outcomes import Outcome


@dataclass(frozen=True)
class KSatConfig:
    k: int
    nu: float
    c_prev: float


_CONFIG_CACHE: dict[int, KSatConfig] = {}


def ksat_config(k: int) -> KSatConfig:
    """Threshold fraction for width k, seeded from the 3-SAT base."""
    if k < 4:
        raise ValueError("configs exist for k >= 4")
    if k not in _CONFIG_CACHE:
        rows = {r.k: r for r in ck_recurrence(k)}
        _CONFIG_CACHE[k] = KSatConfig(k, rows[k].nu, rows[k - 1].ck)
    return _CONFIG_CACHE[k]


def greedy_maximal_1chains(f: Formula) -> Instance:
    """Maximal variable-disjoint set of width-k clauses, in clause order."""
    k = f.width()
    used: set[int] = set()
    chains: list[Chain] = []
    for c in f.clauses:
        if c.width != k:
            continue
        vs = c.variables()
        if vs & used:
            continue
        used |= vs
        chains.append(build_chain([c], k))
    return build_instance(chains)


def _patterns(k: int):
    """Nonzero literal-truth vectors in ascending lexicographic order."""
    return [p for p in iproduct((0, 1), repeat=k) if any(p)]


def br_k(f: Formula, cfg: KSatConfig, stats: Optional["SolveStats"] = None) -> Outcome:
    """Either solve by branching into the (k-1)-SAT solver or return the
    instance for local search."""
    if f.width() < 4:
        raise ValueError("br_k expects width >= 4")
    inst = greedy_maximal_1chains(f)
    if len(inst) >= cfg.nu * f.n:
        return Outcome.of_instance(inst)
    pattern_sets = [_patterns(cfg.k) for _ in inst.chains]
    for combo in iproduct(*pattern_sets):
        alpha: dict[int, int] = {}
        for chain, pat in zip(inst.chains, combo):
            for lit, bit in zip(chain.clauses[0].lits, pat):
                alpha[abs(lit)] = bit if lit > 0 else 1 - bit
        if stats is not None:
            stats.branch_nodes += 1
        sub = solve_ksat(restrict(f, alpha), stats=stats)
        if sub.verdict == "SAT":
            total = dict(sub.assignment)
            total.update(alpha)
            return Outcome.sat(total)
    return Outcome.unsat()


@dataclass
class SolveStats:
    branch_nodes: int = 0
    path: str = ""
    br3: Br3Stats = field(default_factory=Br3Stats)
    dls: DlsStats = field(default_factory=DlsStats)
    chain_vector: dict[str, int] = field(default_factory=dict)


@dataclass(frozen=True)
class SolveResult:
    verdict: str  # "SAT" | "UNSAT"
    assignment: Optional[dict[int, int]] = None


def solve_ksat(
    f: Formula,
    phi_cfg: Optional[PhiConfig] = None,
    stats: Optional[SolveStats] = None,
    trace=None,
) -> SolveResult:
    """Full pipeline: branching either solves the formula or yields an
    instance, which the derandomized local search finishes."""
    stats = stats if stats is not None else SolveStats()
    if f.has_bottom:
        stats.path = stats.path or "BR-solved"
        return SolveResult("UNSAT")
    w = f.width()
    if w <= 2:
        stats.path = stats.path or "2SAT"
        m = solve_2sat(f)
        if m is None:
            return SolveResult("UNSAT")
        assert satisfies(f, m)
        return SolveResult("SAT", m)
    if w == 3:
        out = br_3(f, phi_cfg, trace=trace, stats=stats.br3)
    else:
        out = br_k(f, ksat_config(w), stats=stats)
    if out.kind == "sat":
        stats.path = stats.path or "BR-solved"
        assert satisfies(f, out.assignment)
        return SolveResult("SAT", out.assignment)
    if out.kind == "unsat":
        stats.path = stats.path or "BR-solved"
        return SolveResult("UNSAT")
    stats.path = "DLS"
    inst = out.instance
    counts: dict[str, int] = {}
    from .chains import canonical_zeta, zeta

    for ch in inst.chains:
        key = canonical_zeta(zeta(ch.clauses))
        counts[key] = counts.get(key, 0) + 1
    stats.chain_vector = counts
    hit = dls(f, inst, stats=stats.dls)
    if hit is None:
        return SolveResult("UNSAT")
    assert satisfies(f, hit)
    return SolveResult("SAT", hit)
