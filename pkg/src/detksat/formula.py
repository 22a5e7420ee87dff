"""CNF formulas: DIMACS I/O, restriction, unit propagation, 2-SAT, brute force.

Literals are signed DIMACS integers (variable v is ``v``/``-v``). Every clause
remembers its original form, i.e. the clause of the unrestricted input it
descends from; restriction and unit propagation preserve that reference.
A zero-literal clause is the falsified clause (bottom).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

import numpy as np


class DimacsError(ValueError):
    """Malformed DIMACS input; message carries the offending line number."""


def var_of(lit: int) -> int:
    return abs(lit)


@dataclass(frozen=True)
class Clause:
    """Disjunction of literals plus a reference to its original form."""

    lits: tuple[int, ...]
    orig: tuple[int, ...]

    @property
    def width(self) -> int:
        return len(self.lits)

    @property
    def is_bottom(self) -> bool:
        return not self.lits

    def variables(self) -> frozenset[int]:
        return frozenset(abs(l) for l in self.lits)

    def __str__(self) -> str:
        return "(" + " ".join(str(l) for l in self.lits) + ")" if self.lits else "(bot)"


def clause(lits: Iterable[int], orig: Optional[Iterable[int]] = None) -> Clause:
    lits = tuple(lits)
    if len({abs(l) for l in lits}) != len(lits):
        raise ValueError("duplicate variable in clause: %r" % (lits,))
    return Clause(lits, tuple(orig) if orig is not None else lits)


BOTTOM = Clause((), ())


@dataclass(frozen=True)
class Formula:
    """A CNF over variables 1..n with clauses in a fixed order."""

    n: int
    clauses: tuple[Clause, ...]

    def width(self) -> int:
        return max((c.width for c in self.clauses), default=0)

    @property
    def has_bottom(self) -> bool:
        return any(c.is_bottom for c in self.clauses)

    def three_clauses(self) -> list[Clause]:
        return [c for c in self.clauses if c.width == 3]

    def two_clauses(self) -> list[Clause]:
        return [c for c in self.clauses if c.width == 2]

    def unit_clauses(self) -> list[Clause]:
        return [c for c in self.clauses if c.width == 1]

    def variables(self) -> set[int]:
        out: set[int] = set()
        for c in self.clauses:
            out.update(abs(l) for l in c.lits)
        return out

    def __len__(self) -> int:
        return len(self.clauses)


def formula(n: int, clause_lits: Iterable[Iterable[int]]) -> Formula:
    cs = []
    for lits in clause_lits:
        c = clause(lits)
        for l in c.lits:
            if abs(l) > n or abs(l) < 1:
                raise ValueError("literal %d out of range 1..%d" % (l, n))
        cs.append(c)
    return Formula(n, tuple(cs))


def parse_dimacs(text: str) -> Formula:
    """Parse DIMACS CNF. Duplicate literals are dropped; tautologies rejected."""
    n = m = None
    clauses: list[Clause] = []
    cur: list[int] = []
    cur_line = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if n is not None:
                raise DimacsError("line %d: duplicate header" % lineno)
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError("line %d: malformed header %r" % (lineno, line))
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError("line %d: malformed header %r" % (lineno, line))
            if n < 0 or m < 0:
                raise DimacsError("line %d: negative header counts" % lineno)
            continue
        if n is None:
            raise DimacsError("line %d: clause before header" % lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError("line %d: bad token %r" % (lineno, tok))
            if lit == 0:
                seen: list[int] = []
                for l in cur:
                    if -l in seen:
                        raise DimacsError(
                            "line %d: tautological clause %r" % (lineno, cur)
                        )
                    if l not in seen:
                        seen.append(l)
                clauses.append(Clause(tuple(seen), tuple(seen)))
                cur = []
                cur_line = None
            else:
                if abs(lit) > n:
                    raise DimacsError(
                        "line %d: variable %d exceeds declared %d" % (lineno, abs(lit), n)
                    )
                if cur_line is None:
                    cur_line = lineno
                cur.append(lit)
    if cur:
        raise DimacsError("line %d: unterminated clause" % cur_line)
    if n is None:
        raise DimacsError("line 1: missing header")
    if len(clauses) != m:
        raise DimacsError(
            "line 1: header declares %d clauses, found %d" % (m, len(clauses))
        )
    return Formula(n, tuple(clauses))


def serialize_dimacs(f: Formula) -> str:
    lines = ["p cnf %d %d" % (f.n, len(f.clauses))]
    for c in f.clauses:
        lines.append(" ".join(str(l) for l in c.lits) + " 0")
    return "\n".join(lines) + "\n"


def restrict(f: Formula, alpha: Mapping[int, int]) -> Formula:
    """Fix variables per alpha: drop satisfied clauses, strip false literals.

    A fully falsified clause becomes bottom. Original forms are preserved.
    """
    out: list[Clause] = []
    for c in f.clauses:
        sat = False
        lits: list[int] = []
        for l in c.lits:
            v = abs(l)
            if v in alpha:
                if (alpha[v] == 1) == (l > 0):
                    sat = True
                    break
            else:
                lits.append(l)
        if not sat:
            out.append(Clause(tuple(lits), c.orig))
    return Formula(f.n, tuple(out))


def satisfies(f: Formula, alpha: Mapping[int, int]) -> bool:
    for c in f.clauses:
        if not any((alpha.get(abs(l), 0) == 1) == (l > 0) for l in c.lits):
            return False
    return True


@dataclass
class UpResult:
    formula: Formula
    fixes: dict[int, int]
    conflict: bool
    # per surviving clause, index of its ancestor in the input formula
    src: tuple[int, ...] = ()


def _up(f: Formula, src: Optional[list[int]] = None) -> UpResult:
    """Unit propagation in clause order, tracking fixed variables and ancestry."""
    cls = list(f.clauses)
    if src is None:
        src = list(range(len(cls)))
    fixes: dict[int, int] = {}
    while True:
        if any(c.is_bottom for c in cls):
            return UpResult(Formula(f.n, tuple(cls)), fixes, True, tuple(src))
        unit = next((c for c in cls if c.width == 1), None)
        if unit is None:
            return UpResult(Formula(f.n, tuple(cls)), fixes, False, tuple(src))
        l = unit.lits[0]
        fixes[abs(l)] = 1 if l > 0 else 0
        nxt_c: list[Clause] = []
        nxt_s: list[int] = []
        for c, s in zip(cls, src):
            sat = False
            lits: list[int] = []
            for lit in c.lits:
                if abs(lit) == abs(l):
                    if lit == l:
                        sat = True
                        break
                else:
                    lits.append(lit)
            if not sat:
                nxt_c.append(Clause(tuple(lits), c.orig))
                nxt_s.append(s)
        cls, src = nxt_c, nxt_s


def unit_propagate(f: Formula) -> Formula:
    """Run unit propagation until no 1-clause remains (or bottom appears)."""
    return _up(f).formula


def unit_propagate_tracked(f: Formula) -> UpResult:
    return _up(f)


def up_restrict(f: Formula, alpha: Mapping[int, int]) -> UpResult:
    """UP(f | alpha) with ancestry indices relative to f and all fixes recorded."""
    cls: list[Clause] = []
    src: list[int] = []
    for i, c in enumerate(f.clauses):
        sat = False
        lits: list[int] = []
        for l in c.lits:
            v = abs(l)
            if v in alpha:
                if (alpha[v] == 1) == (l > 0):
                    sat = True
                    break
            else:
                lits.append(l)
        if not sat:
            cls.append(Clause(tuple(lits), c.orig))
            src.append(i)
    res = _up(Formula(f.n, tuple(cls)), src)
    res.fixes = {**dict(alpha), **res.fixes}
    return res


# ---------------------------------------------------------------------------
# 2-SAT via implication-graph strong connectivity


def solve_2sat(f: Formula) -> Optional[dict[int, int]]:
    """Decide a CNF of width <= 2. Returns a total assignment or None (UNSAT).

    Implication graph + Tarjan SCC; variables absent from the formula get 0.
    """
    if f.has_bottom:
        raise ValueError("bottom clause present")
    if f.width() > 2:
        raise ValueError("not a 2-CNF (width %d)" % f.width())

    # node encoding: literal l -> 2*var + (0 if positive else 1)
    def node(l: int) -> int:
        return 2 * abs(l) + (0 if l > 0 else 1)

    def neg(x: int) -> int:
        return x ^ 1

    adj: dict[int, list[int]] = {}
    nodes: set[int] = set()
    for v in sorted(f.variables()):
        nodes.add(2 * v)
        nodes.add(2 * v + 1)
    for c in f.clauses:
        if c.width == 1:
            (a,) = c.lits
            adj.setdefault(neg(node(a)), []).append(node(a))
        elif c.width == 2:
            a, b = c.lits
            adj.setdefault(neg(node(a)), []).append(node(b))
            adj.setdefault(neg(node(b)), []).append(node(a))

    index: dict[int, int] = {}
    low: dict[int, int] = {}
    comp: dict[int, int] = {}
    counter = 0
    ncomp = 0
    stack: list[int] = []
    onstack: set[int] = set()

    for start in sorted(nodes):
        if start in index:
            continue
        # iterative Tarjan
        work = [(start, 0)]
        while work:
            x, pi = work[-1]
            if pi == 0:
                index[x] = low[x] = counter
                counter += 1
                stack.append(x)
                onstack.add(x)
            recurse = False
            succs = adj.get(x, ())
            for j in range(pi, len(succs)):
                y = succs[j]
                if y not in index:
                    work[-1] = (x, j + 1)
                    work.append((y, 0))
                    recurse = True
                    break
                if y in onstack:
                    low[x] = min(low[x], index[y])
            if recurse:
                continue
            if low[x] == index[x]:
                while True:
                    y = stack.pop()
                    onstack.discard(y)
                    comp[y] = ncomp
                    low[y] = low[x]
                    if y == x:
                        break
                ncomp += 1
            work.pop()
            if work:
                px, _ = work[-1]
                low[px] = min(low[px], low[x])

    assign: dict[int, int] = {v: 0 for v in range(1, f.n + 1)}
    for v in sorted(f.variables()):
        if comp[2 * v] == comp[2 * v + 1]:
            return None
        # Tarjan component ids are reverse-topological: later-closed component
        # has a larger id and no path back, so pick the side with smaller id.
        assign[v] = 1 if comp[2 * v] < comp[2 * v + 1] else 0
    return assign


# ---------------------------------------------------------------------------
# exhaustive oracle

BRUTE_FORCE_LIMIT = 30


def brute_force_sat(f: Formula) -> Optional[dict[int, int]]:
    """Exhaustive oracle: first satisfying assignment in lexicographic order.

    Assignments are ordered as bit strings x1 x2 ... xn (x1 most significant).
    Guarded at n <= 30; evaluation is vectorised in chunks.
    """
    n = f.n
    if n > BRUTE_FORCE_LIMIT:
        raise ValueError("brute force guard: n=%d > %d" % (n, BRUTE_FORCE_LIMIT))
    if f.has_bottom:
        return None
    total = 1 << n
    chunk = 1 << min(n, 20)
    for base in range(0, total, chunk):
        idx = np.arange(base, min(base + chunk, total), dtype=np.int64)
        ok = np.ones(idx.shape, dtype=bool)
        for c in f.clauses:
            cs = np.zeros(idx.shape, dtype=bool)
            for l in c.lits:
                bit = (idx >> (n - abs(l))) & 1
                cs |= (bit == 1) if l > 0 else (bit == 0)
            ok &= cs
            if not ok.any():
                break
        if ok.any():
            w = int(idx[int(np.argmax(ok))])
            return {v: (w >> (n - v)) & 1 for v in range(1, n + 1)}
    return None


def hamming(a: int, b: int) -> int:
    """Hamming distance between two words packed as ints."""
    return (a ^ b).bit_count()
