"""CNF formulas whose models are the consistent circuit-copy assignments
and whose symmetries are the reduction's permutations.

Every logical variable u gets a twin variable constrained to hold the
complementary value, so "negate u" is the variable transposition
(u utilde) and all symmetries act purely on variables.  Per gate, eight
implication groups tie the source variables and the gate output variable
to the quadrant encoding; a coupling formula forces copy-j inputs to be
copy-0 inputs with bit j flipped.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from .bitlex import PriorityOrder, format_order
from .circuit import FlipInstance
from .errors import (
    DegreeMismatch,
    LengthMismatch,
    MalformedDimacs,
    OrbitCapExceeded,
    UnsatStart,
)
from .perm import (
    GeneratorSet,
    Permutation,
    format_cycles,
    parse_generator_file,
)
from .reduction import QUADRANTS, GateState, encode_gate_state
from .search import SearchResult, standard_algorithm


@dataclass(frozen=True)
class CnfFormula:
    """Clauses over twinned variables plus attached symmetry generators,
    variable priority and an initial satisfying assignment."""

    num_vars: int
    clauses: tuple[tuple[int, ...], ...]
    var_labels: tuple[str, ...]
    symmetries: GeneratorSet
    priority: PriorityOrder | None = None
    initial: str | None = None
    circuit: FlipInstance | None = None

    def twin_of(self, v: int) -> int:
        return v + 1 if v % 2 else v - 1


def _bicond(a: int, b: int) -> list[tuple[int, ...]]:
    return [tuple(sorted((-a, b))), tuple(sorted((a, -b)))]


def build_formula(c: FlipInstance) -> CnfFormula:
    n, G = c.n, c.gate_count
    per = 2 * (n + 5 * G)
    num_vars = per * (n + 1)

    def x_var(j: int, i: int) -> int:
        return j * per + 2 * (i - 1) + 1

    def w_var(j: int, gid: int) -> int:
        return j * per + 2 * n + 10 * (gid - 1) + 1

    def q_var(j: int, gid: int, q: str) -> int:
        return j * per + 2 * n + 10 * (gid - 1) + 3 + 2 * QUADRANTS.index(q)

    def source_var(j: int, src) -> int:
        return x_var(j, src[1]) if src[0] == "x" else w_var(j, src[1])

    def lit(v: int, value: int) -> int:
        # positive literal of the primary when value is 1, of the twin when 0
        return v if value else v + 1

    labels = []
    for j in range(n + 1):
        for i in range(1, n + 1):
            labels += [f"C{j}.x{i}", f"C{j}.x{i}.t"]
        for gid in range(1, G + 1):
            labels += [f"C{j}.g{gid}.w", f"C{j}.g{gid}.w.t"]
            for q in QUADRANTS:
                labels += [f"C{j}.g{gid}.q{q}", f"C{j}.g{gid}.q{q}.t"]

    clauses: list[tuple[int, ...]] = []
    for j in range(n + 1):
        for gid, (s1, s2) in enumerate(c.gates, start=1):
            u, v, w = source_var(j, s1), source_var(j, s2), w_var(j, gid)
            for a1 in (1, 0):
                for a2 in (1, 0):
                    for b in (1, 0):
                        premise = (lit(u, a1), lit(v, a2), lit(w, b))
                        state = encode_gate_state(GateState(a1, a2, b))
                        for q, lab in zip(QUADRANTS, state):
                            clause = sorted(
                                {-p for p in premise} | {lit(q_var(j, gid, q), lab)}
                            )
                            clauses.append(tuple(clause))
    for v in range(1, num_vars + 1, 2):
        clauses.append((v, v + 1))
        clauses.append((-(v + 1), -v))
    for i1 in range(n + 1):
        for i2 in range(i1 + 1, n + 1):
            for jj in range(1, n + 1):
                a, b = x_var(i1, jj), x_var(i2, jj)
                if jj in (i1, i2):
                    clauses += _bicond(a, b + 1) + _bicond(a + 1, b)
                else:
                    clauses += _bicond(a, b) + _bicond(a + 1, b + 1)

    def perm_from(ops: Iterable[tuple[int, int]]) -> Permutation:
        img = list(range(1, num_vars + 1))
        for a, b in ops:
            img[a - 1], img[b - 1] = img[b - 1], img[a - 1]
        return Permutation(tuple(img))

    def feed_swaps(j: int, source) -> list[tuple[int, int]]:
        ops: list[tuple[int, int]] = []
        for hid, (s1, s2) in enumerate(c.gates, start=1):
            if s1 == source:
                for qa, qb in (("00", "10"), ("01", "11")):
                    va, vb = q_var(j, hid, qa), q_var(j, hid, qb)
                    ops += [(va, vb), (va + 1, vb + 1)]
            if s2 == source:
                for qa, qb in (("00", "01"), ("10", "11")):
                    va, vb = q_var(j, hid, qa), q_var(j, hid, qb)
                    ops += [(va, vb), (va + 1, vb + 1)]
        return ops

    pairs: list[tuple[str, Permutation]] = []
    for j in range(n + 1):
        for gid in range(1, G + 1):
            w = w_var(j, gid)
            ops = [(w, w + 1)]
            for q in QUADRANTS:
                vq = q_var(j, gid, q)
                ops.append((vq, vq + 1))
            ops += feed_swaps(j, ("g", gid))
            pairs.append((f"pi_{gid}_{j}", perm_from(ops)))
    for i in range(1, n + 1):
        ops = [(slot, i * per + slot) for slot in range(1, per + 1)]
        for i2 in range(1, n + 1):
            if i2 == i:
                continue
            xv = x_var(i2, i)
            ops.append((xv, xv + 1))
            ops += feed_swaps(i2, ("x", i))
        pairs.append((f"sigma_{i}", perm_from(ops)))
    symmetries = GeneratorSet.from_pairs(num_vars, pairs)

    prim_rank = [q_var(0, gid, "11") for gid in range(1, G + 1)]
    prim_rank += [w_var(0, gid) for gid in c.outputs]
    for j in range(1, n + 1):
        prim_rank += [q_var(j, gid, "11") for gid in range(1, G + 1)]
    ranked = set(prim_rank)
    for j in range(n + 1):
        rest = [x_var(j, i) for i in range(1, n + 1)]
        for gid in range(1, G + 1):
            rest.append(w_var(j, gid))
            rest += [q_var(j, gid, q) for q in ("00", "01", "10")]
        prim_rank += [v for v in rest if v not in ranked]
    priority = PriorityOrder(tuple(r for v in prim_rank for r in (v, v + 1)))

    alpha = ["?"] * num_vars

    def assign(v: int, value: int) -> None:
        alpha[v - 1] = str(value)
        alpha[v] = str(1 - value)

    for j in range(n + 1):
        xj = ["0"] * n
        if j >= 1:
            xj[j - 1] = "1"
        for i in range(1, n + 1):
            assign(x_var(j, i), int(xj[i - 1]))
        values = {("x", i): int(xj[i - 1]) for i in range(1, n + 1)}
        for gid, (s1, s2) in enumerate(c.gates, start=1):
            values[("g", gid)] = 0
            assign(w_var(j, gid), 0)
            state = GateState(values[s1], values[s2], 0)
            for q, lab in zip(QUADRANTS, encode_gate_state(state)):
                assign(q_var(j, gid, q), lab)

    return CnfFormula(
        num_vars=num_vars,
        clauses=tuple(clauses),
        var_labels=tuple(labels),
        symmetries=symmetries,
        priority=priority,
        initial="".join(alpha),
        circuit=c,
    )


def satisfies(f: CnfFormula, assignment: str) -> bool:
    if len(assignment) != f.num_vars:
        raise LengthMismatch(f"{len(assignment)} bits vs {f.num_vars} variables")
    return all(
        any((assignment[abs(l) - 1] == "1") == (l > 0) for l in clause)
        for clause in f.clauses
    )


def check_symmetry(f: CnfFormula, p: Permutation) -> bool:
    """True iff renaming every variable through p maps the clause multiset
    onto itself."""
    if p.degree != f.num_vars:
        raise DegreeMismatch(f"permutation degree {p.degree} vs {f.num_vars} variables")
    image = p.image

    def mapped(clause: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(sorted((1 if l > 0 else -1) * image[abs(l) - 1] for l in clause))

    canon = [tuple(sorted(cl)) for cl in f.clauses]
    return Counter(map(mapped, f.clauses)) == Counter(canon)


def enumerate_models(f: CnfFormula, cap: int = 10**6) -> list[str]:
    """All satisfying assignments via backtracking with unit propagation
    (exhaustive oracle; intended for small formulas)."""
    V = f.num_vars
    assign: list[int | None] = [None] * (V + 1)
    models: list[str] = []

    def propagate(trail: list[int]) -> bool:
        changed = True
        while changed:
            changed = False
            for clause in f.clauses:
                unassigned = None
                count = 0
                sat = False
                for l in clause:
                    val = assign[abs(l)]
                    if val is None:
                        unassigned = l
                        count += 1
                    elif (val == 1) == (l > 0):
                        sat = True
                        break
                if sat:
                    continue
                if count == 0:
                    return False
                if count == 1:
                    assert unassigned is not None
                    assign[abs(unassigned)] = 1 if unassigned > 0 else 0
                    trail.append(abs(unassigned))
                    changed = True
        return True

    def solve(v: int) -> None:
        while v <= V and assign[v] is not None:
            v += 1
        if v > V:
            if len(models) >= cap:
                raise OrbitCapExceeded(f"model count exceeds cap {cap}")
            models.append("".join(str(assign[u]) for u in range(1, V + 1)))
            return
        for value in (0, 1):
            assign[v] = value
            trail = [v]
            if propagate(trail):
                solve(v + 1)
            for u in trail:
                assign[u] = None

    solve(1)
    return models


def local_min_solution(
    f: CnfFormula,
    alpha: str | None = None,
    max_steps: int = 10**6,
) -> SearchResult:
    """Greedy descent through the symmetries from a satisfying assignment.

    Symmetries map models to models, so every visited assignment
    satisfies the formula; the endpoint cannot be improved by any single
    symmetry under the variable priority."""
    start = alpha if alpha is not None else f.initial
    if start is None:
        raise ValueError("no assignment given and formula has no initial one")
    if not satisfies(f, start):
        raise UnsatStart("starting assignment does not satisfy the formula")
    return standard_algorithm(start, f.priority, f.symmetries, max_steps=max_steps)


def decode_input(f: CnfFormula, assignment: str) -> str:
    """Copy-0 input bits read off an assignment via the variable labels."""
    values: dict[int, str] = {}
    for v, label in enumerate(f.var_labels, start=1):
        m = re.match(r"C0\.x(\d+)$", label)
        if m:
            values[int(m.group(1))] = assignment[v - 1]
    return "".join(values[i] for i in sorted(values))


def format_dimacs(f: CnfFormula) -> str:
    """DIMACS text with the catalog, initial assignment, priority and
    symmetries carried in comment lines, so one stream round-trips."""
    lines = []
    for v, label in enumerate(f.var_labels, start=1):
        lines.append(f"c var {v} {label}")
    if f.initial is not None:
        lines.append(f"c alpha {f.initial}")
    if f.priority is not None:
        lines.append(f"c priority {format_order(f.priority)}")
    for name, p in f.symmetries:
        lines.append(f"c sym {name} = {format_cycles(p)}")
    lines.append(f"p cnf {f.num_vars} {len(f.clauses)}")
    for clause in f.clauses:
        lines.append(" ".join(map(str, clause)) + " 0")
    return "\n".join(lines) + "\n"


def format_symmetries(f: CnfFormula) -> str:
    """Sidecar body: one generator per line in variable-cycle notation."""
    return "\n".join(f"{name} = {format_cycles(p)}" for name, p in f.symmetries) + "\n"


def parse_symmetries(text: str, num_vars: int) -> GeneratorSet:
    return parse_generator_file(text, num_vars)


def parse_dimacs(text: str, symmetries_text: str | None = None) -> CnfFormula:
    num_vars = None
    announced = None
    clauses: list[tuple[int, ...]] = []
    pending: list[int] = []
    labels: dict[int, str] = {}
    alpha = None
    priority_text = None
    sym_lines: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c"):
            fields = line.split(None, 2)
            if len(fields) >= 3 and fields[1] == "var":
                idx_str, _, label = fields[2].partition(" ")
                labels[int(idx_str)] = label.strip()
            elif len(fields) >= 3 and fields[1] == "alpha":
                alpha = fields[2].strip()
            elif len(fields) >= 3 and fields[1] == "priority":
                priority_text = fields[2]
            elif len(fields) >= 3 and fields[1] == "sym":
                sym_lines.append(fields[2])
            continue
        if line.startswith("p"):
            fields = line.split()
            if len(fields) != 4 or fields[1] != "cnf":
                raise MalformedDimacs(f"line {lineno}: bad problem line {line!r}")
            num_vars, announced = int(fields[2]), int(fields[3])
            continue
        try:
            tokens = [int(tok) for tok in line.split()]
        except ValueError as exc:
            raise MalformedDimacs(f"line {lineno}: non-integer literal") from exc
        for tok in tokens:
            if tok == 0:
                clauses.append(tuple(pending))
                pending = []
            else:
                pending.append(tok)
    if num_vars is None:
        raise MalformedDimacs("missing 'p cnf' line")
    if pending:
        raise MalformedDimacs("last clause is not terminated by 0")
    if announced != len(clauses):
        raise MalformedDimacs(
            f"header announces {announced} clauses, file has {len(clauses)}"
        )
    for clause in clauses:
        for l in clause:
            if not 1 <= abs(l) <= num_vars:
                raise MalformedDimacs(f"literal {l} outside variable range")
    if sym_lines and symmetries_text is None:
        symmetries = parse_generator_file("\n".join(sym_lines), num_vars)
    elif symmetries_text is not None:
        symmetries = parse_generator_file(symmetries_text, num_vars)
    else:
        symmetries = GeneratorSet(num_vars, (), ())
    var_labels = tuple(labels.get(v, f"v{v}") for v in range(1, num_vars + 1))
    priority = None
    if priority_text is not None:
        from .bitlex import parse_order

        priority = parse_order(priority_text, num_vars)
    return CnfFormula(
        num_vars=num_vars,
        clauses=tuple(clauses),
        var_labels=var_labels,
        symmetries=symmetries,
        priority=priority,
        initial=alpha,
        circuit=None,
    )
