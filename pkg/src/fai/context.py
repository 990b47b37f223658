"""Object-attribute data tables and base extraction.

The attribute-side derivation pair sends a set of <object, upper-adjoint>
pairs to the intersection of the corresponding g(I_x), and a graded set G to
the collection of pairs whose g(I_x) contains it.  Their composition downup
is a closure operator whose fixed points ("intents") are exactly the models
of any complete theory.
"""

from __future__ import annotations

import csv
import io
import random
from functools import lru_cache

from .errors import CapExceeded, NotComplete, ParseError, UniverseMismatch
from .fset import LSet, Universe, iter_lsets, lset_count, render_lset
from .gconn import Parameterization
from .lattice import Chain, parse_degree
from .semantics import FAI, Theory, entails, least_model


class LContext:
    """A finite table of graded rows: one LSet per object."""

    def __init__(self, universe: Universe, chain: Chain, objects, rows):
        self.universe = universe
        self.chain = chain
        self.objects = tuple(objects)
        self.rows = tuple(rows)
        if len(self.objects) != len(self.rows):
            raise ValueError("one row per object")
        if len(set(self.objects)) != len(self.objects):
            raise ValueError("object names must be distinct")
        for r in self.rows:
            if r.universe != universe or r.chain != chain:
                raise UniverseMismatch("row over a different universe/chain")

    @classmethod
    def from_csv(cls, text: str, chain: Chain, universe: Universe | None = None) -> "LContext":
        """Parse ``object,<attr>,...`` CSV; degrees must be chain members."""
        reader = csv.reader(io.StringIO(text))
        table = [row for row in reader if row and any(cell.strip() for cell in row)]
        if not table:
            raise ParseError("empty context file")
        header = [cell.strip() for cell in table[0]]
        if len(header) < 2:
            raise ParseError("context header needs an object column and attributes")
        attrs = tuple(header[1:])
        if universe is None:
            universe = Universe(attrs)
        elif universe.attributes != attrs:
            raise UniverseMismatch(
                f"context attributes {attrs} differ from the declared universe "
                f"{universe.attributes}"
            )
        objects, rows = [], []
        for lineno, row in enumerate(table[1:], start=2):
            cells = [cell.strip() for cell in row]
            if len(cells) != len(header):
                raise ParseError(f"row {lineno}: expected {len(header)} cells")
            objects.append(cells[0])
            idx = [chain.index_of(parse_degree(c)) for c in cells[1:]]
            rows.append(LSet(universe, chain, idx))
        return cls(universe, chain, objects, rows)

    def row(self, name: str) -> LSet:
        return self.rows[self.objects.index(name)]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LContext)
            and self.universe == other.universe
            and self.chain == other.chain
            and self.objects == other.objects
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.universe, self.chain, self.objects, self.rows))

    def __repr__(self) -> str:
        return f"LContext({len(self.objects)} objects, {len(self.universe)} attributes)"


# ------------------------------------------------------- derivation operators


@lru_cache(maxsize=64)
def _row_images(ctx: LContext, s: Parameterization):
    """Every (object position, connection position, g(I_x)) triple."""
    out = []
    for xi, r in enumerate(ctx.rows):
        for ci, conn in enumerate(s.connections):
            out.append((xi, ci, conn.upper(r)))
    return tuple(out)


def up(ctx: LContext, pairs, s: Parameterization) -> LSet:
    """Intersection of g(I_x) over the given <object, connection> pairs."""
    cur = LSet.top(ctx.universe, ctx.chain)
    for name, conn in pairs:
        member = s.resolve(conn)
        if member is None:
            raise UniverseMismatch("pair uses a connection outside S")
        cur = cur & member.upper(ctx.row(name))
    return cur


def down(ctx: LContext, g: LSet, s: Parameterization):
    """All <object, connection> pairs whose g(I_x) contains the given set."""
    out = []
    for xi, ci, img in _row_images(ctx, s):
        if g <= img:
            out.append((ctx.objects[xi], s.connections[ci]))
    return tuple(out)


def downup(ctx: LContext, g: LSet, s: Parameterization) -> LSet:
    """The context closure: intersection of all g(I_x) containing the set."""
    cur = [ctx.chain.n - 1] * len(ctx.universe)
    gidx = g.idx
    for _, _, img in _row_images(ctx, s):
        iidx = img.idx
        if all(x <= y for x, y in zip(gidx, iidx)):
            for y, v in enumerate(iidx):
                if v < cur[y]:
                    cur[y] = v
    return LSet(ctx.universe, ctx.chain, cur)


def holds_in_context(ctx: LContext, fai: FAI, s: Parameterization) -> bool:
    """True iff the formula holds in every row, i.e. B <= downup(A)."""
    return fai.consequent <= downup(ctx, fai.antecedent, s)


# ------------------------------------------------------------ intent listing


def intents_enum(ctx: LContext, s: Parameterization, cap: int = 10**6):
    """All downup fixed points, in ascending lectic order.

    NextClosure-style: from the current intent, for attribute positions from
    last to first, close (prefix of A before i) + {next degree above A at i}
    and accept the first candidate agreeing with A before i.
    """
    universe, chain = ctx.universe, ctx.chain
    if lset_count(universe, chain) > cap:
        raise CapExceeded(f"{lset_count(universe, chain)} sets exceed the cap {cap}")
    size = len(universe)
    top = chain.n - 1

    def next_closed(a: LSet):
        for i in range(size - 1, -1, -1):
            v = a.idx[i]
            if v == top:
                continue
            seed = [0] * size
            seed[:i] = a.idx[:i]
            seed[i] = v + 1
            cand = downup(ctx, LSet(universe, chain, seed), s)
            if cand.idx[:i] == a.idx[:i]:
                return cand
        return None

    cur = downup(ctx, LSet.bottom(universe, chain), s)
    out = [cur]
    while True:
        cur = next_closed(cur)
        if cur is None:
            return out
        out.append(cur)


def _subset_scan_order(universe: Universe, chain: Chain, order: str):
    """All sets in a linear order extending proper containment."""
    sets = list(iter_lsets(universe, chain))
    if order == "sum-lectic":
        sets.sort(key=lambda m: (sum(m.degrees()), m.idx))
    elif order == "lectic":
        pass  # already lectic, which extends containment
    else:
        raise ValueError(f"unknown scan order {order!r}")
    return sets


def pseudo_intents(ctx: LContext, s: Parameterization, cap: int = 10**6, order: str = "sum-lectic"):
    """All S-pseudo-intents with their closures, in scan order.

    P qualifies iff P is not closed and Q's closure lands inside P for every
    previously found pseudo-intent Q properly below P; scanning in an order
    extending containment makes the incremental classification sound.
    """
    universe, chain = ctx.universe, ctx.chain
    if lset_count(universe, chain) > cap:
        raise CapExceeded(f"{lset_count(universe, chain)} sets exceed the cap {cap}")
    found = []
    for m in _subset_scan_order(universe, chain, order):
        cl = downup(ctx, m, s)
        if cl == m:
            continue
        if all(not q < m or qcl <= m for q, qcl in found):
            found.append((m, cl))
    return found


def complete_set(ctx: LContext, s: Parameterization, cap: int = 10**6) -> Theory:
    """The theory {P => downup(P) : P an S-pseudo-intent}."""
    pairs = pseudo_intents(ctx, s, cap)
    return Theory(
        [FAI(p, cl) for p, cl in pairs],
        [f"pseudo-intent #{i}" for i in range(len(pairs))],
    )


# ------------------------------------------------------------- completeness


def is_complete(
    theory: Theory,
    ctx: LContext,
    s: Parameterization,
    mode: str = "full",
    cap: int = 10**6,
    samples: int = 1000,
    seed: int = 0,
) -> bool:
    """Whether the theory's least models agree with downup everywhere.

    Full mode sweeps every set (requires |L|^|Y| <= cap); sampled mode checks
    the rows, bottom, top, and seeded-random sets.
    """
    universe, chain = ctx.universe, ctx.chain
    if mode == "full":
        if lset_count(universe, chain) > cap:
            raise CapExceeded(
                f"{lset_count(universe, chain)} sets exceed the cap {cap}; use sampled mode"
            )
        candidates = iter_lsets(universe, chain)
    elif mode == "sampled":
        rng = random.Random(seed)
        fixed = [LSet.bottom(universe, chain), LSet.top(universe, chain), *ctx.rows]
        drawn = [
            LSet(universe, chain, tuple(rng.randrange(chain.n) for _ in range(len(universe))))
            for _ in range(samples)
        ]
        candidates = fixed + drawn
    else:
        raise ValueError(f"unknown mode {mode!r}")
    for m in candidates:
        if least_model(theory, s, m) != downup(ctx, m, s):
            return False
    return True


class _CompletenessOracle:
    """Incremental completeness checks for one context and parameterization.

    A theory of context-true rules is complete iff every non-intent violates
    some rule, so the oracle keeps one violation bitmask per non-intent and
    re-derives only the touched rule's bit on each candidate edit.
    """

    def __init__(self, ctx: LContext, s: Parameterization, cap: int = 10**6):
        universe, chain = ctx.universe, ctx.chain
        if lset_count(universe, chain) > cap:
            raise CapExceeded(f"{lset_count(universe, chain)} sets exceed the cap {cap}")
        self.ctx = ctx
        self.s = s
        intents = set(intents_enum(ctx, s, cap))
        self.non_intents = [m for m in iter_lsets(universe, chain) if m not in intents]

    def _true_in_context(self, rule: FAI) -> bool:
        return rule.consequent <= downup(self.ctx, rule.antecedent, self.s)

    def _kills(self, rule: FAI):
        """For each non-intent, whether the rule fails there."""
        pairs = [
            (conn.lower(rule.antecedent).idx, conn.lower(rule.consequent).idx)
            for conn in self.s
        ]
        out = []
        for m in self.non_intents:
            midx = m.idx
            killed = False
            for fa, fb in pairs:
                if all(x <= y for x, y in zip(fa, midx)) and not all(
                    x <= y for x, y in zip(fb, midx)
                ):
                    killed = True
                    break
            out.append(killed)
        return out

    def check(self, theory: Theory) -> bool:
        if not all(self._true_in_context(r) for r in theory):
            return False
        kills = [self._kills(r) for r in theory]
        return all(any(col) for col in zip(*kills)) if theory else not self.non_intents

    def masks(self, theory: Theory):
        return [self._kills(r) for r in theory]

    def check_replace(self, masks, i: int, rule: FAI) -> list | None:
        """Masks with rule i replaced, or None when the edit loses completeness."""
        if not self._true_in_context(rule):
            return None
        new = self._kills(rule)
        rest = masks[:i] + masks[i + 1 :]
        for j in range(len(self.non_intents)):
            if not new[j] and not any(col[j] for col in rest):
                return None
        return masks[:i] + [new] + masks[i + 1 :]


def reduce_to_base(theory: Theory, ctx: LContext, s: Parameterization) -> Theory:
    """Drop, in order, every rule the remaining ones entail.

    For a complete input the result is a base: completeness is preserved by
    removing entailed rules, and each survivor fails entailment from the rest.
    """
    current = theory
    i = 0
    while i < len(current):
        trimmed = current.without(i)
        if entails(trimmed, current[i], s):
            current = trimmed
        else:
            i += 1
    return current


def minimize_sides(theory: Theory, ctx: LContext, s: Parameterization, cap: int = 10**6) -> Theory:
    """Lower degrees inside each rule while the theory stays complete.

    Walks rules in order; within a rule, antecedent then consequent,
    attributes in universe order, stepping each degree down while the edited
    theory remains complete for the context.
    """
    oracle = _CompletenessOracle(ctx, s, cap)
    current = theory
    if not oracle.check(current):
        raise NotComplete("minimize_sides needs a complete theory")
    masks = oracle.masks(current)
    for i in range(len(current)):
        for side in ("antecedent", "consequent"):
            for y in range(len(ctx.universe)):
                while True:
                    rule = current[i]
                    lset = getattr(rule, side)
                    v = lset.idx[y]
                    if v == 0:
                        break
                    lowered = lset.with_index(y, v - 1)
                    cand = (
                        FAI(lowered, rule.consequent)
                        if side == "antecedent"
                        else FAI(rule.antecedent, lowered)
                    )
                    new_masks = oracle.check_replace(masks, i, cand)
                    if new_masks is None:
                        break
                    masks = new_masks
                    current = current.replaced(i, cand)
    return current


# ---------------------------------------------------------------- rendering


def hasse_dot(sets, name: str = "lattice") -> str:
    """DOT digraph of the cover relation of containment, edges upward."""
    nodes = sorted(sets, key=lambda m: m.idx)
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for i, m in enumerate(nodes):
        label = render_lset(m)
        lines.append(f'  n{i} [label="{{{label}}}"];')
    for i, a in enumerate(nodes):
        for j, b in enumerate(nodes):
            if not a < b:
                continue
            if any(a < c and c < b for c in nodes):
                continue
            lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
