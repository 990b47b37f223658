"""Isotone Galois connections on graded sets and finite monoids of them.

A connection is a pair <f, g> with f(A) <= B iff A <= g(B).  The lower map of
any such pair distributes over unions, so it is determined by its images of
the singletons {a/y}; that table is the connection's fingerprint and two
connections are equal exactly when their fingerprints agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import hashlib
import itertools

from .errors import CapExceeded, NotAdjoint, NotAMonoid, ParseError, UniverseMismatch
from .fset import LSet, Universe, parse_lset, render_lset
from .lattice import Chain, DualPair, Hedge, parse_degree, render_degree


# ---------------------------------------------------------------- terms


@dataclass(frozen=True)
class Identity:
    pass


@dataclass(frozen=True)
class ConstMult:
    """Lower c*A (componentwise t-norm), upper c->B (componentwise shift)."""

    c: Fraction


@dataclass(frozen=True)
class ConstMultSet:
    """Componentwise multiple by a fixed set: (f A)(y) = C(y)*A(y)."""

    C: LSet


@dataclass(frozen=True)
class DiffSet:
    """Lower (f A)(y) = A(y) (-) C(y), upper (g B)(y) = C(y) (+) B(y)."""

    C: LSet


@dataclass(frozen=True)
class Rotate:
    """Index rotation: (f A)(y_j) = A(y_{(j+shift) mod n})."""

    shift: int


@dataclass(frozen=True)
class Compose:
    """<f1,g1> o <f2,g2> = <f1.f2, g2.g1>: outer's lower runs last."""

    outer: object
    inner: object


@lru_cache(maxsize=None)
def _dual_for(chain: Chain) -> DualPair:
    return DualPair(chain)


def _term_needs_dual(term) -> bool:
    if isinstance(term, DiffSet):
        return True
    if isinstance(term, Compose):
        return _term_needs_dual(term.outer) or _term_needs_dual(term.inner)
    return False


class Connection:
    """A generator term bound to a universe and chain.

    lower/upper evaluate the two adjoint maps.  The fingerprint (lazily
    computed) is the tuple, over attribute positions and nonzero degrees, of
    lower({a/y}) as index vectors; equality and hashing use it.
    """

    __slots__ = ("term", "universe", "chain", "_dual", "_fp", "_hash")

    def __init__(self, term, universe: Universe, chain: Chain, _fp=None):
        self.term = term
        self.universe = universe
        self.chain = chain
        self._dual = _dual_for(chain) if _term_needs_dual(term) else None
        self._fp = _fp
        self._hash = None
        self._validate(term)

    def _validate(self, term) -> None:
        if isinstance(term, ConstMult):
            self.chain.index_of(term.c)
        elif isinstance(term, (ConstMultSet, DiffSet)):
            if term.C.universe != self.universe or term.C.chain != self.chain:
                raise UniverseMismatch("generator constant set over a different universe/chain")
        elif isinstance(term, Compose):
            self._validate(term.outer)
            self._validate(term.inner)

    # -- evaluation --

    def lower(self, a: LSet) -> LSet:
        if a.universe != self.universe or a.chain != self.chain:
            raise UniverseMismatch("argument over a different universe/chain")
        return LSet(self.universe, self.chain, self._lower_idx(self.term, a.idx))

    def upper(self, b: LSet) -> LSet:
        if b.universe != self.universe or b.chain != self.chain:
            raise UniverseMismatch("argument over a different universe/chain")
        return LSet(self.universe, self.chain, self._upper_idx(self.term, b.idx))

    def _lower_idx(self, term, idx):
        chain = self.chain
        if isinstance(term, Identity):
            return idx
        if isinstance(term, ConstMult):
            c = chain.index_of(term.c)
            return tuple(chain.tnorm_i(c, i) for i in idx)
        if isinstance(term, ConstMultSet):
            return tuple(chain.tnorm_i(c, i) for c, i in zip(term.C.idx, idx))
        if isinstance(term, DiffSet):
            om = self._dual.ominus_i
            return tuple(om(i, c) for i, c in zip(idx, term.C.idx))
        if isinstance(term, Rotate):
            n = len(idx)
            return tuple(idx[(j + term.shift) % n] for j in range(n))
        if isinstance(term, Compose):
            return self._lower_idx(term.outer, self._lower_idx(term.inner, idx))
        raise TypeError(f"unknown term {term!r}")

    def _upper_idx(self, term, idx):
        chain = self.chain
        if isinstance(term, Identity):
            return idx
        if isinstance(term, ConstMult):
            c = chain.index_of(term.c)
            return tuple(chain.residuum_i(c, i) for i in idx)
        if isinstance(term, ConstMultSet):
            return tuple(chain.residuum_i(c, i) for c, i in zip(term.C.idx, idx))
        if isinstance(term, DiffSet):
            op = self._dual.oplus_i
            return tuple(op(c, i) for c, i in zip(term.C.idx, idx))
        if isinstance(term, Rotate):
            n = len(idx)
            return tuple(idx[(j - term.shift) % n] for j in range(n))
        if isinstance(term, Compose):
            return self._upper_idx(term.inner, self._upper_idx(term.outer, idx))
        raise TypeError(f"unknown term {term!r}")

    # -- extensional identity --

    @property
    def fingerprint(self):
        fp = self._fp
        if fp is None:
            n = self.chain.n
            size = len(self.universe)
            rows = []
            for y in range(size):
                row = []
                for a in range(1, n):
                    sing = [0] * size
                    sing[y] = a
                    row.append(self._lower_idx(self.term, tuple(sing)))
                rows.append(tuple(row))
            fp = tuple(rows)
            self._fp = fp
        return fp

    def fingerprint_hash(self) -> str:
        payload = repr((self.fingerprint, self.chain.degrees, self.universe.attributes))
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Connection)
            and self.universe == other.universe
            and self.chain == other.chain
            and self.fingerprint == other.fingerprint
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.fingerprint, self.universe.attributes))
        return self._hash

    def __repr__(self) -> str:
        return f"Connection({self.term!r})"


def identity(universe: Universe, chain: Chain) -> Connection:
    return Connection(Identity(), universe, chain)


def _fp_apply(fp, idx):
    """Image of the set with index vector idx under the lower map given by fp."""
    out = [0] * len(idx)
    for y, a in enumerate(idx):
        if a == 0:
            continue
        row = fp[y][a - 1]
        for z, v in enumerate(row):
            if v > out[z]:
                out[z] = v
    return tuple(out)


def compose(outer: Connection, inner: Connection) -> Connection:
    """<f1,g1> o <f2,g2>: lower A |-> f1(f2(A)), upper B |-> g2(g1(B))."""
    if outer.universe != inner.universe or outer.chain != inner.chain:
        raise UniverseMismatch("cannot compose connections over different universes")
    fpo, fpi = outer.fingerprint, inner.fingerprint
    fp = tuple(
        tuple(_fp_apply(fpo, row) for row in rows)
        for rows in fpi
    )
    return Connection(Compose(outer.term, inner.term), outer.universe, outer.chain, _fp=fp)


def derive_upper(conn: Connection, b: LSet) -> LSet:
    """Recover g from f alone: g(B)(y) = max {a : f({a/y}) <= B}."""
    fp = conn.fingerprint
    out = []
    for y in range(len(conn.universe)):
        best = 0
        for a in range(1, conn.chain.n):
            if all(v <= w for v, w in zip(fp[y][a - 1], b.idx)):
                best = a
        out.append(best)
    return LSet(conn.universe, conn.chain, out)


def verify_adjoint(lower, upper, universe: Universe, chain: Chain, cap: int = 10**6) -> bool:
    """Check that two maps form an isotone Galois connection.

    Equivalent to the pairwise biconditional f(A) <= B iff A <= g(B):
    both maps monotone (checked over all covers) plus A <= g(f(A)) and
    f(g(B)) <= B.  Raises NotAdjoint with a counterexample.
    """
    total = chain.n ** len(universe)
    if total > cap:
        raise CapExceeded(f"{total} sets exceed the verification cap {cap}")
    size = len(universe)
    for idx in itertools.product(range(chain.n), repeat=size):
        a = LSet(universe, chain, idx)
        fa = lower(a)
        ga = upper(a)
        if not a <= upper(fa):
            raise NotAdjoint(f"A <= g(f(A)) fails at A = {render_lset(a)!r}")
        if not lower(ga) <= a:
            raise NotAdjoint(f"f(g(B)) <= B fails at B = {render_lset(a)!r}")
        for y in range(size):
            if idx[y] + 1 < chain.n:
                b = a.with_index(y, idx[y] + 1)
                if not fa <= lower(b):
                    raise NotAdjoint(f"f not monotone between {render_lset(a)!r} and {render_lset(b)!r}")
                if not ga <= upper(b):
                    raise NotAdjoint(f"g not monotone between {render_lset(a)!r} and {render_lset(b)!r}")
    return True


# ---------------------------------------------------------------- monoids


class Parameterization:
    """A finite monoid S of connections over one universe and chain.

    Construction checks that the identity belongs to S and that S is closed
    under composition (up to extensional equality).
    """

    def __init__(self, connections, check: bool = True):
        conns = tuple(connections)
        if not conns:
            raise NotAMonoid("a parameterization cannot be empty")
        self.universe = conns[0].universe
        self.chain = conns[0].chain
        for c in conns:
            if c.universe != self.universe or c.chain != self.chain:
                raise UniverseMismatch("connections over different universes/chains")
        deduped = []
        fps = {}
        for c in conns:
            if c.fingerprint not in fps:
                fps[c.fingerprint] = c
                deduped.append(c)
        self.connections = tuple(deduped)
        self._by_fp = fps
        if check:
            ident = identity(self.universe, self.chain)
            if ident.fingerprint not in fps:
                raise NotAMonoid("the identity connection is missing")
            for a in self.connections:
                for b in self.connections:
                    if compose(a, b).fingerprint not in fps:
                        raise NotAMonoid(
                            f"not closed under composition: {a!r} o {b!r} escapes S"
                        )

    def __len__(self) -> int:
        return len(self.connections)

    def __iter__(self):
        return iter(self.connections)

    def __contains__(self, conn: Connection) -> bool:
        return conn.fingerprint in self._by_fp

    def resolve(self, conn: Connection) -> Connection:
        """The member of S extensionally equal to conn, or None."""
        return self._by_fp.get(conn.fingerprint)

    def compose_in(self, a: Connection, b: Connection) -> Connection:
        """Composition resolved to the stored member of S."""
        return self._by_fp[compose(a, b).fingerprint]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Parameterization)
            and self.universe == other.universe
            and self.chain == other.chain
            and set(self._by_fp) == set(other._by_fp)
        )

    def __hash__(self) -> int:
        return hash((self.universe, self.chain, frozenset(self._by_fp)))

    def __repr__(self) -> str:
        return f"Parameterization({len(self.connections)} connections)"


def generate_monoid(generators, universe: Universe, chain: Chain, cap: int = 4096) -> Parameterization:
    """Close the generators under composition; the identity is always added.

    Deterministic: members appear in discovery order, identity first.
    Raises CapExceeded when the monoid grows past cap members.
    """
    elems = [identity(universe, chain)]
    fps = {elems[0].fingerprint}
    for g in generators:
        if g.universe != universe or g.chain != chain:
            raise UniverseMismatch("generator over a different universe/chain")
        if g.fingerprint not in fps:
            fps.add(g.fingerprint)
            elems.append(g)
            if len(elems) > cap:
                raise CapExceeded(f"monoid exceeds {cap} connections")
    changed = True
    while changed:
        changed = False
        for a in list(elems):
            for b in list(elems):
                c = compose(a, b)
                if c.fingerprint not in fps:
                    fps.add(c.fingerprint)
                    elems.append(c)
                    changed = True
                    if len(elems) > cap:
                        raise CapExceeded(f"monoid exceeds {cap} connections")
    return Parameterization(elems, check=False)


def from_hedge(hedge: Hedge, universe: Universe, drop_vacuous: bool = False) -> Parameterization:
    """The monoid of constant multiples/shifts by c* for c in L.

    Its members are the constant multiples by the hedge's fixed points; the
    c* = 0 member maps everything to the empty set and is semantically
    vacuous, so drop_vacuous removes it.
    """
    chain = hedge.chain
    conns = []
    for f in reversed(hedge.fixed_points):
        if f == chain.n - 1:
            conns.append(identity(universe, chain))
        elif f == 0 and drop_vacuous:
            continue
        else:
            conns.append(Connection(ConstMult(chain.degrees[f]), universe, chain))
    return Parameterization(conns)


# ---------------------------------------------------------------- descriptors


def term_to_descriptor(term) -> dict:
    if isinstance(term, Identity):
        return {"kind": "identity"}
    if isinstance(term, ConstMult):
        return {"kind": "const-mult", "c": render_degree(term.c)}
    if isinstance(term, ConstMultSet):
        return {"kind": "const-mult-set", "C": render_lset(term.C)}
    if isinstance(term, DiffSet):
        return {"kind": "diff-set", "C": render_lset(term.C)}
    if isinstance(term, Rotate):
        return {"kind": "rotate", "shift": term.shift}
    if isinstance(term, Compose):
        return {
            "kind": "compose",
            "terms": [term_to_descriptor(term.outer), term_to_descriptor(term.inner)],
        }
    raise TypeError(f"unknown term {term!r}")


def _degree_from(value) -> Fraction:
    if isinstance(value, str):
        return parse_degree(value)
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, float):
        # exact only for representable decimals written in JSON; callers that
        # care parse their JSON with parse_float=Fraction
        return Fraction(str(value))
    raise ParseError(f"cannot read degree {value!r}")


def connection_from_descriptor(desc: dict, universe: Universe, chain: Chain) -> Connection:
    """Build a single connection from a JSON descriptor (no hedge expansion)."""
    kind = desc.get("kind")
    if kind == "identity":
        term = Identity()
    elif kind == "const-mult":
        term = ConstMult(_degree_from(desc["c"]))
    elif kind == "const-mult-set":
        term = ConstMultSet(parse_lset(desc["C"], universe, chain))
    elif kind == "diff-set":
        term = DiffSet(parse_lset(desc["C"], universe, chain))
    elif kind == "rotate":
        term = Rotate(int(desc["shift"]) % len(universe))
    elif kind == "compose":
        terms = desc.get("terms", [])
        if len(terms) != 2:
            raise ParseError("compose descriptor needs exactly two terms")
        outer = connection_from_descriptor(terms[0], universe, chain)
        inner = connection_from_descriptor(terms[1], universe, chain)
        return compose(outer, inner)
    else:
        raise ParseError(f"unknown generator kind {kind!r}")
    return Connection(term, universe, chain)


def generators_from_descriptors(descriptors, universe: Universe, chain: Chain):
    """Expand a descriptor list into connections; hedge descriptors expand to
    one constant multiple per fixed point."""
    conns = []
    for desc in descriptors:
        if desc.get("kind") == "hedge":
            fps = [_degree_from(v) for v in desc["fixed_points"]]
            hedge = Hedge(chain, fps)
            conns.extend(from_hedge(hedge, universe, drop_vacuous=bool(desc.get("drop_vacuous"))))
        else:
            conns.append(connection_from_descriptor(desc, universe, chain))
    return conns
