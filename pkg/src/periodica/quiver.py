"""Quivers, admissible presentations, and finite-dimensional path algebras.

Conventions, fixed once and used everywhere:

* Vertices are 1-based integers.  A walk is stored as a tuple
  ``(source_vertex, arrow_index, arrow_index, ...)`` following arrows in
  quiver direction; a length-0 walk is ``(v,)``.
* Products compose like functions: ``p * q`` means "do q, then p" and is
  defined when ``source(p) == target(q)``.  On walk tuples this is
  ``q + p[1:]``.
* Modules are right modules, so the arrow ``a: u -> v`` acts on a module by a
  linear map from the v-component to the u-component.

An algebra is presented by a quiver, relations (k-linear combinations of
parallel walks of length >= 2) and a nilpotency bound N declaring every walk
of length >= N zero.  The quotient is computed by plain linear algebra on the
finitely many surviving walks; no Groebner machinery is needed.
"""

from __future__ import annotations

import random
from typing import Dict, List, Optional, Sequence, Tuple

from .common import PreconditionError
from .fields import Field
from .linalg import Mat

Walk = Tuple[int, ...]


class Arrow:
    __slots__ = ("name", "source", "target")

    def __init__(self, name: str, source: int, target: int):
        self.name = name
        self.source = source
        self.target = target

    def __repr__(self):
        return f"{self.name}: {self.source} -> {self.target}"


class Quiver:
    """A finite quiver with named arrows on vertices 1..n."""

    def __init__(self, n_vertices: int, arrows: Sequence[Tuple[str, int, int]]):
        if n_vertices < 1:
            raise PreconditionError("a quiver needs at least one vertex")
        self.n = n_vertices
        self.arrows: List[Arrow] = []
        self.by_name: Dict[str, int] = {}
        for name, s, t in arrows:
            if not (1 <= s <= n_vertices and 1 <= t <= n_vertices):
                raise PreconditionError(f"arrow {name}: endpoint out of range")
            if name in self.by_name:
                raise PreconditionError(f"duplicate arrow name {name!r}")
            self.by_name[name] = len(self.arrows)
            self.arrows.append(Arrow(name, s, t))
        self.arrows_from = [[] for _ in range(n_vertices + 1)]
        self.arrows_to = [[] for _ in range(n_vertices + 1)]
        for i, a in enumerate(self.arrows):
            self.arrows_from[a.source].append(i)
            self.arrows_to[a.target].append(i)

    # walks ------------------------------------------------------------------

    def walk_source(self, w: Walk) -> int:
        return w[0]

    def walk_target(self, w: Walk) -> int:
        return self.arrows[w[-1]].target if len(w) > 1 else w[0]

    def walk_len(self, w: Walk) -> int:
        return len(w) - 1

    def walk_name(self, w: Walk) -> str:
        if len(w) == 1:
            return f"e{w[0]}"
        return "*".join(self.arrows[i].name for i in reversed(w[1:]))

    def compose(self, p: Walk, q: Walk) -> Optional[Walk]:
        """The walk of the product p * q ("q then p"); None if not composable."""
        if self.walk_source(p) != self.walk_target(q):
            return None
        return q + p[1:]

    def __repr__(self):
        return f"Quiver({self.n} vertices, {len(self.arrows)} arrows)"


def _normalize_relation(quiver: Quiver, terms, field: Field):
    """Validate one relation and convert its walks to internal tuples.

    ``terms`` is a list of ``(coeff, [arrow names in composition order])``;
    the names are function-ordered, so ``["a", "b"]`` stands for a*b = "b
    then a".
    """
    out = []
    src = tgt = None
    for coeff, names in terms:
        coeff = field.coerce(coeff)
        if field.is_zero(coeff):
            continue
        idxs = []
        for name in names:
            if name not in quiver.by_name:
                raise PreconditionError(f"unknown arrow {name!r} in relation")
            idxs.append(quiver.by_name[name])
        if len(idxs) < 2:
            raise PreconditionError("relation terms must have length >= 2")
        walk_arrows = list(reversed(idxs))  # function order -> walk order
        w: Walk = (quiver.arrows[walk_arrows[0]].source, *walk_arrows)
        for k in range(1, len(walk_arrows)):
            prev = quiver.arrows[walk_arrows[k - 1]]
            if quiver.arrows[walk_arrows[k]].source != prev.target:
                raise PreconditionError(
                    f"non-composable word in relation: {'*'.join(names)}")
        s, t = quiver.walk_source(w), quiver.walk_target(w)
        if src is None:
            src, tgt = s, t
        elif (s, t) != (src, tgt):
            raise PreconditionError("relation terms are not parallel")
        out.append((coeff, w))
    if not out:
        raise PreconditionError("relation has no nonzero terms")
    return out, src, tgt


class AlgebraPresentation:
    """A quiverined with admissible relations and a nilpotency bound."""

    def __init__(self, quiver: Quiver, field: Field, relations, nilpotency: int,
                 label: str = ""):
        if nilpotency < 2:
            raise PreconditionError("nilpotency bound must be >= 2")
        self.quiver = quiver
        self.field = field
        self.nilpotency = nilpotency
        self.label = label
        self.relations = []      # list of (terms, src, tgt)
        for rel in relations:
            self.relations.append(_normalize_relation(quiver, rel, field))

    def describe(self) -> dict:
        q = self.quiver
        return {
            "field": repr(self.field),
            "vertices": q.n,
            "arrows": [[a.name, a.source, a.target] for a in q.arrows],
            "relations": [
                [[self.field.to_str(c), q.walk_name(w)] for c, w in terms]
                for terms, _, _ in self.relations
            ],
            "nilpotency": self.nilpotency,
            "label": self.label,
        }


class FinDimAlgebra:
    """kQ/I given by a basis of surviving walks and a multiplication table.

    Built by :func:`build_algebra`; carries the vertex idempotents, the
    radical filtration, and the presentation it came from.
    """

    def __init__(self, presentation: AlgebraPresentation, basis: List[Walk],
                 reduce_map: Dict[Walk, tuple], walks_by_len: List[List[Walk]]):
        self.presentation = presentation
        self.quiver = presentation.quiver
        self.field = presentation.field
        self.nilpotency = presentation.nilpotency
        self.basis = basis
        self.index: Dict[Walk, int] = {w: i for i, w in enumerate(basis)}
        self._reduce = reduce_map
        self._walks_by_len = walks_by_len
        q = self.quiver
        self.source = [q.walk_source(w) for w in basis]
        self.target = [q.walk_target(w) for w in basis]
        self.length = [q.walk_len(w) for w in basis]
        self.e_index = [0] * (q.n + 1)
        for v in range(1, q.n + 1):
            self.e_index[v] = self.index[(v,)]
        # arrows survive in any admissible quotient (relations have length>=2)
        self.arrow_index = [self.index[(a.source, i)]
                            for i, a in enumerate(q.arrows)]
        self._table: Dict[Tuple[int, int], tuple] = {}
        self._rad = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def label(self) -> str:
        return self.presentation.label

    def e(self, v: int) -> int:
        return self.e_index[v]

    def mult(self, i: int, j: int) -> tuple:
        """Structure constants of basis[i] * basis[j] ("j then i")."""
        if self.source[i] != self.target[j]:
            return ()
        key = (i, j)
        got = self._table.get(key)
        if got is None:
            w = self.quiver.compose(self.basis[i], self.basis[j])
            assert w is not None
            got = self.reduce_walk(w)
            self._table[key] = got
        return got

    def reduce_walk(self, w: Walk) -> tuple:
        """Coefficients of a walk's class on the basis; () when it dies."""
        if self.quiver.walk_len(w) >= self.nilpotency:
            return ()
        return self._reduce[w]

    def mult_vectors(self, x: Dict[int, object], y: Dict[int, object]) -> Dict[int, object]:
        """Product of two elements given as {basis index: coeff} dicts."""
        field = self.field
        out: Dict[int, object] = {}
        for i, ci in x.items():
            for j, cj in y.items():
                c = field.mul(ci, cj)
                if field.is_zero(c):
                    continue
                for k, ck in self.mult(i, j):
                    val = field.add(out.get(k, field.zero()), field.mul(c, ck))
                    if field.is_zero(val):
                        out.pop(k, None)
                    else:
                        out[k] = val
        return out

    # radical ------------------------------------------------------------------

    def radical_filtration(self) -> List[Mat]:
        """Basis matrices (algebra coordinates as columns) of rad^j, j=0..N."""
        if self._rad is None:
            field = self.field
            filt = []
            for j in range(self.nilpotency + 1):
                cols = []
                for ln in range(j, self.nilpotency):
                    for w in self._walks_by_len[ln]:
                        red = self._reduce[w]
                        if red:
                            col = [field.zero()] * self.dim
                            for k, c in red:
                                col[k] = field.add(col[k], c)
                            cols.append(col)
                if cols:
                    m = Mat.from_rows(field, cols).transpose()
                    filt.append(m.image_basis())
                else:
                    filt.append(Mat.zeros(field, self.dim, 0))
            self._rad = filt
        return self._rad

    def radical_dims(self) -> List[int]:
        return [m.cols for m in self.radical_filtration()]

    # validation ---------------------------------------------------------------

    def validate(self, seed: int = 0, max_full_dim: int = 48) -> None:
        """Check idempotent calculus and (sampled) associativity of the table."""
        field = self.field
        one = field.one()
        for v in range(1, self.quiver.n + 1):
            for w in range(1, self.quiver.n + 1):
                prod = self.mult(self.e(v), self.e(w))
                expect = ((self.e(v), one),) if v == w else ()
                if prod != expect:
                    raise PreconditionError("vertex idempotents misbehave")
        for i in range(self.dim):
            if self.mult(self.e(self.target[i]), i) != ((i, one),):
                raise PreconditionError("left unit fails")
            if self.mult(i, self.e(self.source[i])) != ((i, one),):
                raise PreconditionError("right unit fails")
        n = self.dim
        triples = None
        if n > max_full_dim:
            rng = random.Random(seed)
            triples = [(rng.randrange(n), rng.randrange(n), rng.randrange(n))
                       for _ in range(4000)]
        else:
            triples = [(i, j, k) for i in range(n) for j in range(n)
                       for k in range(n)]
        for i, j, k in triples:
            left = self.mult_vectors(dict(self.mult(i, j)), {k: one})
            right = self.mult_vectors({i: one}, dict(self.mult(j, k)))
            if left != right:
                raise PreconditionError(
                    f"multiplication table not associative at ({i},{j},{k})")

    def basis_names(self) -> List[str]:
        return [self.quiver.walk_name(w) for w in self.basis]

    def opposite(self) -> "FinDimAlgebra":
        """The opposite algebra, presented on the reversed quiver."""
        q = self.quiver
        rev = Quiver(q.n, [(a.name, a.target, a.source) for a in q.arrows])
        rels = []
        for terms, _, _ in self.presentation.relations:
            new_terms = []
            for coeff, w in terms:
                names = [q.arrows[i].name for i in w[1:]]
                # reversing the walk reverses the composition order
                new_terms.append((coeff, names))
            rels.append(new_terms)
        pres = AlgebraPresentation(rev, self.field, rels, self.nilpotency,
                                   label=self.label + "^op" if self.label else "")
        return build_algebra(pres)

    def __repr__(self):
        lab = self.label or "algebra"
        return f"<{lab}: dim {self.dim} over {self.field!r}>"


def build_algebra(pres: AlgebraPresentation, max_paths: int = 200000) -> FinDimAlgebra:
    """Construct the finite-dimensional quotient algebra of a presentation.

    Enumerates walks of length < N, spans the two-sided ideal generated by
    the relations inside that window, and eliminates per (source, target)
    block.  Long walks are the preferred pivots so the surviving basis keeps
    the shortest monomials.
    """
    q, field, N = pres.quiver, pres.field, pres.nilpotency
    walks_by_len: List[List[Walk]] = [[(v,) for v in range(1, q.n + 1)]]
    total = q.n
    for ln in range(1, N):
        prev = walks_by_len[-1]
        cur: List[Walk] = []
        for w in prev:
            t = q.walk_target(w)
            for ai in q.arrows_from[t]:
                cur.append(w + (ai,))
        total += len(cur)
        if total > max_paths:
            raise PreconditionError(
                f"path enumeration exceeded {max_paths} walks; "
                "the quotient is too large (or the bound is)")
        if not cur:
            break
        walks_by_len.append(cur)
    while len(walks_by_len) < N:
        walks_by_len.append([])

    all_walks: List[Walk] = [w for lst in walks_by_len for w in lst]
    blocks: Dict[Tuple[int, int], List[Walk]] = {}
    for w in all_walks:
        blocks.setdefault((q.walk_source(w), q.walk_target(w)), []).append(w)
    # elimination order inside a block: long walks first, so they get rewritten
    # in terms of short ones
    for key in blocks:
        blocks[key].sort(key=lambda w: (-q.walk_len(w), w))

    ideal_rows: Dict[Tuple[int, int], list] = {key: [] for key in blocks}
    by_target: Dict[int, List[Walk]] = {v: [] for v in range(1, q.n + 1)}
    by_source: Dict[int, List[Walk]] = {v: [] for v in range(1, q.n + 1)}
    for w in all_walks:
        by_target[q.walk_target(w)].append(w)
        by_source[q.walk_source(w)].append(w)

    for terms, rs, rt in pres.relations:
        min_len = min(q.walk_len(w) for _, w in terms)
        for y in by_target[rs]:          # y: s' -> rs, multiplied on the right
            ly = q.walk_len(y)
            if ly + min_len >= N:
                continue
            for x in by_source[rt]:      # x: rt -> t', multiplied on the left
                lx = q.walk_len(x)
                if ly + min_len + lx >= N:
                    continue
                vec: Dict[Walk, object] = {}
                for coeff, w in terms:
                    if ly + q.walk_len(w) + lx >= N:
                        continue
                    full = y + w[1:] + x[1:]
                    vec[full] = field.add(vec.get(full, field.zero()), coeff)
                vec = {k: c for k, c in vec.items() if not field.is_zero(c)}
                if vec:
                    key = (q.walk_source(y), q.walk_target(x))
                    ideal_rows[key].append(vec)

    reduce_map: Dict[Walk, tuple] = {}
    basis: List[Walk] = []
    for key, ordered in blocks.items():
        rows = ideal_rows[key]
        if not rows:
            basis.extend(ordered)
            for w in ordered:
                reduce_map[w] = None     # filled after indexing
            continue
        pos = {w: c for c, w in enumerate(ordered)}
        mat_rows = []
        for vec in rows:
            row = [field.zero()] * len(ordered)
            for w, c in vec.items():
                row[pos[w]] = c
            mat_rows.append(row)
        R, piv = Mat.from_rows(field, mat_rows).rref()
        pivset = set(piv)
        nonpiv = [c for c in range(len(ordered)) if c not in pivset]
        basis.extend(ordered[c] for c in nonpiv)
        for c in nonpiv:
            reduce_map[ordered[c]] = None
        neg = field.neg
        for k, pc in enumerate(piv):
            tail = []
            for c in nonpiv:
                val = R.get(k, c)
                if not field.is_zero(val):
                    tail.append((ordered[c], neg(val)))
            reduce_map[ordered[pc]] = tuple(tail)

    basis.sort(key=lambda w: (q.walk_len(w), w))
    index = {w: i for i, w in enumerate(basis)}
    final: Dict[Walk, tuple] = {}
    one = field.one()
    for w in all_walks:
        pending = reduce_map[w]
        if pending is None:
            final[w] = ((index[w], one),)
        else:
            final[w] = tuple((index[wb], c) for wb, c in pending)
    alg = FinDimAlgebra(pres, basis, final, walks_by_len)
    alg.validate()
    return alg


# -- derived presentations ------------------------------------------------------


def walks_of_length(q: Quiver, length: int) -> List[Walk]:
    """All walks of exactly the given length."""
    walks: List[Walk] = [(v,) for v in range(1, q.n + 1)]
    for _ in range(length):
        walks = [w + (ai,) for w in walks
                 for ai in q.arrows_from[q.walk_target(w)]]
    return walks


def tensor_op_presentation(pres: AlgebraPresentation) -> AlgebraPresentation:
    """Presentation of the enveloping algebra A^op (x) A.

    Vertices are pairs (u, v); arrows are ``a^o@v`` (the opposite of a acting
    on the left leg at column v) and ``u@b`` (b acting on the right leg at row
    u).  Relations: both legs' relations, plus commutation of the legs.
    """
    q = pres.quiver
    n = q.n

    def pv(u: int, v: int) -> int:
        return (u - 1) * n + v

    arrows = []
    for a in q.arrows:
        for v in range(1, n + 1):
            arrows.append((f"{a.name}^o@{v}", pv(a.target, v), pv(a.source, v)))
    for u in range(1, n + 1):
        for b in q.arrows:
            arrows.append((f"{u}@{b.name}", pv(u, b.source), pv(u, b.target)))
    tq = Quiver(n * n, arrows)

    one = pres.field.one()
    # each leg carries the full ideal of the presentation: the explicit
    # relations plus the walks killed by the one-sided nilpotency bound
    leg_relations = [[(coeff, w) for coeff, w in terms]
                     for terms, _, _ in pres.relations]
    leg_relations.extend([(one, w)] for w in walks_of_length(q, pres.nilpotency))
    rels = []
    for terms in leg_relations:
        for v in range(1, n + 1):
            # walk (s, a1, .., al) becomes the op walk with reversed arrows;
            # in composition order that is a1^o * a2^o * ... * al^o
            rels.append([
                (coeff, [f"{q.arrows[i].name}^o@{v}" for i in w[1:]])
                for coeff, w in terms
            ])
        for u in range(1, n + 1):
            # the right leg keeps its composition order
            rels.append([
                (coeff, [f"{u}@{q.arrows[i].name}" for i in reversed(w[1:])])
                for coeff, w in terms
            ])
    minus = pres.field.neg(one)
    for a in q.arrows:
        for b in q.arrows:
            # both walks go (t(a), s(b)) -> (s(a), t(b)); order of legs commutes
            w1 = [f"{a.source}@{b.name}", f"{a.name}^o@{b.source}"]
            w2 = [f"{a.name}^o@{b.target}", f"{a.target}@{b.name}"]
            rels.append([(one, w1), (minus, w2)])
    label = f"({pres.label})^e" if pres.label else "enveloping"
    return AlgebraPresentation(tq, pres.field, rels, 2 * pres.nilpotency - 1,
                               label=label)
