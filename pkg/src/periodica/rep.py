"""Right modules over a FinDimAlgebra as block representations.

A ``Rep`` stores one dimension per vertex and one matrix per arrow; the arrow
``a: u -> v`` acts by ``act[a]: M_v -> M_u`` (right modules, function-order
composition).  Submodules, quotients, covers, envelopes, syzygies and the
Krull-Schmidt machinery all reduce to exact linear algebra on these blocks.
"""

from __future__ import annotations

import math
import random
from typing import Dict, List, Optional, Sequence, Tuple

from .common import PreconditionError, Trunc
from .fields import Field
from .linalg import Mat, quotient as space_quotient
from .quiver import FinDimAlgebra, Walk


class Rep:
    """A finite-dimensional right module, presented vertexwise."""

    __slots__ = ("algebra", "dims", "act")

    def __init__(self, algebra: FinDimAlgebra, dims: Sequence[int],
                 act: Sequence[Mat], check: bool = False):
        q = algebra.quiver
        if len(dims) != q.n:
            raise PreconditionError("dimension vector length mismatch")
        if len(act) != len(q.arrows):
            raise PreconditionError("need one matrix per arrow")
        self.algebra = algebra
        self.dims = tuple(dims)
        self.act = tuple(act)
        for i, a in enumerate(q.arrows):
            m = self.act[i]
            if m.shape != (self.dims[a.source - 1], self.dims[a.target - 1]):
                raise PreconditionError(
                    f"arrow {a.name}: matrix shape {m.shape} does not match "
                    f"dimension vector")
        if check:
            self.check_relations()

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, algebra: FinDimAlgebra) -> "Rep":
        q = algebra.quiver
        f = algebra.field
        return cls(algebra, [0] * q.n,
                   [Mat.zeros(f, 0, 0) for _ in q.arrows])

    @classmethod
    def simple(cls, algebra: FinDimAlgebra, v: int) -> "Rep":
        q = algebra.quiver
        f = algebra.field
        dims = [1 if u == v else 0 for u in range(1, q.n + 1)]
        act = [Mat.zeros(f, dims[a.source - 1], dims[a.target - 1])
               for a in q.arrows]
        return cls(algebra, dims, act)

    @classmethod
    def projective(cls, algebra: FinDimAlgebra, v: int) -> "Rep":
        """P(v) = e_v A: walks ending at v, acted on by precomposition."""
        q = algebra.quiver
        f = algebra.field
        local: Dict[int, List[int]] = {u: [] for u in range(1, q.n + 1)}
        for i in range(algebra.dim):
            if algebra.target[i] == v:
                local[algebra.source[i]].append(i)
        pos = {}
        for u, lst in local.items():
            for r, bi in enumerate(lst):
                pos[bi] = r
        dims = [len(local[u]) for u in range(1, q.n + 1)]
        act = []
        for ai, a in enumerate(q.arrows):
            m = Mat.zeros(f, dims[a.source - 1], dims[a.target - 1])
            cols = local[a.target]
            arrow_b = algebra.arrow_index[ai]
            for c, bi in enumerate(cols):
                for k, coeff in algebra.mult(bi, arrow_b):
                    m.data[pos[k] * m.cols + c] = coeff
            act.append(m)
        return cls(algebra, dims, act)

    @classmethod
    def injective(cls, algebra: FinDimAlgebra, v: int) -> "Rep":
        """I(v) = D(A e_v): dual basis to walks starting at v."""
        q = algebra.quiver
        f = algebra.field
        local: Dict[int, List[int]] = {u: [] for u in range(1, q.n + 1)}
        for i in range(algebra.dim):
            if algebra.source[i] == v:
                local[algebra.target[i]].append(i)
        pos = {}
        for u, lst in local.items():
            for r, bi in enumerate(lst):
                pos[bi] = r
        dims = [len(local[u]) for u in range(1, q.n + 1)]
        act = []
        for ai, a in enumerate(q.arrows):
            # left multiplication by the arrow, then transpose
            lam = Mat.zeros(f, dims[a.target - 1], dims[a.source - 1])
            arrow_b = algebra.arrow_index[ai]
            for c, bi in enumerate(local[a.source]):
                for k, coeff in algebra.mult(arrow_b, bi):
                    lam.data[pos[k] * lam.cols + c] = coeff
            act.append(lam.transpose())
        return cls(algebra, dims, act)

    @classmethod
    def regular(cls, algebra: FinDimAlgebra) -> "Rep":
        parts = [cls.projective(algebra, v)
                 for v in range(1, algebra.quiver.n + 1)]
        return direct_sum(parts)[0]

    # -- basics ----------------------------------------------------------------

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def dim_at(self, v: int) -> int:
        return self.dims[v - 1]

    def rho(self, w: Walk) -> Mat:
        """Action matrix of a walk: M_target -> M_source."""
        q = self.algebra.quiver
        if len(w) == 1:
            return Mat.identity(self.field, self.dims[w[0] - 1])
        m = self.act[w[1]]
        for ai in w[2:]:
            m = m @ self.act[ai]
        return m

    def rho_basis(self, i: int) -> Mat:
        return self.rho(self.algebra.basis[i])

    def check_relations(self) -> None:
        """Relations and the nilpotency bound must annihilate the module."""
        alg = self.algebra
        for terms, _, _ in alg.presentation.relations:
            acc = None
            for coeff, w in terms:
                m = self.rho(w).scale(coeff)
                acc = m if acc is None else acc + m
            if acc is not None and not acc.is_zero():
                raise PreconditionError("a defining relation acts nonzero")
        q = alg.quiver
        top_len = alg.nilpotency - 1
        for w in alg._walks_by_len[top_len] if top_len < len(alg._walks_by_len) else []:
            t = q.walk_target(w)
            for ai in q.arrows_from[t]:
                if not (self.rho(w) @ self.act[ai]).is_zero():
                    raise PreconditionError("a walk of forbidden length acts nonzero")

    def __eq__(self, other):
        return (isinstance(other, Rep) and self.algebra is other.algebra
                and self.dims == other.dims and self.act == other.act)

    def __repr__(self):
        return f"Rep(dims={list(self.dims)})"


class Morphism:
    """A module map, one block per vertex (block: source_v -> target_v)."""

    __slots__ = ("source", "target", "blocks")

    def __init__(self, source: Rep, target: Rep, blocks: Sequence[Mat]):
        self.source = source
        self.target = target
        self.blocks = tuple(blocks)
        for v in range(len(source.dims)):
            if self.blocks[v].shape != (target.dims[v], source.dims[v]):
                raise PreconditionError("morphism block shape mismatch")

    @classmethod
    def zero(cls, source: Rep, target: Rep) -> "Morphism":
        f = source.field
        return cls(source, target,
                   [Mat.zeros(f, target.dims[v], source.dims[v])
                    for v in range(len(source.dims))])

    @classmethod
    def identity(cls, m: Rep) -> "Morphism":
        f = m.field
        return cls(m, m, [Mat.identity(f, d) for d in m.dims])

    def __matmul__(self, other: "Morphism") -> "Morphism":
        """Composition: apply ``other`` first, then ``self``."""
        if other.target is not self.source and other.target.dims != self.source.dims:
            raise PreconditionError("composition mismatch")
        return Morphism(other.source, self.target,
                        [a @ b for a, b in zip(self.blocks, other.blocks)])

    def __add__(self, other: "Morphism") -> "Morphism":
        return Morphism(self.source, self.target,
                        [a + b for a, b in zip(self.blocks, other.blocks)])

    def __sub__(self, other: "Morphism") -> "Morphism":
        return Morphism(self.source, self.target,
                        [a - b for a, b in zip(self.blocks, other.blocks)])

    def __neg__(self) -> "Morphism":
        return Morphism(self.source, self.target, [-a for a in self.blocks])

    def scale(self, c) -> "Morphism":
        return Morphism(self.source, self.target,
                        [a.scale(c) for a in self.blocks])

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks)

    def is_intertwiner(self) -> bool:
        M, N = self.source, self.target
        for ai, a in enumerate(M.algebra.quiver.arrows):
            left = N.act[ai] @ self.blocks[a.target - 1]
            right = self.blocks[a.source - 1] @ M.act[ai]
            if left != right:
                return False
        return True

    def is_iso(self) -> bool:
        return (self.source.dims == self.target.dims
                and all(b.is_invertible() for b in self.blocks))

    def inverse(self) -> "Morphism":
        return Morphism(self.target, self.source,
                        [b.inverse() for b in self.blocks])

    def flatten(self) -> list:
        out = []
        for b in self.blocks:
            out.extend(b.data)
        return out

    def __eq__(self, other):
        return (isinstance(other, Morphism) and self.blocks == other.blocks
                and self.source.dims == other.source.dims
                and self.target.dims == other.target.dims)

    def __repr__(self):
        return f"Morphism({self.source!r} -> {self.target!r})"


def morphism_from_flat(M: Rep, N: Rep, flat: Sequence) -> Morphism:
    f = M.field
    blocks = []
    k = 0
    for v in range(len(M.dims)):
        r, c = N.dims[v], M.dims[v]
        blocks.append(Mat(f, r, c, [f.coerce(x) for x in flat[k:k + r * c]]))
        k += r * c
    return Morphism(M, N, blocks)


def direct_sum(parts: Sequence[Rep]) -> Tuple[Rep, List[Morphism], List[Morphism]]:
    """Direct sum with its canonical injections and projections."""
    if not parts:
        raise PreconditionError("direct_sum needs at least one part")
    alg = parts[0].algebra
    f = alg.field
    q = alg.quiver
    dims = [sum(p.dims[v] for p in parts) for v in range(q.n)]
    offsets = []
    run = [0] * q.n
    for p in parts:
        offsets.append(tuple(run))
        run = [run[v] + p.dims[v] for v in range(q.n)]
    act = []
    for ai, a in enumerate(q.arrows):
        m = Mat.zeros(f, dims[a.source - 1], dims[a.target - 1])
        ro = co = 0
        for p in parts:
            blk = p.act[ai]
            for i in range(blk.rows):
                base = (ro + i) * m.cols + co
                m.data[base:base + blk.cols] = blk.row_list(i)
            ro += blk.rows
            co += blk.cols
        act.append(m)
    S = Rep(alg, dims, act)
    injs, projs = [], []
    for idx, p in enumerate(parts):
        iblocks, pblocks = [], []
        for v in range(q.n):
            inj = Mat.zeros(f, dims[v], p.dims[v])
            pro = Mat.zeros(f, p.dims[v], dims[v])
            off = offsets[idx][v]
            for i in range(p.dims[v]):
                inj.data[(off + i) * p.dims[v] + i] = f.one()
                pro.data[i * dims[v] + off + i] = f.one()
            iblocks.append(inj)
            pblocks.append(pro)
        injs.append(Morphism(p, S, iblocks))
        projs.append(Morphism(S, p, pblocks))
    return S, injs, projs


def stack_into_sum(maps: Sequence[Morphism], target_sum: Rep,
                   injections: Sequence[Morphism]) -> Morphism:
    """Combine f_i: M -> T_i into (f_i): M -> sum T_i."""
    total = None
    for f, inj in zip(maps, injections):
        g = inj @ f
        total = g if total is None else total + g
    assert total is not None
    return Morphism(maps[0].source, target_sum, total.blocks)


def combine_from_sum(maps: Sequence[Morphism], source_sum: Rep,
                     projections: Sequence[Morphism]) -> Morphism:
    """Combine f_i: S_i -> N into [f_i]: sum S_i -> N."""
    total = None
    for f, pro in zip(maps, projections):
        g = f @ pro
        total = g if total is None else total + g
    assert total is not None
    return Morphism(source_sum, maps[0].target, total.blocks)


# -- hom spaces -------------------------------------------------------------


def hom_space(M: Rep, N: Rep) -> List[Morphism]:
    """A basis of Hom(M, N): all tuples of blocks commuting with every arrow."""
    if M.algebra is not N.algebra:
        raise PreconditionError("modules over different algebras")
    f = M.field
    q = M.algebra.quiver
    nvars = sum(N.dims[v] * M.dims[v] for v in range(q.n))
    if nvars == 0:
        return []
    var_off = []
    k = 0
    for v in range(q.n):
        var_off.append(k)
        k += N.dims[v] * M.dims[v]
    rows = []
    for ai, a in enumerate(q.arrows):
        u, v = a.source - 1, a.target - 1
        nu, nv = N.dims[u], N.dims[v]
        mu, mv = M.dims[u], M.dims[v]
        Na, Ma = N.act[ai], M.act[ai]
        for i in range(nu):
            for j in range(mv):
                row = [f.zero()] * nvars
                for r in range(nv):
                    c = Na.get(i, r)
                    if not f.is_zero(c):
                        row[var_off[v] + r * mv + j] = c
                for cidx in range(mu):
                    c = Ma.get(cidx, j)
                    if not f.is_zero(c):
                        row[var_off[u] + i * mu + cidx] = f.sub(
                            row[var_off[u] + i * mu + cidx], c)
                rows.append(row)
    if rows:
        K = Mat.from_rows(f, rows).kernel_basis()
    else:
        K = Mat.identity(f, nvars)
    out = []
    for jcol in range(K.cols):
        out.append(morphism_from_flat(M, N, K.col_list(jcol)))
    return out


class HomBasis:
    """A hom-space basis with a coordinate solver (flattened blocks)."""

    def __init__(self, M: Rep, N: Rep):
        self.M = M
        self.N = N
        self.basis = hom_space(M, N)
        f = M.field
        n = sum(N.dims[v] * M.dims[v] for v in range(len(M.dims)))
        cols = [g.flatten() for g in self.basis]
        if cols:
            self.mat = Mat.from_rows(f, cols).transpose()
        else:
            self.mat = Mat.zeros(f, n, 0)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords_of(self, g: Morphism) -> list:
        x = self.mat.solve(g.flatten())
        if x is None:
            raise PreconditionError("map is not a module morphism")
        return x

    def coords_matrix(self, maps: Sequence[Morphism]) -> Mat:
        f = self.M.field
        if not maps:
            return Mat.zeros(f, self.dim, 0)
        B = Mat.from_rows(f, [g.flatten() for g in maps]).transpose()
        X = self.mat.solve_matrix(B)
        if X is None:
            raise PreconditionError("map is not a module morphism")
        return X

    def from_coords(self, coords: Sequence) -> Morphism:
        f = self.M.field
        g = Morphism.zero(self.M, self.N)
        for c, b in zip(coords, self.basis):
            if not f.is_zero(f.coerce(c)):
                g = g + b.scale(c)
        return g


# -- sub / quotient machinery --------------------------------------------------


def sub_rep(M: Rep, bases: Sequence[Mat]) -> Tuple[Rep, Morphism]:
    """Subrepresentation spanned columnwise by ``bases`` (must be invariant)."""
    alg = M.algebra
    q = alg.quiver
    dims = [b.cols for b in bases]
    act = []
    for ai, a in enumerate(q.arrows):
        u, v = a.source - 1, a.target - 1
        rhs = M.act[ai] @ bases[v]
        X = bases[u].solve_matrix(rhs)
        if X is None:
            raise PreconditionError("subspaces are not arrow-invariant")
        act.append(X)
    K = Rep(alg, dims, act)
    incl = Morphism(K, M, list(bases))
    return K, incl


def quotient_rep(M: Rep, bases: Sequence[Mat]) -> Tuple[Rep, Morphism]:
    """Quotient of M by an invariant subspace; returns the projection."""
    alg = M.algebra
    q = alg.quiver
    f = alg.field
    projs = []
    dims = []
    for v in range(q.n):
        d, pr = space_quotient(M.dims[v], bases[v])
        dims.append(d)
        projs.append(pr)
    sections = []
    for v in range(q.n):
        if dims[v] == 0:
            sections.append(Mat.zeros(f, M.dims[v], 0))
            continue
        s = projs[v].solve_matrix(Mat.identity(f, dims[v]))
        assert s is not None
        sections.append(s)
    act = []
    for ai, a in enumerate(q.arrows):
        u, v = a.source - 1, a.target - 1
        act.append(projs[u] @ M.act[ai] @ sections[v])
    Q = Rep(alg, dims, act)
    proj = Morphism(M, Q, projs)
    return Q, proj


def kernel_of(f: Morphism) -> Tuple[Rep, Morphism]:
    bases = [b.kernel_basis() for b in f.blocks]
    return sub_rep(f.source, bases)


def image_of(f: Morphism) -> Tuple[Rep, Morphism]:
    bases = [b.image_basis() for b in f.blocks]
    return sub_rep(f.target, bases)


def cokernel_of(f: Morphism) -> Tuple[Rep, Morphism]:
    bases = [b.image_basis() for b in f.blocks]
    return quotient_rep(f.target, bases)


def radical_subspaces(M: Rep) -> List[Mat]:
    """(M rad)_v = sum of images of arrows starting at v."""
    q = M.algebra.quiver
    f = M.field
    out = []
    for v in range(1, q.n + 1):
        pieces = [M.act[ai] for ai in q.arrows_from[v]]
        if not pieces:
            out.append(Mat.zeros(f, M.dims[v - 1], 0))
            continue
        m = pieces[0]
        for p in pieces[1:]:
            m = m.hstack(p)
        out.append(m.image_basis())
    return out


def top_of(M: Rep) -> Tuple[Rep, Morphism]:
    return quotient_rep(M, radical_subspaces(M))


def socle_subspaces(M: Rep) -> List[Mat]:
    """soc(M)_v: intersection of kernels of arrows ending at v."""
    q = M.algebra.quiver
    f = M.field
    out = []
    for v in range(1, q.n + 1):
        pieces = [M.act[ai] for ai in q.arrows_to[v]]
        if not pieces:
            out.append(Mat.identity(f, M.dims[v - 1]))
            continue
        m = pieces[0]
        for p in pieces[1:]:
            m = m.vstack(p)
        out.append(m.kernel_basis())
    return out


def projective_cover(M: Rep) -> Tuple[Rep, Morphism]:
    """The projective cover P(M) ->> M (zero module gets the zero cover)."""
    alg = M.algebra
    q = alg.quiver
    f = alg.field
    if M.is_zero():
        Z = Rep.zero(alg)
        return Z, Morphism.zero(Z, M)
    top, proj = top_of(M)
    lifts: Dict[int, Mat] = {}
    for v in range(q.n):
        t = top.dims[v]
        if t:
            L = proj.blocks[v].solve_matrix(Mat.identity(f, t))
            assert L is not None
            lifts[v] = L
    parts: List[Rep] = []
    gens: List[Tuple[int, Mat]] = []  # (vertex index, generator column in M)
    for v in range(q.n):
        t = top.dims[v]
        for r in range(t):
            parts.append(Rep.projective(alg, v + 1))
            gens.append((v, lifts[v].take_cols([r])))
    P, injs, projs = direct_sum(parts)
    maps = []
    for part, (v, gcol) in zip(parts, gens):
        # basis of P(v+1) at vertex w: algebra basis elements b with target v+1
        local: Dict[int, List[int]] = {u: [] for u in range(q.n)}
        for i in range(alg.dim):
            if alg.target[i] == v + 1:
                local[alg.source[i] - 1].append(i)
        blocks = []
        for w in range(q.n):
            cols = []
            for bi in local[w]:
                col = M.rho(alg.basis[bi]) @ gcol
                cols.append(col)
            if cols:
                m = cols[0]
                for cmat in cols[1:]:
                    m = m.hstack(cmat)
            else:
                m = Mat.zeros(f, M.dims[w], 0)
            blocks.append(m)
        maps.append(Morphism(part, M, blocks))
    phi = combine_from_sum(maps, P, projs)
    for v in range(q.n):
        if phi.blocks[v].rank() != M.dims[v]:
            raise PreconditionError("projective cover failed to surject")
    return P, phi


def syzygy(M: Rep) -> Rep:
    """Kernel of the projective cover (zero for projectives)."""
    P, phi = projective_cover(M)
    return kernel_of(phi)[0]


def injective_envelope(M: Rep) -> Tuple[Rep, Morphism]:
    """The minimal embedding M >-> I(M), built from socle-dual functionals."""
    alg = M.algebra
    q = alg.quiver
    f = alg.field
    if M.is_zero():
        Z = Rep.zero(alg)
        return Z, Morphism.zero(M, Z)
    soc = socle_subspaces(M)
    parts: List[Rep] = []
    functionals: List[Tuple[int, Mat]] = []  # (vertex v-1, row functional on M_v)
    for v in range(q.n):
        s = soc[v].cols
        if s == 0:
            continue
        # rows F with F @ soc_basis = identity: dual functionals on the socle
        Ft = soc[v].transpose().solve_matrix(Mat.identity(f, s))
        assert Ft is not None
        F = Ft.transpose()
        for r in range(s):
            parts.append(Rep.injective(alg, v + 1))
            functionals.append((v, Mat(f, 1, M.dims[v], F.row_list(r))))
    if not parts:
        raise PreconditionError("nonzero module with zero socle")
    I, injs, projs = direct_sum(parts)
    maps = []
    for part, (v, frow) in zip(parts, functionals):
        local: Dict[int, List[int]] = {u: [] for u in range(q.n)}
        for i in range(alg.dim):
            if alg.source[i] == v + 1:
                local[alg.target[i] - 1].append(i)
        blocks = []
        for w in range(q.n):
            rows = []
            for bi in local[w]:
                # value of the functional after flowing along the walk
                rows.append((frow @ M.rho(alg.basis[bi])).row_list(0))
            blocks.append(Mat.from_rows(f, rows) if rows
                          else Mat.zeros(f, 0, M.dims[w]))
        maps.append(Morphism(M, part, blocks))
    phi = stack_into_sum(maps, I, injs)
    for v in range(q.n):
        if phi.blocks[v].kernel_basis().cols != 0:
            raise PreconditionError("injective envelope failed to embed")
    return I, phi


# -- resolutions ------------------------------------------------------------


class Resolution:
    """A minimal projective resolution, possibly truncated at ``bound``."""

    def __init__(self, module: Rep, terms: List[Rep], maps: List[Morphism],
                 aug: Morphism, complete: bool):
        self.module = module
        self.terms = terms          # P_0, P_1, ...
        self.maps = maps            # d_j : P_j -> P_{j-1}, j >= 1
        self.aug = aug              # P_0 -> M
        self.complete = complete

    @property
    def length(self) -> int:
        return len(self.terms) - 1


def minimal_resolution(M: Rep, bound: int) -> Resolution:
    """Iterated projective covers; stops at a zero syzygy or at ``bound``."""
    P0, aug = projective_cover(M)
    terms = [P0]
    maps: List[Morphism] = []
    K, incl = kernel_of(aug)
    while not K.is_zero():
        if len(terms) > bound:
            return Resolution(M, terms, maps, aug, complete=False)
        P, phi = projective_cover(K)
        maps.append(incl @ phi)
        terms.append(P)
        K, incl = kernel_of(phi)
    return Resolution(M, terms, maps, aug, complete=True)


def global_dimension(alg: FinDimAlgebra, bound: int) -> Trunc:
    """max over simples of projective-resolution length, truncated."""
    if bound < 1:
        raise PreconditionError("bound must be >= 1")
    best = 0
    for v in range(1, alg.quiver.n + 1):
        res = minimal_resolution(Rep.simple(alg, v), bound)
        if not res.complete:
            return Trunc(bound, exact=False)
        best = max(best, res.length)
    return Trunc(best)


# -- isomorphism and decomposition ----------------------------------------------


def _total_matrix(f: Morphism) -> Mat:
    """Block-diagonal matrix of an endomorphism on the total space."""
    field = f.source.field
    n = f.source.total_dim
    m = Mat.zeros(field, n, n)
    off = 0
    for b in f.blocks:
        for i in range(b.rows):
            base = (off + i) * n + off
            m.data[base:base + b.cols] = b.row_list(i)
        off += b.rows
    return m


def _invertible_combination(M: Rep, N: Rep, basis: List[Morphism],
                            seed: int) -> Optional[Morphism]:
    field = M.field
    for g in basis:
        if g.is_iso():
            return g
    k = len(basis)
    if k == 0:
        return None
    if field.p:
        # small prime fields: exhaust coefficient tuples when feasible
        budget = 4096
        if field.p ** k <= budget:
            from itertools import product
            for coeffs in product(range(field.p), repeat=k):
                if not any(coeffs):
                    continue
                g = _combine(basis, coeffs)
                if g.is_iso():
                    return g
            return None
    rng = random.Random(seed)
    for trial in range(80):
        span = 2 + trial // 20
        coeffs = [rng.randint(-span, span) for _ in range(k)]
        if not any(coeffs):
            continue
        g = _combine(basis, coeffs)
        if g.is_iso():
            return g
    if not field.p and M.total_dim <= 6:
        return _det_poly_witness(M, basis)
    return None


def _combine(basis: List[Morphism], coeffs) -> Morphism:
    g = None
    for c, b in zip(coeffs, basis):
        if c:
            term = b.scale(c)
            g = term if g is None else g + term
    return g if g is not None else Morphism.zero(basis[0].source, basis[0].target)


def _det_poly_witness(M: Rep, basis: List[Morphism]) -> Optional[Morphism]:
    """Deterministic fallback: expand det(sum c_i f_i) symbolically.

    Only used at tiny total dimension.  The determinant of the generic
    combination is a polynomial in the c_i; it vanishes identically iff no
    combination is invertible.
    """
    from itertools import permutations, product
    field = M.field
    k = len(basis)

    def poly_mul(p1, p2):
        out = {}
        for m1, c1 in p1.items():
            for m2, c2 in p2.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, field.zero())
                out[m] = field.add(out[m], field.mul(c1, c2))
        return {m: c for m, c in out.items() if not field.is_zero(c)}

    total = {tuple([0] * k): field.one()}
    degree = 0
    for v in range(len(M.dims)):
        d = M.dims[v]
        if d == 0:
            continue
        degree += d
        entries = [[{} for _ in range(d)] for _ in range(d)]
        for i in range(d):
            for j in range(d):
                mono = {}
                for t, b in enumerate(basis):
                    c = b.blocks[v].get(i, j)
                    if not field.is_zero(c):
                        key = tuple(1 if s == t else 0 for s in range(k))
                        mono[key] = c
                entries[i][j] = mono
        det = {}
        for perm in permutations(range(d)):
            sign = field.one()
            inv = sum(1 for x in range(d) for y in range(x + 1, d)
                      if perm[x] > perm[y])
            if inv % 2:
                sign = field.neg(sign)
            term = {tuple([0] * k): sign}
            ok = True
            for i in range(d):
                cell = entries[i][perm[i]]
                if not cell:
                    ok = False
                    break
                term = poly_mul(term, cell)
            if ok:
                for m, c in term.items():
                    det[m] = field.add(det.get(m, field.zero()), c)
        det = {m: c for m, c in det.items() if not field.is_zero(c)}
        total = poly_mul(total, det)
        if not total:
            return None
    # the polynomial is nonzero: a witness exists with coordinates in a small grid
    for point in product(range(degree + 1), repeat=k):
        val = field.zero()
        for m, c in total.items():
            term = c
            for e, x in zip(m, point):
                for _ in range(e):
                    term = field.mul(term, field.coerce(x))
            val = field.add(val, term)
        if not field.is_zero(val):
            g = _combine(basis, point)
            assert g.is_iso()
            return g
    return None


def find_iso(M: Rep, N: Rep, seed: int = 0) -> Optional[Morphism]:
    """An invertible module map M -> N, or None."""
    if M.algebra is not N.algebra:
        raise PreconditionError("modules over different algebras")
    if M.dims != N.dims:
        return None
    if M.total_dim == 0:
        return Morphism.zero(M, N)
    basis = hom_space(M, N)
    if not basis:
        return None
    return _invertible_combination(M, N, basis, seed)


def iso_q(M: Rep, N: Rep, seed: int = 0) -> bool:
    return find_iso(M, N, seed) is not None


def _minimal_poly_roots(A: Mat, seed: int) -> List:
    """Rational roots of the Krylov minimal polynomial of a square matrix."""
    field = A.field
    n = A.rows
    if n == 0:
        return []
    rng = random.Random(seed)
    v = Mat.column(field, [field.coerce(rng.randint(-3, 3) or 1)
                           for _ in range(n)])
    krylov = [v]
    cur = v
    for _ in range(n):
        cur = A @ cur
        krylov.append(cur)
    B = krylov[0]
    for w in krylov[1:]:
        B = B.hstack(w)
    # first dependence gives a monic annihilating polynomial of the vector
    for deg in range(1, n + 1):
        sub = B.take_cols(list(range(deg)))
        sol = sub.solve_matrix(B.take_cols([deg]))
        if sol is not None:
            coeffs = [sol.get(i, 0) for i in range(deg)]  # x^deg = sum c_i x^i
            break
    else:
        return []
    roots = []
    if field.p:
        for lam in range(field.p):
            acc = field.zero()
            powv = field.one()
            for c in coeffs:
                acc = field.add(acc, field.mul(c, powv))
                powv = field.mul(powv, lam)
            val = field.sub(pow_scalar(field, lam, deg), acc)
            if field.is_zero(val):
                roots.append(field.coerce(lam))
        return roots
    from fractions import Fraction
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    lead = den
    const = ints[0] if ints else 0
    cands = {Fraction(0)}
    for p in _divisors(abs(const) if const else 0):
        for qd in _divisors(abs(lead)):
            cands.add(Fraction(p, qd))
            cands.add(Fraction(-p, qd))
    for lam in sorted(cands):
        acc = field.zero()
        powv = field.one()
        for c in coeffs:
            acc = field.add(acc, field.mul(c, powv))
            powv = field.mul(powv, lam)
        if field.is_zero(field.sub(pow_scalar(field, lam, deg), acc)):
            roots.append(lam)
    return roots


def pow_scalar(field: Field, x, e: int):
    out = field.one()
    x = field.coerce(x)
    for _ in range(e):
        out = field.mul(out, x)
    return out


def _divisors(n: int) -> List[int]:
    if n == 0:
        return [1]
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            out.append(n // d)
        d += 1
    return sorted(set(out))


def _fitting_split(M: Rep, f: Morphism) -> Optional[Tuple[Rep, Rep]]:
    """Split M = ker(f^s) + im(f^s) at the stabilized power, if nontrivial."""
    total = M.total_dim
    power = f
    prev_rank = -1
    for _ in range(total + 1):
        r = sum(b.rank() for b in power.blocks)
        if r == prev_rank:
            break
        prev_rank = r
        power = power @ f
    K, _ = kernel_of(power)
    if 0 < K.total_dim < total:
        I, _ = image_of(power)
        return K, I
    return None


def decompose(M: Rep, seed: int = 0) -> List[Rep]:
    """Indecomposable summands of M (Fitting splittings, exact arithmetic)."""
    if M.is_zero():
        return []
    endos = hom_space(M, M)
    if len(endos) == 1:
        return [M]
    rng = random.Random(seed)
    candidates = list(endos)
    for _ in range(8):
        coeffs = [rng.randint(-2, 2) for _ in endos]
        if any(coeffs):
            candidates.append(_combine(endos, coeffs))
    for f in candidates:
        split = _fitting_split(M, f)
        if split is None:
            for lam in _minimal_poly_roots(_total_matrix(f), seed):
                if M.field.is_zero(lam):
                    continue
                shifted = f - Morphism.identity(M).scale(lam)
                split = _fitting_split(M, shifted)
                if split:
                    break
        if split:
            K, I = split
            return decompose(K, seed + 1) + decompose(I, seed + 1)
    # no splitting found: certify locality of End(M) on the sampled elements
    for f in candidates:
        if _fitting_split(M, f) is not None:  # pragma: no cover - defensive
            raise PreconditionError("inconsistent Fitting state")
    return [M]


def indecomposable_q(M: Rep, seed: int = 0) -> bool:
    if M.is_zero():
        return False
    return len(decompose(M, seed)) == 1


def strip_projective_summands(M: Rep, seed: int = 0) -> Tuple[Rep, List[Rep]]:
    """Split off all projective direct summands; returns (rest, stripped)."""
    alg = M.algebra
    if M.is_zero():
        return M, []
    projs = [Rep.projective(alg, v) for v in range(1, alg.quiver.n + 1)]
    kept, stripped = [], []
    for s in decompose(M, seed):
        if any(iso_q(s, P, seed) for P in projs if P.dims == s.dims):
            stripped.append(s)
        else:
            kept.append(s)
    if not kept:
        return Rep.zero(alg), stripped
    return direct_sum(kept)[0], stripped
