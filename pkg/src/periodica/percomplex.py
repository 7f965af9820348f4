"""m-periodic complexes over a module category, as a DG category.

A ``PeriodicComplex`` is a Z_m-indexed family of modules with differentials
``d^i: V^i -> V^{i+1}`` squaring to zero.  Graded maps of degree p have
components ``f^i: V^i -> W^{i+p mod m}`` and the differential is

    d(f) = d_W o f - (-1)^p f o d_V.

Chain maps are the closed degree-0 maps; two chain maps are homotopic when
their difference is exact.  Degrees of graded maps are genuine integers: the
underlying component spaces only depend on p mod m but the sign (-1)^p does
not, which is exactly the source of the period-2m phenomenon for odd m.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from .common import CheckFailed, PreconditionError
from .linalg import Mat
from .quiver import FinDimAlgebra
from .rep import (HomBasis, Morphism, Rep, direct_sum, hom_space, image_of,
                  kernel_of, projective_cover, quotient_rep, sub_rep)


class PeriodicComplex:
    """Modules V^0..V^{m-1} with differentials d^i: V^i -> V^{i+1}, d^2 = 0."""

    __slots__ = ("algebra", "m", "comps", "diffs", "_hom_cache", "_cohom_cache")

    def __init__(self, algebra: FinDimAlgebra, m: int, comps: Sequence[Rep],
                 diffs: Sequence[Morphism], check: bool = True):
        if m < 1:
            raise PreconditionError("period must be >= 1")
        if len(comps) != m or len(diffs) != m:
            raise PreconditionError("need m components and m differentials")
        self.algebra = algebra
        self.m = m
        self.comps = tuple(comps)
        self.diffs = tuple(diffs)
        self._hom_cache: Dict = {}
        self._cohom_cache: Dict = {}
        if check:
            for i in range(m):
                d = self.diffs[i]
                if d.source.dims != self.comps[i].dims or \
                        d.target.dims != self.comps[(i + 1) % m].dims:
                    raise PreconditionError(f"differential {i} has wrong ends")
                if not d.is_intertwiner():
                    raise PreconditionError(f"differential {i} is not a module map")
            for i in range(m):
                sq = self.diffs[(i + 1) % m] @ self.diffs[i]
                if not sq.is_zero():
                    raise PreconditionError(f"d^2 != 0 at degree {i}")

    # -- basics -----------------------------------------------------------------

    def component(self, i: int) -> Rep:
        return self.comps[i % self.m]

    def differential(self, i: int) -> Morphism:
        return self.diffs[i % self.m]

    def dim_vector(self) -> List[int]:
        return [c.total_dim for c in self.comps]

    def is_zero_complex(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def support(self) -> List[int]:
        return [i for i in range(self.m) if not self.comps[i].is_zero()]

    def __eq__(self, other):
        """Strict equality: same components and the same matrices."""
        return (isinstance(other, PeriodicComplex) and self.m == other.m
                and all(a == b for a, b in zip(self.comps, other.comps))
                and all(a == b for a, b in zip(self.diffs, other.diffs)))

    def __repr__(self):
        return f"PeriodicComplex(m={self.m}, dims={self.dim_vector()})"


def stalk_complex(M: Rep, m: int, position: int = 0) -> PeriodicComplex:
    """The complex with M at one position and zeros elsewhere."""
    alg = M.algebra
    comps = [Rep.zero(alg) for _ in range(m)]
    comps[position % m] = M
    diffs = [Morphism.zero(comps[i], comps[(i + 1) % m]) for i in range(m)]
    return PeriodicComplex(alg, m, comps, diffs, check=False)


def zero_complex(alg: FinDimAlgebra, m: int) -> PeriodicComplex:
    return stalk_complex(Rep.zero(alg), m, 0)


class GradedMorphism:
    """A degree-p family of module maps f^i: V^i -> W^{(i+p) mod m}."""

    __slots__ = ("source", "target", "degree", "comps")

    def __init__(self, source: PeriodicComplex, target: PeriodicComplex,
                 degree: int, comps: Sequence[Morphism]):
        if source.m != target.m:
            raise PreconditionError("period mismatch")
        self.source = source
        self.target = target
        self.degree = degree
        self.comps = tuple(comps)
        m = source.m
        for i in range(m):
            f = self.comps[i]
            if f.source.dims != source.comps[i].dims or \
                    f.target.dims != target.comps[(i + degree) % m].dims:
                raise PreconditionError(f"graded component {i} has wrong ends")

    @classmethod
    def zero(cls, source: PeriodicComplex, target: PeriodicComplex,
             degree: int = 0) -> "GradedMorphism":
        m = source.m
        return cls(source, target, degree,
                   [Morphism.zero(source.comps[i],
                                  target.comps[(i + degree) % m])
                    for i in range(m)])

    @classmethod
    def identity(cls, V: PeriodicComplex) -> "GradedMorphism":
        return cls(V, V, 0, [Morphism.identity(c) for c in V.comps])

    def dmap(self) -> "GradedMorphism":
        """The DG differential d(f) = d_W o f - (-1)^p f o d_V."""
        m = self.source.m
        p = self.degree
        sign = self.source.algebra.field.sign_pow(p)
        comps = []
        for i in range(m):
            a = self.target.diffs[(i + p) % m] @ self.comps[i]
            b = (self.comps[(i + 1) % m] @ self.source.diffs[i]).scale(sign)
            comps.append(a - b)
        return GradedMorphism(self.source, self.target, p + 1, comps)

    def is_closed(self) -> bool:
        return self.dmap().is_zero()

    def is_chain_map(self) -> bool:
        return self.degree == 0 and self.is_closed()

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def __matmul__(self, other: "GradedMorphism") -> "GradedMorphism":
        """Composition self o other; degrees add."""
        m = self.source.m
        p = other.degree
        comps = [self.comps[(i + p) % m] @ other.comps[i] for i in range(m)]
        return GradedMorphism(other.source, self.target,
                              self.degree + other.degree, comps)

    def __add__(self, other: "GradedMorphism") -> "GradedMorphism":
        if (self.degree - other.degree) % self.source.m:
            raise PreconditionError("cannot add maps of different degrees")
        return GradedMorphism(self.source, self.target, self.degree,
                              [a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other: "GradedMorphism") -> "GradedMorphism":
        return self + (-other)

    def __neg__(self) -> "GradedMorphism":
        return GradedMorphism(self.source, self.target, self.degree,
                              [-c for c in self.comps])

    def scale(self, c) -> "GradedMorphism":
        return GradedMorphism(self.source, self.target, self.degree,
                              [f.scale(c) for f in self.comps])

    def __repr__(self):
        return f"GradedMorphism(degree={self.degree})"


def chain_map(source: PeriodicComplex, target: PeriodicComplex,
              comps: Sequence[Morphism]) -> GradedMorphism:
    """A degree-0 map that is checked to commute with the differentials."""
    f = GradedMorphism(source, target, 0, comps)
    if not f.is_closed():
        raise PreconditionError("not a chain map: fails to commute with d")
    return f


def is_homotopy(f: GradedMorphism, g: GradedMorphism,
                h: GradedMorphism) -> bool:
    """Does h (degree -1) witness f ~ g, i.e. f - g = d(h)?"""
    if h.degree != -1:
        raise PreconditionError("a homotopy has degree -1")
    return (f - g - h.dmap()).is_zero()


# -- shift and cone ---------------------------------------------------------------


def shift(V: PeriodicComplex, ell: int) -> PeriodicComplex:
    """V[ell]: components rotate by ell, differentials pick up (-1)^ell.

    The sign depends on the integer ell, not on its residue mod m: V[ell] and
    V[ell + m] have equal components but differentials differing by (-1)^m.
    """
    m = V.m
    sign = V.algebra.field.sign_pow(ell)
    comps = [V.comps[(i + ell) % m] for i in range(m)]
    diffs = [V.diffs[(i + ell) % m].scale(sign) for i in range(m)]
    return PeriodicComplex(V.algebra, m, comps, diffs, check=False)


def shift_map(f: GradedMorphism, ell: int) -> GradedMorphism:
    """The shifted map between shifted complexes (same blocks, rotated)."""
    m = f.source.m
    return GradedMorphism(shift(f.source, ell), shift(f.target, ell), f.degree,
                          [f.comps[(i + ell) % m] for i in range(m)])


class ConeDiagram:
    """The cone of a chain map with its four structure maps.

    ``xi`` is the degree +1 identity-on-components map V[1] -> V and ``zeta``
    its degree -1 inverse; the defining identities are checked by
    :meth:`verify`.
    """

    def __init__(self, f: GradedMorphism, cone: PeriodicComplex,
                 i_f: GradedMorphism, p_f: GradedMorphism,
                 j_f: GradedMorphism, q_f: GradedMorphism,
                 xi: GradedMorphism, zeta: GradedMorphism):
        self.f = f
        self.cone = cone
        self.i_f = i_f
        self.p_f = p_f
        self.j_f = j_f
        self.q_f = q_f
        self.xi = xi
        self.zeta = zeta

    def verify(self) -> None:
        if not (self.q_f @ self.i_f - GradedMorphism.identity(self.f.target)).is_zero():
            raise CheckFailed("q o i != id")
        V1 = self.j_f.source
        if not (self.p_f @ self.j_f - GradedMorphism.identity(V1)).is_zero():
            raise CheckFailed("p o j != id")
        if not (self.i_f @ self.q_f + self.j_f @ self.p_f
                - GradedMorphism.identity(self.cone)).is_zero():
            raise CheckFailed("i q + j p != id")
        if not self.i_f.dmap().is_zero():
            raise CheckFailed("d(i) != 0")
        if not self.p_f.dmap().is_zero():
            raise CheckFailed("d(p) != 0")
        if not (self.j_f.dmap() - self.i_f @ self.f @ self.xi).is_zero():
            raise CheckFailed("d(j) != i f xi")
        if not (self.q_f.dmap() + self.f @ self.xi @ self.p_f).is_zero():
            raise CheckFailed("d(q) != -f xi p")
        if not (self.xi @ self.zeta - GradedMorphism.identity(self.f.source)).is_zero():
            raise CheckFailed("xi zeta != id")
        if not (self.zeta @ self.xi - GradedMorphism.identity(self.j_f.source)).is_zero():
            raise CheckFailed("zeta xi != id")


def cone(f: GradedMorphism) -> ConeDiagram:
    """Cone of a chain map: C^i = W^i + V^{i+1}, d = [[d_W, f],[0, -d_V]]."""
    if f.degree != 0 or not f.is_closed():
        raise PreconditionError("cone needs a closed degree-0 map")
    V, W = f.source, f.target
    m = V.m
    V1 = shift(V, 1)
    comps = []
    sums = []
    for i in range(m):
        S, injs, projs = direct_sum([W.comps[i], V1.comps[i]])
        comps.append(S)
        sums.append((injs, projs))
    diffs = []
    for i in range(m):
        inj_w, inj_v = sums[(i + 1) % m][0]
        pr_w, pr_v = sums[i][1]
        d = (inj_w @ W.diffs[i] @ pr_w) \
            + (inj_w @ f.comps[(i + 1) % m] @ pr_v) \
            + (inj_v @ V1.diffs[i] @ pr_v)
        diffs.append(d)
    C = PeriodicComplex(V.algebra, m, comps, diffs)
    i_f = GradedMorphism(W, C, 0, [sums[i][0][0] for i in range(m)])
    q_f = GradedMorphism(C, W, 0, [sums[i][1][0] for i in range(m)])
    j_f = GradedMorphism(V1, C, 0, [sums[i][0][1] for i in range(m)])
    p_f = GradedMorphism(C, V1, 0, [sums[i][1][1] for i in range(m)])
    xi = GradedMorphism(V1, V, 1,
                        [Morphism.identity(V1.comps[i]) for i in range(m)])
    zeta = GradedMorphism(V, V1, -1,
                          [Morphism.identity(V.comps[i]) for i in range(m)])
    return ConeDiagram(f, C, i_f, p_f, j_f, q_f, xi, zeta)


def K_of(A: Rep, m: int) -> PeriodicComplex:
    """The contractible two-term complex on a module.

    For m >= 2 it has A in degrees m-1 and 0 with the identity in between;
    for m = 1 it is A+A with the nilpotent shift differential.
    """
    alg = A.algebra
    if m == 1:
        S, injs, projs = direct_sum([A, A])
        d = injs[0] @ projs[1]
        return PeriodicComplex(alg, 1, [S], [d])
    comps = [Rep.zero(alg) for _ in range(m)]
    comps[0] = A
    comps[m - 1] = A
    diffs = [Morphism.zero(comps[i], comps[(i + 1) % m]) for i in range(m)]
    diffs[m - 1] = Morphism.identity(A)
    return PeriodicComplex(alg, m, comps, diffs, check=False)


def complex_direct_sum(parts: Sequence[PeriodicComplex]
                       ) -> Tuple[PeriodicComplex, List[GradedMorphism],
                                  List[GradedMorphism]]:
    m = parts[0].m
    alg = parts[0].algebra
    comps = []
    allinjs: List[List[Morphism]] = [[] for _ in parts]
    allprojs: List[List[Morphism]] = [[] for _ in parts]
    for i in range(m):
        S, injs, projs = direct_sum([p.comps[i] for p in parts])
        comps.append(S)
        for k in range(len(parts)):
            allinjs[k].append(injs[k])
            allprojs[k].append(projs[k])
    diffs = []
    for i in range(m):
        d = None
        for k, p in enumerate(parts):
            term = allinjs[k][(i + 1) % m] @ p.diffs[i] @ allprojs[k][i]
            d = term if d is None else d + term
        diffs.append(d)
    C = PeriodicComplex(alg, m, comps, diffs, check=False)
    gi = [GradedMorphism(p, C, 0, allinjs[k]) for k, p in enumerate(parts)]
    gp = [GradedMorphism(C, p, 0, allprojs[k]) for k, p in enumerate(parts)]
    return C, gi, gp


# -- cohomology -------------------------------------------------------------------


class _CohomData:
    __slots__ = ("Z", "inclZ", "H", "projH")

    def __init__(self, Z, inclZ, H, projH):
        self.Z = Z
        self.inclZ = inclZ
        self.H = H
        self.projH = projH


def _cohom_data(V: PeriodicComplex, i: int) -> _CohomData:
    i = i % V.m
    data = V._cohom_cache.get(i)
    if data is None:
        Z, inclZ = kernel_of(V.diffs[i])
        dprev = V.diffs[(i - 1) % V.m]
        bbases = [b.image_basis() for b in dprev.blocks]
        # coordinates of the coboundaries inside the cocycles
        inside = []
        for v in range(len(Z.dims)):
            X = inclZ.blocks[v].solve_matrix(bbases[v])
            if X is None:
                raise PreconditionError("image not inside kernel; d^2 != 0?")
            inside.append(X)
        H, projH = quotient_rep(Z, inside)
        data = _CohomData(Z, inclZ, H, projH)
        V._cohom_cache[i] = data
    return data


def cohomology(V: PeriodicComplex, i: int) -> Rep:
    """H^i(V) = ker d^i / im d^{i-1} as a module."""
    return _cohom_data(V, i).H


def cohomology_dims(V: PeriodicComplex) -> List[int]:
    return [cohomology(V, i).total_dim for i in range(V.m)]


def induced_map_on_cohomology(f: GradedMorphism, i: int) -> Morphism:
    """H^i(f): H^i(V) -> H^{i+p}(W) for a closed map f of degree p."""
    V, W = f.source, f.target
    p = f.degree
    dv = _cohom_data(V, i)
    dw = _cohom_data(W, i + p)
    field = V.algebra.field
    blocks = []
    for v in range(len(dv.H.dims)):
        hdim = dv.H.dims[v]
        if hdim == 0:
            blocks.append(Mat.zeros(field, dw.H.dims[v], 0))
            continue
        # pick cocycle representatives of the H-basis, push them forward
        section = dv.projH.blocks[v].solve_matrix(Mat.identity(field, hdim))
        assert section is not None
        carried = f.comps[i % V.m].blocks[v] @ dv.inclZ.blocks[v] @ section
        X = dw.inclZ.blocks[v].solve_matrix(carried)
        if X is None:
            raise PreconditionError("closed map does not preserve cocycles")
        blocks.append(dw.projH.blocks[v] @ X)
    return Morphism(dv.H, dw.H, blocks)


def is_acyclic(V: PeriodicComplex) -> bool:
    return all(cohomology(V, i).is_zero() for i in range(V.m))


def is_quasi_iso(f: GradedMorphism) -> bool:
    """Quasi-isomorphism test: the cone is acyclic."""
    if f.degree != 0 or not f.is_closed():
        raise PreconditionError("need a chain map")
    return is_acyclic(cone(f).cone)


def is_quasi_iso_via_cohomology(f: GradedMorphism) -> bool:
    """Independent oracle: every induced map on cohomology is invertible."""
    for i in range(f.source.m):
        g = induced_map_on_cohomology(f, i)
        if g.source.dims != g.target.dims or not g.is_iso():
            return False
    return True


# -- the Hom complex ---------------------------------------------------------------


class HomPiece:
    """Coordinates for one summand Hom(V^i, W^j) of the Hom complex."""

    def __init__(self, V: Rep, W: Rep):
        self.basis = HomBasis(V, W)

    @property
    def dim(self):
        return self.basis.dim


class PeriodicHomComplex:
    """The m-periodic DG Hom complex of a pair of periodic complexes.

    Spaces in degree p only depend on p mod m; differential matrices depend on
    p through (p mod m, p mod 2).
    """

    def __init__(self, V: PeriodicComplex, W: PeriodicComplex):
        if V.m != W.m:
            raise PreconditionError("period mismatch")
        if V.algebra is not W.algebra:
            raise PreconditionError("different base algebras")
        self.V = V
        self.W = W
        self.m = V.m
        self._pieces: Dict[Tuple[int, int], HomPiece] = {}
        self._dmat: Dict[Tuple[int, int], Mat] = {}

    def piece(self, i: int, j: int) -> HomPiece:
        key = (i % self.m, j % self.m)
        got = self._pieces.get(key)
        if got is None:
            got = HomPiece(self.V.comps[key[0]], self.W.comps[key[1]])
            self._pieces[key] = got
        return got

    def degree_dims(self, p: int) -> List[int]:
        return [self.piece(i, i + p).dim for i in range(self.m)]

    def total_dim(self, p: int) -> int:
        return sum(self.degree_dims(p))

    def flatten(self, f: GradedMorphism) -> list:
        """Coordinates of a degree-p graded map in the piece bases."""
        out = []
        for i in range(self.m):
            out.extend(self.piece(i, i + f.degree).basis.coords_of(f.comps[i]))
        return out

    def unflatten(self, p: int, coords: Sequence) -> GradedMorphism:
        comps = []
        k = 0
        for i in range(self.m):
            piece = self.piece(i, i + p)
            comps.append(piece.basis.from_coords(coords[k:k + piece.dim]))
            k += piece.dim
        return GradedMorphism(self.V, self.W, p, comps)

    def diff_matrix(self, p: int) -> Mat:
        """Matrix of d: Hom^p -> Hom^{p+1} in the piece bases."""
        key = (p % self.m, p % 2)
        got = self._dmat.get(key)
        if got is not None:
            return got
        field = self.V.algebra.field
        m = self.m
        sign = field.sign_pow(p)
        src_dims = self.degree_dims(p)
        tgt_dims = self.degree_dims(p + 1)
        tgt_off = [0] * m
        run = 0
        for i in range(m):
            tgt_off[i] = run
            run += tgt_dims[i]
        total_tgt = run
        cols: List[list] = []
        for i in range(m):
            piece = self.piece(i, i + p)
            if piece.dim == 0:
                continue
            # d_W o f lands in target piece i; -(+-1) f o d_V in piece i-1
            up_maps = [self.W.diffs[(i + p) % m] @ g for g in piece.basis.basis]
            dn_maps = [(g @ self.V.diffs[(i - 1) % m]).scale(field.neg(sign))
                       for g in piece.basis.basis]
            up = self.piece(i, i + p + 1).basis.coords_matrix(up_maps)
            dn = self.piece(i - 1, i + p).basis.coords_matrix(dn_maps)
            for c in range(piece.dim):
                col = [field.zero()] * total_tgt
                for r in range(up.rows):
                    col[tgt_off[i] + r] = up.get(r, c)
                for r in range(dn.rows):
                    idx = tgt_off[(i - 1) % m] + r
                    col[idx] = field.add(col[idx], dn.get(r, c))
                cols.append(col)
        if not cols:
            return Mat.zeros(field, total_tgt, 0)
        mat = Mat.from_rows(field, cols).transpose()
        self._dmat[key] = mat
        return mat

    def homotopy_classes(self, p: int) -> Tuple[int, List[GradedMorphism]]:
        """H^p of the Hom complex: (dimension, representative closed maps)."""
        field = self.V.algebra.field
        d_here = self.diff_matrix(p)
        d_prev = self.diff_matrix(p - 1)
        Z = d_here.kernel_basis()
        rank_b = d_prev.rank()
        dim = Z.cols - rank_b
        # reduce kernel vectors modulo the image to pick class representatives
        B = d_prev.image_basis()
        if B.cols:
            R, piv = B.transpose().rref()
            from .linalg import reduce_mod_rowspace
            reps = []
            seen = Mat.zeros(field, d_here.cols, 0)
            for c in range(Z.cols):
                vec = reduce_mod_rowspace(R, piv, Z.col_list(c), field)
                cand = Mat.column(field, vec)
                trial = seen.hstack(cand)
                if trial.rank() > seen.rank():
                    seen = trial
                    reps.append(self.unflatten(p, vec))
                if len(reps) == dim:
                    break
        else:
            reps = [self.unflatten(p, Z.col_list(c)) for c in range(Z.cols)]
        assert len(reps) == dim
        return dim, reps

    def contraction(self) -> Optional[GradedMorphism]:
        """A degree -1 map h with d(h) = id, when one exists."""
        ident = GradedMorphism.identity(self.V)
        if self.V is not self.W and self.V.dim_vector() != self.W.dim_vector():
            raise PreconditionError("contraction needs V = W")
        target = self.flatten(ident)
        sol = self.diff_matrix(-1).solve(target)
        if sol is None:
            return None
        return self.unflatten(-1, sol)


def hom_complex(V: PeriodicComplex, W: PeriodicComplex) -> PeriodicHomComplex:
    key = ("homcx", id(W))
    got = V._hom_cache.get(key)
    if got is None:
        got = PeriodicHomComplex(V, W)
        V._hom_cache[key] = got
    return got


def homotopy_hom(V: PeriodicComplex, W: PeriodicComplex, p: int
                 ) -> Tuple[int, List[GradedMorphism]]:
    """Hom in the homotopy category: classes of closed degree-p maps."""
    return hom_complex(V, W).homotopy_classes(p)


def is_contractible(V: PeriodicComplex) -> bool:
    """Is the identity exact in the endomorphism Hom complex?"""
    return hom_complex(V, V).contraction() is not None


# -- bounded complexes and folding ---------------------------------------------------


class BoundedComplex:
    """A finitely supported Z-indexed complex of modules."""

    def __init__(self, algebra: FinDimAlgebra, comps: Dict[int, Rep],
                 diffs: Dict[int, Morphism], check: bool = True):
        self.algebra = algebra
        self.comps = {j: c for j, c in comps.items() if not c.is_zero()}
        self.diffs = {}
        for j, d in diffs.items():
            if not d.is_zero():
                self.diffs[j] = d
        if check:
            for j, d in self.diffs.items():
                if j in self.comps and d.source.dims != self.comps[j].dims:
                    raise PreconditionError("differential source mismatch")
                nxt = self.diffs.get(j + 1)
                if nxt is not None and not (nxt @ d).is_zero():
                    raise PreconditionError(f"d^2 != 0 at {j}")

    def component(self, j: int) -> Rep:
        got = self.comps.get(j)
        if got is None:
            return Rep.zero(self.algebra)
        return got

    def differential(self, j: int) -> Morphism:
        got = self.diffs.get(j)
        if got is None:
            return Morphism.zero(self.component(j), self.component(j + 1))
        return got

    @property
    def lo(self) -> int:
        return min(self.comps) if self.comps else 0

    @property
    def hi(self) -> int:
        return max(self.comps) if self.comps else 0

    def shifted(self, ell: int) -> "BoundedComplex":
        sign = self.algebra.field.sign_pow(ell)
        comps = {j - ell: c for j, c in self.comps.items()}
        diffs = {j - ell: d.scale(sign) for j, d in self.diffs.items()}
        return BoundedComplex(self.algebra, comps, diffs, check=False)

    def __repr__(self):
        return f"BoundedComplex(degrees {sorted(self.comps)})"


def fold(C: BoundedComplex, m: int
         ) -> Tuple[PeriodicComplex, Dict[int, GradedMorphism],
                    Dict[int, GradedMorphism]]:
    """Wrap a bounded complex around Z_m: component i gets the sum over j = i.

    Returns the periodic complex together with, for every original degree j,
    the inclusion of C^j into the folded component (as a degree-0 graded map
    from the stalk of C^j at j mod m) -- handy for building maps out of folds.
    Differentials fold without signs.
    """
    alg = C.algebra
    if not C.comps:
        Z = zero_complex(alg, m)
        return Z, {}, {}
    layout: Dict[int, List[int]] = {i: [] for i in range(m)}
    for j in sorted(C.comps):
        layout[j % m].append(j)
    comps = []
    injs: Dict[int, Morphism] = {}
    projs: Dict[int, Morphism] = {}
    for i in range(m):
        parts = [C.comps[j] for j in layout[i]]
        if not parts:
            comps.append(Rep.zero(alg))
            continue
        S, inj, proj = direct_sum(parts)
        comps.append(S)
        for j, mi, mp in zip(layout[i], inj, proj):
            injs[j] = mi
            projs[j] = mp
    diffs = []
    for i in range(m):
        d = None
        for j in layout[i]:
            dj = C.diffs.get(j)
            if dj is None:
                continue
            term = injs[j + 1] @ dj @ projs[j]
            d = term if d is None else d + term
        if d is None:
            d = Morphism.zero(comps[i], comps[(i + 1) % m])
        diffs.append(d)
    P = PeriodicComplex(alg, m, comps, diffs)
    ginjs = {}
    gprojs = {}
    for j in injs:
        stalk = stalk_complex(C.comps[j], m, j % m)
        comps_in = [Morphism.zero(stalk.comps[i], P.comps[i]) for i in range(m)]
        comps_in[j % m] = injs[j]
        ginjs[j] = GradedMorphism(stalk, P, 0, comps_in)
        comps_out = [Morphism.zero(P.comps[i], stalk.comps[i]) for i in range(m)]
        comps_out[j % m] = projs[j]
        gprojs[j] = GradedMorphism(P, stalk, 0, comps_out)
    return P, ginjs, gprojs


def unroll(V: PeriodicComplex, lo: int, hi: int) -> BoundedComplex:
    """A window of the Z-periodic unrolling: degrees lo..hi, d^j = d^{j mod m}."""
    if lo > hi:
        raise PreconditionError("need lo <= hi")
    comps = {j: V.comps[j % V.m] for j in range(lo, hi + 1)}
    diffs = {j: V.diffs[j % V.m] for j in range(lo, hi)}
    return BoundedComplex(V.algebra, comps, diffs, check=False)


class BoundedHomComplex:
    """The Hom complex of two bounded complexes (for the folding checks)."""

    def __init__(self, X: BoundedComplex, Y: BoundedComplex):
        self.X = X
        self.Y = Y
        self.field = X.algebra.field
        self._pieces: Dict[Tuple[int, int], HomPiece] = {}

    def piece(self, j: int, jj: int) -> HomPiece:
        key = (j, jj)
        got = self._pieces.get(key)
        if got is None:
            got = HomPiece(self.X.component(j), self.Y.component(jj))
            self._pieces[key] = got
        return got

    def degree_layout(self, s: int) -> List[int]:
        if not self.X.comps or not self.Y.comps:
            return []
        return [j for j in range(self.X.lo, self.X.hi + 1)
                if self.piece(j, j + s).dim > 0]

    def diff_matrix(self, s: int) -> Mat:
        sign = self.field.neg(self.field.sign_pow(s))
        src = self.degree_layout(s)
        tgt = self.degree_layout(s + 1)
        tgt_off = {}
        run = 0
        for j in tgt:
            tgt_off[j] = run
            run += self.piece(j, j + s + 1).dim
        cols = []
        for j in src:
            piece = self.piece(j, j + s)
            up_maps = [self.Y.differential(j + s) @ g for g in piece.basis.basis]
            dn_maps = [(g @ self.X.differential(j - 1)).scale(sign)
                       for g in piece.basis.basis]
            up = self.piece(j, j + s + 1).basis.coords_matrix(up_maps) \
                if j in tgt_off else None
            dn = self.piece(j - 1, j + s).basis.coords_matrix(dn_maps) \
                if (j - 1) in tgt_off else None
            for c in range(piece.dim):
                col = [self.field.zero()] * run
                if up is not None:
                    for r in range(up.rows):
                        col[tgt_off[j] + r] = up.get(r, c)
                if dn is not None:
                    for r in range(dn.rows):
                        idx = tgt_off[j - 1] + r
                        col[idx] = self.field.add(col[idx], dn.get(r, c))
                cols.append(col)
        if not cols:
            return Mat.zeros(self.field, run, 0)
        return Mat.from_rows(self.field, cols).transpose()

    def homotopy_dim(self, s: int) -> int:
        d_here = self.diff_matrix(s)
        d_prev = self.diff_matrix(s - 1)
        return d_here.kernel_basis().cols - d_prev.rank()


def bounded_homotopy_hom_dim(X: BoundedComplex, Y: BoundedComplex, s: int) -> int:
    """dim of Hom(X, Y[s]) in the bounded homotopy category."""
    return BoundedHomComplex(X, Y).homotopy_dim(s)


# -- acyclic complexes of projectives -----------------------------------------------


def _is_projective(M: Rep) -> bool:
    if M.is_zero():
        return True
    P, _ = projective_cover(M)
    return P.total_dim == M.total_dim


def decompose_acyclic_projective(V: PeriodicComplex
                                 ) -> List[Tuple[Rep, int]]:
    """Split an acyclic complex of projectives into shifted K-blocks.

    Returns pairs (P_i, ell_i) with the rebuilt sum of K_{P_i}[ell_i]
    isomorphic to V in the strict category; raises when a cocycle fails to be
    projective (which signals a precondition violation).
    """
    m = V.m
    alg = V.algebra
    if not is_acyclic(V):
        raise PreconditionError("complex is not acyclic")
    for i, c in enumerate(V.comps):
        if not _is_projective(c):
            raise PreconditionError(f"component {i} is not projective")
    cocycles = []
    for i in range(m):
        Z, inclZ = kernel_of(V.diffs[i])
        if not _is_projective(Z):
            raise PreconditionError(
                f"cocycle Z^{i} is not projective; decomposition impossible")
        cocycles.append((Z, inclZ))
    # sections of V^i ->> Z^{i+1}: solve D o s = id inside the hom space
    out = []
    summands = []
    for i in range(m):
        Z, inclZ = cocycles[(i + 1) % m]
        if Z.is_zero():
            continue
        D_blocks = []
        for v in range(len(Z.dims)):
            X = inclZ.blocks[v].solve_matrix(V.diffs[i].blocks[v])
            assert X is not None
            D_blocks.append(X)
        D = Morphism(V.comps[i], Z, D_blocks)
        cands = hom_space(Z, V.comps[i])
        comp = HomBasis(Z, Z)
        mat = comp.coords_matrix([D @ h for h in cands])
        idc = comp.coords_of(Morphism.identity(Z))
        sol = mat.solve(idc)
        if sol is None:
            raise PreconditionError("splitting section does not exist")
        section = None
        for c, h in zip(sol, cands):
            if not alg.field.is_zero(c):
                t = h.scale(c)
                section = t if section is None else section + t
        assert section is not None
        summands.append((i, Z, inclZ, section))
    # assemble the isomorphism sum K_{Z^{i+1}}[-(i+1)] -> V and verify it
    parts = []
    maps = []
    field = alg.field
    for i, Z, inclZ, section in summands:
        ell = 0 if m == 1 else -(i + 1)
        K = shift(K_of(Z, m), ell) if ell else K_of(Z, m)
        comps = [Morphism.zero(K.comps[t], V.comps[t]) for t in range(m)]
        if m == 1:
            # K is Z+Z in degree 0; (a, b) -> incl(a) + section(b) is a chain map
            _, _, zprojs = direct_sum([Z, Z])
            comps[0] = (inclZ @ zprojs[0]) + (section @ zprojs[1])
        else:
            sign = field.sign_pow(i + 1)
            comps[i % m] = section.scale(sign)
            comps[(i + 1) % m] = inclZ
        maps.append((K, comps))
        parts.append(K)
        out.append((Z, ell % m))
    if not parts:
        return []
    total, injs, projs = complex_direct_sum(parts)
    glue = None
    for (K, comps), pr in zip(maps, projs):
        g = GradedMorphism(K, V, 0, comps) @ pr
        glue = g if glue is None else glue + g
    assert glue is not None
    if not glue.is_closed():
        raise CheckFailed("assembled comparison map is not a chain map")
    for t in range(m):
        blocks = glue.comps[t]
        if blocks.source.dims != V.comps[t].dims or not blocks.is_iso():
            raise CheckFailed("assembled comparison map is not invertible")
    return out
