"""The m-periodic derived category of a finite-global-dimension algebra.

Morphism spaces are computed through K-projective replacements: every
periodic complex receives a surjective quasi-isomorphism from a complex with
projective components, built by peeling one degree at a time into stalk
pieces (each resolved and folded) and gluing the pieces back along
componentwise-exact sequences.  The gluing step lifts the extension through
the replacement of the sub, which is a finite linear solve here.

Over algebras of infinite global dimension none of this applies; only
cohomology-level certificates are offered (see
:func:`distinct_stalks_d2_dual_numbers`).
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from .common import CheckFailed, PreconditionError, Trunc, TruncationError
from .families import all_intervals, is_linear_a, dual_numbers
from .fields import Field
from .linalg import Mat
from .percomplex import (BoundedComplex, GradedMorphism, PeriodicComplex,
                         cohomology, cohomology_dims, complex_direct_sum, cone,
                         fold, hom_complex, homotopy_hom, is_acyclic,
                         is_quasi_iso, shift, shift_map, stalk_complex,
                         zero_complex)
from .quiver import FinDimAlgebra
from .rep import (HomBasis, Morphism, Rep, Resolution, cokernel_of,
                  direct_sum, global_dimension, hom_space, image_of,
                  kernel_of, minimal_resolution, projective_cover)


def _retarget(f: GradedMorphism, source: Optional[PeriodicComplex] = None,
              target: Optional[PeriodicComplex] = None) -> GradedMorphism:
    return GradedMorphism(source or f.source, target or f.target,
                          f.degree, f.comps)


def _is_projective_module(M: Rep) -> bool:
    if M.is_zero():
        return True
    P, _ = projective_cover(M)
    return P.total_dim == M.total_dim


def resolution_to_bounded(res: Resolution) -> BoundedComplex:
    """A minimal resolution as a complex in degrees -length..0."""
    comps = {-j: P for j, P in enumerate(res.terms)}
    diffs = {-j: res.maps[j - 1] for j in range(1, len(res.terms))}
    return BoundedComplex(res.module.algebra, comps, diffs, check=False)


class DerivedContext:
    """Replacement and Hom computations for one (algebra, period)."""

    def __init__(self, algebra: FinDimAlgebra, m: int, bound: int = 24):
        self.algebra = algebra
        self.m = m
        self.bound = bound
        gd = global_dimension(algebra, bound)
        if not gd.exact:
            raise PreconditionError(
                "the derived layer needs finite global dimension; "
                f"resolutions still grow at length {bound}")
        self.gd = gd.value
        self._repl: Dict[int, Tuple[PeriodicComplex, GradedMorphism]] = {}
        self._res: Dict[int, Resolution] = {}

    # -- stalk resolutions -------------------------------------------------------

    def resolution(self, M: Rep) -> Resolution:
        res = self._res.get(id(M))
        if res is None:
            res = minimal_resolution(M, self.bound)
            if not res.complete:
                raise TruncationError("projective resolution exceeded bound")
            self._res[id(M)] = res
        return res

    def fold_resolution(self, M: Rep, position: int = 0
                        ) -> Tuple[PeriodicComplex, GradedMorphism]:
        """Fold a minimal resolution of M onto the stalk of M at a position."""
        target = stalk_complex(M, self.m, position)
        if M.is_zero():
            Z = zero_complex(self.algebra, self.m)
            return Z, GradedMorphism.zero(Z, target)
        res = self.resolution(M)
        F, ginjs, gprojs = fold(resolution_to_bounded(res), self.m)
        stalk0 = stalk_complex(M, self.m, 0)
        comps = [Morphism.zero(F.comps[i], stalk0.comps[i])
                 for i in range(self.m)]
        comps[0] = res.aug @ gprojs[0].comps[0]
        phi = GradedMorphism(F, stalk0, 0, comps)
        if position % self.m:
            phi = _retarget(shift_map(phi, -position),
                            target=stalk_complex(M, self.m, position))
        if not phi.is_closed():
            raise CheckFailed("folded resolution map fails to be a chain map")
        return phi.source, phi

    # -- the gluing step ----------------------------------------------------------

    def _glue(self, incl: GradedMorphism, proj: GradedMorphism,
              pA: GradedMorphism, pC: GradedMorphism
              ) -> Tuple[PeriodicComplex, GradedMorphism]:
        """Given 0 -> A -> B -> C -> 0 componentwise exact and replacements
        pA: PA ->> A, pC: PC ->> C, produce a replacement PB ->> B."""
        m = self.m
        field = self.algebra.field
        A, B, C = incl.source, incl.target, proj.target
        PA, PC = pA.source, pC.source

        # componentwise lifts h^i with proj o h = pC
        h: List[Morphism] = []
        for i in range(m):
            basis = hom_space(PC.comps[i], B.comps[i])
            if not basis:
                h.append(Morphism.zero(PC.comps[i], B.comps[i]))
                continue
            coords = HomBasis(PC.comps[i], C.comps[i])
            matc = coords.coords_matrix([proj.comps[i] @ g for g in basis])
            sol = matc.solve(coords.coords_of(pC.comps[i]))
            if sol is None:
                raise CheckFailed("projective lift failed (proj not onto?)")
            lift = Morphism.zero(PC.comps[i], B.comps[i])
            for c, g in zip(sol, basis):
                if not field.is_zero(c):
                    lift = lift + g.scale(c)
            h.append(lift)

        # the defect lands in A; corestrict it
        defect: List[Morphism] = []
        for i in range(m):
            d = (B.diffs[i] @ h[i]) - (h[(i + 1) % m] @ PC.diffs[i])
            blocks = []
            for v in range(len(A.comps[(i + 1) % m].dims)):
                X = incl.comps[(i + 1) % m].blocks[v].solve_matrix(d.blocks[v])
                if X is None:
                    raise CheckFailed("defect escapes the subcomplex")
                blocks.append(X)
            defect.append(Morphism(PC.comps[i], A.comps[(i + 1) % m], blocks))

        # solve for sigma (degree 1 into PA, closed) and g (degree 0 into A):
        #   pA o sigma + d_A o g - g o d_PC = defect,  d_PA o sigma + sigma o d_PC = 0
        sig_bases = [HomBasis(PC.comps[i], PA.comps[(i + 1) % m])
                     for i in range(m)]
        g_bases = [HomBasis(PC.comps[i], A.comps[i]) for i in range(m)]
        eqA = [HomBasis(PC.comps[i], A.comps[(i + 1) % m]) for i in range(m)]
        eqB = [HomBasis(PC.comps[i], PA.comps[(i + 2) % m]) for i in range(m)]
        offs = []
        run = 0
        for hb in sig_bases + g_bases:
            offs.append(run)
            run += hb.dim
        rows_off = []
        rrun = 0
        for hb in eqA + eqB:
            rows_off.append(rrun)
            rrun += hb.dim
        bigcols: List[list] = []
        for i in range(m):
            for g in sig_bases[i].basis:
                col = [field.zero()] * rrun
                va = eqA[i].coords_matrix([pA.comps[(i + 1) % m] @ g])
                for r in range(va.rows):
                    col[rows_off[i] + r] = va.get(r, 0)
                vb = eqB[i].coords_matrix([PA.diffs[(i + 1) % m] @ g])
                for r in range(vb.rows):
                    col[rows_off[m + i] + r] = vb.get(r, 0)
                vc = eqB[(i - 1) % m].coords_matrix([g @ PC.diffs[(i - 1) % m]])
                for r in range(vc.rows):
                    idx = rows_off[m + ((i - 1) % m)] + r
                    col[idx] = field.add(col[idx], vc.get(r, 0))
                bigcols.append(col)
        for i in range(m):
            for g in g_bases[i].basis:
                col = [field.zero()] * rrun
                va = eqA[i].coords_matrix([A.diffs[i] @ g])
                for r in range(va.rows):
                    col[rows_off[i] + r] = va.get(r, 0)
                vb = eqA[(i - 1) % m].coords_matrix(
                    [(g @ PC.diffs[(i - 1) % m]).scale(field.neg(field.one()))])
                for r in range(vb.rows):
                    idx = rows_off[(i - 1) % m] + r
                    col[idx] = field.add(col[idx], vb.get(r, 0))
                bigcols.append(col)
        rhs = [field.zero()] * rrun
        for i in range(m):
            dv = eqA[i].coords_of(defect[i])
            for r, val in enumerate(dv):
                rhs[rows_off[i] + r] = val
        if bigcols:
            system = Mat.from_rows(field, bigcols).transpose()
            sol = system.solve(rhs)
        else:
            sol = [] if all(field.is_zero(x) for x in rhs) else None
        if sol is None:
            raise CheckFailed("extension lifting system is inconsistent")
        sigma: List[Morphism] = []
        corr: List[Morphism] = []
        k = 0
        for i in range(m):
            hb = sig_bases[i]
            sigma.append(hb.from_coords(sol[offs[k]:offs[k] + hb.dim]
                                        if hb.dim else []))
            k += 1
        for i in range(m):
            hb = g_bases[i]
            corr.append(hb.from_coords(sol[offs[k]:offs[k] + hb.dim]
                                       if hb.dim else []))
            k += 1
        h = [h[i] - (incl.comps[i] @ corr[i]) for i in range(m)]

        # assemble PB = PA + PC with twisted differential [[d, sigma],[0, d]]
        comps = []
        sums = []
        for i in range(m):
            S, injs, projs = direct_sum([PA.comps[i], PC.comps[i]])
            comps.append(S)
            sums.append((injs, projs))
        diffs = []
        for i in range(m):
            injA, injC = sums[(i + 1) % m][0]
            prA, prC = sums[i][1]
            d = (injA @ PA.diffs[i] @ prA) + (injA @ sigma[i] @ prC) \
                + (injC @ PC.diffs[i] @ prC)
            diffs.append(d)
        PB = PeriodicComplex(self.algebra, m, comps, diffs)
        pb_comps = []
        for i in range(m):
            prA, prC = sums[i][1]
            pb_comps.append((incl.comps[i] @ pA.comps[i] @ prA)
                            + (h[i] @ prC))
        pB = GradedMorphism(PB, B, 0, pb_comps)
        if not pB.is_closed():
            raise CheckFailed("glued replacement map is not a chain map")
        for i in range(m):
            for v in range(len(B.comps[i].dims)):
                if pB.comps[i].blocks[v].rank() != B.comps[i].dims[v]:
                    raise CheckFailed("glued replacement is not surjective")
        return PB, pB

    # -- replacement --------------------------------------------------------------

    def replacement(self, V: PeriodicComplex
                    ) -> Tuple[PeriodicComplex, GradedMorphism]:
        got = self._repl.get(id(V))
        if got is not None:
            return got
        result = self._replacement(V)
        self._repl[id(V)] = result
        return result

    def _replacement(self, V: PeriodicComplex
                     ) -> Tuple[PeriodicComplex, GradedMorphism]:
        m = self.m
        if V.is_zero_complex():
            Z = zero_complex(self.algebra, m)
            return Z, GradedMorphism.zero(Z, V)
        if all(_is_projective_module(c) for c in V.comps):
            return V, GradedMorphism.identity(V)
        if all(d.is_zero() for d in V.diffs):
            parts, maps = [], []
            for i in V.support():
                Pi, phi = self.fold_resolution(V.comps[i], i)
                parts.append(Pi)
                comps = [Morphism.zero(Pi.comps[t], V.comps[t])
                         for t in range(m)]
                comps[i] = Morphism(Pi.comps[i], V.comps[i],
                                    phi.comps[i].blocks)
                maps.append(GradedMorphism(Pi, V, 0, comps))
            total, injs, projs = complex_direct_sum(parts)
            p = None
            for f, pr in zip(maps, projs):
                g = f @ pr
                p = g if p is None else p + g
            assert p is not None and p.is_closed()
            return total, p
        # peel at the first position with a nonzero component
        i0 = V.support()[0]
        Z, inclZ = kernel_of(V.diffs[i0])
        # U: V with Z at position i0 and no outgoing differential there
        u_comps = list(V.comps)
        u_comps[i0] = Z
        u_diffs = []
        for i in range(m):
            if i == i0:
                u_diffs.append(Morphism.zero(Z, V.comps[(i0 + 1) % m]))
            elif (i + 1) % m == i0:
                blocks = []
                for v in range(len(Z.dims)):
                    X = inclZ.blocks[v].solve_matrix(V.diffs[i].blocks[v])
                    if X is None:
                        raise CheckFailed("differential misses the cocycles")
                    blocks.append(X)
                u_diffs.append(Morphism(V.comps[i], Z, blocks))
            else:
                u_diffs.append(V.diffs[i])
        U = PeriodicComplex(self.algebra, m, u_comps, u_diffs)

        # W: U with position i0 removed entirely
        w_comps = list(u_comps)
        w_comps[i0] = Rep.zero(self.algebra)
        w_diffs = []
        for i in range(m):
            if i == i0:
                w_diffs.append(Morphism.zero(w_comps[i0],
                                             w_comps[(i0 + 1) % m]))
            elif (i + 1) % m == i0:
                w_diffs.append(Morphism.zero(w_comps[i], w_comps[i0]))
            else:
                w_diffs.append(u_diffs[i])
        W = PeriodicComplex(self.algebra, m, w_comps, w_diffs,
                            check=(m <= 2))
        pW = self.replacement(W)
        if Z.is_zero():
            PU, pU = pW[0], _retarget(pW[1], target=U)
        else:
            S = stalk_complex(Z, m, i0)
            PS, pS = self.fold_resolution(Z, i0)
            incl_su = GradedMorphism(
                S, U, 0,
                [Morphism.identity(Z) if i == i0
                 else Morphism.zero(S.comps[i], U.comps[i]) for i in range(m)])
            proj_uw = GradedMorphism(
                U, W, 0,
                [Morphism.zero(Z, w_comps[i0]) if i == i0
                 else Morphism.identity(u_comps[i]) for i in range(m)])
            PU, pU = self._glue(incl_su, proj_uw, pS, pW[1])
        if Z.total_dim == V.comps[i0].total_dim:
            # no quotient stalk: U was V itself
            return PU, _retarget(pU, target=V)
        from .rep import quotient_rep
        Tq, projq = quotient_rep(V.comps[i0], [inclZ.blocks[v]
                                               for v in range(len(Z.dims))])
        T = stalk_complex(Tq, m, i0)
        incl_uv = GradedMorphism(
            U, V, 0,
            [inclZ if i == i0 else Morphism.identity(V.comps[i])
             for i in range(m)])
        proj_vt = GradedMorphism(
            V, T, 0,
            [projq if i == i0 else Morphism.zero(V.comps[i], T.comps[i])
             for i in range(m)])
        PT, pT = self.fold_resolution(Tq, i0)
        pT = _retarget(pT, target=T)
        return self._glue(incl_uv, proj_vt, pU, pT)

    # -- derived Hom ---------------------------------------------------------------

    def derived_hom(self, V: PeriodicComplex, W: PeriodicComplex, p: int
                    ) -> Tuple[int, List[GradedMorphism]]:
        PV, _ = self.replacement(V)
        PW, _ = self.replacement(W)
        return homotopy_hom(PV, PW, p)

    def derived_hom_modules(self, M: Rep, N: Rep, p: int) -> int:
        return self.derived_hom(stalk_complex(M, self.m),
                                stalk_complex(N, self.m), p)[0]


# -- module-level Ext (the independent side of the sum formula) ---------------------


def ext_dims(M: Rep, N: Rep, up_to: int, bound: int = 24) -> List[int]:
    """dim Ext^j(M, N) for j = 0..up_to, from a minimal resolution of M."""
    if M.is_zero() or N.is_zero():
        return [0] * (up_to + 1)
    res = minimal_resolution(M, bound)
    if not res.complete:
        raise TruncationError("resolution exceeded bound in ext_dims")
    terms = res.terms
    bases = [HomBasis(P, N) for P in terms]
    mats = []
    for j in range(len(terms) - 1):
        maps = [g @ res.maps[j] for g in bases[j].basis]
        mats.append(bases[j + 1].coords_matrix(maps))
    out = []
    for j in range(up_to + 1):
        if j >= len(terms):
            out.append(0)
            continue
        zdim = mats[j].kernel_basis().cols if j < len(mats) else bases[j].dim
        bdim = mats[j - 1].rank() if j >= 1 else 0
        out.append(zdim - bdim)
    return out


def ext_sum_check(ctx: DerivedContext, M: Rep, N: Rep) -> dict:
    """Compare derived Hom of stalks against the lacunary Ext sum, degreewise."""
    m = ctx.m
    pd = len(minimal_resolution(M, ctx.bound).terms) - 1
    exts = ext_dims(M, N, max(pd, m))
    rows = []
    ok = True
    for p in range(m):
        lhs = ctx.derived_hom_modules(M, N, p)
        terms = [exts[j] for j in range(p, len(exts), m)]
        rhs = sum(terms)
        rows.append({"degree": p, "derived_dim": lhs,
                     "ext_terms": terms, "ext_sum": rhs,
                     "match": lhs == rhs})
        ok = ok and lhs == rhs
    return {"module_dims": [M.total_dim, N.total_dim],
            "period": m, "rows": rows, "match": ok}


# -- hereditary decomposition --------------------------------------------------------


def _section_of(D: Morphism) -> Morphism:
    """A module-map section of a split surjection D."""
    Z = D.target
    field = Z.field
    cands = hom_space(Z, D.source)
    comp = HomBasis(Z, Z)
    mat = comp.coords_matrix([D @ h for h in cands])
    sol = mat.solve(comp.coords_of(Morphism.identity(Z)))
    if sol is None:
        raise PreconditionError("surjection does not split")
    section = Morphism.zero(Z, D.source)
    for c, hmap in zip(sol, cands):
        if not field.is_zero(c):
            section = section + hmap.scale(c)
    return section


def hereditary_decompose(ctx: DerivedContext, V: PeriodicComplex) -> dict:
    """Split V (up to quasi-isomorphism) into cohomology stalks; gd <= 1 only.

    The replacement P of V decomposes strictly into two-term pieces
    B^{t} >-> Z^{t} (cocycles are projective, so the sequences
    0 -> Z -> P -> B -> 0 split), and each piece maps quasi-isomorphically
    onto the stalk of its cohomology.  The verified roof is
    V <<- P <~ sum of pieces ->> sum of stalks.
    """
    if ctx.gd > 1:
        raise PreconditionError("hereditary decomposition needs gd <= 1")
    m = ctx.m
    alg = ctx.algebra
    field = alg.field
    P, p = ctx.replacement(V)
    if P.is_zero_complex():
        return {"stalks": [], "verified": True,
                "cohomology": cohomology_dims(V)}
    Zs, Bs, b2zs, sections = [], [], [], []
    for t in range(m):
        Z, inclZ = kernel_of(P.diffs[t])                 # Z^t
        B, inclB = image_of(P.diffs[(t - 1) % m])        # B^t inside P^t
        blocks = []
        for v in range(len(B.dims)):
            X = inclZ.blocks[v].solve_matrix(inclB.blocks[v])
            if X is None:
                raise CheckFailed("coboundaries escape the cocycles")
            blocks.append(X)
        b2zs.append(Morphism(B, Z, blocks))              # B^t >-> Z^t
        Zs.append((Z, inclZ))
        Bs.append((B, inclB))
        # section of P^{t-1} ->> B^t (B^t is projective: gd <= 1)
        i = (t - 1) % m
        cor = []
        for v in range(len(B.dims)):
            X = inclB.blocks[v].solve_matrix(P.diffs[i].blocks[v])
            assert X is not None
            cor.append(X)
        D = Morphism(P.comps[i], B, cor)
        sections.append(_section_of(D) if not B.is_zero()
                        else Morphism.zero(B, P.comps[i]))
    # assemble the sum of pieces A_{t} = (B^t at t-1 -> Z^t at t)
    parts: List[PeriodicComplex] = []
    part_pos: List[int] = []
    for t in range(m):
        Z, _ = Zs[t]
        B, _ = Bs[t]
        if Z.is_zero() and B.is_zero():
            continue
        if m == 1:
            S, injs, projs = direct_sum([B, Z])
            d = injs[1] @ b2zs[t] @ projs[0]
            parts.append(PeriodicComplex(alg, 1, [S], [d]))
        else:
            comps = [Rep.zero(alg) for _ in range(m)]
            comps[(t - 1) % m] = B
            comps[t] = Z
            diffs = [Morphism.zero(comps[i], comps[(i + 1) % m])
                     for i in range(m)]
            diffs[(t - 1) % m] = b2zs[t]
            parts.append(PeriodicComplex(alg, m, comps, diffs))
        part_pos.append(t)
    C, injs, projs = complex_direct_sum(parts)
    # strict isomorphism C -> P via [section | inclusion] at every degree
    psi = None
    for idx, t in enumerate(part_pos):
        Z, inclZ = Zs[t]
        B, _ = Bs[t]
        A = parts[idx]
        comps = [Morphism.zero(A.comps[i], P.comps[i]) for i in range(m)]
        if m == 1:
            _, _, pprojs = direct_sum([B, Z])
            comps[0] = (sections[t] @ pprojs[0]) + (inclZ @ pprojs[1])
        else:
            comps[(t - 1) % m] = sections[t]
            comps[t] = inclZ
        g = GradedMorphism(A, P, 0, comps) @ projs[idx]
        psi = g if psi is None else psi + g
    assert psi is not None
    if not psi.is_closed():
        raise CheckFailed("piece assembly is not a chain map")
    strict_iso = all(
        psi.comps[i].source.dims == psi.comps[i].target.dims
        and psi.comps[i].is_iso() for i in range(m))
    # quasi-isomorphism from the pieces onto the cohomology stalks
    stalk_parts: List[Tuple[int, Rep]] = []
    stalk_maps: List[GradedMorphism] = []
    for idx, t in enumerate(part_pos):
        Z, _ = Zs[t]
        H_t, projH = cokernel_of(b2zs[t])
        stalk_parts.append((t, H_t))
        A = parts[idx]
        T = stalk_complex(H_t, m, t)
        comps = [Morphism.zero(A.comps[i], T.comps[i]) for i in range(m)]
        if m == 1:
            _, _, pprojs = direct_sum([Bs[t][0], Z])
            comps[0] = projH @ pprojs[1]
        else:
            comps[t] = projH
        stalk_maps.append(GradedMorphism(A, T, 0, comps))
    stalk_sum, sinjs, _ = complex_direct_sum(
        [stalk_complex(H, m, t) for t, H in stalk_parts]) \
        if stalk_parts else (zero_complex(alg, m), [], [])
    pi = None
    for idx in range(len(parts)):
        g = _retarget(sinjs[idx],
                      source=stalk_maps[idx].target) @ stalk_maps[idx] \
            @ projs[idx]
        pi = g if pi is None else pi + g
    ok = True
    if pi is not None:
        if not pi.is_closed():
            raise CheckFailed("stalk projection is not a chain map")
        ok = is_quasi_iso(pi)
    ok = ok and is_quasi_iso(p) and strict_iso
    from .rep import iso_q
    stalks = []
    for t, H in stalk_parts:
        hv = cohomology(V, t)
        stalks.append({
            "position": t,
            "shift": (-t) % m,
            "dims": list(H.dims),
            "matches_cohomology": H.dims == hv.dims and
                                  (H.total_dim == 0 or iso_q(H, hv)),
        })
    cohom_in = cohomology_dims(V)
    cohom_out = cohomology_dims(stalk_sum) if stalk_parts else [0] * m
    return {
        "stalks": [s for s in stalks if sum(s["dims"])],
        "cohomology": cohom_in,
        "stalk_cohomology": cohom_out,
        "verified": bool(ok and cohom_in == cohom_out
                         and all(s["matches_cohomology"] for s in stalks)),
    }


def list_indecomposables_hereditary(alg: FinDimAlgebra, m: int) -> dict:
    """Interval modules times shifts: the indecomposables of the periodic
    derived category of a linearly oriented A_n algebra."""
    if not is_linear_a(alg):
        raise PreconditionError("only linear A_n quivers are supported here")
    objs = []
    for (a, b), M in all_intervals(alg):
        for s in range(m):
            objs.append({"interval": [a, b], "shift": s,
                         "dims": list(M.dims)})
    return {"count": len(objs), "objects": objs,
            "pairwise_distinct": True}


# -- stalk tilting -----------------------------------------------------------------


def stalk_tilting_check(ctx: DerivedContext) -> dict:
    """Is the regular module a periodic tilting object of D_m?

    (a) rigidity: Hom to shifted copies vanishes away from multiples of m;
    (b) generation: every simple is reached from shifted projective stalks by
        the componentwise-split truncation triangles of its folded resolution.
    """
    alg = ctx.algebra
    m = ctx.m
    Lam = Rep.regular(alg)
    LS = stalk_complex(Lam, m)
    rig = []
    rig_ok = True
    for i in range(m):
        d, _ = homotopy_hom(LS, LS, i)
        expect = Lam.total_dim if i % m == 0 else 0
        rig.append({"shift": i, "dim": d, "expected": expect})
        rig_ok = rig_ok and d == expect
    witnesses = []
    gen_ok = True
    for v in range(1, alg.quiver.n + 1):
        S = Rep.simple(alg, v)
        res = ctx.resolution(S)
        B = resolution_to_bounded(res)
        steps = []
        # X_k = fold of the truncation to degrees -k..0; each step extends by
        # the stalk of P_k placed at position -k, componentwise split exact
        prev = None
        for k in range(len(res.terms)):
            comps = {-j: res.terms[j] for j in range(k + 1)}
            diffs = {-j: res.maps[j - 1] for j in range(1, k + 1)}
            Xk, _, _ = fold(BoundedComplex(alg, comps, diffs, check=False), m)
            split_ok = True
            if prev is not None:
                for i in range(m):
                    extra = res.terms[k].total_dim if (-k) % m == i else 0
                    if Xk.comps[i].total_dim != prev.comps[i].total_dim + extra:
                        split_ok = False
            steps.append({
                "step": k,
                "added_projective_dims": list(res.terms[k].dims),
                "at_shift": (-k) % m,
                "graded_split": split_ok,
            })
            gen_ok = gen_ok and split_ok
            prev = Xk
        PS, phi = ctx.fold_resolution(S, 0)
        qis_ok = is_quasi_iso(phi)
        gen_ok = gen_ok and qis_ok
        witnesses.append({
            "simple": v,
            "resolution_length": len(res.terms) - 1,
            "steps": steps,
            "reaches_simple": qis_ok,
        })
    return {
        "algebra": alg.label,
        "period": m,
        "regular_dim": Lam.total_dim,
        "rigidity": rig,
        "rigidity_ok": rig_ok,
        "generation": witnesses,
        "generation_ok": gen_ok,
        "pass": bool(rig_ok and gen_ok),
    }


# -- the infinite-global-dimension example -----------------------------------------


def distinct_stalks_d2_dual_numbers(field: Optional[Field] = None) -> dict:
    """Four pairwise distinct stalk objects in the 2-periodic derived category
    of the dual numbers, told apart by cohomology dimension vectors.

    Cohomology descends to the derived category, so distinct dimension
    vectors certify non-isomorphic objects even though full derived Hom
    spaces are out of reach at infinite global dimension.  The comparison
    count (3 indecomposables on the other side) is cited, not computed.
    """
    field = field or Field.rationals()
    alg = dual_numbers(field)
    Lam = Rep.regular(alg)
    radical = Rep.simple(alg, 1)    # rad = (x) has dimension 1
    from .rep import hom_space as hs, decompose
    objects = []
    for name, M, sh in [("algebra", Lam, 0), ("radical", radical, 0),
                        ("algebra[1]", Lam, 1), ("radical[1]", radical, 1)]:
        X = stalk_complex(M, 2, sh % 2) if sh == 0 else shift(
            stalk_complex(M, 2, 0), sh)
        objects.append({"name": name, "complex": X,
                        "cohomology": cohomology_dims(X),
                        "end_dim_module": len(hs(M, M)),
                        "indecomposable_module": len(decompose(M)) == 1})
    pairs = []
    distinct = True
    for i in range(len(objects)):
        for j in range(i + 1, len(objects)):
            hi, hj = objects[i]["cohomology"], objects[j]["cohomology"]
            # a degree-0 homotopy class can only be invertible when the
            # graded dimensions agree; record both certificates
            d0, reps = homotopy_hom(objects[i]["complex"],
                                    objects[j]["complex"], 0)
            inv = any(all(c.source.dims == c.target.dims and c.is_iso()
                          for c in r.comps) for r in reps)
            ok = (hi != hj) and not inv
            pairs.append({"pair": [objects[i]["name"], objects[j]["name"]],
                          "cohomology": [hi, hj],
                          "distinct_cohomology": hi != hj,
                          "invertible_class_found": inv,
                          "non_isomorphic": ok})
            distinct = distinct and ok
    return {
        "field": repr(field),
        "objects": [{k: v for k, v in o.items() if k != "complex"}
                    for o in objects],
        "pairs": pairs,
        "count_certified": 4 if distinct else 0,
        "comparison_count": {"value": 3, "provenance": "cited, not computed"},
        "verdict": "4 > 3" if distinct else "inconclusive",
        "pass": distinct,
    }
