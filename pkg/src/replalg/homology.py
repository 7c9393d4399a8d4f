"""Homological machinery: resolutions, dimensions, Ext^1, stable Hom,
direct-sum decomposition, isomorphism testing, endomorphism algebras and
minimal right approximations.

Everything is exact; randomness appears only in the seeded search for
isomorphisms and splitting endomorphisms, and a negative answer is always
backed by a deterministic certificate.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import sympy

from .algebra import AlgebraData
from .errors import NotBasic, NotProjInjective, UndecidableDecomposition
from .linalg import EchelonSpace, RatMatrix, hstack
from .modules import (
    ModuleMap,
    ModuleRep,
    direct_sum,
    dual_module,
    hom_basis,
    identity_map,
    injective_envelope,
    is_injective_module,
    is_projective_module,
    kernel,
    cokernel,
    projective_cover,
    regular_module,
    simple_module,
    zero_module,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class DimBound:
    """An exact homological dimension, or a certified lower bound.

    ``exact`` means the value is the dimension; otherwise only
    "dimension >= value" has been established (a resolution cap was hit, or
    the chain outlived the cap).
    """

    value: int
    exact: bool = True

    def at_least(self, k: int) -> bool:
        return self.value >= k

    def at_most(self, k: int) -> bool:
        return self.exact and self.value <= k

    def __str__(self) -> str:
        return str(self.value) if self.exact else f">={self.value}"

    def to_json(self):
        return self.value if self.exact else f">={self.value}"


@dataclass
class Resolution:
    """A minimal projective resolution or injective coresolution.

    projective:  maps[0]: terms[0] -> module, maps[i]: terms[i] -> terms[i-1]
    injective:   maps[0]: module -> terms[0], maps[i]: terms[i-1] -> terms[i]
    ``complete`` is False when the construction stopped at the cap; when it
    is True, ``length`` is the projective (resp. injective) dimension.
    """

    kind: str
    module: ModuleRep
    terms: list[ModuleRep] = field(default_factory=list)
    maps: list[ModuleMap] = field(default_factory=list)
    complete: bool = True

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def verify_exact(self) -> None:
        """Re-check exactness at every interior term by rank arithmetic."""
        if self.kind == "projective":
            if self.terms and not self.maps[0].is_surjective():
                raise ValueError("resolution is not exact at the module")
            for i in range(1, len(self.maps)):
                d_prev, d = self.maps[i - 1], self.maps[i]
                if not (d_prev.matrix @ d.matrix).is_zero():
                    raise ValueError("resolution differentials do not compose to zero")
                if d.rank() != d_prev.source.dim - d_prev.rank():
                    raise ValueError(f"resolution not exact at term {i - 1}")
            if self.complete and self.maps:
                last = self.maps[-1]
                if not last.is_injective():
                    raise ValueError("resolution not exact at the last term")
        else:
            if self.terms and not self.maps[0].is_injective():
                raise ValueError("coresolution is not exact at the module")
            for i in range(1, len(self.maps)):
                d_prev, d = self.maps[i - 1], self.maps[i]
                if not (d.matrix @ d_prev.matrix).is_zero():
                    raise ValueError("coresolution differentials do not compose to zero")
                # ker(d) must equal im(d_prev)
                if d_prev.target.dim - d.rank() != d_prev.rank():
                    raise ValueError(f"coresolution not exact at term {i - 1}")
            if self.complete and self.maps:
                if not self.maps[-1].is_surjective():
                    raise ValueError("coresolution not exact at the last term")


def minimal_projective_resolution(x: ModuleRep, cap: int) -> Resolution:
    """Iterated projective covers of syzygies; stops at zero or at the cap."""
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    res = Resolution("projective", x)
    if x.dim == 0:
        return res
    current = x
    incl_prev: Optional[ModuleMap] = None
    for step in range(cap + 1):
        p, f = projective_cover(current)
        res.terms.append(p)
        res.maps.append(f if incl_prev is None else f.then(incl_prev))
        k, kincl = kernel(f)
        if k.dim == 0:
            return res
        current, incl_prev = k, kincl
    res.complete = False
    return res


def projective_dimension(x: ModuleRep, cap: int) -> DimBound:
    if x.dim == 0:
        return DimBound(0)
    res = minimal_projective_resolution(x, cap)
    if res.complete:
        return DimBound(res.length)
    return DimBound(cap + 1, exact=False)


def cosyzygy(x: ModuleRep) -> ModuleRep:
    """Cokernel of the injective envelope; zero for injective modules."""
    if x.dim == 0:
        return x
    _, env = injective_envelope(x)
    c, _ = cokernel(env)
    return c


def minimal_injective_coresolution(x: ModuleRep, cap: int) -> Resolution:
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    res = Resolution("injective", x)
    if x.dim == 0:
        return res
    current = x
    proj_prev: Optional[ModuleMap] = None
    for step in range(cap + 1):
        i, env = injective_envelope(current)
        res.terms.append(i)
        res.maps.append(env if proj_prev is None else proj_prev.then(env))
        c, cproj = cokernel(env)
        if c.dim == 0:
            return res
        current, proj_prev = c, cproj
    res.complete = False
    return res


def injective_dimension(x: ModuleRep, cap: int) -> DimBound:
    if x.dim == 0:
        return DimBound(0)
    res = minimal_injective_coresolution(x, cap)
    if res.complete:
        return DimBound(res.length)
    return DimBound(cap + 1, exact=False)


def global_dimension(a: AlgebraData, cap: int) -> DimBound:
    """max over pd of the simple modules."""
    best = 0
    exact = True
    for v in range(len(a.idempotents)):
        pd = projective_dimension(simple_module(a, v), cap)
        best = max(best, pd.value)
        exact = exact and pd.exact
    return DimBound(best, exact)


def dominant_dimension(a: AlgebraData, cap: int) -> DimBound:
    """Length of the initial projective-injective stretch of the minimal
    injective coresolution of the regular module."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    current = regular_module(a)
    count = 0
    for _ in range(cap):
        i, env = injective_envelope(current)
        if not is_projective_module(i):
            return DimBound(count)
        count += 1
        c, _ = cokernel(env)
        if c.dim == 0:
            return DimBound(cap, exact=False)  # finite all-projective coresolution
        current = c
    return DimBound(cap, exact=False)


# -- Ext^1 and the stable Hom --------------------------------------------------


def _flatten(m: RatMatrix) -> list[Fraction]:
    return [x for row in m.data for x in row]


def ext1_dim(y: ModuleRep, x: ModuleRep) -> int:
    """dim Ext^1(y, x) from the start of a minimal projective resolution of y."""
    if y.dim == 0 or x.dim == 0:
        return 0
    p0, f0 = projective_cover(y)
    k0, k0i = kernel(f0)
    if k0.dim == 0:
        return 0
    p1, f1 = projective_cover(k0)
    d1 = f1.then(k0i)
    k1, k1i = kernel(f1)
    h1 = hom_basis(p1, x)
    if not h1:
        return 0
    rank_d2 = 0
    if k1.dim:
        p2, f2 = projective_cover(k1)
        d2 = f2.then(k1i)
        sp = EchelonSpace(x.dim * p2.dim)
        for phi in h1:
            if sp.add(_flatten(phi.matrix @ d2.matrix)):
                rank_d2 += 1
    rank_d1 = 0
    sp = EchelonSpace(x.dim * p1.dim)
    for psi in hom_basis(p0, x):
        if sp.add(_flatten(psi.matrix @ d1.matrix)):
            rank_d1 += 1
    return len(h1) - rank_d2 - rank_d1


def stable_hom_dim(y: ModuleRep, z: ModuleRep, through: Sequence[ModuleRep]) -> int:
    """dim Hom(y,z) minus the span of the composites through the listed
    projective-injective modules."""
    for w in through:
        if not (is_projective_module(w) and is_injective_module(w)):
            raise NotProjInjective("a listed module is not projective-injective")
    homs = hom_basis(y, z)
    if not homs:
        return 0
    sp = EchelonSpace(y.dim * z.dim)
    for w in through:
        into = hom_basis(y, w)
        outof = hom_basis(w, z)
        for a in into:
            for b in outof:
                sp.add(_flatten(b.matrix @ a.matrix))
    return len(homs) - sp.rank


# -- decomposition into indecomposables ----------------------------------------


_X = sympy.Symbol("x")


def _minimal_polynomial(a: RatMatrix) -> list[Fraction]:
    """Monic minimal polynomial, ascending coefficients."""
    n = a.rows
    powers = [RatMatrix.identity(n)]
    sp = EchelonSpace(n * n)
    sp.add(_flatten(powers[0]))
    while True:
        nxt = powers[-1] @ a
        v = _flatten(nxt)
        if not sp.add(v):
            stacked = RatMatrix.from_columns([_flatten(p) for p in powers], nrows=n * n)
            sol = stacked.solve(RatMatrix.column(v))
            coeffs = [-sol.data[i][0] for i in range(len(powers))]
            coeffs.append(_ONE)
            return coeffs
        powers.append(nxt)


def _coprime_factors(coeffs: list[Fraction]) -> list[tuple[list[Fraction], int]]:
    poly = sympy.Poly(list(reversed(coeffs)), _X, domain="QQ")
    _, factors = poly.factor_list()
    out = []
    for fac, e in factors:
        cs = [Fraction(c.p, c.q) for c in reversed(fac.all_coeffs())]
        out.append((cs, int(e)))
    return out


def _matrix_poly(a: RatMatrix, coeffs: Sequence[Fraction]) -> RatMatrix:
    n = a.rows
    result = RatMatrix.identity(n).scaled(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        result = result @ a
        if c:
            for i in range(n):
                result.data[i][i] = result.data[i][i] + c
    return result


def _fitting_split(m: ModuleRep, phi: ModuleMap):
    """Split m along the coprime factorisation of phi's minimal polynomial."""
    coeffs = _minimal_polynomial(phi.matrix)
    factors = _coprime_factors(coeffs)
    if len(factors) < 2:
        return None
    pieces = []
    for cs, e in factors:
        p = _matrix_poly(phi.matrix, cs)
        pe = p
        for _ in range(e - 1):
            pe = pe @ p
        k, kincl = kernel(ModuleMap(m, m, pe))
        pieces.append((k, kincl))
    if sum(k.dim for k, _ in pieces) != m.dim or any(k.dim == 0 for k, _ in pieces):
        raise AssertionError("Fitting decomposition failed to partition the module")
    c = hstack([kincl.matrix for _, kincl in pieces])
    cinv = c.inverse()
    if cinv is None:
        raise AssertionError("Fitting pieces are not independent")
    out = []
    off = 0
    for k, kincl in pieces:
        rows = RatMatrix(k.dim, m.dim, cinv.data[off:off + k.dim])
        out.append((k, kincl, ModuleMap(m, k, rows)))
        off += k.dim
    return out


def _splitting_candidates(endos: list[ModuleMap], rng: random.Random, m: ModuleRep):
    for f in endos:
        yield f.matrix
    n = len(endos)
    for i in range(n):
        for j in range(i + 1, min(n, i + 6)):
            yield endos[i].matrix + endos[j].matrix
    for _ in range(24):
        coeffs = [rng.randint(-3, 3) for _ in range(n)]
        mat = RatMatrix.zeros(m.dim, m.dim)
        for c, f in zip(coeffs, endos):
            if c:
                mat = mat + f.matrix.scaled(c)
        yield mat


def _end_structure(m: ModuleRep):
    """(endo basis, structure constants c[i][j] as dense rows) with f*g = g o f."""
    endos = hom_basis(m, m)
    n = len(endos)
    stacked = RatMatrix.from_columns([_flatten(f.matrix) for f in endos], nrows=m.dim * m.dim)
    rhs_cols = []
    for i in range(n):
        for j in range(n):
            rhs_cols.append(_flatten(endos[j].matrix @ endos[i].matrix))
    sol = stacked.solve(RatMatrix.from_columns(rhs_cols, nrows=m.dim * m.dim))
    if sol is None:
        raise AssertionError("endomorphism products left the endomorphism space")
    c = [[[sol.data[k][i * n + j] for k in range(n)] for j in range(n)] for i in range(n)]
    return endos, c


def _end_top_dimension(m: ModuleRep) -> int:
    """dim of End(m)/rad End(m), via the char-0 trace-form criterion."""
    if m.dim == 0:
        return 0
    endos, c = _end_structure(m)
    n = len(endos)
    tr = [sum((c[k][j][j] for j in range(n)), _ZERO) for k in range(n)]
    gram = RatMatrix(n, n, [
        [sum((c[i][j][k] * tr[k] for k in range(n)), _ZERO) for j in range(n)]
        for i in range(n)
    ])
    return gram.rank()


def is_indecomposable_certified(m: ModuleRep) -> bool:
    return m.dim > 0 and _end_top_dimension(m) == 1


def _indecomposable_pieces(x: ModuleRep, seed: int = 0):
    """Split x into certified indecomposables; returns (piece, incl, proj) triples."""
    if x.dim == 0:
        return []
    rng = random.Random(seed)
    work = [(x, identity_map(x), identity_map(x))]
    out = []
    while work:
        m, inc, prj = work.pop(0)
        split = None
        if m.dim > 1:
            endos = hom_basis(m, m)
            if len(endos) > 1:
                for mat in _splitting_candidates(endos, rng, m):
                    split = _fitting_split(m, ModuleMap(m, m, mat))
                    if split is not None:
                        break
        if split is None:
            top_dim = _end_top_dimension(m)
            if top_dim != 1:
                raise UndecidableDecomposition(
                    f"no splitting endomorphism found but End/rad has dimension {top_dim}"
                )
            out.append((m, inc, prj))
        else:
            for piece, pinc, pprj in split:
                work.append((piece, pinc.then(inc), prj.then(pprj)))
    return out


def decompose(x: ModuleRep, seed: int = 0):
    """[(indecomposable, multiplicity)] with representatives up to isomorphism."""
    pieces = _indecomposable_pieces(x, seed)
    groups: list[tuple[ModuleRep, int]] = []
    for piece, _, _ in pieces:
        for g in range(len(groups)):
            rep, count = groups[g]
            if is_isomorphic(rep, piece, seed=seed) is not None:
                groups[g] = (rep, count + 1)
                break
        else:
            groups.append((piece, 1))
    return groups


def decompose_with_maps(x: ModuleRep, seed: int = 0):
    """The indecomposable pieces with their inclusion/projection witnesses."""
    return _indecomposable_pieces(x, seed)


# -- isomorphism testing --------------------------------------------------------


def _random_combination(homs, rng: random.Random, bound: int, dim_t: int, dim_s: int) -> RatMatrix:
    mat = RatMatrix.zeros(dim_t, dim_s)
    for f in homs:
        c = rng.randint(-bound, bound)
        if c:
            mat = mat + f.matrix.scaled(c)
    return mat


def is_isomorphic(x: ModuleRep, y: ModuleRep, seed: int = 0) -> Optional[ModuleMap]:
    """An isomorphism x -> y, or None (certified) when there is none.

    Positive answers come from direct inspection of the Hom basis, pairwise
    composites, or a bounded seeded random search; a None is only returned
    with a deterministic reason: unequal dimension vectors, a vanishing Hom
    space, local endomorphism rings with no invertible composite, or a
    Krull-Schmidt matching of the two decompositions that fails.
    """
    if x.algebra is not y.algebra:
        raise ValueError("modules live over different algebras")
    if x.dim != y.dim:
        return None
    if x.vertex_of is not None and y.vertex_of is not None and x.vertex_dims() != y.vertex_dims():
        return None
    if x.dim == 0:
        return ModuleMap(x, y, RatMatrix.zeros(0, 0))
    hxy = hom_basis(x, y)
    if not hxy:
        return None
    hyx = hom_basis(y, x)
    if not hyx:
        return None
    for f in hxy:
        if f.matrix.is_invertible():
            return f
    for f in hxy:
        for g in hyx:
            # an invertible composite on either side forces f or g bijective
            if (g.matrix @ f.matrix).is_invertible():
                return f
            if (f.matrix @ g.matrix).is_invertible():
                return ModuleMap(x, y, g.matrix.inverse())
    rng = random.Random(seed)
    for bound in (1, 2, 5, 9):
        for _ in range(8):
            mat = _random_combination(hxy, rng, bound, y.dim, x.dim)
            if mat.is_invertible():
                return ModuleMap(x, y, mat)
    # deterministic negative certificate: with End(x) or End(y) local, an
    # isomorphism would make one of the pairwise composites above a unit
    if _end_top_dimension(x) == 1 or _end_top_dimension(y) == 1:
        return None
    return _match_decompositions(x, y, seed)


def _match_decompositions(x: ModuleRep, y: ModuleRep, seed: int) -> Optional[ModuleMap]:
    xs = _indecomposable_pieces(x, seed)
    ys = _indecomposable_pieces(y, seed)
    if len(xs) != len(ys):
        return None
    used = [False] * len(ys)
    total = RatMatrix.zeros(y.dim, x.dim)
    for piece, _, prj in xs:
        found = False
        for j, (ypiece, yinc, _) in enumerate(ys):
            if used[j]:
                continue
            iso = is_isomorphic(piece, ypiece, seed=seed)
            if iso is not None:
                used[j] = True
                total = total + (yinc.matrix @ (iso.matrix @ prj.matrix))
                found = True
                break
        if not found:
            return None
    if not total.is_invertible():
        # matched leafwise, but the assembled map must then be invertible
        raise AssertionError("Krull-Schmidt matching produced a singular map")
    return ModuleMap(x, y, total)


# -- endomorphism algebras -------------------------------------------------------


def end_algebra(x: ModuleRep, summands=None, seed: int = 0) -> AlgebraData:
    """End(x) as an AlgebraData with one idempotent per indecomposable summand.

    Multiplication is "apply first, then second": f*g = g o f, making x a
    right End(x)-module.  ``summands`` may supply the decomposition as
    (label, module, inclusion, projection) tuples; otherwise it is computed.
    Raises NotBasic when two summands are isomorphic.
    """
    if summands is None:
        pieces = _indecomposable_pieces(x, seed)
        summands = [(f"X{i}", m, inc, prj) for i, (m, inc, prj) in enumerate(pieces)]
    n = len(summands)
    for i in range(n):
        for j in range(i + 1, n):
            if is_isomorphic(summands[i][1], summands[j][1], seed=seed) is not None:
                raise NotBasic(f"summands {summands[i][0]} and {summands[j][0]} are isomorphic")
    mods = [s[1] for s in summands]
    # block Hom bases, with identity leading each diagonal block
    blocks: dict[tuple[int, int], list[RatMatrix]] = {}
    for i in range(n):
        for j in range(n):
            basis = [f.matrix for f in hom_basis(mods[i], mods[j])]
            if i == j:
                ident = RatMatrix.identity(mods[i].dim)
                sp = EchelonSpace(mods[i].dim ** 2)
                sp.add(_flatten(ident))
                newbasis = [ident]
                for b in basis:
                    if sp.add(_flatten(b)):
                        newbasis.append(b)
                if len(newbasis) != len(basis):
                    raise AssertionError("identity completion changed the End dimension")
                basis = newbasis
            blocks[(i, j)] = basis
    index: dict[tuple[int, int, int], int] = {}
    labels: list[str] = []
    grading_pairs: list[tuple[int, int]] = []
    for i in range(n):
        for j in range(n):
            for a in range(len(blocks[(i, j)])):
                index[(i, j, a)] = len(labels)
                if i == j and a == 0:
                    labels.append(f"e({summands[i][0]})")
                else:
                    labels.append(f"{summands[i][0]}>{summands[j][0]}.{a}")
                grading_pairs.append((i, j))
    dim = len(labels)
    # express all composable products in the block bases, one solve per target block
    solvers: dict[tuple[int, int], RatMatrix] = {}
    for (i, j), basis in blocks.items():
        if basis:
            solvers[(i, j)] = RatMatrix.from_columns(
                [_flatten(b) for b in basis], nrows=mods[j].dim * mods[i].dim
            )
    mult = [[() for _ in range(dim)] for _ in range(dim)]
    for i in range(n):
        for j in range(n):
            left = blocks[(i, j)]
            if not left:
                continue
            for l in range(n):
                right = blocks[(j, l)]
                if not right:
                    continue
                prods = []
                keys = []
                for a, f in enumerate(left):
                    for b, g in enumerate(right):
                        prods.append(_flatten(g @ f))
                        keys.append((index[(i, j, a)], index[(j, l, b)]))
                target = blocks[(i, l)]
                sol = None
                if target:
                    sol = solvers[(i, l)].solve(
                        RatMatrix.from_columns(prods, nrows=mods[l].dim * mods[i].dim)
                    )
                if sol is None:
                    if any(any(col) for col in prods):
                        raise AssertionError("composite left its Hom block")
                    continue
                for col, (bi, bj) in enumerate(keys):
                    entry = []
                    for c in range(len(target)):
                        val = sol.data[c][col]
                        if val:
                            entry.append((index[(i, l, c)], val))
                    mult[bi][bj] = tuple(entry)
    unit = [_ZERO] * dim
    idems = []
    for i in range(n):
        coords = [_ZERO] * dim
        coords[index[(i, i, 0)]] = _ONE
        unit[index[(i, i, 0)]] = _ONE
        idems.append((summands[i][0], coords))
    return AlgebraData(labels, mult, unit, idems, check=True)


# -- minimal right approximations -------------------------------------------------


def right_approximation(addset: Sequence[ModuleRep], x: ModuleRep) -> ModuleMap:
    """A minimal right add(addset)-approximation of x.

    The universal map from one copy of L per basis vector of Hom(L, x) is an
    approximation; source summands are then greedily dropped while the
    approximation property (surjectivity of Hom(L, source) -> Hom(L, x) for
    every L in the addset, by rank) survives, until no single summand can be
    dropped.
    """
    addset = list(addset)
    if not addset:
        raise ValueError("addset must be nonempty")
    a = x.algebra
    for l in addset:
        if l.algebra is not a:
            raise ValueError("addset modules live over a different algebra")
    hom_to_x = [hom_basis(l, x) for l in addset]
    copies: list[tuple[int, ModuleMap]] = []
    for li, homs in enumerate(hom_to_x):
        for phi in homs:
            copies.append((li, phi))
    if not copies:
        z = zero_module(a)
        return ModuleMap(z, x, RatMatrix.zeros(x.dim, 0))
    # flattened composites phi_c o h for every test module L and copy c
    hom_ll: dict[tuple[int, int], list[ModuleMap]] = {}
    for li in range(len(addset)):
        for lj in sorted({t for t, _ in copies}):
            if (li, lj) not in hom_ll:
                hom_ll[(li, lj)] = hom_basis(addset[li], addset[lj])
    composed: list[list[list[Fraction]]] = []  # composed[l][c] -> list of vectors
    for li, l in enumerate(addset):
        per_copy = []
        for ci, (ti, phi) in enumerate(copies):
            vecs = [_flatten(phi.matrix @ h.matrix) for h in hom_ll[(li, ti)]]
            per_copy.append(vecs)
        composed.append(per_copy)
    targets = [len(h) for h in hom_to_x]

    def is_approx(active: list[int]) -> bool:
        for li in range(len(addset)):
            need = targets[li]
            if need == 0:
                continue
            sp = EchelonSpace(x.dim * addset[li].dim)
            got = 0
            for c in active:
                for v in composed[li][c]:
                    if sp.add(v):
                        got += 1
                        if got == need:
                            break
                if got == need:
                    break
            if got < need:
                return False
        return True

    active = list(range(len(copies)))
    assert is_approx(active), "universal map failed the approximation property"
    changed = True
    while changed:
        changed = False
        for c in list(active):
            trial = [d for d in active if d != c]
            if is_approx(trial):
                active = trial
                changed = True
    kept = [copies[c] for c in active]
    if not kept:
        z = zero_module(a)
        return ModuleMap(z, x, RatMatrix.zeros(x.dim, 0))
    src, _, _ = direct_sum([addset[t] for t, _ in kept])
    g = hstack([phi.matrix for _, phi in kept])
    out = ModuleMap(src, x, g)
    out.source.extras["approximation_summands"] = [t for t, _ in kept]
    return out
