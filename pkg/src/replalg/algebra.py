"""Finite-dimensional associative algebras given by structure constants.

An :class:`AlgebraData` is a labelled basis, a sparse multiplication table,
the coordinates of 1, and a complete set of primitive orthogonal
idempotents.  Associativity, the unit law and the idempotent axioms are
checked exhaustively at construction; primitivity of the idempotents is
checked lazily because it needs the radical.

Most algebras built here are *graded*: every basis element b satisfies
e_u b e_v = b for a unique pair of idempotents.  The grading table drives
the block decompositions used throughout the module layer.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .errors import NonSplitSimple
from .linalg import EchelonSpace, RatMatrix

_ZERO = Fraction(0)
_ONE = Fraction(1)

# sparse product: tuple of (basis index, coefficient)
SparseVec = tuple[tuple[int, Fraction], ...]


def _to_sparse(pairs) -> SparseVec:
    return tuple((int(k), c if type(c) is Fraction else Fraction(c)) for k, c in pairs if c)


def _sparse_of_dense(vec: Sequence[Fraction]) -> SparseVec:
    return tuple((i, c) for i, c in enumerate(vec) if c)


class AlgebraData:
    """Associative unital algebra over Q with chosen primitive idempotents."""

    __slots__ = (
        "labels", "dim", "mult", "unit", "idempotents",
        "grading", "_radical", "_opposite", "_split_basic",
        "_simple_cache", "_proj_cache", "_inj_cache",
    )

    def __init__(
        self,
        labels: Sequence[str],
        mult: Sequence[Sequence],
        unit: Sequence,
        idempotents: Sequence[tuple[str, Sequence]],
        check: bool = True,
    ):
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        if len(mult) != self.dim or any(len(row) != self.dim for row in mult):
            raise ValueError("multiplication table shape mismatch")
        self.mult: list[list[SparseVec]] = [[_to_sparse(cell) for cell in row] for row in mult]
        self.unit = tuple(x if type(x) is Fraction else Fraction(x) for x in unit)
        self.idempotents = tuple(
            (lab, tuple(x if type(x) is Fraction else Fraction(x) for x in coords))
            for lab, coords in idempotents
        )
        self._radical = None
        self._opposite = None
        self._split_basic: Optional[bool] = None
        self._simple_cache = {}
        self._proj_cache = {}
        self._inj_cache = {}
        self.grading = self._compute_grading()
        if check:
            self._check_axioms()

    # -- multiplication -------------------------------------------------

    def mult_sparse(self, x: SparseVec, y: SparseVec) -> SparseVec:
        acc: dict[int, Fraction] = {}
        mult = self.mult
        for i, ci in x:
            row = mult[i]
            for j, cj in y:
                c = ci * cj
                for k, ck in row[j]:
                    v = acc.get(k, _ZERO) + c * ck
                    if v:
                        acc[k] = v
                    elif k in acc:
                        del acc[k]
        return tuple(sorted(acc.items()))

    def mult_coords(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> list[Fraction]:
        out = [_ZERO] * self.dim
        for k, c in self.mult_sparse(_sparse_of_dense(x), _sparse_of_dense(y)):
            out[k] = c
        return out

    def dense(self, sparse: SparseVec) -> list[Fraction]:
        out = [_ZERO] * self.dim
        for k, c in sparse:
            out[k] = c
        return out

    def left_mult_matrix(self, x: Sequence[Fraction]) -> RatMatrix:
        """Matrix of y -> x*y on coordinate columns."""
        sx = _sparse_of_dense(x)
        cols = []
        for j in range(self.dim):
            cols.append(self.dense(self.mult_sparse(sx, ((j, _ONE),))))
        return RatMatrix.from_columns(cols, nrows=self.dim)

    def right_mult_matrix(self, x: Sequence[Fraction]) -> RatMatrix:
        """Matrix of y -> y*x on coordinate columns."""
        sx = _sparse_of_dense(x)
        cols = []
        for j in range(self.dim):
            cols.append(self.dense(self.mult_sparse(((j, _ONE),), sx)))
        return RatMatrix.from_columns(cols, nrows=self.dim)

    # -- construction checks ---------------------------------------------

    def _compute_grading(self) -> Optional[list[tuple[int, int]]]:
        """(u, v) per basis element with e_u b e_v = b, or None if not graded."""
        table = []
        idem_sparse = [_sparse_of_dense(coords) for _, coords in self.idempotents]
        for b in range(self.dim):
            sb: SparseVec = ((b, _ONE),)
            left = right = -1
            for u, e in enumerate(idem_sparse):
                if self.mult_sparse(e, sb) == sb:
                    if left >= 0:
                        return None
                    left = u
            for v, e in enumerate(idem_sparse):
                if self.mult_sparse(sb, e) == sb:
                    if right >= 0:
                        return None
                    right = v
            if left < 0 or right < 0:
                return None
            table.append((left, right))
        return table

    def _check_axioms(self) -> None:
        dim = self.dim
        unit_sparse = _sparse_of_dense(self.unit)
        for j in range(dim):
            sj: SparseVec = ((j, _ONE),)
            if self.mult_sparse(unit_sparse, sj) != sj or self.mult_sparse(sj, unit_sparse) != sj:
                raise ValueError(f"unit law fails on basis element {self.labels[j]}")
        # idempotent system
        idem = [_sparse_of_dense(coords) for _, coords in self.idempotents]
        total = [_ZERO] * dim
        for (lab, coords), e in zip(self.idempotents, idem):
            if self.mult_sparse(e, e) != e:
                raise ValueError(f"idempotent {lab} is not idempotent")
            for k, c in enumerate(coords):
                total[k] += c
        if tuple(total) != self.unit:
            raise ValueError("idempotents do not sum to the unit")
        for a in range(len(idem)):
            for b in range(len(idem)):
                if a != b and self.mult_sparse(idem[a], idem[b]):
                    raise ValueError("idempotents are not orthogonal")
        self._check_associativity()

    def _check_associativity(self) -> None:
        dim = self.dim
        mult = self.mult
        if self.grading is not None:
            # soundness of the triple pruning below needs homogeneous products
            for i in range(dim):
                for j in range(dim):
                    expected = (self.grading[i][0], self.grading[j][1])
                    for k, _c in mult[i][j]:
                        if self.grading[k] != expected:
                            raise ValueError("product expansion is not grading-homogeneous")
            # only grading-composable triples can be nonzero on either side
            by_left: dict[int, list[int]] = {}
            for j, (u, _v) in enumerate(self.grading):
                by_left.setdefault(u, []).append(j)
            for i in range(dim):
                iv = self.grading[i][1]
                js = by_left.get(iv, [])
                for j in js:
                    pij = mult[i][j]
                    jv = self.grading[j][1]
                    for k in by_left.get(jv, []):
                        if self.mult_sparse(pij, ((k, _ONE),)) != self.mult_sparse(((i, _ONE),), mult[j][k]):
                            raise ValueError(
                                f"associativity fails on ({self.labels[i]}, {self.labels[j]}, {self.labels[k]})"
                            )
            # cross-grading products must vanish identically
            for i in range(dim):
                iv = self.grading[i][1]
                for j in range(dim):
                    if self.grading[j][0] != iv and mult[i][j]:
                        raise ValueError("graded product does not vanish across idempotents")
            return
        for i in range(dim):
            for j in range(dim):
                pij = mult[i][j]
                for k in range(dim):
                    pjk = mult[j][k]
                    if not pij and not pjk:
                        continue
                    if self.mult_sparse(pij, ((k, _ONE),)) != self.mult_sparse(((i, _ONE),), pjk):
                        raise ValueError(
                            f"associativity fails on ({self.labels[i]}, {self.labels[j]}, {self.labels[k]})"
                        )

    # -- radical ---------------------------------------------------------

    def radical_basis(self) -> list[list[Fraction]]:
        """Basis of the Jacobson radical (char-0 trace-form criterion).

        rad = { x : trace(L_{x y}) = 0 for all basis y }, then verified to be
        a nilpotent two-sided ideal with semisimple quotient.
        """
        if self._radical is not None:
            return self._radical
        dim = self.dim
        # trace of left multiplication by each basis element
        trL = []
        for k in range(dim):
            t = _ZERO
            row = self.mult[k]
            for j in range(dim):
                for l, c in row[j]:
                    if l == j:
                        t += c
            trL.append(t)
        gram = RatMatrix(dim, dim, [
            [sum((c * trL[k] for k, c in self.mult[i][j]), _ZERO) for j in range(dim)]
            for i in range(dim)
        ])
        rad = [gram.kernel_basis().column_vec(j) for j in range(dim - gram.rank())]
        self._verify_radical(rad)
        self._radical = rad
        return rad

    def _verify_radical(self, rad: list[list[Fraction]]) -> None:
        dim = self.dim
        span = EchelonSpace(dim)
        for v in rad:
            span.add(v)
        # two-sided ideal
        for v in rad:
            sv = _sparse_of_dense(v)
            for j in range(dim):
                sj: SparseVec = ((j, _ONE),)
                if not span.contains(self.dense(self.mult_sparse(sv, sj))):
                    raise ValueError("radical candidate is not a right ideal")
                if not span.contains(self.dense(self.mult_sparse(sj, sv))):
                    raise ValueError("radical candidate is not a left ideal")
        # nilpotent: powers must vanish within dim steps
        current = [list(v) for v in rad]
        for _ in range(dim + 1):
            if not current:
                break
            nxt = EchelonSpace(dim)
            for v in current:
                sv = _sparse_of_dense(v)
                for w in rad:
                    prod = self.dense(self.mult_sparse(sv, _sparse_of_dense(w)))
                    nxt.add(prod)
            current = [list(r) for r in nxt.rows]
        else:
            raise ValueError("radical candidate is not nilpotent")
        if current:
            raise ValueError("radical candidate is not nilpotent")
        self._verify_semisimple_quotient(span)

    def _verify_semisimple_quotient(self, radspan: EchelonSpace) -> None:
        """The quotient by the radical must have zero trace-form kernel."""
        dim = self.dim
        pivset = set(radspan.pivots)
        comp = [j for j in range(dim) if j not in pivset]
        if not comp:
            return
        def reduce(vec):
            return radspan._reduce(vec)
        # quotient structure constants in the complement coordinates
        qdim = len(comp)
        qmult = [[None] * qdim for _ in range(qdim)]
        for a, i in enumerate(comp):
            for b, j in enumerate(comp):
                prod = reduce(self.dense(self.mult[i][j]))
                qmult[a][b] = [prod[c] for c in comp]
        trL = []
        for k in range(qdim):
            trL.append(sum((qmult[k][j][j] for j in range(qdim)), _ZERO))
        gram = RatMatrix(qdim, qdim, [
            [sum((qmult[i][j][k] * trL[k] for k in range(qdim)), _ZERO) for j in range(qdim)]
            for i in range(qdim)
        ])
        if gram.rank() != qdim:
            raise ValueError("quotient by radical candidate is not semisimple")

    def radical_span(self) -> EchelonSpace:
        span = EchelonSpace(self.dim)
        for v in self.radical_basis():
            span.add(v)
        return span

    # -- split-basic certificate ------------------------------------------

    def ensure_split_basic(self) -> None:
        """Check every e_i (A/rad) e_i is one-dimensional; raise NonSplitSimple.

        Over Q this is what makes tops sums of the chosen simples, covers
        correct, and the idempotents primitive.
        """
        if self._split_basic:
            return
        radspan = self.radical_span()
        for lab, coords in self.idempotents:
            se = _sparse_of_dense(coords)
            corner = EchelonSpace(self.dim)
            for j in range(self.dim):
                v = self.mult_sparse(se, self.mult_sparse(((j, _ONE),), se))
                corner.add(radspan._reduce(self.dense(v)))
            if corner.rank != 1:
                raise NonSplitSimple(
                    f"e({lab}) (A/rad) e({lab}) has dimension {corner.rank}, not 1"
                )
        self._split_basic = True

    # -- opposite ----------------------------------------------------------

    def opposite(self) -> "AlgebraData":
        """Same basis with reversed multiplication; involutive on the nose."""
        if self._opposite is not None:
            return self._opposite
        op = AlgebraData(
            self.labels,
            [[self.mult[j][i] for j in range(self.dim)] for i in range(self.dim)],
            self.unit,
            self.idempotents,
            check=False,
        )
        op._opposite = self
        self._opposite = op
        return op

    def idempotent_index(self, label: str) -> int:
        for i, (lab, _) in enumerate(self.idempotents):
            if lab == label:
                return i
        raise KeyError(label)

    def __repr__(self) -> str:
        return f"AlgebraData(dim={self.dim}, idempotents={len(self.idempotents)})"
