"""Exact sparse linear algebra over the rationals.

Everything downstream (normal forms, differential modules, Cech complexes,
pro-system certificates) reduces to ranks, kernels and canonical quotient
coordinates of sparse matrices with Fraction entries.  This module is the
only place elimination is implemented.

Key choices:

* Vectors are dicts mapping hashable, mutually comparable labels to nonzero
  Fractions.  Labels are ints or tuples; zero coefficients are never stored.
* Elimination keeps a forward echelon (one row per pivot, pivot = smallest
  label in the row, pivot coefficient 1) instead of a maintained RREF.
  Reducing a vector visits its labels in increasing order via a heap;
  subtracting a row only introduces labels larger than that row's pivot, so
  one pass terminates with a residual supported away from every pivot.  The
  residual is linear in the input and vanishes exactly on the row span,
  which makes it a canonical coordinate vector for the quotient by the span.
* All arithmetic is exact.  Coefficients are coerced to Fraction on entry so
  no int/int division can ever produce a float.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping, Sequence

Vec = dict  # label -> nonzero Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def vec_clean(v: Mapping) -> Vec:
    """Copy of ``v`` with coefficients coerced to Fraction and zeros dropped."""
    out = {}
    for k, c in v.items():
        c = Fraction(c)
        if c:
            out[k] = c
    return out


def vec_add(u: Mapping, v: Mapping) -> Vec:
    out = dict(u)
    for k, c in v.items():
        n = out.get(k, _ZERO) + c
        if n:
            out[k] = n
        else:
            out.pop(k, None)
    return out


def vec_sub(u: Mapping, v: Mapping) -> Vec:
    out = dict(u)
    for k, c in v.items():
        n = out.get(k, _ZERO) - c
        if n:
            out[k] = n
        else:
            out.pop(k, None)
    return out


def vec_scale(c, v: Mapping) -> Vec:
    c = Fraction(c)
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


class Echelon:
    """Forward echelon accumulator for Fraction vectors.

    With ``track=True`` every stored row also carries an expression of
    itself as a combination of the vectors originally passed in, keyed by
    the tags supplied to :meth:`add_for_dependency`; failed insertions then
    yield explicit linear dependencies (= kernel elements).
    """

    def __init__(self, track: bool = False):
        self._rows: dict = {}  # pivot label -> row (pivot coefficient 1)
        self._expr: dict = {}  # pivot label -> tag combination
        self._track = track

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> set:
        return set(self._rows)

    def rows(self) -> list:
        return [dict(self._rows[p]) for p in sorted(self._rows)]

    def reduce(self, vec: Mapping, _record: dict | None = None) -> Vec:
        """Canonical residual of ``vec`` modulo the row span.

        Linear in ``vec``; zero exactly on the span; the identity on vectors
        supported away from the pivots.
        """
        v = vec_clean(vec)
        heap = list(v)
        heapq.heapify(heap)
        seen = set()
        while heap:
            k = heapq.heappop(heap)
            if k in seen:
                continue
            seen.add(k)
            c = v.get(k)
            if not c:
                continue
            row = self._rows.get(k)
            if row is None:
                continue
            if _record is not None:
                _record[k] = _record.get(k, _ZERO) + c
            for kk, cc in row.items():
                n = v.get(kk, _ZERO) - c * cc
                if n:
                    v[kk] = n
                    if kk not in seen:
                        heapq.heappush(heap, kk)
                else:
                    v.pop(kk, None)
        return v

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)

    def _combine(self, base: dict, record: dict) -> dict:
        out = dict(base)
        for p, t in record.items():
            for tg, c in self._expr[p].items():
                n = out.get(tg, _ZERO) - t * c
                if n:
                    out[tg] = n
                else:
                    out.pop(tg, None)
        return out

    def add(self, vec: Mapping) -> bool:
        """Insert ``vec``; True iff the rank grew."""
        res = self.reduce(vec)
        if not res:
            return False
        self._store(res)
        return True

    def add_for_dependency(self, vec: Mapping, tag: Hashable) -> dict | None:
        """Insert ``vec`` under ``tag`` (tracking mode only).

        Returns None when the rank grew.  Otherwise returns a dict ``dep``
        with ``dep[tag] == 1`` and ``sum(dep[t] * vector(t)) == 0`` over the
        previously inserted vectors.
        """
        assert self._track, "Echelon created without track=True"
        record: dict = {}
        res = self.reduce(vec, record)
        if not res:
            return self._combine({tag: _ONE}, record)
        lead = res[min(res)]
        expr = self._combine({tag: _ONE}, record)
        self._expr[min(res)] = {tg: c / lead for tg, c in expr.items()}
        self._store(res)
        return None

    def _store(self, res: Vec) -> None:
        p = min(res)
        lead = res[p]
        self._rows[p] = {k: c / lead for k, c in res.items()}


def span_rank(vectors: Iterable[Mapping]) -> int:
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return ech.rank


def express_in_span(vectors: Sequence[Mapping], target: Mapping) -> list | None:
    """Coefficients c with ``target == sum(c[i] * vectors[i])``, or None."""
    ech = Echelon(track=True)
    for i, v in enumerate(vectors):
        ech.add_for_dependency(v, tag=i)
    dep = ech.add_for_dependency(target, tag="target")
    if dep is None:  # target grew the span
        return None
    return [-dep.get(i, _ZERO) for i in range(len(vectors))]


def column_dependencies(columns: Sequence[Mapping]) -> list[Vec]:
    """Right-kernel basis of the matrix whose columns are given.

    Each returned dict maps column index -> coefficient; the corresponding
    combination of columns is zero.  Rank-nullity holds by construction and
    is asserted.
    """
    ech = Echelon(track=True)
    deps = []
    for j, col in enumerate(columns):
        dep = ech.add_for_dependency(col, tag=j)
        if dep is not None:
            deps.append(dep)
    assert len(deps) + ech.rank == len(columns)
    return deps


def mat_rank(rows: Sequence[Mapping]) -> int:
    return span_rank(rows)


def mat_transpose(rows: Sequence[Mapping]) -> list[Vec]:
    """Transpose of a list of int-keyed row dicts (result keyed by row index)."""
    cols: dict = {}
    for i, row in enumerate(rows):
        for j, c in row.items():
            cols.setdefault(j, {})[i] = Fraction(c)
    return [cols[j] for j in sorted(cols)]


class VectorSpaceWithBasis:
    """Finite-dimensional rational space with a fixed ordered basis of labels."""

    def __init__(self, labels: Iterable[Hashable]):
        self.labels = list(labels)
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self.index) != len(self.labels):
            raise ValueError("duplicate basis label")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def vector(self, coeffs: Mapping) -> Vec:
        """Label-keyed coefficients -> index-keyed vector."""
        out = {}
        for lab, c in coeffs.items():
            c = Fraction(c)
            if c:
                out[self.index[lab]] = c
        return out

    def basis_vector(self, lab: Hashable) -> Vec:
        return {self.index[lab]: _ONE}

    def unvector(self, vec: Mapping) -> dict:
        return {self.labels[i]: Fraction(c) for i, c in vec.items() if c}


class LinearMap:
    """Linear map between based spaces, stored as basis images (index-keyed)."""

    def __init__(self, domain: VectorSpaceWithBasis, codomain: VectorSpaceWithBasis,
                 images: Sequence[Mapping]):
        if len(images) != domain.dim:
            raise ValueError("need one image per domain basis vector")
        self.domain = domain
        self.codomain = codomain
        self.images = [vec_clean(v) for v in images]

    @classmethod
    def from_label_images(cls, domain: VectorSpaceWithBasis,
                          codomain: VectorSpaceWithBasis,
                          image_of: Callable[[Hashable], Mapping]) -> "LinearMap":
        return cls(domain, codomain,
                   [codomain.vector(image_of(lab)) for lab in domain.labels])

    def apply(self, vec: Mapping) -> Vec:
        out: Vec = {}
        for i, c in vec.items():
            if not c:
                continue
            for j, x in self.images[i].items():
                n = out.get(j, _ZERO) + c * x
                if n:
                    out[j] = n
                else:
                    out.pop(j, None)
        return out

    def rank(self) -> int:
        return span_rank(self.images)

    def kernel(self) -> list[Vec]:
        """Basis of the kernel as index-keyed domain vectors."""
        return column_dependencies(self.images)

    def image_echelon(self) -> Echelon:
        ech = Echelon()
        for v in self.images:
            ech.add(v)
        return ech

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self o other (apply ``other`` first)."""
        if other.codomain.labels != self.domain.labels:
            raise ValueError("composition shape mismatch")
        return LinearMap(other.domain, self.codomain,
                         [self.apply(v) for v in other.images])

    def is_zero(self) -> bool:
        return all(not v for v in self.images)


class QuotientSpace:
    """Quotient of a based space by a subspace, with canonical coordinates.

    The coordinates live on the ambient basis labels that are not pivots of
    the subspace echelon; the reduction residual is the coordinate map.  The
    class of an ambient basis vector e_lab with lab a coordinate label is
    the coordinate basis vector at lab, so coordinate labels double as lifts.
    """

    def __init__(self, ambient: VectorSpaceWithBasis, subspace_vectors: Iterable[Mapping]):
        self.ambient = ambient
        self._ech = Echelon()
        for v in subspace_vectors:
            self._ech.add(v)
        piv = self._ech.pivots
        self._coord_indices = [i for i in range(ambient.dim) if i not in piv]
        self._slot = {i: s for s, i in enumerate(self._coord_indices)}
        self.coord_labels = [ambient.labels[i] for i in self._coord_indices]
        self._space: VectorSpaceWithBasis | None = None

    @property
    def dim(self) -> int:
        return len(self._coord_indices)

    def space(self) -> VectorSpaceWithBasis:
        """The quotient as a based space on the coordinate labels."""
        if self._space is None:
            self._space = VectorSpaceWithBasis(self.coord_labels)
        return self._space

    def project(self, vec: Mapping) -> Vec:
        """Canonical ambient representative (residual) of the class of ``vec``."""
        return self._ech.reduce(vec)

    def class_of(self, vec: Mapping) -> Vec:
        """Class of an ambient vector, index-keyed in :meth:`space`."""
        return {self._slot[i]: c for i, c in self.project(vec).items()}

    def is_zero_class(self, vec: Mapping) -> bool:
        return not self._ech.reduce(vec)


def induced_quotient_map(qdom: QuotientSpace, qcod: QuotientSpace,
                         ambient_apply: Callable[[Vec], Mapping]) -> LinearMap:
    """Map on quotients induced by ``ambient_apply`` on ambient vectors.

    Well-definedness (subspace mapping into subspace) is the caller's
    responsibility; coordinate labels are used as lifts.
    """
    dom = qdom.space()
    cod = qcod.space()
    images = []
    for lab in dom.labels:
        out = ambient_apply(qdom.ambient.basis_vector(lab))
        images.append(qcod.class_of(out))
    return LinearMap(dom, cod, images)
