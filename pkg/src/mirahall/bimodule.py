"""Two-sided module over the rank-bounded Hall algebra, spanned by
pair labels, with the transition table of its cyclic basis.

The left action of a shape inserts an invariant subspace below the
marked vector's line of sight (the vector survives on the quotient);
the right action inserts one containing the vector.  Both are computed
through the square-zero generator decomposition, with the directly
counted tables as the independent check.

`pi_table` normalises the cyclic basis into the transition table whose
entries are the polynomials the rest of the package consumes; the
calibration sign is the parity of codimension differences.
"""

from __future__ import annotations

import json
from functools import lru_cache
from typing import Mapping

from . import pairs
from .errors import DiagonalNotUnit, NotInTable, OracleMismatch, RankTooSmall
from .hall import HallElt, _gen_decomposition, c_expand
from .laurent import LaurentPoly
from .partitions import (
    Bipartition,
    Partition,
    add_parts,
    ah_leq,
    bipartitions_of,
    contains_diagram,
    pair_codim,
    pair_orbit_dim,
    trim,
)


def _norm_label(bp: Bipartition) -> Bipartition:
    return (trim(bp[0]), trim(bp[1]))


class MirElt:
    """Formal combination of pair labels with Laurent coefficients."""

    __slots__ = ("rank", "_c")

    def __init__(self, rank: int, coeffs=None):
        if rank < 1:
            raise ValueError("rank must be positive")
        self.rank = rank
        c: dict[Bipartition, LaurentPoly] = {}
        for bp, val in (coeffs or {}).items():
            bp = _norm_label(bp)
            if len(add_parts(*bp)) > rank:
                continue
            if isinstance(val, int):
                val = LaurentPoly.from_int(val)
            val = c.get(bp, LaurentPoly.zero()) + val
            if val.is_zero():
                c.pop(bp, None)
            else:
                c[bp] = val
        self._c = c

    @classmethod
    def zero(cls, rank: int) -> "MirElt":
        return cls(rank)

    def is_zero(self) -> bool:
        return not self._c

    def coeff(self, bp: Bipartition) -> LaurentPoly:
        return self._c.get(_norm_label(bp), LaurentPoly.zero())

    def items(self) -> list[tuple[Bipartition, LaurentPoly]]:
        return sorted(self._c.items(), reverse=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MirElt):
            return NotImplemented
        return self.rank == other.rank and self._c == other._c

    def __hash__(self):
        return hash((self.rank, frozenset(self._c.items())))

    def __add__(self, other: "MirElt") -> "MirElt":
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        out = dict(self._c)
        for k, a in other._c.items():
            out[k] = out.get(k, LaurentPoly.zero()) + a
        return MirElt(self.rank, out)

    def __sub__(self, other: "MirElt") -> "MirElt":
        return self + (-1) * other

    def __mul__(self, scalar):
        if isinstance(scalar, int):
            scalar = LaurentPoly.from_int(scalar)
        if not isinstance(scalar, LaurentPoly):
            return NotImplemented
        return MirElt(self.rank, {k: a * scalar for k, a in self._c.items()})

    __rmul__ = __mul__

    def __repr__(self):
        if self.is_zero():
            return "MirElt(0)"
        bits = [f"{k}:{a.pretty()}" for k, a in self.items()]
        return "MirElt(" + " + ".join(bits) + ")"

    def to_json(self) -> str:
        terms = [
            {"label": [list(bp[0]), list(bp[1])], "coeff": coeff.items()}
            for bp, coeff in self.items()
        ]
        return json.dumps({"rank": self.rank, "terms": terms})


def u_bip(bp: Bipartition, rank: int) -> MirElt:
    return MirElt(rank, {_norm_label(bp): 1})


def vacuum(rank: int) -> MirElt:
    return u_bip(((), ()), rank)


def gen_act(side: str, r: int, m: MirElt) -> MirElt:
    """Action of the square-zero element of rank r on one side."""
    if side not in ("left", "right"):
        raise ValueError(f"side {side!r}")
    if r < 0:
        raise ValueError("negative rank")
    if r == 0:
        return m
    if r > m.rank:
        return MirElt.zero(m.rank)
    table = (
        pairs.left_elementary_constants
        if side == "left"
        else pairs.right_elementary_constants
    )
    out = MirElt.zero(m.rank)
    for src, cs in m._c.items():
        n = pairs.label_size(src) + r
        terms: dict[Bipartition, LaurentPoly] = {}
        for tgt in bipartitions_of(n):
            nu = add_parts(*tgt)
            if len(nu) > m.rank:
                continue
            if not contains_diagram(add_parts(*src), nu):
                continue
            g = table(tgt, r).get(src)
            if g is not None:
                terms[tgt] = cs * g.to_laurent()
        out = out + MirElt(m.rank, terms)
    return out


def act(side: str, a: HallElt, m: MirElt) -> MirElt:
    """Module action via the generator decomposition of the operator."""
    if a.rank != m.rank:
        raise ValueError("rank mismatch")
    out = MirElt.zero(m.rank)
    for w, cw in a._c.items():
        for cols, cf in _gen_decomposition(w, a.rank).items():
            term = m
            if side == "left":
                for r in reversed(cols):
                    term = gen_act("left", r, term)
            else:
                for r in cols:
                    term = gen_act("right", r, term)
            out = out + (cw * cf) * term
    return out


def act_direct(side: str, a: HallElt, m: MirElt) -> MirElt:
    """Action by the directly counted tables, one pair of basis
    elements at a time.  Test oracle."""
    if a.rank != m.rank:
        raise ValueError("rank mismatch")
    out = MirElt.zero(m.rank)
    for w, cw in a._c.items():
        for src, cs in m._c.items():
            n = pairs.label_size(src) + sum(w)
            terms: dict[Bipartition, LaurentPoly] = {}
            for tgt in bipartitions_of(n):
                if len(add_parts(*tgt)) > m.rank:
                    continue
                if side == "left":
                    g = pairs.left_constants(tgt, sum(w)).get((w, src))
                else:
                    g = pairs.right_constants(tgt, pairs.label_size(src)).get(
                        (src, w)
                    )
                if g is not None:
                    terms[tgt] = cw * cs * g.to_laurent()
            out = out + MirElt(m.rank, terms)
    return out


@lru_cache(maxsize=None)
def c_bipartition(lam: Partition, mu: Partition, rank: int) -> MirElt:
    """Cyclic basis: signed-Kostka operators applied to the vacuum on
    both sides."""
    lam, mu = trim(lam), trim(mu)
    if len(lam) > rank or len(mu) > rank:
        raise RankTooSmall(f"label ({lam}, {mu}) needs more than {rank} rows")
    right = act("right", c_expand(mu, rank), vacuum(rank))
    return act("left", c_expand(lam, rank), right)


def _labels(n: int, rank: int) -> tuple[Bipartition, ...]:
    return tuple(
        bp for bp in bipartitions_of(n) if len(add_parts(*bp)) <= rank
    )


class PiTable:
    """Calibrated transition table at one size, rows and columns in the
    interleaved descending order."""

    __slots__ = ("n", "N", "order", "raw", "calibrated", "diag_units")

    def __init__(self, n, N, order, raw, calibrated, diag_units):
        self.n = n
        self.N = N
        self.order = order
        self.raw = raw
        self.calibrated = calibrated
        self.diag_units = diag_units

    @property
    def rank(self) -> int:
        return self.N

    def value(self, row: Bipartition, col: Bipartition) -> LaurentPoly:
        row, col = _norm_label(row), _norm_label(col)
        if row not in self.order or col not in self.order:
            raise NotInTable(f"{row} or {col} not at size {self.n}, rank {self.N}")
        return self.calibrated.get((row, col), LaurentPoly.zero())

    def raw_value(self, row: Bipartition, col: Bipartition) -> LaurentPoly:
        row, col = _norm_label(row), _norm_label(col)
        if row not in self.order or col not in self.order:
            raise NotInTable(f"{row} or {col} not at size {self.n}, rank {self.N}")
        return self.raw.get((row, col), LaurentPoly.zero())

    def to_json(self) -> str:
        label = lambda bp: [list(bp[0]), list(bp[1])]
        cells = lambda table: [
            {"row": label(r), "col": label(c), "coeff": val.items()}
            for (r, c), val in sorted(table.items(), reverse=True)
        ]
        return json.dumps(
            {
                "n": self.n,
                "N": self.N,
                "order": [label(bp) for bp in self.order],
                "raw": cells(self.raw),
                "calibrated": cells(self.calibrated),
                "diag_units": [
                    {"col": label(c), "unit": u.items()}
                    for c, u in sorted(self.diag_units.items(), reverse=True)
                ],
            }
        )


@lru_cache(maxsize=None)
def pi_table(n: int, rank: int) -> PiTable:
    """Normalise the cyclic basis: scale row coefficients by signed
    powers of v matching orbit dimensions, divide out the diagonal,
    and apply the codimension parity calibration."""
    order = _labels(n, rank)
    raw: dict[tuple[Bipartition, Bipartition], LaurentPoly] = {}
    cal: dict[tuple[Bipartition, Bipartition], LaurentPoly] = {}
    units: dict[Bipartition, LaurentPoly] = {}
    for col in order:
        vec = c_bipartition(col[0], col[1], rank)
        for row in vec._c:
            if not ah_leq(row, col):
                raise OracleMismatch(
            f"cyclic vector of {col} has weight at {row} outside the cone"
                )
        e = sum(col[0])
        diag_want = LaurentPoly.v_power(e, -1 if e % 2 else 1)
        ell = pair_orbit_dim(col, rank)
        diag_got = vec.coeff(col) * LaurentPoly.v_power(
            ell, -1 if ell % 2 else 1
        )
        if diag_got != diag_want:
            raise DiagonalNotUnit(
                f"diagonal at {col}: {diag_got.pretty()} != {diag_want.pretty()}"
            )
        units[col] = diag_want
        inv = diag_want**-1
        for row, coeff in vec._c.items():
            ell_r = pair_orbit_dim(row, rank)
            r = coeff * LaurentPoly.v_power(ell_r, -1 if ell_r % 2 else 1) * inv
            raw[(row, col)] = r
            sign = (pair_codim(row) - pair_codim(col)) % 2
            cal[(row, col)] = r * (-1 if sign else 1)
    return PiTable(n, rank, order, raw, cal, units)


class TensorSym:
    """Combination of pairs of shapes, read as a two-sided Schur
    expansion."""

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        c: dict[Bipartition, LaurentPoly] = {}
        for bp, val in (coeffs or {}).items():
            bp = _norm_label(bp)
            if isinstance(val, int):
                val = LaurentPoly.from_int(val)
            val = c.get(bp, LaurentPoly.zero()) + val
            if val.is_zero():
                c.pop(bp, None)
            else:
                c[bp] = val
        self._c = c

    def coeff(self, bp: Bipartition) -> LaurentPoly:
        return self._c.get(_norm_label(bp), LaurentPoly.zero())

    def items(self):
        return sorted(self._c.items(), reverse=True)

    def is_zero(self) -> bool:
        return not self._c

    def __eq__(self, other):
        if not isinstance(other, TensorSym):
            return NotImplemented
        return self._c == other._c

    def __add__(self, other: "TensorSym") -> "TensorSym":
        out = dict(self._c)
        for k, a in other._c.items():
            out[k] = out.get(k, LaurentPoly.zero()) + a
        return TensorSym(out)

    def __sub__(self, other: "TensorSym") -> "TensorSym":
        return self + (-1) * other

    def __mul__(self, scalar):
        if isinstance(scalar, int):
            scalar = LaurentPoly.from_int(scalar)
        if not isinstance(scalar, LaurentPoly):
            return NotImplemented
        return TensorSym({k: a * scalar for k, a in self._c.items()})

    __rmul__ = __mul__

    def __repr__(self):
        bits = [f"{k}:{a.pretty()}" for k, a in self.items()] or ["0"]
        return "TensorSym(" + " + ".join(bits) + ")"


@lru_cache(maxsize=None)
def _basis_in_tensor(n: int, rank: int) -> Mapping[Bipartition, TensorSym]:
    """Each pair label of size n written in the two-sided Schur basis,
    by inverting the triangular cyclic system."""
    order = _labels(n, rank)
    columns = {
        col: c_bipartition(col[0], col[1], rank) for col in order
    }
    e = (rank - 1) * n
    c_image = LaurentPoly.v_power(-e, -1 if e % 2 else 1)
    out: dict[Bipartition, TensorSym] = {}
    for i in range(len(order) - 1, -1, -1):
        col = order[i]
        vec = columns[col]
        diag = vec.coeff(col)
        if not diag.is_unit_monomial():
            raise DiagonalNotUnit(f"cyclic diagonal at {col}")
        total = TensorSym({col: c_image})
        for row, coeff in vec._c.items():
            if row == col:
                continue
            total = total - coeff * out[row]
        out[col] = diag**-1 * total
    return out


def basis_in_tensor(bp: Bipartition, rank: int) -> TensorSym:
    bp = _norm_label(bp)
    n = pairs.label_size(bp)
    table = _basis_in_tensor(n, rank)
    if bp not in table:
        raise NotInTable(f"{bp} exceeds rank {rank}")
    return table[bp]


def mhl_poly(bp: Bipartition, rank: int) -> tuple[TensorSym, LaurentPoly]:
    """Two-sided deformed polynomial of a pair label.

    Returns the tensor image of the basis element together with the signed
    codimension power as a separate prefactor, left unmultiplied so callers
    can specialize either part on its own."""
    bp = _norm_label(bp)
    if rank < pairs.label_size(bp):
        raise RankTooSmall(f"label {bp} needs rank >= {pairs.label_size(bp)}")
    b = pair_codim(bp)
    return basis_in_tensor(bp, rank), LaurentPoly.v_power(b, -1 if b % 2 else 1)
