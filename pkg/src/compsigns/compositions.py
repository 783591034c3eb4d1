"""Composition polynomials and everything built directly on them.

A part-set A yields, for each n, the polynomial f_n whose coefficient of
t^i counts the compositions of n into exactly i parts from A (ordered
tuples).  This module builds those polynomial tables, the plain counts
c_A(n), partition counts, the rational q-series f(x)/(x f'(x)), and an
exact verifier for the algebraic identities tying them together.

Identity checks run in one of two modes.  The default "eval" mode
evaluates both sides at enough integer points to pin down polynomials of
the degrees involved (n+1 points determine a degree-n polynomial), which
keeps the inner loops on fast integer kernels and is still an exact
proof.  The "coeff" mode compares coefficient vectors directly; it is
slower but localizes a mismatch, so "eval" falls back to it to report
the exact differing coefficient when a check fails.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import sets
from ._backend import comp_poly_rows, conv_trunc, delta_eval_table, eval_table
from .poly import IntPoly, RatSeries, delta_op, series_inverse, series_mul
from .sets import SetSpec, SpecError

IDENTITY_NAMES = ("recurrence_weight", "reflection", "parity", "delta_q", "delta_self")


@dataclass(frozen=True)
class CompPolyTable:
    """Immutable table of composition polynomials f_0 .. f_upto."""

    set: SetSpec
    upto: int
    polys: tuple[IntPoly, ...]

    def __getitem__(self, n: int) -> IntPoly:
        return self.polys[n]

    def count(self, n: int) -> int:
        """Total number of compositions of n (all part counts)."""
        return self.polys[n](1)

    def by_parts(self, i: int, n: int) -> int:
        """Number of compositions of n into exactly i parts."""
        if i < 0:
            raise ValueError("part count must be non-negative")
        coeffs = self.polys[n].coeffs
        return coeffs[i] if i < len(coeffs) else 0


def comp_polys(spec: SetSpec, upto: int) -> CompPolyTable:
    """Build the composition-polynomial table for n = 0 .. upto."""
    members = spec.members_up_to(upto)
    rows = comp_poly_rows(members, upto)
    return CompPolyTable(spec, upto, tuple(IntPoly(tuple(r)) for r in rows))


def comp_counts(spec: SetSpec, upto: int) -> list[int]:
    """Counts c(n) for n = 0 .. upto, without building polynomials."""
    members = spec.members_up_to(upto)
    return eval_table(members, upto, 1)


def comp_by_parts(spec: SetSpec, i: int, n: int) -> int:
    """Number of compositions of n into exactly i parts of the set."""
    if i < 0:
        raise ValueError("part count must be non-negative")
    rows = comp_poly_rows(spec.members_up_to(n), n)
    row = rows[n]
    return row[i] if i < len(row) else 0


def partition_counts(spec: SetSpec, upto: int) -> list[int]:
    """Partition counts p(n) for n = 0 .. upto (order of parts ignored).

    Only finite part-sets are supported.
    """
    if not spec.is_finite:
        raise SpecError("partition counts need a finite part set")
    if upto < 0:
        raise ValueError("upto must be non-negative")
    table = [1] + [0] * upto
    for a in _members_capped(spec, upto):
        for n in range(a, upto + 1):
            table[n] += table[n - a]
    return table


def _members_capped(spec: SetSpec, upper: int) -> list[int]:
    """Members <= upper; finite kinds bypass the query horizon (their full
    element list is known), infinite kinds stay horizon-gated."""
    if spec.kind == sets.EXPLICIT:
        return [a for a in spec.data if a <= upper]
    if spec.kind == sets.RANGE:
        return list(range(1, min(spec.data[0], upper) + 1))
    return spec.members_up_to(upper)


# -- q-series ----------------------------------------------------------------


@dataclass(frozen=True)
class QSeries:
    """Prefix of the expansion of f(x) / (x f'(x)) for a part-set."""

    set: SetSpec
    coeffs: RatSeries

    @property
    def order(self) -> int:
        return self.coeffs.order

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]


def q_series(spec: SetSpec, order: int) -> QSeries:
    """Exact prefix of f(x)/(x f'(x)) up to x^order.

    Both f and x f' have lowest term at m = min(set); after shifting down
    by m the quotient is a unit series.  Coefficients up to x^order only
    involve parts <= order + m, so infinite sets are truncated there
    (which must lie within their horizon); finite sets always use every
    part they have.
    """
    m = spec.min_element()
    if m is None:
        raise SpecError("q-series needs a nonempty set")
    if order < 0:
        raise ValueError("order must be non-negative")
    members = _members_capped(spec, order + m)
    num = [Fraction(0)] * (order + 1)
    den = [Fraction(0)] * (order + 1)
    for a in members:
        if a - m <= order:
            num[a - m] += 1
            den[a - m] += a
    series = series_mul(RatSeries(tuple(num)), series_inverse(RatSeries(tuple(den))))
    return QSeries(spec, series)


def qseries_to_json(q: QSeries) -> dict:
    """JSON-ready dict; numerators and denominators as base-10 strings."""
    return {
        "set": q.set.render(),
        "order": q.order,
        "coeffs": [
            {"numerator": str(c.numerator), "denominator": str(c.denominator)}
            for c in q.coeffs.coeffs
        ],
    }


# -- identity verification ---------------------------------------------------


@dataclass(frozen=True)
class IdentityFailure:
    identity: str
    n: int
    coeff_index: int


@dataclass
class IdentityReport:
    set: SetSpec
    upto: int
    method: str
    results: dict[str, IdentityFailure | None]

    @property
    def all_pass(self) -> bool:
        return all(f is None for f in self.results.values())

    def summary_lines(self) -> list[str]:
        lines = []
        for name in IDENTITY_NAMES:
            fail = self.results[name]
            if fail is None:
                lines.append(f"{name}: pass")
            else:
                lines.append(
                    f"{name}: FAIL at n={fail.n}, coefficient {fail.coeff_index}")
        return lines


def _neg_coeffs(p: IntPoly) -> IntPoly:
    """p(-t) as a polynomial."""
    return IntPoly(tuple(-c if i % 2 else c for i, c in enumerate(p.coeffs)))


def _first_diff(a, b) -> int:
    top = max(len(a), len(b))
    for i in range(top):
        ca = a[i] if i < len(a) else 0
        cb = b[i] if i < len(b) else 0
        if ca != cb:
            return i
    return -1


class _IdentityChecker:
    """Shared state for one verification run."""

    def __init__(self, spec: SetSpec, upto: int):
        self.spec = spec
        self.upto = upto
        self.members = spec.members_up_to(upto)
        self.odd_members = [a for a in self.members if a % 2 == 1]
        self.all_odd = len(self.odd_members) == len(self.members)
        self._table: CompPolyTable | None = None

    @property
    def table(self) -> CompPolyTable:
        if self._table is None:
            self._table = comp_polys(self.spec, self.upto)
        return self._table

    # each _coeff_* method returns the coefficient index of the first
    # mismatch at level n, or -1 if the identity holds there

    def _coeff_recurrence_weight(self, n: int) -> int:
        polys = self.table.polys
        lhs = [0] * (n + 1)
        rhs = [0] * (n + 1)
        for a in self.members:
            if a > n:
                break
            for j, c in enumerate(polys[n - a].coeffs):
                if c:
                    lhs[j] += a * j * c  # a * (delta coefficient j)
                    rhs[j] += (n - a) * c
        return _first_diff(lhs, rhs)

    def _coeff_reflection(self, n: int) -> int:
        polys = self.table.polys
        lhs = polys[n] + _neg_coeffs(polys[n])
        rhs = IntPoly()
        for i in range(n + 1):
            rhs = rhs + _neg_coeffs(polys[i]) * polys[n - i]
        return _first_diff(lhs.coeffs, rhs.scale(2).coeffs)

    def _coeff_parity(self, n: int) -> int:
        polys = self.table.polys
        opolys = comp_poly_rows(self.odd_members, n)
        lhs = IntPoly()
        rhs = IntPoly()
        for i in range(n + 1):
            o_neg = _neg_coeffs(IntPoly(tuple(opolys[i])))
            inner = _neg_coeffs(polys[n - i])
            signed = polys[n - i] if (n - i) % 2 == 0 else -polys[n - i]
            lhs = lhs + o_neg * (inner + signed)
            term = polys[i] * _neg_coeffs(polys[n - i])
            rhs = rhs + (term if i % 2 == 0 else -term)
        idx = _first_diff(lhs.coeffs, rhs.scale(2).coeffs)
        if idx >= 0:
            return idx
        if self.all_odd:
            signed = polys[n] if n % 2 == 0 else -polys[n]
            return _first_diff(_neg_coeffs(polys[n]).coeffs, signed.coeffs)
        return -1

    def _coeff_delta_q(self, n: int, q: QSeries) -> int:
        polys = self.table.polys
        lhs = [Fraction(c) for c in delta_op(polys[n]).coeffs]
        rhs: list[Fraction] = []
        for i in range(1, n + 1):
            scale = i * q[n - i]
            if not scale:
                continue
            row = polys[i].coeffs
            if len(rhs) < len(row):
                rhs.extend([Fraction(0)] * (len(row) - len(rhs)))
            for j, c in enumerate(row):
                if c:
                    rhs[j] += scale * c
        return _first_diff(lhs, rhs)

    def _coeff_delta_self(self, n: int) -> int:
        polys = self.table.polys
        lhs = delta_op(polys[n])
        rhs = IntPoly()
        for i in range(n):
            rhs = rhs + polys[n - i] * polys[i]
        return _first_diff(lhs.coeffs, rhs.coeffs)

    # -- whole-range checks ------------------------------------------------

    def check_coeff(self, name: str, q: QSeries | None) -> IdentityFailure | None:
        for n in range(self.upto + 1):
            if name == "recurrence_weight":
                idx = self._coeff_recurrence_weight(n)
            elif name == "reflection":
                idx = self._coeff_reflection(n)
            elif name == "parity":
                idx = self._coeff_parity(n)
            elif name == "delta_q":
                idx = -1 if q is None else self._coeff_delta_q(n, q)
            elif name == "delta_self":
                idx = self._coeff_delta_self(n)
            else:
                raise ValueError(f"unknown identity {name!r}")
            if idx >= 0:
                return IdentityFailure(name, n, idx)
        return None

    def _locate(self, name: str, n: int) -> IdentityFailure:
        coeff = {
            "reflection": self._coeff_reflection,
            "parity": self._coeff_parity,
            "delta_self": self._coeff_delta_self,
        }[name](n)
        return IdentityFailure(name, n, coeff)

    def check_eval(self, name: str) -> IdentityFailure | None:
        """Point-evaluation check of one of the convolution identities.

        Both sides at level n are polynomials of degree <= upto in t, so
        agreement at upto+1 distinct points proves equality; the points
        1, -1, 2, -2, ... are used.
        """
        n_max = self.upto
        half = (n_max + 2) // 2
        for t in range(1, half + 1):
            for point in (t, -t):
                v_pos = eval_table(self.members, n_max, point)
                v_neg = eval_table(self.members, n_max, -point)
                if name == "reflection":
                    rhs = conv_trunc(v_neg, v_pos, n_max)
                    for n in range(n_max + 1):
                        if v_pos[n] + v_neg[n] != 2 * rhs[n]:
                            return self._locate(name, n)
                elif name == "parity":
                    o_neg = eval_table(self.odd_members, n_max, -point)
                    alt = [v if j % 2 == 0 else -v for j, v in enumerate(v_pos)]
                    lhs1 = conv_trunc(o_neg, v_neg, n_max)
                    lhs2 = conv_trunc(o_neg, alt, n_max)
                    rhs = conv_trunc(alt, v_neg, n_max)
                    for n in range(n_max + 1):
                        if lhs1[n] + lhs2[n] != 2 * rhs[n]:
                            return self._locate(name, n)
                    if self.all_odd:
                        for n in range(n_max + 1):
                            if v_neg[n] != alt[n]:
                                return self._locate(name, n)
                elif name == "delta_self":
                    w_pos = delta_eval_table(self.members, n_max, point, v_pos)
                    sq = conv_trunc(v_pos, v_pos, n_max)
                    for n in range(n_max + 1):
                        if w_pos[n] != sq[n] - v_pos[n]:
                            return self._locate(name, n)
                else:
                    raise ValueError(f"unknown identity {name!r}")
        return None


def verify_identities(spec: SetSpec, upto: int, method: str = "eval") -> IdentityReport:
    """Check the five structural identities for every n <= upto.

    Checks: (recurrence_weight) the part-weighted delta identity;
    (reflection) f_n(t) + f_n(-t) against twice the mixed self-convolution;
    (parity) the odd-part convolution identity, plus f_n(-t) = (-1)^n f_n(t)
    when every part is odd; (delta_q) D(f_n) as the q-weighted sum of
    lower polynomials, over exact rationals; (delta_self) D(f_n) as the
    truncated self-convolution.  All comparisons are exact; failures carry
    the first differing (n, coefficient) pair.  The empty set passes
    everything vacuously.
    """
    if method not in ("eval", "coeff"):
        raise ValueError("method must be 'eval' or 'coeff'")
    chk = _IdentityChecker(spec, upto)
    q = None if spec.is_empty else q_series(spec, upto)
    results: dict[str, IdentityFailure | None] = {}
    results["recurrence_weight"] = chk.check_coeff("recurrence_weight", None)
    results["delta_q"] = chk.check_coeff("delta_q", q)
    for name in ("reflection", "parity", "delta_self"):
        if method == "eval":
            results[name] = chk.check_eval(name)
        else:
            results[name] = chk.check_coeff(name, None)
    return IdentityReport(spec, upto, method, results)


# -- plain-text exports -------------------------------------------------------


def counts_csv(spec: SetSpec, upto: int) -> str:
    lines = ["n,c_A(n)"]
    for n, c in enumerate(comp_counts(spec, upto)):
        lines.append(f"{n},{c}")
    return "\n".join(lines) + "\n"


def triangle_csv(table: CompPolyTable) -> str:
    lines = ["n,i,c_A(i,n)"]
    for n in range(table.upto + 1):
        for i in range(n + 1):
            lines.append(f"{n},{i},{table.by_parts(i, n)}")
    return "\n".join(lines) + "\n"
