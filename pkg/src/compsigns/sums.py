"""Alternating weighted part-count sums S_k(n), by four independent routes.

S_k(n) = sum over i of (-1)^i * i^k * c(i, n), where c(i, n) counts the
compositions of n into exactly i parts; equivalently D^k(f_n) at t = -1
for the delta operator D = t * d/dt.

The four routes share no interesting code, which is the point: they
cross-validate each other exactly.

* sk_direct: build the polynomial table, weight coefficients by i^k,
  evaluate at -1.  Trusted reference, definitional.
* sk_fast: production path on a single integer recurrence (see its
  docstring for the derivation); no polynomial storage.
* sk_via_q: lift row k to k+1 through the rational q-series; exact
  rational arithmetic whose results must come out integral.
* sk_via_conv: lift row k to k+1 through binomially weighted
  convolutions of the lower rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from ._backend import sk_rows
from .compositions import comp_polys, q_series
from .poly import delta_op
from .sets import SetSpec

ROUTE_NAMES = ("direct", "fast", "q", "conv")


class IntegralityError(ValueError):
    """A rational route produced a non-integer value (always a bug)."""


@dataclass(frozen=True)
class SkGrid:
    """Immutable (K+1) x (N+1) table, row-major in k: values[k][n] = S_k(n)."""

    set: SetSpec
    K: int
    N: int
    values: tuple[tuple[int, ...], ...]

    def row(self, k: int) -> tuple[int, ...]:
        return self.values[k]

    def value(self, k: int, n: int) -> int:
        return self.values[k][n]


def sk_direct(spec: SetSpec, k_max: int, n_max: int) -> SkGrid:
    """Reference route: coefficient tables, k-fold delta, evaluation at -1."""
    _check_kn(k_max, n_max)
    table = comp_polys(spec, n_max)
    rows = []
    for k in range(k_max + 1):
        rows.append(tuple(delta_op(table[n], k)(-1) for n in range(n_max + 1)))
    return SkGrid(spec, k_max, n_max, tuple(rows))


def sk_fast(spec: SetSpec, k_max: int, n_max: int) -> SkGrid:
    """Production route, one integer recurrence and no polynomials.

    Derivation: the table recurrence says f_n = t * h with
    h = sum over parts a <= n of f_{n-a}.  D = t * d/dt is a derivation
    satisfying the binomial product rule D^k(uv) = sum_j C(k,j) D^j(u)
    D^(k-j)(v), and D^j(t) = t for every j, so

        D^k(f_n) = t * sum_j C(k,j) D^j(h).

    Evaluating at t = -1 with g[k][n] = D^k(f_n)(-1) gives

        g[k][n] = -sum_j C(k,j) * sum_a g[j][n-a],

    with g[0][0] = 1 and g[k][0] = 0 for k >= 1.  Equality with sk_direct
    is enforced by the test suite on randomized sets.
    """
    _check_kn(k_max, n_max)
    members = spec.members_up_to(n_max)
    rows = sk_rows(members, k_max, n_max)
    return SkGrid(spec, k_max, n_max, tuple(tuple(r) for r in rows))


def sk_via_q(spec: SetSpec, k_max: int, n_max: int) -> SkGrid:
    """Rational route: S_{k+1}(n) = sum_i i * q(n-i) * S_k(i).

    Exact Fraction arithmetic; every entry must reduce to an integer, and
    a non-integer raises IntegralityError rather than rounding.
    """
    _check_kn(k_max, n_max)
    base = sk_fast(spec, 0, n_max).row(0)
    q = q_series(spec, n_max)
    rows = [tuple(base)]
    prev = base
    for k in range(k_max):
        nxt = []
        for n in range(n_max + 1):
            acc = Fraction(0)
            for i in range(1, n + 1):
                if prev[i]:
                    acc += i * q[n - i] * prev[i]
            if acc.denominator != 1:
                raise IntegralityError(
                    f"S_{k + 1}({n}) came out {acc} for {spec.render()}")
            nxt.append(int(acc))
        rows.append(tuple(nxt))
        prev = nxt
    return SkGrid(spec, k_max, n_max, tuple(rows))


def sk_via_conv(spec: SetSpec, k_max: int, n_max: int) -> SkGrid:
    """Convolution route:
    S_{k+1}(n) = sum_{i<n} sum_{j<=k} C(k,j) * S_j(n-i) * S_{k-j}(i)."""
    _check_kn(k_max, n_max)
    rows = [tuple(sk_fast(spec, 0, n_max).row(0))]
    for k in range(k_max):
        binom = [comb(k, j) for j in range(k + 1)]
        nxt = []
        for n in range(n_max + 1):
            acc = 0
            for i in range(n):
                s = 0
                for j in range(k + 1):
                    s += binom[j] * rows[j][n - i] * rows[k - j][i]
                acc += s
            nxt.append(acc)
        rows.append(tuple(nxt))
    return SkGrid(spec, k_max, n_max, tuple(rows))


ROUTES = {
    "direct": sk_direct,
    "fast": sk_fast,
    "q": sk_via_q,
    "conv": sk_via_conv,
}


def _check_kn(k_max: int, n_max: int) -> None:
    if k_max < 0:
        raise ValueError("K must be non-negative")
    if n_max < 0:
        raise ValueError("N must be non-negative")


def normalized_violation(grid: SkGrid) -> tuple[int, int] | None:
    """First (k, n) with (-1)^n * S_k(n) < 0, or None if none exists."""
    for k in range(grid.K + 1):
        row = grid.values[k]
        for n in range(grid.N + 1):
            v = row[n] if n % 2 == 0 else -row[n]
            if v < 0:
                return (k, n)
    return None


def grid_csv(grid: SkGrid) -> str:
    lines = ["k,n,S"]
    for k in range(grid.K + 1):
        row = grid.values[k]
        for n in range(grid.N + 1):
            lines.append(f"{k},{n},{row[n]}")
    return "\n".join(lines) + "\n"


def grid_json_summary(grid: SkGrid) -> dict:
    """Compact fingerprint: per-row checksum sum_n (n+1) * S_k(n), base 10."""
    sums = []
    for k in range(grid.K + 1):
        sums.append(str(sum((n + 1) * v for n, v in enumerate(grid.values[k]))))
    return {
        "set": grid.set.render(),
        "K": grid.K,
        "N": grid.N,
        "row_checksums": sums,
    }
