"""Search and verification experiments around the sign results.

Four families live here:

* verify_cofinite_even_complement: for A = everything except a finite
  even set E, the normalized k = 0 sums equal a two-term count over
  E' = E union (E+1), and the low-k normalized rows stay non-negative.
* construct_distinct_subset_sums / verify_distinct_subset_sums: an odd
  set B with pairwise-distinct nonempty subset sums yields the part-set
  A of those sums, whose normalized k = 0 sums equal the partition
  counts of B.
* enumerate_F: scan every subset of {1..N} for non-negativity of the
  normalized k = 0 word up to a horizon.  Row 0 decides membership:
  non-negativity there propagates to every k by the weighted-moment
  identity, and k = 0 is itself one of the required rows.
* union_relation_check, optimal_superset_search and
  repunit_extension_experiment: the reciprocal-series relation for
  disjoint unions, a horizon-limited repair search for failing sets,
  and the repunit-plus-base probe.

Every horizon-limited answer is labelled as such: deciding
non-negativity for ALL n is the Positivity Problem for linear
recurrences, which no amount of scanning settles.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from ._backend import eval_table, first_violation, series_inv_int
from .compositions import comp_counts, partition_counts
from .sets import COFINITE, EXPLICIT, REPUNIT, SetSpec, SpecError, e_prime, explicit
from .sums import sk_fast

HORIZON_NOTE = ("horizon-limited: non-negativity beyond the scanned range "
                "is unverified")


# -- cofinite sets missing a finite even set ----------------------------------


@dataclass(frozen=True)
class CofiniteCheck:
    removed: SetSpec           # E, the even parts missing from A
    upto: int
    k_max: int
    identity_mismatch: int | None  # first n where the two-term count fails
    negative_at: tuple[int, int] | None  # first (k, n) with a negative value

    @property
    def passed(self) -> bool:
        return self.identity_mismatch is None and self.negative_at is None


def verify_cofinite_even_complement(E: SetSpec, upto: int, k_max: int = 3) -> CofiniteCheck:
    """Check A = positive integers minus E (E finite, even elements only).

    Two claims: (-1)^n S_{A,0}(n) = c_{E'}(n) + c_{E'}(n-1) for
    1 <= n <= upto with E' = e_prime(E), and (-1)^n S_{A,k}(n) >= 0 for
    all k <= k_max.
    """
    if E.kind != EXPLICIT:
        raise SpecError("need a finite explicit set of even numbers")
    eprime = e_prime(E)  # rejects odd elements
    if upto < 1:
        raise ValueError("upto must be >= 1")
    a_spec = SetSpec(COFINITE, E.data, max(upto, E.horizon))
    grid = sk_fast(a_spec, k_max, upto)
    counts = comp_counts(eprime, upto)

    mismatch = None
    for n in range(1, upto + 1):
        lhs = grid.value(0, n) if n % 2 == 0 else -grid.value(0, n)
        if lhs != counts[n] + counts[n - 1]:
            mismatch = n
            break

    negative = None
    for k in range(k_max + 1):
        row = grid.row(k)
        for n in range(upto + 1):
            v = row[n] if n % 2 == 0 else -row[n]
            if v < 0:
                negative = (k, n)
                break
        if negative is not None:
            break
    return CofiniteCheck(E, upto, k_max, mismatch, negative)


# -- odd sets with distinct subset sums ----------------------------------------


def _subset_sums(elems: tuple[int, ...]) -> list[int]:
    sums = []
    for r in range(1, len(elems) + 1):
        for combo in itertools.combinations(elems, r):
            sums.append(sum(combo))
    return sums


def construct_distinct_subset_sums(B: SetSpec) -> SetSpec:
    """A = all nonempty subset sums of B.

    B must be finite, odd-elements-only, with pairwise distinct subset
    sums (equivalently: prod over b of (1 + x^b), minus 1, has all
    coefficients 0 or 1).  Those are the hypotheses under which the
    normalized k = 0 sums of A become the partition counts of B.
    """
    if B.kind != EXPLICIT:
        raise SpecError("need a finite explicit set")
    for b in B.data:
        if b % 2 == 0:
            raise SpecError(f"element {b} is even; the construction needs odd parts")
    sums = _subset_sums(B.data)
    if len(set(sums)) != len(sums):
        dup = next(s for s in sums if sums.count(s) > 1)
        raise SpecError(f"subset sums collide (sum {dup} repeats)")
    return explicit(sums, horizon=B.horizon)


@dataclass(frozen=True)
class SubsetSumCheck:
    base: SetSpec              # B
    constructed: SetSpec       # A, the subset-sum set
    upto: int
    mismatch_at: int | None    # first n where (-1)^n S_0(n) != p_B(n)

    @property
    def passed(self) -> bool:
        return self.mismatch_at is None


def verify_distinct_subset_sums(B: SetSpec, upto: int) -> SubsetSumCheck:
    """(-1)^n S_{A,0}(n) = p_B(n) for n <= upto, A the subset-sum set."""
    a_spec = construct_distinct_subset_sums(B)
    row = sk_fast(a_spec, 0, upto).row(0)
    parts = partition_counts(B, upto)
    mismatch = None
    for n in range(upto + 1):
        lhs = row[n] if n % 2 == 0 else -row[n]
        if lhs != parts[n]:
            mismatch = n
            break
    return SubsetSumCheck(B, a_spec, upto, mismatch)


# -- F(N): subsets whose normalized word stays non-negative --------------------


@dataclass(frozen=True)
class SubsetVerdict:
    mask: int                      # bit i-1 set = element i present
    first_violation: int | None    # smallest failing n, if any

    @property
    def k0_ok(self) -> bool:
        return self.first_violation is None


@dataclass(frozen=True)
class EnumerationResult:
    n: int
    horizon: int
    count: int                     # subsets with no violation <= horizon
    verdicts: tuple[SubsetVerdict, ...]  # ordered by mask
    note: str = HORIZON_NOTE


def _mask_members(mask: int, n: int) -> list[int]:
    return [i + 1 for i in range(n) if mask >> i & 1]


def _scan_masks(args: tuple[int, int, int, int]) -> list[tuple[int, int]]:
    start, stop, n, horizon = args
    out = []
    for mask in range(start, stop):
        out.append((mask, first_violation(_mask_members(mask, n), horizon)))
    return out


def enumerate_F(n: int, horizon: int, jobs: int = 1, mask_budget: int = 22) -> EnumerationResult:
    """Scan all 2^n subsets of {1..n} (the empty set included).

    A subset passes when its normalized k = 0 word has no negative entry
    up to the horizon; the count is only a horizon-certified candidate
    for the true all-n quantity.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > mask_budget:
        raise ValueError(f"n={n} exceeds the 2^{mask_budget}-subset budget")
    if horizon < 4 * n:
        raise ValueError(f"horizon {horizon} too short; need >= {4 * n}")
    total = 1 << n
    if jobs > 1 and total >= 256:
        chunk = (total + jobs - 1) // jobs
        spans = [(lo, min(lo + chunk, total), n, horizon)
                 for lo in range(0, total, chunk)]
        found: dict[int, int] = {}
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for block in pool.map(_scan_masks, spans):
                found.update(block)
        raw = [(m, found[m]) for m in range(total)]
    else:
        raw = _scan_masks((0, total, n, horizon))
    verdicts = tuple(SubsetVerdict(m, None if v < 0 else v) for m, v in raw)
    count = sum(1 for v in verdicts if v.k0_ok)
    return EnumerationResult(n, horizon, count, verdicts)


def enumeration_json(result: EnumerationResult) -> dict:
    return {
        "n": result.n,
        "horizon": result.horizon,
        "count": result.count,
        "note": result.note,
        "verdicts": [
            {
                "mask": v.mask,
                "members": _mask_members(v.mask, result.n),
                "k0_ok": v.k0_ok,
                "first_violation": v.first_violation,
            }
            for v in result.verdicts
        ],
    }


def verdicts_csv(result: EnumerationResult) -> str:
    lines = ["mask,k0_ok,first_violation"]
    for v in result.verdicts:
        fv = "" if v.first_violation is None else str(v.first_violation)
        lines.append(f"{v.mask},{str(v.k0_ok).lower()},{fv}")
    return "\n".join(lines) + "\n"


# -- the reciprocal-series relation for disjoint unions ------------------------


def union_relation_check(A: SetSpec, B: SetSpec, upto: int) -> bool:
    """inv_A + inv_B - inv_{A u B} = 1 as series through order upto,
    where inv_X is the series inverse of sum over n of c_X(n) x^n; also
    checked for the alternating variant (counts weighted by parity of
    the part number).  A and B must be disjoint up to upto.
    """
    ma = set(A.members_up_to(upto))
    mb = set(B.members_up_to(upto))
    if ma & mb:
        raise SpecError(f"sets share {sorted(ma & mb)[:3]}; need disjoint sets")
    union = explicit(sorted(ma | mb), horizon=max(upto, 1))

    for t in (1, -1):
        inv = []
        for spec in (A, B, union):
            series = eval_table(spec.members_up_to(upto), upto, t)
            inv.append(series_inv_int(series, upto))
        for n in range(upto + 1):
            want = 1 if n == 0 else 0
            if inv[0][n] + inv[1][n] - inv[2][n] != want:
                return False
    return True


# -- repair search for failing sets --------------------------------------------


@dataclass(frozen=True)
class SupersetSearch:
    base: SetSpec
    budget: int
    horizon: int
    universe_cap: int
    additions: tuple[tuple[int, ...], ...]  # all minimal passing add-ons
    note: str = HORIZON_NOTE

    @property
    def candidates(self) -> tuple[SetSpec, ...]:
        base = set(self.base.members_up_to(self.universe_cap))
        return tuple(explicit(sorted(base | set(x)), horizon=self.base.horizon)
                     for x in self.additions)


def optimal_superset_search(A: SetSpec, budget: int, horizon: int,
                            universe_cap: int | None = None) -> SupersetSearch:
    """Smallest add-on sets X making A u X pass the horizon test.

    Breadth-first over |X| = 1..budget, X drawn from {1..cap} minus A;
    at the first size with any pass, every passing X of that size is
    returned (whether a repair is unique is an open question, so no
    single winner is crowned).  Heuristic: passing the horizon proves
    nothing about larger n.
    """
    if not A.is_finite:
        raise SpecError("repair search needs a finite set")
    members = A.members_up_to(A.horizon)
    if first_violation(members, horizon) < 0:
        raise ValueError("the set already passes; nothing to repair")
    if budget < 1:
        raise ValueError("budget must be >= 1")
    cap = universe_cap if universe_cap is not None else max(members, default=1) + 12
    pool = [x for x in range(1, cap + 1) if x not in set(members)]
    for size in range(1, budget + 1):
        passing = []
        for combo in itertools.combinations(pool, size):
            trial = sorted(set(members) | set(combo))
            if first_violation(trial, horizon) < 0:
                passing.append(combo)
        if passing:
            return SupersetSearch(A, budget, horizon, cap, tuple(passing))
    return SupersetSearch(A, budget, horizon, cap, ())


# -- repunit-plus-base probe ----------------------------------------------------


@dataclass(frozen=True)
class RepunitProbe:
    m: int
    horizon: int
    members: tuple[int, ...]
    first_violation: int | None
    note: str = HORIZON_NOTE

    @property
    def passed(self) -> bool:
        return self.first_violation is None


def repunit_extension_experiment(m: int, horizon: int) -> RepunitProbe:
    """Probe A = {base-m repunits} u {m} for normalized non-negativity.

    The repunits are all odd, m even, m > 3; whether the union passes
    for every n is open, so this only reports the scan.
    """
    if m % 2 == 1 or m <= 3:
        raise ValueError("need even m > 3")
    rep = SetSpec(REPUNIT, (m,), max(horizon, 1))
    members = sorted(set(rep.members_up_to(horizon)) | {m})
    fv = first_violation(members, horizon)
    return RepunitProbe(m, horizon, tuple(members),
                        None if fv < 0 else fv)
