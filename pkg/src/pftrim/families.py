"""Parametric skew families with banded blocks, plus a randomized scanner.

Two families are built from a symmetric band matrix whose antidiagonals
carry x, z, y^2.  The odd family has size 4s+3 and trims its first 2s+1
generators; the even family has size 4s+1 and trims its first 2s.  Both
hit known residue-field formats and classes, which ``family_checks``
verifies together with the shape of three distinguished pfaffians.

``realizability_scan`` samples random skew matrices over a chosen field
and classifies every trim count, recording which classes actually occur.
Records are reproducible from the seed and the call parameters alone.
"""

from __future__ import annotations

import csv
import dataclasses
import random

from .classify import TorReport, classify
from .errors import ArgumentError
from .linalg import det_bareiss
from .pfaffian import SkewMatrix, pfaffian_drop
from .polyring import PolyRing, PrimeField, QQ

__all__ = [
    "FamilySpec",
    "FamilyCheck",
    "FamilyReport",
    "ScanRecord",
    "ScanResult",
    "SCAN_COLUMNS",
    "build_family",
    "family_checks",
    "realizability_scan",
    "write_scan_csv",
]

_KINDS = ("odd", "even")


@dataclasses.dataclass(frozen=True)
class FamilySpec:
    """Which family member to build: the layout kind and the band size s."""

    kind: str
    s: int

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ArgumentError(f"family kind must be one of {_KINDS}, got {self.kind!r}")
        if not isinstance(self.s, int) or self.s < 1:
            raise ArgumentError(f"band size must be a positive integer, got {self.s!r}")
        if self.kind == "even" and self.s < 2:
            raise ArgumentError("even family needs band size at least 2")

    @property
    def size(self) -> int:
        return 4 * self.s + 3 if self.kind == "odd" else 4 * self.s + 1

    @property
    def trim(self) -> int:
        return 2 * self.s + 1 if self.kind == "odd" else 2 * self.s


def _band(ring: PolyRing, s: int):
    """The s x s symmetric band: x where i+j = s, z where i+j = s+1,
    y^2 where i+j = s+2, zero elsewhere."""
    x, y, z = ring.gens
    values = {s: x, s + 1: z, s + 2: y * y}
    return [[values.get(i + j, ring.zero) for j in range(1, s + 1)]
            for i in range(1, s + 1)]


def build_family(spec: FamilySpec, ring: PolyRing = None):
    """Assemble the requested family member; returns (matrix, trim count).

    The default coefficient field is the rationals; the closed-form format
    and class are the same over any field.
    """
    if ring is None:
        ring = PolyRing(QQ)
    x, y, _ = ring.gens
    y2 = y * y
    s = spec.s
    upper = {}

    def place(r0, c0, block):
        # block's top-left entry lands at row r0+1, column c0+1
        for i, row in enumerate(block, start=1):
            for j, f in enumerate(row, start=1):
                if f:
                    upper[(r0 + i, c0 + j)] = f

    if spec.kind == "odd":
        # inner layout (s, 1, s): x column, band block, y^2 row
        upper[(s, s + 1)] = x
        place(0, s + 1, _band(ring, s))
        upper[(s + 1, s + 2)] = y2
        # outer layout (2s+1, 1, 2s+1) wrapping the inner matrix
        half = 2 * s + 1
        upper[(half, half + 1)] = x
        place(0, half + 1, _band(ring, half))
        upper[(half + 1, half + 2)] = y2
    else:
        # inner layout (s, s): one band block off the diagonal
        place(0, s, _band(ring, s))
        # outer layout (2s, 1, 2s)
        half = 2 * s
        upper[(half, half + 1)] = x
        place(0, half + 1, _band(ring, half))
        upper[(half + 1, half + 2)] = y2
    return SkewMatrix.from_upper(ring, spec.size, upper), spec.trim


def closed_form(spec: FamilySpec):
    """Expected (format, class) for this family member."""
    s = spec.s
    if spec.kind == "odd":
        return (1, 6 * s + 2, 8 * s + 3, 2 * s + 2), f"G({2 * s})"
    return (1, 6 * s - 1, 8 * s - 1, 2 * s + 1), f"G({2 * s - 1})"


@dataclasses.dataclass(frozen=True)
class FamilyCheck:
    name: str
    passed: bool


@dataclasses.dataclass(frozen=True)
class FamilyReport:
    """Verdicts for one family member, with the classification attached."""

    spec: FamilySpec
    report: TorReport
    checks: tuple

    @property
    def all_passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def summary_lines(self):
        head = f"{self.spec.kind} family, s={self.spec.s}"
        verdict = "ok" if self.all_passed else "FAIL"
        lines = [f"{head}: {len(self.checks)} checks, {verdict}"]
        lines.extend(f"  {check.name}: {'ok' if check.passed else 'FAIL'}"
                     for check in self.checks)
        lines.extend(f"  {line}" for line in self.report.summary_lines())
        return lines


def family_checks(spec: FamilySpec, ring: PolyRing = None) -> FamilyReport:
    """Build the member and test it against its expected shape.

    For the odd family the three distinguished generators are checked
    directly: dropping the first index leaves a pure power of y, dropping
    the middle singleton index 2s+2 leaves the determinant of the outer
    band (which carries the monomial z^(2s+1)), and dropping the last
    index leaves a polynomial carrying x^(2s+1).  Together these force
    grade 3.  Both families are then classified and compared against the
    closed-form format and class.
    """
    T, t = build_family(spec, ring)
    ring = T.ring
    report = classify(T, t)
    fmt, cls = closed_form(spec)
    checks = []
    if spec.kind == "odd":
        s = spec.s
        first = pfaffian_drop(T, (1,))
        power = ring.monomial(1, (0, 4 * s + 2, 0))
        checks.append(FamilyCheck(
            "first_generator_is_y_power", first in (power, -power)))
        # the singleton index between the inner matrix and the outer band
        middle = pfaffian_drop(T, (2 * s + 2,))
        det = det_bareiss(ring, _band(ring, 2 * s + 1))
        checks.append(FamilyCheck(
            "middle_generator_is_band_determinant", middle in (det, -det)))
        checks.append(FamilyCheck(
            "middle_generator_has_z_power",
            bool(middle.coefficient((0, 0, 2 * s + 1)))))
        last = pfaffian_drop(T, (spec.size,))
        checks.append(FamilyCheck(
            "last_generator_has_x_power",
            bool(last.coefficient((2 * s + 1, 0, 0)))))
    checks.append(FamilyCheck("format_closed_form", report.format == fmt))
    checks.append(FamilyCheck("class_closed_form", report.class_ == cls))
    return FamilyReport(spec, report, tuple(checks))


#: Column order of the scan CSV.
SCAN_COLUMNS = ("seed", "trial", "p", "m", "t", "rank_q1", "pivots_tail",
                "l", "n", "r", "class")


@dataclasses.dataclass(frozen=True)
class ScanRecord:
    """One classified (matrix, trim count) pair from a scan.

    ``p`` is the field characteristic (0 for the rationals), ``l`` and
    ``n`` the first and last interior format entries, ``r`` the class
    parameter (None when the class is NotG).
    """

    seed: int
    trial: int
    p: int
    m: int
    t: int
    rank_q1: int
    pivots_tail: int
    l: int
    n: int
    r: object
    class_: str
    degree_bound: int

    def csv_row(self):
        return (self.seed, self.trial, self.p, self.m, self.t, self.rank_q1,
                self.pivots_tail, self.l, self.n,
                "" if self.r is None else self.r, self.class_)


@dataclasses.dataclass(frozen=True)
class ScanResult:
    records: tuple
    trials: int
    skipped: int

    def summary_lines(self):
        return [f"scan: {len(self.records)} records, "
                f"{self.skipped} of {self.trials} trials skipped"]


def _random_entry(ring, rng, min_degree, degree_bound):
    terms = {}
    for _ in range(rng.randint(0, 3)):
        d = rng.randint(min_degree, degree_bound)
        a1 = rng.randint(0, d)
        a2 = rng.randint(0, d - a1)
        exps = (a1, a2, d - a1 - a2)
        char = ring.field.char
        if char:
            coeff = rng.randrange(1, char) if char > 2 else 1
        else:
            coeff = rng.choice((-3, -2, -1, 1, 2, 3))
        terms[exps] = terms.get(exps, 0) + coeff
    return ring.from_terms(terms)


def _random_skew(ring, m, rng, min_degree, degree_bound):
    upper = {}
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            f = _random_entry(ring, rng, min_degree, degree_bound)
            if f:
                upper[(i, j)] = f
    return SkewMatrix.from_upper(ring, m, upper)


def realizability_scan(char: int, m: int, trials: int, degree_bound: int = 2,
                       seed: int = 0, *, min_degree: int = 1) -> ScanResult:
    """Classify random skew matrices for every trim count.

    Entries are sparse polynomials with up to three terms of degree between
    ``min_degree`` and ``degree_bound`` and zero constant term.  A matrix
    whose generator vector is identically zero is skipped (its trial index
    is still consumed, so records stay reproducible).  Each kept matrix
    produces one record per trim count t in 1..m, in trial order.
    """
    if m % 2 == 0 or m < 5:
        raise ArgumentError(f"scan size must be odd and at least 5, got {m}")
    if trials < 1:
        raise ArgumentError(f"need at least one trial, got {trials}")
    if not 1 <= min_degree <= degree_bound:
        raise ArgumentError(
            f"need 1 <= min_degree <= degree_bound, got {min_degree}..{degree_bound}")
    field = QQ if char == 0 else PrimeField(char)
    ring = PolyRing(field)
    records = []
    skipped = 0
    for trial in range(trials):
        # per-trial generator, so trials are independent and order-stable
        rng = random.Random(seed * 1_000_003 + trial)
        T = _random_skew(ring, m, rng, min_degree, degree_bound)
        if not any(pfaffian_drop(T, (i,)) for i in range(1, m + 1)):
            skipped += 1
            continue
        for t in range(1, m + 1):
            rep = classify(T, t)
            records.append(ScanRecord(seed, trial, field.char, m, t,
                                      rep.rank_q1, rep.p, rep.mu, t + 1,
                                      rep.r, rep.class_, degree_bound))
    return ScanResult(tuple(records), trials, skipped)


def write_scan_csv(records, out):
    """Write scan records as CSV with a header row.

    ``out`` is a path or a writable text file object.
    """
    if hasattr(out, "write"):
        _write_rows(out, records)
        return
    with open(out, "w", newline="") as handle:
        _write_rows(handle, records)


def _write_rows(handle, records):
    writer = csv.writer(handle)
    writer.writerow(SCAN_COLUMNS)
    for record in records:
        writer.writerow(record.csv_row())
