"""Residue-field analysis of a trimmed complex: minimal Betti format,
the multiplicative class decision, the induced scalar products on the
minimal bases, and the numerical consequences the scanner checks.

The unit entries of the degree-two differential all sit in the connecting
block, so the minimal format follows from the rank of that block over the
residue field.  The class decision needs no products for sizes seven and
up; for size five it reduces to vanishing conditions on the residues of
the splitting constants.
"""

import dataclasses

from .dgproducts import full_table
from .errors import ArgumentError, NotApplicable, UnsupportedSize
from .linalg import rref, scalar_parts, transpose
from .resolution import BasisElement, trimmed_resolution

_PAIRS = ((1, 2), (1, 3), (2, 3))


@dataclasses.dataclass(frozen=True)
class TorReport:
    """Minimal format and multiplicative class of a trimmed ideal.

    Fields:
        m, t: matrix size and trim count.
        rank_q1: rank of the connecting block over the residue field.
        p: its pivot columns among the last m - t (untrimmed) columns.
        format: the minimal rank tuple (1, mu, mu + t, 1 + t).
        mu: minimal number of generators (= format[1]).
        r: the class parameter m - t - p, or None when not of class G.
        class_: "G(r)" with the numeral filled in, or "NotG".
        failing_minor: for size 5 failures, the first witness (i, j, k)
            whose residue rows have a nonvanishing 2x2 minor.
    """

    m: int
    t: int
    rank_q1: int
    p: int
    format: tuple
    mu: int
    r: object
    class_: str
    failing_minor: object = None

    def to_document(self):
        return {"m": self.m, "t": self.t, "rank_q1": self.rank_q1,
                "p": self.p, "format": list(self.format), "mu": self.mu,
                "r": self.r, "class": self.class_}

    def summary_lines(self):
        fmt = ", ".join(str(n) for n in self.format)
        return [f"size {self.m}, trim {self.t}: format ({fmt}), "
                f"rank {self.rank_q1}, tail pivots {self.p}, "
                f"class {self.class_}"]


def _pivot_data(td):
    reduced, pivots = rref(td.ring.field, scalar_parts(td.Q1))
    return reduced, pivots


def _minor_failure(td):
    # first trimmed column and pair of untrimmed indices whose two
    # complementary residue rows have a nonvanishing 2x2 minor
    field = td.ring.field
    zero = field.of(0)
    cbar = {key: tuple(f.constant_term() for f in split)
            for key, split in td.c.items()}
    m, t = td.m, td.t
    for i in range(t + 1, m + 1):
        for j in range(i + 1, m + 1):
            for k in range(1, t + 1):
                h, r = (n for n in range(1, m + 1) if n not in (i, j, k))
                row_h, row_r = cbar[(h, k)], cbar[(r, k)]
                for a, b in _PAIRS:
                    minor = row_h[a - 1] * row_r[b - 1] - \
                        row_h[b - 1] * row_r[a - 1]
                    if minor != zero:
                        return i, j, k
    return None


def classify(T, t):
    """Minimal format and Tor class of the ideal obtained by trimming the
    first t pfaffian generators of the selfdual ideal of T."""
    if T.m % 2 == 0 or T.m < 5:
        raise UnsupportedSize(
            f"classification needs odd size at least 5, got {T.m}")
    td = trimmed_resolution(T, t)
    _, pivots = _pivot_data(td)
    rank = len(pivots)
    p = sum(1 for col in pivots if col >= t)
    fmt = (1, T.m + 2 * t - rank, T.m + 3 * t - rank, 1 + t)
    failure = _minor_failure(td) if T.m == 5 else None
    if failure is None:
        r = T.m - t - p
        cls = f"G({r})"
    else:
        r = None
        cls = "NotG"
    return TorReport(T.m, t, rank, p, fmt, fmt[1], r, cls, failure)


class TorProductTable:
    """Scalar products between the minimal residue-field classes.

    Basis labels name each class by its lead generator; the pivot columns
    of the connecting block and a matching independent set of its rows are
    split away first, and the remaining selfdual classes are corrected so
    that the products are well defined.  Only nonzero products are stored,
    keyed by ordered label pairs (both orders in degree one, the degree-one
    factor first otherwise).  For sizes seven and up the table of a trimmed
    ideal is the diagonal selfdual pairing; in size five it can also carry
    correction cells in either degree.
    """

    __slots__ = ("field", "basis1", "basis2", "basis3", "entries")

    def __init__(self, field, basis1, basis2, basis3, entries):
        self.field = field
        self.basis1 = tuple(basis1)
        self.basis2 = tuple(basis2)
        self.basis3 = tuple(basis3)
        self.entries = dict(entries)

    def lookup(self, left, right):
        """Nonzero cells of one product as (label, scalar) pairs."""
        ones = set(self.basis1)
        twos = set(self.basis2)
        if left in ones and (right in ones or right in twos):
            return self.entries.get((left, right), ())
        if left in twos and right in ones:
            return self.entries.get((right, left), ())
        raise ArgumentError(f"no product recorded for ({left!r}, {right!r})")

    def has_degree_one_products(self):
        ones = set(self.basis1)
        return any(l in ones and r in ones for l, r in self.entries)

    def g_pairing_indices(self):
        """Indices whose selfdual class pairs to the top class with unit
        coefficient against its own degree-two partner."""
        one = self.field.of(1)
        top = self.basis3[0]
        out = []
        for label in self.basis1:
            if label[0] != "e":
                continue
            partner = "f" + label[1:]
            if partner in self.basis2 and \
                    self.entries.get((label, partner)) == ((top, one),):
                out.append(int(label[1:]))
        return tuple(out)

    def is_diagonal_pairing(self):
        """True when the only nonzero products are unit selfdual pairs
        against the top class."""
        one = self.field.of(1)
        top = self.basis3[0]
        for (left, right), cells in self.entries.items():
            if left[0] == "e" and right == "f" + left[1:] \
                    and cells == ((top, one),):
                continue
            return False
        return True

    def to_document(self):
        return {
            "basis1": list(self.basis1),
            "basis2": list(self.basis2),
            "basis3": list(self.basis3),
            "products": [
                {"left": left, "right": right,
                 "value": [[label, str(scalar)] for label, scalar in cells]}
                for (left, right), cells in sorted(self.entries.items())],
        }


def tor_products(td, table=None):
    """Products induced on the minimal residue-field classes.

    Computes the full product table of the complex (or reuses a prebuilt
    one), reduces modulo the maximal ideal, and rewrites the results in
    the split basis that removes the unit pivots of the degree-two
    differential.
    """
    field = td.ring.field
    zero = field.of(0)
    one = field.of(1)
    m, t = td.m, td.t
    if table is None:
        table = full_table(td)
    qbar = scalar_parts(td.Q1)
    reduced, pivots = rref(field, qbar)
    row_of = {col: row for row, col in enumerate(pivots)}
    pivot_set = set(pivots)

    # degree 1: every selfdual class, corrected on pivot columns so that
    # products with the corrected degree-2 classes vanish, then the
    # Koszul classes away from a maximal independent set of rows
    deg1 = []
    for i in range(t + 1, m + 1):
        rep = {BasisElement.E(i): one}
        if i - 1 in pivot_set:
            row = reduced[row_of[i - 1]]
            for k in range(t + 1, m + 1):
                if k - 1 not in pivot_set and row[k - 1] != zero:
                    rep[BasisElement.E(k)] = row[k - 1]
        deg1.append((BasisElement.E(i).label, rep))
    dropped_rows = set(rref(field, transpose(qbar))[1])
    for row_idx in range(3 * t):
        if row_idx in dropped_rows:
            continue
        k, l = divmod(row_idx, 3)
        elem = BasisElement.U(k + 1, l + 1)
        deg1.append((elem.label, {elem: one}))

    # degree 2: nonpivot columns absorb the pivot ones, Koszul part as is
    deg2 = []
    for j in range(1, m + 1):
        if j - 1 in pivot_set:
            continue
        rep = {BasisElement.F(j): one}
        for col in pivots:
            alpha = -reduced[row_of[col]][j - 1]
            if alpha != zero:
                rep[BasisElement.F(col + 1)] = alpha
        deg2.append((BasisElement.F(j).label, rep))
    for k in range(1, t + 1):
        for a, b in _PAIRS:
            elem = BasisElement.V(k, a, b)
            deg2.append((elem.label, {elem: one}))
    deg3_order = [BasisElement.G().label] + \
        [BasisElement.W(k).label for k in range(1, t + 1)]

    def reduced_product(rep_x, rep_y):
        acc = {}
        for ex, cx in rep_x.items():
            for ey, cy in rep_y.items():
                scale = cx * cy
                for target, coeff in table.lookup(ex, ey).coords.items():
                    c0 = coeff.constant_term()
                    if c0 == zero:
                        continue
                    acc[target] = acc.get(target, zero) + c0 * scale
        return {elem: v for elem, v in acc.items() if v != zero}

    def degree2_cells(acc):
        # products of degree-1 elements are cycles, so the expansion in
        # the split basis has no component on the pivot columns
        cells = []
        residual = dict(acc)
        for label, rep in deg2:
            lead = next(iter(rep))
            beta = acc.get(lead, zero)
            if beta == zero:
                continue
            cells.append((label, beta))
            for elem, coeff in rep.items():
                residual[elem] = residual.get(elem, zero) - beta * coeff
        assert all(v == zero for v in residual.values()), \
            "degree-1 product with a component on a split column"
        return tuple(cells)

    def degree3_cells(acc):
        by_label = {elem.label: v for elem, v in acc.items()}
        return tuple((label, by_label[label]) for label in deg3_order
                     if label in by_label)

    entries = {}
    for lx, rx in deg1:
        for ly, ry in deg1:
            cells = degree2_cells(reduced_product(rx, ry))
            if cells:
                entries[(lx, ly)] = cells
        for ly, ry in deg2:
            cells = degree3_cells(reduced_product(rx, ry))
            if cells:
                entries[(lx, ly)] = cells
    return TorProductTable(field, [lab for lab, _ in deg1],
                           [lab for lab, _ in deg2], deg3_order, entries)


@dataclasses.dataclass(frozen=True)
class ConjectureReport:
    """Verdicts for the numerical consequences of a class G report."""

    t: int
    mu: int
    r: int
    single_trim_exact: bool
    multi_trim_bound: bool
    spread_in_range: bool
    spread_off_forbidden: bool

    @property
    def all_passed(self):
        return self.single_trim_exact and self.multi_trim_bound and \
            self.spread_in_range and self.spread_off_forbidden

    def verdicts(self):
        return {"single_trim_exact": self.single_trim_exact,
                "multi_trim_bound": self.multi_trim_bound,
                "spread_in_range": self.spread_in_range,
                "spread_off_forbidden": self.spread_off_forbidden}

    def summary_lines(self):
        return [f"{name}: {'ok' if passed else 'FAIL'}"
                for name, passed in self.verdicts().items()]


def check_conjectures(report):
    """Check the spread bounds and generator-count relations of a class G
    report: trimming once forces r = mu - 3, deeper trims force
    r <= mu - 4, the spread mu - r lies in [2t, 3t] and never equals
    3t - 1."""
    if report.r is None:
        raise NotApplicable("conjecture checks need a class G report")
    t, mu, r = report.t, report.mu, report.r
    spread = mu - r
    return ConjectureReport(
        t, mu, r,
        t != 1 or r == mu - 3,
        t < 2 or r <= mu - 4,
        2 * t <= spread <= 3 * t,
        spread != 3 * t - 1)


def conjugate_trim_set(T, generators):
    """Conjugate T by the permutation moving the chosen generator indices
    to the front, so that trimming an arbitrary index set reduces to
    trimming the first t.  Returns the conjugated matrix and the
    permutation as a tuple of new positions indexed by old position."""
    chosen = sorted(set(generators))
    if not chosen:
        raise ArgumentError("no generators chosen")
    if chosen[0] < 1 or chosen[-1] > T.m:
        raise ArgumentError(f"generator indices out of range 1..{T.m}")
    order = chosen + [i for i in range(1, T.m + 1) if i not in set(chosen)]
    new_of_old = [0] * T.m
    for new_pos, old in enumerate(order, start=1):
        new_of_old[old - 1] = new_pos
    return T.permuted(new_of_old), tuple(new_of_old)
