"""Multiplication on the trimmed resolution.

The trimmed complex carries a DG-algebra structure extending the one on the
length-3 selfdual resolution and the Koszul blocks.  Each product of two basis
elements is a polynomial combination of basis elements one degree up, with
correction terms whose coefficients are built from signed subpfaffian sums and
the variable-splitting constants of the matrix entries.  This module computes
those correction constants (`d_constants`), individual products (`product`),
the complete multiplication table (`full_table`), and checks the Leibniz rule
against the differentials (`verify_leibniz`).

Products are defined once per orientation (lower degree first, canonical index
order); the remaining pairs follow by graded commutativity.  Squares of
odd-degree basis elements are set to zero in every characteristic, and pairs
whose degrees sum past the top of the complex multiply to zero.
"""

import dataclasses

from .errors import ArgumentError, FieldMismatch
from .pfaffian import pfaffian_drop, rearrange_sign, sigma3, sigma5
from .resolution import BasisElement, signed_v

_INDEX_PAIRS = ((1, 2), (1, 3), (2, 3))


class ChainElement:
    """A finite combination of same-degree basis elements with polynomial
    coefficients.  Degree-0 elements are multiples of the unit generator."""

    __slots__ = ("ring", "degree", "coords")

    def __init__(self, ring, degree, coords=None):
        if not isinstance(degree, int) or degree < 0:
            raise ArgumentError(f"invalid homological degree {degree!r}")
        clean = {}
        for elem, coeff in (coords or {}).items():
            if not isinstance(elem, BasisElement):
                raise ArgumentError(f"not a basis element: {elem!r}")
            if elem.degree != degree:
                raise ArgumentError(
                    f"{elem.label} has degree {elem.degree}, element is "
                    f"declared degree {degree}")
            if coeff.ring is not ring:
                raise FieldMismatch("coefficient from a different ring")
            if not coeff.is_zero:
                clean[elem] = coeff
        self.ring = ring
        self.degree = degree
        self.coords = clean

    @classmethod
    def of(cls, ring, elem):
        return cls(ring, elem.degree, {elem: ring.one})

    @property
    def is_zero(self):
        return not self.coords

    @property
    def scalar(self):
        if self.degree != 0:
            raise ArgumentError("scalar part is only defined in degree 0")
        return self.coords.get(BasisElement.ONE(), self.ring.zero)

    def coefficient(self, elem):
        return self.coords.get(elem, self.ring.zero)

    def _combine(self, other, sign):
        if not isinstance(other, ChainElement):
            return NotImplemented
        if other.ring is not self.ring:
            raise FieldMismatch("elements over different rings")
        if other.degree != self.degree:
            raise ArgumentError(
                f"cannot combine degrees {self.degree} and {other.degree}")
        coords = dict(self.coords)
        for elem, coeff in other.coords.items():
            coords[elem] = coords.get(elem, self.ring.zero) + \
                (coeff if sign > 0 else -coeff)
        return ChainElement(self.ring, self.degree, coords)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scaled(-1)

    def scaled(self, factor):
        if not hasattr(factor, "terms"):
            factor = self.ring.constant(factor)
        coords = {elem: coeff * factor for elem, coeff in self.coords.items()}
        return ChainElement(self.ring, self.degree, coords)

    def __eq__(self, other):
        if not isinstance(other, ChainElement):
            return NotImplemented
        return self.ring is other.ring and self.degree == other.degree \
            and self.coords == other.coords

    __hash__ = None

    def __str__(self):
        if not self.coords:
            return "0"
        parts = []
        for elem in sorted(self.coords, key=lambda b: (b.kind, b.data)):
            text = str(self.coords[elem])
            if text == "1":
                parts.append(elem.label)
            elif "+" in text or text.startswith("-") or " " in text:
                parts.append(f"({text})*{elem.label}")
            else:
                parts.append(f"{text}*{elem.label}")
        return " + ".join(parts)

    def __repr__(self):
        return f"<{self.__class__.__name__} deg {self.degree}: {self}>"


def zero_element(ring, degree):
    return ChainElement(ring, degree, {})


def boundary(complex_, element):
    """Apply the complex differential to a chain element."""
    deg = element.degree
    if not 1 <= deg <= 3:
        raise ArgumentError(f"no differential out of degree {deg}")
    mat = complex_.differential(deg)
    targets = complex_.basis(deg - 1)
    ring = complex_.ring
    coords = {}
    for elem, coeff in element.coords.items():
        col = complex_.index_of(deg, elem)
        for row, target in enumerate(targets):
            entry = mat[row][col]
            if entry.is_zero:
                continue
            coords[target] = coords.get(target, ring.zero) + entry * coeff
    return ChainElement(ring, deg - 1, coords)


_D_FLAVORS = {"two_index": 5, "three_index": 6, "four_index": 7}


def d_constants(td, flavor, indices):
    """Correction constant for the given flavor and index tuple.

    Flavors and their index tuples: "two_index" (k,i,j,a,b), "three_index"
    (k,i,j,l,a,b), "four_index" (k,i,j,l,s,a,b).  Here k labels a trimmed
    index, i and j are matrix indices, l and s are variable indices, and (a,b)
    is the target variable pair, extended antisymmetrically when a >= b.
    """
    if flavor not in _D_FLAVORS:
        raise ArgumentError(f"unknown constant flavor {flavor!r}")
    indices = tuple(indices)
    if len(indices) != _D_FLAVORS[flavor] or \
            not all(isinstance(n, int) for n in indices):
        raise ArgumentError(
            f"flavor {flavor!r} takes {_D_FLAVORS[flavor]} integer indices, "
            f"got {indices!r}")
    k, i, j, *rest = indices
    *vars_, a, b = rest
    if not 1 <= k <= td.t:
        raise ArgumentError(f"trimmed index {k} out of range 1..{td.t}")
    for n in (i, j):
        if not 1 <= n <= td.m:
            raise ArgumentError(f"matrix index {n} out of range 1..{td.m}")
    for n in (a, b, *vars_):
        if not 1 <= n <= 3:
            raise ArgumentError(f"variable index {n} out of range 1..3")
    if a == b:
        return td.ring.zero
    if a > b:
        return -d_constants(td, flavor, (k, i, j, *vars_, b, a))
    if flavor == "two_index":
        return _d_two(td, k, i, j, a, b)
    if flavor == "three_index":
        return _d_three(td, k, i, j, vars_[0], a, b)
    return _d_four(td, k, i, j, vars_[0], vars_[1], a, b)


def _memo(td):
    # scratch space for the two hot sums below, keyed by their arguments;
    # stored on the (frozen) dataclass through the __dict__ escape so the
    # public field set stays as documented
    cache = td.__dict__.get("_product_cache")
    if cache is None:
        cache = {}
        object.__setattr__(td, "_product_cache", cache)
    return cache


def _d_two(td, k, i, j, a, b):
    cache = _memo(td)
    key = ("d2", k, i, j, a, b)
    hit = cache.get(key)
    if hit is not None:
        return hit
    acc = td.ring.zero
    for r in range(1, td.m + 1):
        s3 = sigma3(i, j, r)
        if s3 == 0:
            continue
        cr = td.c[(r, k)][b - 1]
        if cr.is_zero:
            continue
        for h in range(1, td.m + 1):
            s5 = sigma5(i, j, r, h, k)
            if s5 == 0:
                continue
            ch = td.c[(h, k)][a - 1]
            if ch.is_zero:
                continue
            pf = pfaffian_drop(td.T, (i, j, r, h, k))
            if pf.is_zero:
                continue
            term = pf * cr * ch
            acc = acc + term if s3 * s5 > 0 else acc - term
    cache[key] = acc
    return acc


def _skew_weighted_sum(td, i, j, var):
    # sum over r of sign(i,j,r) * subpfaffian * splitting constant of T[var][r]
    cache = _memo(td)
    key = ("sw", i, j, var)
    hit = cache.get(key)
    if hit is not None:
        return hit
    acc = td.ring.zero
    for r in range(1, td.m + 1):
        s3 = sigma3(i, j, r)
        if s3 == 0:
            continue
        weight = td.c[(r, var[0])][var[1] - 1]
        if weight.is_zero:
            continue
        pf = pfaffian_drop(td.T, (i, j, r))
        if pf.is_zero:
            continue
        term = pf * weight
        acc = acc + term if s3 > 0 else acc - term
    cache[key] = acc
    return acc


def _d_three(td, k, i, j, l, a, b):
    if k != i:
        return _d_two(td, k, i, j, a, b) * td.ring.gens[l - 1]
    if {a, b, l} == {1, 2, 3}:
        return td.ring.zero
    if l == a:
        return _skew_weighted_sum(td, i, j, (i, b))
    return -_skew_weighted_sum(td, i, j, (i, a))


def _d_four(td, k, i, j, l, s, a, b):
    gens = td.ring.gens
    if k != i and k != j:
        return _d_two(td, k, i, j, a, b) * (gens[l - 1] * gens[s - 1])
    if k == i:
        return _d_three(td, i, i, j, l, a, b) * gens[s - 1]
    if {a, b, s} == {1, 2, 3}:
        return td.ring.zero
    if s == a:
        return _skew_weighted_sum(td, i, j, (j, b)) * gens[l - 1]
    return -_skew_weighted_sum(td, i, j, (j, a)) * gens[l - 1]


def gorenstein_product(T, x, y):
    """Product of two basis elements of the untrimmed selfdual resolution."""
    ring = T.ring
    for elem in (x, y):
        if not isinstance(elem, BasisElement) or \
                elem.kind not in ("one", "e", "f", "g"):
            raise ArgumentError(f"not an untrimmed basis element: {elem!r}")
        if elem.kind in ("e", "f") and elem.data[0] > T.m:
            raise ArgumentError(f"{elem.label} out of range for size {T.m}")
    if x.kind == "one":
        return ChainElement.of(ring, y)
    if y.kind == "one":
        return ChainElement.of(ring, x)
    if x.degree + y.degree > 3:
        return zero_element(ring, x.degree + y.degree)
    if x.kind == "e" and y.kind == "e":
        i, j = x.data[0], y.data[0]
        coords = {}
        for r in range(1, T.m + 1):
            s3 = sigma3(i, j, r)
            if s3 == 0:
                continue
            pf = pfaffian_drop(T, (i, j, r))
            coords[BasisElement.F(r)] = pf if s3 > 0 else -pf
        return ChainElement(ring, 2, coords)
    # one factor in degree 1, the other in degree 2
    i = x.data[0] if x.kind == "e" else y.data[0]
    j = y.data[0] if x.kind == "e" else x.data[0]
    if i == j:
        return ChainElement.of(ring, BasisElement.G())
    return zero_element(ring, 3)


def product(td, x, y):
    """Product of two basis elements of the trimmed complex."""
    C = td.complex
    for elem in (x, y):
        if not isinstance(elem, BasisElement):
            raise ArgumentError(f"not a basis element: {elem!r}")
        C.index_of(elem.degree, elem)
    ring = td.ring
    if x.kind == "one":
        return ChainElement.of(ring, y)
    if y.kind == "one":
        return ChainElement.of(ring, x)
    dx, dy = x.degree, y.degree
    if dx + dy > 3:
        return zero_element(ring, dx + dy)
    if x == y:
        return zero_element(ring, 2)
    if dx > dy:
        # degrees (2,1); the commutativity sign (-1)^(2*1) is +1
        return product(td, y, x)
    if dy == 1:
        if x.kind == "e" and y.kind == "e":
            return _product_ee(td, x.data[0], y.data[0])
        if x.kind == "e":
            return _product_eu(td, x.data[0], *y.data)
        if y.kind == "e":
            return -_product_eu(td, y.data[0], *x.data)
        i, l = x.data
        j, s = y.data
        if i == j:
            return _product_uu_same(td, i, l, s)
        if i < j:
            return _product_uu_mixed(td, i, l, j, s)
        return -_product_uu_mixed(td, j, s, i, l)
    if x.kind == "e":
        if y.kind == "f":
            return _product_ef(td, x.data[0], y.data[0])
        return _product_ev(td, x.data[0], *y.data)
    if y.kind == "f":
        return _product_uf(td, *x.data, y.data[0])
    i, l = x.data
    k, a, b = y.data
    if i == k:
        return _product_uv_same(td, i, l, a, b)
    return _product_uv_mixed(td, i, l, k, a, b)


def _trimming_corrections(td, constant_of):
    coords = {}
    for k in range(1, td.t + 1):
        for a, b in _INDEX_PAIRS:
            value = constant_of(k, a, b)
            if not value.is_zero:
                coords[BasisElement.V(k, a, b)] = value
    return coords


def _selfdual_part(td, i, j, factor):
    coords = {}
    for r in range(1, td.m + 1):
        s3 = sigma3(i, j, r)
        if s3 == 0:
            continue
        pf = pfaffian_drop(td.T, (i, j, r))
        if pf.is_zero:
            continue
        value = pf * factor if factor is not None else pf
        coords[BasisElement.F(r)] = value if s3 > 0 else -value
    return coords


def _product_ee(td, i, j):
    coords = _selfdual_part(td, i, j, None)
    coords.update(_trimming_corrections(
        td, lambda k, a, b: _d_two(td, k, i, j, a, b)))
    return ChainElement(td.ring, 2, coords)


def _product_eu(td, j, i, l):
    # defining orientation: degree-1 selfdual generator times trimmed generator
    zl = td.ring.gens[l - 1]
    coords = _selfdual_part(td, i, j, zl)
    coords.update(_trimming_corrections(
        td, lambda k, a, b: _d_three(td, k, i, j, l, a, b)))
    return ChainElement(td.ring, 2, coords)


def _product_uu_same(td, i, l, s):
    sign, elem = signed_v(i, l, s)
    if sign == 0:
        return zero_element(td.ring, 2)
    yi = td.y[i - 1]
    return ChainElement(td.ring, 2, {elem: -yi if sign > 0 else yi})


def _product_uu_mixed(td, i, l, j, s):
    zz = td.ring.gens[l - 1] * td.ring.gens[s - 1]
    coords = _selfdual_part(td, i, j, zz)
    coords.update(_trimming_corrections(
        td, lambda k, a, b: _d_four(td, k, i, j, l, s, a, b)))
    return ChainElement(td.ring, 2, coords)


def _ef_w_coefficient(td, i, j):
    acc = td.ring.zero
    for r in range(1, td.m + 1):
        cr = td.c[(r, j)][2]
        if cr.is_zero:
            continue
        acc = acc + cr * _d_two(td, j, i, r, 1, 2)
    return acc


def _ef_pairing(td, i, j):
    # the degree-3 pairing of the i-th selfdual generator with the j-th
    # degree-2 generator, valid for any i; equals the (e, f) product when
    # i is an untrimmed index
    coords = {}
    if i == j:
        coords[BasisElement.G()] = td.ring.one
    if j <= td.t:
        coords[BasisElement.W(j)] = _ef_w_coefficient(td, i, j)
    return ChainElement(td.ring, 3, coords)


def _product_ef(td, i, j):
    return _ef_pairing(td, i, j)


def _product_ev(td, j, i, a, b):
    p = 6 - a - b
    acc = _skew_weighted_sum(td, i, j, (i, p))
    if p % 2 == 1:
        acc = -acc
    return ChainElement(td.ring, 3, {BasisElement.W(i): acc})


def _product_uf(td, i, l, j):
    result = _ef_pairing(td, i, j).scaled(-td.ring.gens[l - 1])
    if i == j:
        phi, psi = sorted({1, 2, 3} - {l})
        dval = td.dk[(i, phi, psi)]
        if l % 2 == 0:
            dval = -dval
        result = result + ChainElement(td.ring, 3, {BasisElement.W(i): dval})
    return result


def _product_uv_same(td, i, l, a, b):
    if l == a or l == b:
        return zero_element(td.ring, 3)
    sign = rearrange_sign((l, a, b), (1, 2, 3))
    yi = td.y[i - 1]
    return ChainElement(td.ring, 3, {
        BasisElement.W(i): -yi if sign > 0 else yi})


def _product_uv_mixed(td, i, l, j, a, b):
    p = 6 - a - b
    acc = _skew_weighted_sum(td, i, j, (j, p)) * td.ring.gens[l - 1]
    if p % 2 == 1:
        acc = -acc
    return ChainElement(td.ring, 3, {BasisElement.W(j): acc})


class ProductTable:
    """Complete multiplication table over ordered basis pairs."""

    __slots__ = ("complex", "entries")

    def __init__(self, complex_, entries):
        self.complex = complex_
        self.entries = dict(entries)

    def lookup(self, x, y):
        if x.kind == "one":
            return ChainElement.of(self.complex.ring, y)
        if y.kind == "one":
            return ChainElement.of(self.complex.ring, x)
        try:
            return self.entries[(x, y)]
        except KeyError:
            pass
        self.complex.index_of(x.degree, x)
        self.complex.index_of(y.degree, y)
        if x.degree + y.degree <= 3:
            raise ArgumentError(f"incomplete table: missing ({x!r}, {y!r})")
        return zero_element(self.complex.ring, x.degree + y.degree)

    def pairs(self):
        """Ordered pairs in deterministic (degree, basis position) order."""
        C = self.complex
        out = []
        for dx, dy in ((1, 1), (1, 2), (2, 1)):
            for x in C.basis(dx):
                for y in C.basis(dy):
                    out.append((x, y))
        return out

    def records(self):
        out = []
        for x, y in self.pairs():
            value = self.entries[(x, y)]
            target = self.complex.basis(x.degree + y.degree)
            cells = [[elem.label, str(value.coefficient(elem))]
                     for elem in target if not value.coefficient(elem).is_zero]
            out.append({"left": x.label, "right": y.label, "value": cells})
        return out


def full_table(td):
    """Multiplication table for every ordered basis pair of degree sum <= 3."""
    entries = {}
    C = td.complex
    for dx, dy in ((1, 1), (1, 2), (2, 1)):
        for x in C.basis(dx):
            for y in C.basis(dy):
                if dx > dy and (y, x) in entries:
                    entries[(x, y)] = entries[(y, x)]
                else:
                    entries[(x, y)] = product(td, x, y)
    return ProductTable(C, entries)


def multiply(table, left, right):
    """Bilinear extension of the table to chain elements."""
    ring = table.complex.ring
    degree = left.degree + right.degree
    coords = {}
    for ex, cx in left.coords.items():
        for ey, cy in right.coords.items():
            value = table.lookup(ex, ey)
            weight = cx * cy
            for elem, coeff in value.coords.items():
                coords[elem] = coords.get(elem, ring.zero) + coeff * weight
    return ChainElement(ring, degree, coords)


@dataclasses.dataclass(frozen=True)
class LeibnizReport:
    pairs_checked: int
    violations: tuple

    @property
    def all_passed(self):
        return not self.violations

    def summary_lines(self):
        if self.all_passed:
            return [f"leibniz: {self.pairs_checked} pairs, ok"]
        x, y, _ = self.violations[0]
        return [f"leibniz: FAIL ({len(self.violations)} of "
                f"{self.pairs_checked} pairs, first: {x.label}*{y.label})"]


def verify_leibniz(td, table):
    """Check the Leibniz rule on every ordered pair with the first factor of
    degree 1 and degree sum at most 3.  Violations carry the difference of the
    two sides."""
    C = td.complex
    ring = td.ring
    violations = []
    checked = 0
    for x in C.basis(1):
        x_elem = ChainElement.of(ring, x)
        bx = boundary(C, x_elem)
        for dy in (1, 2):
            for y in C.basis(dy):
                y_elem = ChainElement.of(ring, y)
                lhs = boundary(C, table.lookup(x, y))
                rhs = multiply(table, bx, y_elem) - \
                    multiply(table, x_elem, boundary(C, y_elem))
                diff = lhs - rhs
                checked += 1
                if not diff.is_zero:
                    violations.append((x, y, diff))
    return LeibnizReport(checked, tuple(violations))
