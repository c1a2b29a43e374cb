"""Concrete GL_n realization of the type-A cross-section machinery.

Root alpha = e_a - e_b corresponds to the matrix position (a, b); the root
subgroup element u_ab(t) is I + t*E_ab and lifts of Weyl elements are plain
0/1 permutation matrices.  Everything runs over a prime field or over the
rationals; matrices are tuples of tuples of field scalars.

The conjugation map xi and its section sigma follow the level filtration:
sigma first splits g = y * (lift u ell) by one linear solve per row of the
unipotent factor, then walks the filtration down one level at a time,
conjugating the level-i part through the lift.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from .convexity import INFINITY, analyze, is_quasi_convex
from .errors import InconsistencyError, InputError, NotInCellError
from .linalg import mat_inv, rank, solve
from .roots import CartanType, RootSystem, build_root_system
from .weyl import TwistedElement

Matrix = Tuple[Tuple[object, ...], ...]
Position = Tuple[int, int]


class Fp:
    """An element of the prime field F_p."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _val(self, other) -> Optional[int]:
        if isinstance(other, Fp):
            return other.v
        if isinstance(other, int):
            return other
        return None

    def __add__(self, other):
        o = self._val(other)
        return NotImplemented if o is None else Fp(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._val(other)
        return NotImplemented if o is None else Fp(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._val(other)
        return NotImplemented if o is None else Fp(o - self.v, self.p)

    def __mul__(self, other):
        o = self._val(other)
        return NotImplemented if o is None else Fp(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._val(other)
        if o is None:
            return NotImplemented
        return Fp(self.v * pow(o, self.p - 2, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._val(other)
        if o is None:
            return NotImplemented
        return Fp(o * pow(self.v, self.p - 2, self.p), self.p)

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __eq__(self, other):
        o = self._val(other)
        return NotImplemented if o is None else self.v == o % self.p

    def __hash__(self):
        return hash((self.v, self.p))

    def __repr__(self):
        return f"{self.v}"


class PrimeField:
    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise InputError(f"{p} is not prime")
        self.p = p
        self.zero = Fp(0, p)
        self.one = Fp(1, p)

    def of(self, v: int) -> Fp:
        return Fp(v, self.p)

    def random(self, rng: random.Random) -> Fp:
        return Fp(rng.randrange(self.p), self.p)

    def random_unit(self, rng: random.Random) -> Fp:
        return Fp(rng.randrange(1, self.p), self.p)

    def elements(self) -> List[Fp]:
        return [Fp(v, self.p) for v in range(self.p)]

    def units(self) -> List[Fp]:
        return [Fp(v, self.p) for v in range(1, self.p)]

    def describe(self) -> str:
        return f"F{self.p}"


class RationalField:
    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def of(self, v: int) -> Fraction:
        return Fraction(v)

    def random(self, rng: random.Random) -> Fraction:
        return Fraction(rng.randint(-5, 5))

    def random_unit(self, rng: random.Random) -> Fraction:
        v = 0
        while v == 0:
            v = rng.randint(-5, 5)
        return Fraction(v)

    def describe(self) -> str:
        return "Q"


def make_field(spec):
    """'rational'/None -> Q, a prime integer -> F_p."""
    if spec in (None, "rational", "Q", "q"):
        return RationalField()
    return PrimeField(int(spec))


# ---------------------------------------------------------------------------
# Matrices over a field.


def identity_matrix(field, n: int) -> Matrix:
    return tuple(
        tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n)
    )


def mmul(A: Matrix, B: Matrix) -> Matrix:
    n = len(A)
    m = len(B[0])
    k = len(B)
    return tuple(
        tuple(
            _dotsum(A[i], B, j, k)
            for j in range(m)
        )
        for i in range(n)
    )


def _dotsum(row, B, j, k):
    acc = row[0] * B[0][j]
    for t in range(1, k):
        acc = acc + row[t] * B[t][j]
    return acc


def minv(field, A: Matrix) -> Matrix:
    return tuple(
        tuple(r) for r in mat_inv([list(r) for r in A], field.one, field.zero)
    )


def mat_key(A: Matrix) -> Tuple:
    return tuple(tuple(repr(v) for v in row) for row in A)


@dataclass(frozen=True, eq=False)
class MatrixGroupContext:
    """GL_n over a chosen scalar field, wired to the A_(n-1) root system."""

    n: int
    field: object
    rs: RootSystem
    pos_of_root: Dict[int, Position]
    root_of_pos: Dict[Position, int]

    def u(self, pos: Position, t) -> Matrix:
        a, b = pos
        rows = [list(r) for r in identity_matrix(self.field, self.n)]
        rows[a][b] = t
        return tuple(tuple(r) for r in rows)

    def diag(self, entries: Sequence) -> Matrix:
        return tuple(
            tuple(entries[i] if i == j else self.field.zero for j in range(self.n))
            for i in range(self.n)
        )


def matrix_context(n: int, field_spec="rational") -> MatrixGroupContext:
    if n < 2:
        raise InputError("matrix realization needs n >= 2")
    rs = build_root_system(CartanType("A", n - 1))
    pos_of_root: Dict[int, Position] = {}
    root_of_pos: Dict[Position, int] = {}
    for i, v in enumerate(rs.roots):
        a = v.index(Fraction(1))
        b = v.index(Fraction(-1))
        pos_of_root[i] = (a, b)
        root_of_pos[(a, b)] = i
    return MatrixGroupContext(
        n=n,
        field=make_field(field_spec),
        rs=rs,
        pos_of_root=pos_of_root,
        root_of_pos=root_of_pos,
    )


def underlying_permutation(x: TwistedElement) -> Tuple[int, ...]:
    """pi with x(e_a - e_b) = e_pi(a) - e_pi(b), from the reduced word."""
    n = x.rs.rank + 1
    perm = list(range(n))
    for lab in x.word():
        swapped = list(range(n))
        swapped[lab], swapped[lab + 1] = lab + 1, lab
        perm = [perm[swapped[t]] for t in range(n)]
    return tuple(perm)


def lift(ctx: MatrixGroupContext, x: TwistedElement) -> Matrix:
    """The canonical 0/1 permutation-matrix lift of an untwisted element."""
    if x.twist_power % x.twist.order != 0:
        raise InputError("matrix lifts are only defined for untwisted elements")
    if x.rs.cartan_type != ctx.rs.cartan_type:
        raise InputError("element does not belong to this context's root system")
    pi = underlying_permutation(x)
    rows = [[ctx.field.zero] * ctx.n for _ in range(ctx.n)]
    for i in range(ctx.n):
        rows[pi[i]][i] = ctx.field.one
    return tuple(tuple(r) for r in rows)


# ---------------------------------------------------------------------------
# Unipotent coordinates.


def _closed_positions(ctx, positions: Sequence[Position]) -> bool:
    pset = set(positions)
    for (a, b) in pset:
        for (c, d) in pset:
            if b == c and (a, d) != (a, b) and a != d:
                if (a, d) not in pset:
                    return False
    return True


def unipotent_from_coords(ctx, order: Sequence[Position], coords: Sequence) -> Matrix:
    out = identity_matrix(ctx.field, ctx.n)
    for pos, t in zip(order, coords):
        if t != ctx.field.zero:
            out = mmul(out, ctx.u(pos, t))
    return out


def unipotent_coordinates(
    ctx, mat: Matrix, order: Sequence[Position]
) -> List:
    """Coordinates t with mat = product of u_pos(t) in the given order.

    The positions must all be strictly upper or all strictly lower and
    span a closed set; entries of `mat` outside that set must vanish.
    Solved height by height: a coordinate at height h enters its own
    matrix entry linearly and every other entry only at height > h.
    """
    uppers = {a < b for (a, b) in order}
    if len(uppers) > 1:
        raise InputError("cannot mix upper and lower positions in one order")
    if not _closed_positions(ctx, order):
        raise InputError("positions do not span a closed set")
    pset = set(order)
    zero = ctx.field.zero
    for i in range(ctx.n):
        for j in range(ctx.n):
            if i == j:
                if mat[i][j] != ctx.field.one:
                    raise NotInCellError("matrix is not unipotent")
            elif (i, j) not in pset and mat[i][j] != zero:
                raise NotInCellError(
                    f"support outside the closed set at position {(i, j)}"
                )
    coords = [zero] * len(order)
    heights = [abs(a - b) for (a, b) in order]
    for h in range(1, ctx.n):
        if h not in heights:
            continue
        built = unipotent_from_coords(ctx, order, coords)
        for k, pos in enumerate(order):
            if heights[k] == h:
                coords[k] = coords[k] + (mat[pos[0]][pos[1]] - built[pos[0]][pos[1]])
    if unipotent_from_coords(ctx, order, coords) != mat:
        raise NotInCellError("coordinate extraction failed to reproduce the matrix")
    return coords


# ---------------------------------------------------------------------------
# Cross-section data.


@dataclass(frozen=True, eq=False)
class CrossSectionData:
    ctx: MatrixGroupContext
    x: TwistedElement
    lift_mat: Matrix
    lift_inv: Matrix
    pi: Tuple[int, ...]
    J_labels: FrozenSet[int]
    blk: Tuple[int, ...]
    phi_pos: Tuple[Position, ...]
    phi_neg: Tuple[Position, ...]
    rn: Tuple[Position, ...]
    levels: Dict[int, Tuple[Position, ...]]
    max_level: int
    cycles: Tuple[Tuple[int, ...], ...]

    @property
    def level_one(self) -> Tuple[Position, ...]:
        return self.levels.get(1, ())

    def dims(self) -> Dict[str, int]:
        return {
            "domain_unipotent": len(self.rn),
            "level_one": len(self.level_one),
            "levi_plus": len(self.phi_pos),
            "levi_minus": len(self.phi_neg),
            "torus_cycles": len(self.cycles),
        }


def build_cross_section(ctx: MatrixGroupContext, x: TwistedElement) -> CrossSectionData:
    rs = ctx.rs
    if x.rs.cartan_type != rs.cartan_type:
        raise InputError("element rank does not match the matrix context")
    report = analyze(x)
    pi = underlying_permutation(x)
    J = frozenset(
        lab for lab in range(rs.rank) if rs.simple_indices[lab] in report.phi_x
    )
    blk = [0] * ctx.n
    b = 0
    for t in range(1, ctx.n):
        if (t - 1) not in J:
            b += 1
        blk[t] = b
    phi_pos = tuple(
        ctx.pos_of_root[i]
        for i in range(rs.positive_count)
        if i in report.phi_x
    )
    phi_neg = tuple((b_, a_) for (a_, b_) in phi_pos)
    rn = tuple(
        ctx.pos_of_root[i]
        for i in range(rs.positive_count)
        if i not in report.phi_x
    )
    levels: Dict[int, List[Position]] = {}
    for i in range(rs.positive_count):
        lev = report.n_table[i]
        if lev is not INFINITY:
            levels.setdefault(int(lev), []).append(ctx.pos_of_root[i])
    seen = set()
    cycles = []
    for s in range(ctx.n):
        if s in seen:
            continue
        cyc = []
        t = s
        while t not in seen:
            seen.add(t)
            cyc.append(t)
            t = pi[t]
        cycles.append(tuple(cyc))
    return CrossSectionData(
        ctx=ctx,
        x=x,
        lift_mat=lift(ctx, x),
        lift_inv=minv(ctx.field, lift(ctx, x)),
        pi=pi,
        J_labels=J,
        blk=tuple(blk),
        phi_pos=phi_pos,
        phi_neg=phi_neg,
        rn=rn,
        levels={k: tuple(v) for k, v in levels.items()},
        max_level=report.max_level,
        cycles=tuple(cycles),
    )


@dataclass(frozen=True)
class CellPoint:
    """Coordinates of a point of the conjugation-map domain."""

    y_coords: Tuple
    u_coords: Tuple
    ell_plus: Tuple
    ell_diag: Tuple
    ell_minus: Tuple


def identity_cell_point(data: CrossSectionData) -> CellPoint:
    f = data.ctx.field
    return CellPoint(
        y_coords=tuple(f.zero for _ in data.rn),
        u_coords=tuple(f.zero for _ in data.level_one),
        ell_plus=tuple(f.zero for _ in data.phi_pos),
        ell_diag=tuple(f.one for _ in range(data.ctx.n)),
        ell_minus=tuple(f.zero for _ in data.phi_neg),
    )


def ell_matrix(data: CrossSectionData, p: CellPoint) -> Matrix:
    ctx = data.ctx
    a = unipotent_from_coords(ctx, data.phi_pos, p.ell_plus)
    d = ctx.diag(p.ell_diag)
    b = unipotent_from_coords(ctx, data.phi_neg, p.ell_minus)
    return mmul(mmul(a, d), b)


def xi(data: CrossSectionData, p: CellPoint) -> Matrix:
    """The conjugation map: (y, lift*ell*u) -> y (lift ell u) y^-1."""
    ctx = data.ctx
    y = unipotent_from_coords(ctx, data.rn, p.y_coords)
    u = unipotent_from_coords(ctx, data.level_one, p.u_coords)
    z = mmul(mmul(data.lift_mat, ell_matrix(data, p)), u)
    return mmul(mmul(y, z), minv(ctx.field, y))


def _forbidden_pattern(data: CrossSectionData) -> List[Position]:
    """Positions that must vanish in lift^-1 * (remainder) for membership."""
    ctx = data.ctx
    sprime = set(data.level_one) | set(data.phi_pos)
    out = []
    for i in range(ctx.n):
        for j in range(ctx.n):
            if i < j and (i, j) not in sprime:
                out.append((i, j))
            elif i > j and data.blk[i] != data.blk[j]:
                out.append((i, j))
    return out


def _solve_initial_unipotent(data: CrossSectionData, g: Matrix) -> Matrix:
    """The v = y^-1 with lift^-1 v g matching the U_1 L pattern, by row."""
    ctx = data.ctx
    f = ctx.field
    n = ctx.n
    forbidden = _forbidden_pattern(data)
    pi_inv = [0] * n
    for i, v in enumerate(data.pi):
        pi_inv[v] = i
    cols_of_row: Dict[int, List[int]] = {}
    for (a, k) in data.rn:
        cols_of_row.setdefault(a, []).append(k)
    ban_by_row: Dict[int, List[int]] = {}
    for (i, j) in forbidden:
        ban_by_row.setdefault(data.pi[i], []).append(j)
    rows = [list(identity_matrix(f, n)[i]) for i in range(n)]
    for a in range(n):
        bans = ban_by_row.get(a, [])
        unknowns = cols_of_row.get(a, [])
        if not bans:
            continue
        if not unknowns:
            for j in bans:
                if g[a][j] != f.zero:
                    raise NotInCellError(
                        f"row {a} cannot be cleared: no unipotent freedom"
                    )
            continue
        A = [[g[k][j] for k in unknowns] for j in bans]
        b = [f.zero - g[a][j] for j in bans]
        sol = solve(A, b, f.one, f.zero)
        if sol is None:
            raise NotInCellError(f"row {a} of the unipotent factor is unsolvable")
        for k, val in zip(unknowns, sol):
            rows[a][k] = val
    return tuple(tuple(r) for r in rows)


def _factor_ul(data: CrossSectionData, w: Matrix, upper_support: Sequence[Position]):
    """w = A * D * B with A unipotent upper (support given), D diagonal,
    B unipotent lower supported on the Levi blocks."""
    ctx = data.ctx
    f = ctx.field
    n = ctx.n
    m = [list(r) for r in w]
    ops: List[Tuple[Position, object]] = []
    for i in range(n - 1, -1, -1):
        for j in range(i):
            if m[i][j] == f.zero:
                continue
            if data.blk[i] != data.blk[j]:
                raise NotInCellError(f"off-block lower entry at {(i, j)}")
            if m[i][i] == f.zero:
                raise NotInCellError(f"zero pivot at row {i} during Levi split")
            t = f.zero - m[i][j] / m[i][i]
            for r in range(n):
                m[r][j] = m[r][j] + t * m[r][i]
            ops.append(((i, j), t))
    d = [m[i][i] for i in range(n)]
    if any(v == f.zero for v in d):
        raise NotInCellError("singular diagonal in the Levi factorization")
    A = tuple(
        tuple(m[i][j] / d[j] for j in range(n)) for i in range(n)
    )
    sset = set(upper_support)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if A[i][j] != f.zero and (i, j) not in sset:
                raise NotInCellError(f"upper support violation at {(i, j)}")
    binv = identity_matrix(f, n)
    for pos, t in ops:
        binv = mmul(binv, ctx.u(pos, t))
    B = minv(f, binv)
    return A, tuple(d), B


def sigma(data: CrossSectionData, g: Matrix) -> CellPoint:
    """Section of xi: recover the unique cell point with xi(point) = g.

    Walks the level filtration top-down; every factorization failure is
    reported as the matrix not lying in the cell.
    """
    ctx = data.ctx
    f = ctx.field
    if not is_quasi_convex(data.x):
        raise InputError("the section is only defined for quasi-convex elements")
    v = _solve_initial_unipotent(data, g)
    y = minv(f, v)
    z = mmul(v, g)
    # phi: (y, z) -> (y, z y); afterwards g = y z y^-1 stays invariant.
    z = mmul(z, y)
    for lev in range(data.max_level, 1, -1):
        upper = [
            p
            for l in range(1, lev + 1)
            for p in data.levels.get(l, ())
        ]
        w = mmul(data.lift_inv, z)
        A, d, B = _factor_ul(data, w, tuple(upper) + data.phi_pos)
        order = (
            list(data.levels.get(lev, ()))
            + [p for l in range(1, lev) for p in data.levels.get(l, ())]
            + list(data.phi_pos)
        )
        coords = unipotent_coordinates(ctx, A, order)
        cut = len(data.levels.get(lev, ()))
        u_mat = unipotent_from_coords(ctx, order[:cut], coords[:cut])
        udd = mmul(mmul(data.lift_mat, u_mat), data.lift_inv)
        prev = set(data.levels.get(lev - 1, ()))
        for i in range(ctx.n):
            for j in range(ctx.n):
                if i != j and udd[i][j] != f.zero and (i, j) not in prev:
                    raise InconsistencyError(
                        "level descent produced support outside the previous level"
                    )
        y = mmul(y, udd)
        udd_inv = minv(f, udd)
        z = mmul(mmul(udd_inv, z), udd)
    w = mmul(data.lift_inv, z)
    A, d, B = _factor_ul(data, w, data.level_one + data.phi_pos)
    order = list(data.level_one) + list(data.phi_pos)
    coords = unipotent_coordinates(ctx, A, order)
    cut = len(data.level_one)
    u1 = unipotent_from_coords(ctx, order[:cut], coords[:cut])
    aplus_coords = coords[cut:]
    aplus = unipotent_from_coords(ctx, data.phi_pos, aplus_coords)
    ell = mmul(mmul(aplus, ctx.diag(d)), B)
    # Convert from z = lift * u1 * ell to the published order z = lift * ell * u.
    ell_inv = minv(f, ell)
    u_final = mmul(mmul(ell_inv, u1), ell)
    u_coords = unipotent_coordinates(ctx, u_final, data.level_one)
    y_coords = unipotent_coordinates(ctx, y, data.rn)
    b_coords = unipotent_coordinates(ctx, B, data.phi_neg)
    point = CellPoint(
        y_coords=tuple(y_coords),
        u_coords=tuple(u_coords),
        ell_plus=tuple(aplus_coords),
        ell_diag=tuple(d),
        ell_minus=tuple(b_coords),
    )
    if xi(data, point) != g:
        raise NotInCellError("factorization did not reproduce the input matrix")
    return point


# ---------------------------------------------------------------------------
# Torus of the Levi and random sampling.


def torus_element(data: CrossSectionData, cycle_values: Sequence, coroot_values: Sequence) -> Tuple:
    """diag entries from one unit per permutation cycle and one per Levi root."""
    f = data.ctx.field
    diag = [f.one] * data.ctx.n
    for cyc, t in zip(data.cycles, cycle_values):
        for i in cyc:
            diag[i] = diag[i] * t
    for (a, b), t in zip(data.phi_pos, coroot_values):
        diag[a] = diag[a] * t
        diag[b] = diag[b] / t
    return tuple(diag)


def random_cell_point(data: CrossSectionData, rng: random.Random) -> CellPoint:
    f = data.ctx.field
    return CellPoint(
        y_coords=tuple(f.random(rng) for _ in data.rn),
        u_coords=tuple(f.random(rng) for _ in data.level_one),
        ell_plus=tuple(f.random(rng) for _ in data.phi_pos),
        ell_diag=torus_element(
            data,
            [f.random_unit(rng) for _ in data.cycles],
            [f.random_unit(rng) for _ in data.phi_pos],
        ),
        ell_minus=tuple(f.random(rng) for _ in data.phi_neg),
    )


def random_section_point(data: CrossSectionData, rng: random.Random) -> Matrix:
    """A random matrix of the cross-section itself (no conjugation)."""
    p = random_cell_point(data, rng)
    ctx = data.ctx
    u = unipotent_from_coords(ctx, data.level_one, p.u_coords)
    return mmul(mmul(data.lift_mat, ell_matrix(data, p)), u)


def enumerate_torus(data: CrossSectionData) -> List[Tuple]:
    """All diagonal parts of the Levi torus over a finite field."""
    f = data.ctx.field
    units = f.units()
    out = {tuple(f.one for _ in range(data.ctx.n))}
    frontier = list(out)
    gens = []
    for ci in range(len(data.cycles)):
        for t in units:
            vals = [f.one] * len(data.cycles)
            vals[ci] = t
            gens.append(torus_element(data, vals, [f.one] * len(data.phi_pos)))
    for ri in range(len(data.phi_pos)):
        for t in units:
            vals = [f.one] * len(data.phi_pos)
            vals[ri] = t
            gens.append(torus_element(data, [f.one] * len(data.cycles), vals))
    while frontier:
        nxt = []
        for d in frontier:
            for gdiag in gens:
                prod = tuple(a * b for a, b in zip(d, gdiag))
                if prod not in out:
                    out.add(prod)
                    nxt.append(prod)
        frontier = nxt
    return sorted(out, key=lambda d: tuple(v.v for v in d))


def enumerate_cell_points(data: CrossSectionData) -> Iterator[CellPoint]:
    """Every cell point over a finite field, in deterministic order."""
    from itertools import product

    f = data.ctx.field
    elems = f.elements()
    torus = enumerate_torus(data)
    for yc in product(elems, repeat=len(data.rn)):
        for uc in product(elems, repeat=len(data.level_one)):
            for ap in product(elems, repeat=len(data.phi_pos)):
                for dg in torus:
                    for am in product(elems, repeat=len(data.phi_neg)):
                        yield CellPoint(yc, uc, ap, dg, am)


def collision_search(
    data: CrossSectionData, budget: int = 200_000
) -> Optional[Tuple[CellPoint, CellPoint]]:
    """Search for two distinct cell points with the same image.

    Returns None when the budget runs out (or, for convex x, when the full
    finite domain was exhausted without a collision, which is the theorem).
    """
    seen: Dict[Tuple, CellPoint] = {}
    count = 0
    for p in enumerate_cell_points(data):
        if count >= budget:
            return None
        count += 1
        key = mat_key(xi(data, p))
        if key in seen and seen[key] != p:
            return seen[key], p
        seen[key] = p
    return None


# ---------------------------------------------------------------------------
# Tangent-space transversality.


def _flatten(M: Matrix) -> List:
    return [v for row in M for v in row]


def adjoint_span_rank(data: CrossSectionData, g: Matrix) -> int:
    """Rank of (Ad(g^-1) - 1)(gl_n) + levi algebra + level-one nilpotent."""
    ctx = data.ctx
    f = ctx.field
    n = ctx.n
    ginv = minv(f, g)
    cols: List[List] = []
    for a in range(n):
        for b in range(n):
            E = [[f.zero] * n for _ in range(n)]
            E[a][b] = f.one
            T = mmul(mmul(ginv, tuple(tuple(r) for r in E)), g)
            col = _flatten(T)
            col[a * n + b] = col[a * n + b] - f.one
            cols.append(col)
    for (a, b) in data.phi_pos + data.phi_neg:
        col = [f.zero] * (n * n)
        col[a * n + b] = f.one
        cols.append(col)
    for cyc in data.cycles:
        col = [f.zero] * (n * n)
        for i in cyc:
            col[i * n + i] = f.one
        cols.append(col)
    for (a, b) in data.phi_pos:
        col = [f.zero] * (n * n)
        col[a * n + a] = f.one
        col[b * n + b] = f.zero - f.one
        cols.append(col)
    for (a, b) in data.level_one:
        col = [f.zero] * (n * n)
        col[a * n + b] = f.one
        cols.append(col)
    rows = [[cols[c][r] for c in range(len(cols))] for r in range(n * n)]
    return rank(rows, f.zero)


def transversality_check(data: CrossSectionData, g: Matrix) -> bool:
    """Whether the tangent spaces span gl_n at a cross-section point."""
    if not isinstance(data.ctx.field, RationalField):
        raise InputError("the tangent-space check runs over the rationals")
    return adjoint_span_rank(data, g) == data.ctx.n * data.ctx.n
