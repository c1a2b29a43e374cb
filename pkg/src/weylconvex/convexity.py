"""Sign-stability analysis of twisted Weyl elements.

For x in W x <delta> and a root gamma, either the whole forward-and-backward
x-orbit of gamma keeps its sign (gamma lies in phi_x) or there is a first
power of x that flips it (the level n_x(gamma)).  Quasi-convexity asks that
phi_x be a standard parabolic subsystem and that levels be subadditive under
root addition; convexity asks the same of the inverse.

Levels on phi_x are represented by the distinct marker INFINITY, never by a
sentinel integer, so every comparison against an infinite level is explicit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Tuple, Union

from .errors import InconsistencyError, InputError
from .weyl import TwistedElement

INFINITY = float("inf")

Level = Union[int, float]


def phi_of(x: TwistedElement) -> FrozenSet[int]:
    """Roots whose entire x-orbit stays positive or stays negative."""
    rs = x.rs
    pc = rs.positive_count
    perm = x.perm
    stable: List[int] = []
    seen = [False] * rs.count
    for start in range(rs.count):
        if seen[start]:
            continue
        orbit = []
        j = start
        while not seen[j]:
            seen[j] = True
            orbit.append(j)
            j = perm[j]
        signs = {i < pc for i in orbit}
        if len(signs) == 1:
            stable.extend(orbit)
    return frozenset(stable)


def n_of(x: TwistedElement, index: int) -> int:
    """The least i >= 1 with x^i flipping the sign of roots[index]."""
    rs = x.rs
    pc = rs.positive_count
    perm = x.perm
    positive = index < pc
    j = perm[index]
    for i in range(1, rs.count + 1):
        if (j < pc) != positive:
            return i
        j = perm[j]
    raise InputError(
        f"level is infinite: root {rs.root_str(index)} lies in phi_x"
    )


def _level_table(x: TwistedElement, phi: FrozenSet[int]) -> Dict[int, Level]:
    rs = x.rs
    pc = rs.positive_count
    perm = x.perm
    table: Dict[int, Level] = {}
    for i in range(rs.count):
        if i in phi:
            table[i] = INFINITY
            continue
        positive = i < pc
        j = perm[i]
        n = 1
        while (j < pc) == positive:
            j = perm[j]
            n += 1
        table[i] = n
    return table


def _witness_key(rs, a: int, b: int):
    return (rs.height(a), rs.coeffs[a], rs.height(b), rs.coeffs[b])


def _condition2_prime(rs, phi, table, strict: bool):
    """Production path: only pairs with n(alpha) = 1 need checking."""
    violations = []
    audit = []
    pc = rs.positive_count
    level_one = [i for i in range(pc) if table[i] == 1]
    for a in level_one:
        for b in range(pc):
            s = rs.sum_table.get((a, b))
            if s is None or s >= pc:
                continue
            if s in phi:
                # With condition (1) this cannot happen for a outside phi_x:
                # supports of positive roots add, so alpha+beta in phi_x would
                # force alpha in phi_x, contradicting n(alpha) = 1.  Strict
                # mode records the triple anyway for auditing.
                if strict:
                    audit.append((a, b, table[a], table[b], table[s]))
                continue
            if table[s] > table[b]:
                violations.append((a, b, table[a], table[b], table[s]))
    violations.sort(key=lambda v: _witness_key(rs, v[0], v[1]))
    return violations, audit


def condition2_full_pairs(x: TwistedElement) -> List[Tuple]:
    """Oracle form of condition (2): scan every positive pair.

    Returns the violating triples; empty means condition (2) holds.  Kept
    separate from the production path so the two can be compared.
    """
    rs = x.rs
    pc = rs.positive_count
    phi = phi_of(x)
    table = _level_table(x, phi)
    out = []
    for a in range(pc):
        for b in range(pc):
            s = rs.sum_table.get((a, b))
            if s is None or s >= pc or s in phi:
                continue
            bound = max(table[a], table[b])
            if table[s] > bound:
                out.append((a, b, table[a], table[b], table[s]))
    out.sort(key=lambda v: _witness_key(rs, v[0], v[1]))
    return out


@dataclass(frozen=True, eq=False)
class ConvexityReport:
    """Everything the sign-stability analysis of one element produces."""

    x: TwistedElement
    phi_x: FrozenSet[int]
    parabolic_J: Optional[FrozenSet[int]]
    n_table: Dict[int, Level]
    level_sets: Dict[int, Tuple[FrozenSet[int], FrozenSet[int]]]
    max_level: int
    condition1_ok: bool
    condition2_ok: bool
    quasi_convex: bool
    inverse_quasi_convex: bool
    convex: bool
    violations: Tuple[Tuple, ...]
    inverse_violations: Tuple[Tuple, ...]
    audit_flags: Tuple[Tuple, ...]


def _quasi_parts(x: TwistedElement, strict: bool):
    rs = x.rs
    phi = phi_of(x)
    labels = frozenset(
        lab for lab in range(rs.rank) if rs.simple_indices[lab] in phi
    )
    closure = rs.parabolic_closure(labels)
    cond1 = phi == closure
    table = _level_table(x, phi)
    violations, audit = _condition2_prime(rs, phi, table, strict)
    cond2 = not violations
    return phi, labels, cond1, table, violations, audit, cond2


def analyze(x: TwistedElement, strict: bool = False) -> ConvexityReport:
    """Full quasi-convexity / convexity report for x."""
    rs = x.rs
    pc = rs.positive_count
    phi, labels, cond1, table, violations, audit, cond2 = _quasi_parts(x, strict)
    quasi = cond1 and cond2

    inv = x.inverse()
    _, _, icond1, _, iviolations, _, icond2 = _quasi_parts(inv, False)
    inverse_quasi = icond1 and icond2

    level_sets: Dict[int, Tuple[FrozenSet[int], FrozenSet[int]]] = {}
    finite_levels = sorted({v for v in table.values() if v is not INFINITY})
    for lev in finite_levels:
        pos = frozenset(i for i in range(pc) if table[i] == lev)
        neg = frozenset(i for i in range(pc, rs.count) if table[i] == lev)
        level_sets[int(lev)] = (pos, neg)
    max_level = int(finite_levels[-1]) if finite_levels else 0

    return ConvexityReport(
        x=x,
        phi_x=phi,
        parabolic_J=labels if cond1 else None,
        n_table=table,
        level_sets=level_sets,
        max_level=max_level,
        condition1_ok=cond1,
        condition2_ok=cond2,
        quasi_convex=quasi,
        inverse_quasi_convex=inverse_quasi,
        convex=quasi and inverse_quasi,
        violations=tuple(violations),
        inverse_violations=tuple(iviolations),
        audit_flags=tuple(audit),
    )


def is_quasi_convex(x: TwistedElement) -> bool:
    phi, labels, cond1, table, violations, _, cond2 = _quasi_parts(x, False)
    return cond1 and cond2


def level_filtration(x: TwistedElement) -> List[FrozenSet[int]]:
    """Nested closed sets Phi_{x,<=1}+ through Phi_{x,<=N}+.

    Only defined for quasi-convex x; the closedness and the descent of the
    levels under x are consequences of quasi-convexity and are re-verified
    here, loudly, on every call.
    """
    from .roots import is_closed

    rs = x.rs
    pc = rs.positive_count
    if not is_quasi_convex(x):
        raise InputError("level filtration requires a quasi-convex element")
    phi = phi_of(x)
    table = _level_table(x, phi)
    finite = sorted({int(v) for i, v in table.items() if i < pc and v is not INFINITY})
    out: List[FrozenSet[int]] = []
    acc: set = set()
    perm = x.perm
    max_level = finite[-1] if finite else 0
    for lev in range(1, max_level + 1):
        layer = {i for i in range(pc) if table[i] == lev}
        for i in layer:
            img = perm[i]
            if lev == 1:
                if img < pc:
                    raise InconsistencyError("level-1 root not sent negative")
            else:
                if table.get(img) != lev - 1 or img >= pc:
                    raise InconsistencyError("level descent violated")
        acc |= layer
        if not is_closed(rs, acc):
            raise InconsistencyError(
                f"cumulative level set <= {lev} is not closed for {rs.root_str}"
            )
        out.append(frozenset(acc))
    return out
