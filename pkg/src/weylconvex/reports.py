"""JSON-friendly views of the analysis objects.

Everything is rendered deterministically: roots as 1-based coefficient
strings, words as 1-based comma lists, infinite levels as the string
"inf".  Reports round-trip byte-identically for a fixed command and seed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List

from .convexity import INFINITY, ConvexityReport
from .coxeter import CoxeterReport
from .geometry import GoodPositionCertificate


def word_str(word) -> str:
    return ",".join(str(lab + 1) for lab in word)


def parse_word(text: str) -> List[int]:
    from .errors import InputError

    text = text.strip()
    if not text:
        return []
    try:
        labels = [int(tok) - 1 for tok in text.split(",")]
    except ValueError:
        raise InputError(f"cannot parse word {text!r}; expected comma-separated integers")
    if any(lab < 0 for lab in labels):
        raise InputError("word letters are 1-based and must be positive")
    return labels


def angle_str(angle: Fraction) -> str:
    num, den = angle.numerator, angle.denominator
    head = "pi" if num == 1 else f"{num}pi"
    return head if den == 1 else f"{head}/{den}"


def parse_angle(token: str) -> Fraction:
    from .errors import InputError

    tok = token.strip().lower().replace(" ", "")
    if "pi" in tok:
        head, _, tail = tok.partition("pi")
        num = int(head) if head else 1
        den = int(tail[1:]) if tail.startswith("/") else 1
    else:
        f = Fraction(tok)
        num, den = f.numerator, f.denominator
    if num <= 0 or den <= 0:
        raise InputError(f"angle {token!r} must lie in (0, pi]")
    out = Fraction(num, den)
    if out > 1:
        raise InputError(f"angle {token!r} exceeds pi")
    return out


def parse_sequence(text: str) -> List[Fraction]:
    text = text.strip()
    if not text:
        return []
    return [parse_angle(tok) for tok in text.split(",")]


def level_str(v) -> object:
    return "inf" if v is INFINITY else int(v)


def convexity_dict(rep: ConvexityReport) -> Dict:
    rs = rep.x.rs
    return {
        "word": word_str(rep.x.word()),
        "twist_power": rep.x.twist_power,
        "length": rep.x.length(),
        "phi": sorted(rs.root_str(i) for i in rep.phi_x if rs.is_positive(i)),
        "parabolic_simples": (
            sorted(lab + 1 for lab in rep.parabolic_J)
            if rep.parabolic_J is not None
            else None
        ),
        "levels": {
            rs.root_str(i): level_str(rep.n_table[i])
            for i in range(rs.positive_count)
        },
        "max_level": rep.max_level,
        "condition1_ok": rep.condition1_ok,
        "condition2_ok": rep.condition2_ok,
        "quasi_convex": rep.quasi_convex,
        "inverse_quasi_convex": rep.inverse_quasi_convex,
        "convex": rep.convex,
        "violations": [
            {
                "alpha": rs.root_str(a),
                "beta": rs.root_str(b),
                "n_alpha": level_str(na),
                "n_beta": level_str(nb),
                "n_sum": level_str(ns),
            }
            for (a, b, na, nb, ns) in rep.violations
        ],
        "inverse_violations": [
            {
                "alpha": rs.root_str(a),
                "beta": rs.root_str(b),
                "n_alpha": level_str(na),
                "n_beta": level_str(nb),
                "n_sum": level_str(ns),
            }
            for (a, b, na, nb, ns) in rep.inverse_violations
        ],
    }


def certificate_dict(cert: GoodPositionCertificate) -> Dict:
    return {
        "sequence": [angle_str(a) for a in cert.sequence],
        "h_values": list(cert.h_values),
        "parabolic_sizes": [len(s) for s in cert.parabolic_chain],
        "exact": cert.exact,
        "stage_points": [[str(v) for v in p] for p in cert.stage_points],
    }


def coxeter_dict(report: CoxeterReport) -> Dict:
    return {
        "cartan": report.cartan,
        "delta": report.delta_label,
        "coxeter_number": report.coxeter_number,
        "conjecture_status": report.conjecture_status,
        "counterexamples": [word_str(w) for w in report.counterexamples],
        "elements": [
            {
                "word": word_str(e.word),
                "twist_power": e.twist_power,
                "convex": e.convex,
                "quasi_convex": e.quasi_convex,
                "half_turn_condition": e.w0_condition,
                "phi_empty": e.phi_empty,
            }
            for e in report.entries
        ],
    }
