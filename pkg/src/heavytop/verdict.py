"""End-to-end integrability verdicts.

The pipeline mirrors the obstruction order: classical template match
first, then the tilted fixed point (nonzero d, first-family exclusions),
then the equatorial fixed point, restricted through the second family to
quarter integer principal moments and finished by the solvability test
on the three-singularity equation. Every step appends a certificate to
the trail; statements valid only for almost all parameter values carry
that annotation explicitly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import galois
from .body import (BodyParameters, ClassicalCase, classical_case_detect,
                   derive_special_frame, normalize_equatorial,
                   GORYACHEV_CHAPLYGIN)
from .exact import _frac, rational_sqrt
from .galois import (GaloisVerdict, certify_not_abelian, kimura_classify,
                     lame_classify)
from .variational import lame_from_second, riemann_p_from_L3zero

INTEGRABLE = "Integrable"
PARTIALLY_INTEGRABLE = "PartiallyIntegrable"
NON_INTEGRABLE = "NonIntegrable"
INCONCLUSIVE = "Inconclusive"

ALMOST_ALL_NOTE = "holds for all but finitely many parameter values"


@dataclass(frozen=True)
class Verdict:
    conclusion: str
    case: Optional[str]
    trail: tuple

    def to_jsonable(self) -> dict:
        return {
            "conclusion": self.conclusion,
            "case": self.case,
            "trail": list(self.trail),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_jsonable(), sort_keys=True)


def _even_permutations(body: BodyParameters):
    perms = ((0, 1, 2), (1, 2, 0), (2, 0, 1))
    moments = (body.A, body.B, body.C)
    for p in perms:
        yield p, tuple(moments[i] for i in p), tuple(body.L[i] for i in p)


def analyze(body: BodyParameters) -> Verdict:
    """Integrability verdict for one body, with a certificate trail.

    Conclusions: Integrable (classical extra integral), partially
    integrable (extra integral on the zero momentum level only),
    NonIntegrable (a differential Galois obstruction, with certificates),
    or Inconclusive for inputs outside the method's reach (asymmetric
    bodies, boundary moments).
    """
    trail = []

    case = classical_case_detect(body)
    if case is not None:
        trail.append({"step": "classical-case", "case": case.tag,
                      "note": case.note})
        if case.tag == GORYACHEV_CHAPLYGIN:
            return Verdict(PARTIALLY_INTEGRABLE, case.tag, tuple(trail))
        return Verdict(INTEGRABLE, case.tag, tuple(trail))
    trail.append({"step": "classical-case", "case": None})

    symmetric = None
    for perm, moments, L in _even_permutations(body):
        if moments[0] == moments[1]:
            symmetric = BodyParameters(moments[0], moments[1], moments[2], L,
                                       body.gravity_on)
            trail.append({"step": "symmetry-axis", "permutation": list(perm)})
            break
    if symmetric is None:
        trail.append({"step": "symmetry-check", "result": "asymmetric"})
        return Verdict(INCONCLUSIVE, None, tuple(trail + [{
            "step": "out-of-scope",
            "reason": "asymmetric body: outside this method's hypotheses",
        }]))

    normalized = normalize_equatorial(symmetric)
    if normalized is None:
        raise ValueError("L2 != 0 after axis normalization: no exact rotation "
                         "about the symmetry axis brings the fixed point into "
                         "the principal plane")
    frame = derive_special_frame(normalized)
    trail.append({"step": "special-frame",
                  "a": str(frame.a), "c": str(frame.c), "d": str(frame.d),
                  "f": str(frame.f), "F": str(frame.F)})

    if frame.d != 0:
        verdict = certify_not_abelian(frame.d, frame.F)
        trail.append({"step": "first-family-obstruction",
                      "galois": verdict.to_jsonable(),
                      "note": ALMOST_ALL_NOTE + " of the modulus k"})
        if verdict.conclusion == galois.NOT_ABELIAN:
            return Verdict(NON_INTEGRABLE, None, tuple(trail))
        return Verdict(INCONCLUSIVE, None, tuple(trail))

    L1, _, L3 = normalized.L
    if L1 == 0:
        # fixed point on the symmetry axis: classical detection should have
        # matched; kept as a safety net
        trail.append({"step": "on-axis", "result": "symmetry-axis fixed point"})
        return Verdict(INTEGRABLE, "Lagrange", tuple(trail))
    if L3 != 0:
        trail.append({"step": "unreachable",
                      "reason": "d = 0 with tilted fixed point"})
        return Verdict(INCONCLUSIVE, None, tuple(trail))

    # equatorial fixed point; moments normalized so A = B = 1
    C = normalized.C / normalized.B
    if not 0 < C < 2:
        trail.append({"step": "physical-range", "C": str(C),
                      "result": "outside (0, 2)"})
        return Verdict(INCONCLUSIVE, None, tuple(trail))

    sample_e = Fraction(0)   # any nondegenerate energy; the class is e-free
    lame = lame_classify(lame_from_second(C, sample_e))
    trail.append({"step": "second-family-classification", "C": str(C),
                  "tag": lame.tag, "detail": lame.detail})

    if lame.tag == galois.NONE_ABELIAN:
        trail.append({"step": "second-family-obstruction",
                      "note": ALMOST_ALL_NOTE + " of the energy e"})
        return Verdict(NON_INTEGRABLE, None, tuple(trail))
    if lame.tag == galois.BALDASSARRI:
        trail.append({"step": "second-family-obstruction",
                      "note": "exceptional subcase confined to finitely many "
                              "energies; " + ALMOST_ALL_NOTE + " of the energy e"})
        return Verdict(NON_INTEGRABLE, None, tuple(trail))

    # quarter integer moments survive the second family; finish with the
    # first family in its three-singularity form
    c = Fraction(1) / C
    riemann = riemann_p_from_L3zero(c)
    kimura = kimura_classify(riemann)
    trail.append({"step": "equatorial-first-family", "c": str(c),
                  "mu_squared": str(riemann.mu.radicand),
                  "galois": kimura.to_jsonable()})
    if kimura.conclusion == galois.NOT_SOLVABLE:
        trail.append({"step": "first-family-obstruction",
                      "note": ALMOST_ALL_NOTE + " of the modulus k"})
        return Verdict(NON_INTEGRABLE, None, tuple(trail))

    trail.append({"step": "undecided",
                  "reason": "solvable equatorial case not matched by a "
                            "classical template"})
    return Verdict(INCONCLUSIVE, None, tuple(trail))


# ---------------------------------------------------------------------------
# Solvable c families (equatorial first family)
# ---------------------------------------------------------------------------

# c = base + quad l^2 + lin l, integer l
_C_FAMILIES = (
    (Fraction(1), Fraction(-2), Fraction(8)),
    (Fraction(4), Fraction(10), Fraction(8)),
    (Fraction(2), Fraction(6), Fraction(8)),
    (Fraction(11, 8), Fraction(2), Fraction(2)),
    (Fraction(79, 72), Fraction(4, 3), Fraction(2)),
)


def _integer_roots(a: Fraction, b: Fraction, c0: Fraction):
    disc = b * b - 4 * a * c0
    root = rational_sqrt(disc)
    if root is None:
        return []
    out = []
    for sign in (1, -1):
        l = (-b + sign * root) / (2 * a)
        if l.denominator == 1:
            out.append(int(l))
    return sorted(set(out))


def solvable_family_membership(c) -> dict:
    """Which of the five solvable-c families contains c, with the integer
    witness l for each match."""
    c = _frac(c)
    matches = {}
    for idx, (base, lin, quad) in enumerate(_C_FAMILIES, start=1):
        ls = _integer_roots(quad, lin, base - c)
        matches[idx] = ls[0] if ls else None
    return {
        "c": str(c),
        "families": matches,
        "member": any(v is not None for v in matches.values()),
    }


def family_c_values(index: int, l: int) -> Fraction:
    base, lin, quad = _C_FAMILIES[index - 1]
    return base + lin * l + quad * l * l


# ---------------------------------------------------------------------------
# Parameter stability scan
# ---------------------------------------------------------------------------

def parameter_scan(d, F, s_grid) -> list:
    """Replay the exclusion pipeline over a grid of energy parameters s.

    The exponent data of the reduced equation does not move with s, so
    the expected outcome is that every exclusion fires at every s, with
    at most isolated exceptional points. Nonpositive grid entries are
    flagged degenerate instead of evaluated.
    """
    d, F = _frac(d), _frac(F)
    if d == 0:
        raise ValueError("scan requires d != 0")
    report = []
    for s in s_grid:
        s = _frac(s)
        if s <= 0:
            report.append({"s": str(s), "status": "degenerate", "verdict": None})
            continue
        verdict = certify_not_abelian(d, F, s)
        cert = verdict.certificate
        report.append({
            "s": str(s),
            "status": "ok",
            "verdict": verdict.conclusion,
            "diagonal_excluded": cert["diagonal"]["excluded"],
            "cyclic_triangular_excluded": cert["cyclic_triangular"]["excluded"],
            "case2_has_polynomial": cert["case2"]["found_polynomial"] is not None,
        })
    return report
