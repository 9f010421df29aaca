"""The acceptance suite: every check the library must pass, run end to end.

Each criterion function returns a CriterionResult; `run_all` executes a
selection and is what both the CLI (`report all`) and the test suite drive.
All identities are exact unless a tolerance is stated in the result details.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import eisenstein, oracle, roots, spectral, tree
from .exactalg import (LaurentPoly, ParamSystem, RationalFunc, normalize_poly,
                       solve_param_system)
from .exactalg import _det_ratfunc  # independent determinant for the locus check


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    details: dict = field(default_factory=dict)
    elapsed: float = 0.0

    def line(self) -> str:
        return "%s criterion %d: %s" % ("PASS" if self.passed else "FAIL",
                                        self.number, self.title)


def _timed(fn):
    def wrapper(*a, **k):
        t0 = time.perf_counter()
        res = fn(*a, **k)
        res.elapsed = time.perf_counter() - t0
        return res
    return wrapper


@_timed
def criterion_1_eigenvalue() -> CriterionResult:
    """Adjacency eigen-identity for the height character, radius-8 balls."""
    failures = []
    counts = {}
    for q in (2, 3, 4, 5):
        for i in (1, 2):
            T = tree.build_tree(q, 8, i)
            ok, bad = spectral.eigen_check(T)
            counts[(q, i)] = T.num_vertices()
            if not ok:
                failures.append({"q": q, "i": i, "exceptional": bad[:10]})
            del T
    return CriterionResult(1, "adjacency eigenvalue q z + 1/z on radius-8 balls",
                           not failures,
                           {"failures": failures,
                            "vertices": {str(k): v for k, v in counts.items()}})


@_timed
def criterion_2_label_transitions() -> CriterionResult:
    """Cell-label transitions agree with independent Bruhat-word propagation."""
    bad = []
    for q in (2, 3):
        for i in (1, 2):
            T = tree.build_tree(q, 8, i)
            if not tree.verify_bruhat_iwasawa(T):
                bad.append({"q": q, "i": i, "kind": "word/cell mismatch"})
            if not tree.label_transitions_ok(T):
                bad.append({"q": q, "i": i, "kind": "edge transition mismatch"})
    return CriterionResult(2, "label transitions vs Bruhat-word propagation, radius 8",
                           not bad, {"failures": bad})


@_timed
def criterion_3_inversions_haar() -> CriterionResult:
    """Inversion-set combinatorics and the translation-displacement count."""
    problems = []
    for m in (2, 3, 4, 5):
        A = roots.CartanMatrix(m)
        for w in roots.reduced_words_up_to(12):
            S = roots.inversion_set(w, A)
            if len(S) != len(w):
                problems.append(("size", m, w))
            if S != roots.inversion_set_recursive(w, A):
                problems.append(("recursion", m, w))
            if not roots.check_inversion_containment(w, A):
                problems.append(("containment", m, w))
    for i in (1, 2):
        for n in range(21):
            if roots.haar_index_exponent(i, n) != 2 * n:
                problems.append(("haar", i, n))
    return CriterionResult(3, "inversion sets, containment, displaced-root count",
                           not problems, {"failures": problems[:10]})


@_timed
def criterion_4_constant_term_shape() -> CriterionResult:
    """Solved ray data satisfies its identities; truncation kills it exactly."""
    bad = []
    for q in range(2, 8):
        data = eisenstein.eisenstein_ray(q)
        if not data.boundary_ok() or not data.recurrence_ok(upto=8):
            bad.append({"q": q, "kind": "recurrence/boundary"})
        vals = eisenstein.eisenstein_values(data, 29)
        diff = spectral.truncate_ray(q, vals, data)
        if any(not d.is_zero() for d in diff):
            bad.append({"q": q, "kind": "truncation not zero"})
    return CriterionResult(4, "constant-term shape and exact vanishing of truncation",
                           not bad, {"failures": bad})


@_timed
def criterion_5_functional_continuation() -> CriterionResult:
    """Functional equation, pole set at q = 2, and continued values off poles."""
    bad = []
    for q in (2, 3, 4, 5):
        if not eisenstein.functional_equation_check(eisenstein.eisenstein_ray(q)):
            bad.append({"q": q, "kind": "functional equation"})
    data = eisenstein.eisenstein_ray(2)
    roots_found, den = eisenstein.poles(data)
    if roots_found != [Fraction(-1, 2), Fraction(1, 2)]:
        bad.append({"kind": "pole set", "got": [str(r) for r in roots_found]})
    if normalize_poly(den) != LaurentPoly({0: 1, 2: -4}):
        bad.append({"kind": "denominator", "got": str(den)})
    lam = RationalFunc(data.lam)
    for z0 in (Fraction(51, 100), Fraction(3, 4)):
        vals = eisenstein.eisenstein_values(data, 8, z0)
        lam0 = lam.evaluate(z0)
        if (2 + 1) * vals[1] != lam0 * vals[0]:
            bad.append({"kind": "continued boundary", "z0": str(z0)})
        for n in range(1, 8):
            if 2 * vals[n - 1] + vals[n + 1] != lam0 * vals[n]:
                bad.append({"kind": "continued recurrence", "z0": str(z0), "n": n})
    return CriterionResult(5, "functional equation, poles {1/2, -1/2}, continuation",
                           not bad, {"failures": bad})


@_timed
def criterion_6_convergence() -> CriterionResult:
    """Geometric convergence at z0 = 1/4 and Cauchy failure at z0 = 1/2 (q = 2)."""
    bad = []
    conv = oracle.brute_eisenstein(2, 0, Fraction(1, 4), 14)
    ratios = [conv.increments[k] / conv.increments[k - 1]
              for k in range(2, 15) if conv.increments[k - 1] != 0]
    if not ratios or any(r >= 1 for r in ratios):
        bad.append({"kind": "tail ratio not < 1"})
    final = conv.partial_sums[-1]
    tol = Fraction(1, 2) * Fraction(1, 10) ** 4   # 4 significant digits
    stabilized_at = None
    for k in range(15):
        if all(abs(conv.partial_sums[j] - final) <= tol * abs(final)
               for j in range(k, 15)):
            stabilized_at = k
            break
    if stabilized_at is None:
        bad.append({"kind": "no 4-digit stabilization by degree 14"})
    div = oracle.brute_eisenstein(2, 0, Fraction(1, 2), 14)
    if abs(div.partial_sums[-1] - div.partial_sums[-2]) <= tol * abs(div.partial_sums[-1]):
        bad.append({"kind": "z0 = 1/2 unexpectedly Cauchy"})
    return CriterionResult(6, "convergence region: geometric at 1/4, divergent at 1/2",
                           not bad,
                           {"failures": bad, "stabilized_at_degree": stabilized_at,
                            "value_z0_quarter": str(conv.value)})


@_timed
def criterion_7_oracle_equivalence() -> CriterionResult:
    """Brute lattice sums match the ray model up to one scalar; ray quotient shape."""
    bad = []
    rows = oracle.compare_with_ray(2, Fraction(1, 4), 14, n_max=5)
    base_ratio = rows[0].ratio
    deviation = max(abs(r.ratio / base_ratio - 1) for r in rows)
    if deviation >= Fraction(1, 1000):
        bad.append({"kind": "ratio deviation", "max": str(deviation)})
    ray_report = oracle.quotient_ray_check(2, 4, 4)
    if not ray_report.ok:
        bad.append({"kind": "quotient ray check", "stable": ray_report.stable,
                    "ray_indices_ok": ray_report.ray_indices_ok,
                    "multiplicities_ok": ray_report.multiplicities_ok})
    mins = oracle.orbit_height_bound(2, 0, 11)
    stabilized = mins[8][1]
    if any(mins[k][1] != stabilized for k in range(8, 12)):
        bad.append({"kind": "orbit height bound not stabilized", "mins": mins})
    return CriterionResult(7, "oracle equivalence at q = 2 (scalar match, ray quotient)",
                           not bad,
                           {"failures": bad, "common_scalar": str(base_ratio),
                            "max_relative_deviation": str(deviation)})


def _random_ratfunc(rng, max_deg=2):
    num = LaurentPoly({k: rng.randint(-3, 3) for k in range(max_deg + 1)})
    den = LaurentPoly({k: rng.randint(-2, 2) for k in range(2)})
    if den.is_zero():
        den = LaurentPoly.one()
    return RationalFunc(num, den)


@_timed
def criterion_8_cramer_solver() -> CriterionResult:
    """200 planted square systems solved exactly; locus matches the pivot minor."""
    rng = random.Random(20240817)
    bad = []
    done = 0
    while done < 200:
        n = rng.randint(1, 5)
        A = [[_random_ratfunc(rng) for _ in range(n)] for _ in range(n)]
        det = _det_ratfunc(A)
        if det.is_zero():
            continue
        planted = [_random_ratfunc(rng, max_deg=1) for _ in range(n)]
        rhs = []
        for r in range(n):
            acc = RationalFunc(0)
            for c in range(n):
                acc = acc + A[r][c] * planted[c]
            rhs.append(acc)
        sol, locus = solve_param_system(ParamSystem(matrix=A, rhs=rhs))
        if sol != planted:
            bad.append({"kind": "solution mismatch", "n": n})
            done += 1
            continue
        if normalize_poly(locus) != normalize_poly(det.num):
            bad.append({"kind": "locus mismatch", "n": n})
        checked = 0
        attempts = 0
        while checked < 5 and attempts < 100:
            attempts += 1
            z0 = Fraction(rng.randint(1, 60), 61)
            try:
                if locus.evaluate(z0) == 0:
                    continue
                lhs = [sum((A[r][c].evaluate(z0) * sol[c].evaluate(z0)
                            for c in range(n)), Fraction(0)) for r in range(n)]
                want = [rhs[r].evaluate(z0) for r in range(n)]
            except Exception:
                continue
            if lhs != want:
                bad.append({"kind": "numeric evaluation mismatch", "n": n, "z0": str(z0)})
            checked += 1
        done += 1
    return CriterionResult(8, "parametrized Cramer solver on 200 planted systems",
                           not bad, {"failures": bad[:10]})


@_timed
def criterion_9_uniqueness() -> CriterionResult:
    """Characterizing system holds; the perturbed series fails where it must."""
    bad = []
    rep = eisenstein.uniqueness_system_check(2)
    if not rep.ok:
        bad.append({"kind": "uniqueness system", "report": str(rep)})
    data = eisenstein.eisenstein_ray(2)
    wrong = eisenstein.perturbed(data)
    if wrong.boundary_ok():
        bad.append({"kind": "perturbed data passes the boundary identity"})
    if eisenstein.functional_equation_check(wrong):
        bad.append({"kind": "perturbed data passes the functional equation"})
    return CriterionResult(9, "uniqueness system true; perturbed control fails",
                           not bad, {"failures": bad})


CRITERIA = {
    1: criterion_1_eigenvalue,
    2: criterion_2_label_transitions,
    3: criterion_3_inversions_haar,
    4: criterion_4_constant_term_shape,
    5: criterion_5_functional_continuation,
    6: criterion_6_convergence,
    7: criterion_7_oracle_equivalence,
    8: criterion_8_cramer_solver,
    9: criterion_9_uniqueness,
}


def run_all(selected=None):
    numbers = sorted(CRITERIA) if selected is None else sorted(selected)
    return [CRITERIA[n]() for n in numbers]
