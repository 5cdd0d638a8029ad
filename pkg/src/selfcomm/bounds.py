"""Upper estimates of ``||C(A)||`` with slack accounting, and conjecture fuzzing.

Every bound is reported as ``bound - ||C(A)||``. The proven bounds must have
slack at least ``-tol`` with ``tol = 1e-6 * max(1, ||A||^2)``; a violation
means a numerical bug, not mathematics. The two conjectured inequalities are
only ever recorded.
"""

from __future__ import annotations

import csv
import io
from dataclasses import asdict, dataclass, field

import numpy as np

from . import numrange
from .linalg import as_matrix, cartesian_parts, hermitian_eigen, hermitian_min_shift, operator_norm, self_commutator

ENSEMBLES = ("complex-gaussian", "real-gaussian", "upper-triangular", "unitary-similarity-of-jordan")
THEOREM_BOUNDS = ("norm_sq", "m_sq", "width_product", "wang_du", "two_area")
ELLIPTICAL_BOUND = "four_over_pi_area"
THEOREM_RTOL = 1e-6


def theorem_tol(norm):
    return THEOREM_RTOL * max(1.0, norm * norm)


@dataclass(frozen=True)
class BoundReport:
    comm_norm: float
    norm: float
    norm_sq: float
    m: float
    m_shift: complex
    m_sq: float
    width_product: float
    width_t: float
    inf_h: float
    inf_j: float
    wang_du: float
    area: float
    area_upper: float
    two_area: float
    four_over_pi_area: float
    numerical_radius: float
    conj1_lhs: float
    elliptical: bool
    tol: float
    slacks: dict = field(default_factory=dict)
    flags: dict = field(default_factory=dict)

    @property
    def conj1_slack(self):
        return self.comm_norm - self.conj1_lhs

    @property
    def conj2_slack(self):
        return self.four_over_pi_area - self.comm_norm

    @property
    def theorems_hold(self):
        return all(self.flags.values())

    def to_dict(self):
        d = asdict(self)
        d["m_shift"] = [self.m_shift.real, self.m_shift.imag]
        d["conj1_slack"] = self.conj1_slack
        d["conj2_slack"] = self.conj2_slack
        d["theorems_hold"] = self.theorems_hold
        return d


def comm_norm(A) -> float:
    w = hermitian_eigen(self_commutator(A)).values
    return float(max(abs(w[0]), abs(w[-1])))


def evaluate_bounds(
    A,
    n_angles=numrange.DEFAULT_AREA_ANGLES,
    elliptical=None,
    width_angles=numrange.DEFAULT_WIDTH_ANGLES,
    refine_tol=numrange.DEFAULT_REFINE_TOL,
    area_tol=numrange.DEFAULT_AREA_TOL,
) -> BoundReport:
    """Compute ``||C(A)||`` together with every upper estimate and its slack.

    ``elliptical`` says whether ``W(A)`` is known to be an ellipse; only then
    is the ``4S/pi`` bound flagged as a theorem. It defaults to ``True`` for
    2x2 input. The area starts from ``n_angles`` normals and is refined
    until the circumscribed polygon exceeds it by at most ``area_tol``
    (``None`` skips refinement). ``area`` stays the inscribed value, a lower
    estimate, so the ``2S`` check never passes on rounding in its favour.
    """
    A = as_matrix(A)
    if elliptical is None:
        elliptical = A.shape[0] <= 2
    c = comm_norm(A)
    norm = operator_norm(A)
    m_shift, m = numrange.min_shift_distance(A)
    sample = numrange.boundary(A, n_angles)
    t_star, wprod = numrange.min_width_product(A, width_angles, refine_tol, sample=sample)
    H, J = cartesian_parts(A, 0.0)
    inf_h, inf_j = hermitian_min_shift(H), hermitian_min_shift(J)
    refined = sample if area_tol is None else numrange.refine_boundary(A, sample, area_tol)
    S, S_upper = numrange.area_bracket(refined)
    w = numrange.numerical_radius(A, width_angles, refine_tol, sample=sample)

    bounds = {
        "norm_sq": norm * norm,
        "m_sq": m * m,
        "width_product": wprod,
        "wang_du": 4 * inf_h * inf_j,
        "two_area": 2 * S,
        "four_over_pi_area": 4 * S / np.pi,
    }
    tol = theorem_tol(norm)
    slacks = {k: v - c for k, v in bounds.items()}
    flagged = THEOREM_BOUNDS + ((ELLIPTICAL_BOUND,) if elliptical else ())
    flags = {k: bool(slacks[k] >= -tol) for k in flagged}
    return BoundReport(
        comm_norm=c,
        norm=norm,
        norm_sq=bounds["norm_sq"],
        m=m,
        m_shift=m_shift,
        m_sq=bounds["m_sq"],
        width_product=wprod,
        width_t=t_star,
        inf_h=inf_h,
        inf_j=inf_j,
        wang_du=bounds["wang_du"],
        area=S,
        area_upper=S_upper,
        two_area=bounds["two_area"],
        four_over_pi_area=bounds["four_over_pi_area"],
        numerical_radius=w,
        conj1_lhs=norm * norm - w * w,
        elliptical=bool(elliptical),
        tol=tol,
        slacks=slacks,
        flags=flags,
    )


def check_conjecture1(A, n_angles=numrange.DEFAULT_WIDTH_ANGLES) -> float:
    """Slack ``||C(A)|| - (||A||^2 - w(A)^2)``; negative means a counterexample candidate."""
    A = as_matrix(A)
    norm = operator_norm(A)
    w = numrange.numerical_radius(A, n_angles)
    return comm_norm(A) - (norm * norm - w * w)


def check_conjecture2(A, n_angles=numrange.DEFAULT_AREA_ANGLES, area_tol=numrange.DEFAULT_AREA_TOL) -> float:
    """Slack ``(4/pi) S(W(A)) - ||C(A)||``, with the area refined as in :func:`evaluate_bounds`."""
    A = as_matrix(A)
    S = numrange.refined_area(A, n_angles, area_tol)
    return 4 * S / np.pi - comm_norm(A)


def trial_rng(seed, trial):
    """Independent PCG64 stream for one trial, derived from ``(seed, trial)``."""
    return np.random.default_rng([int(seed), int(trial)])


def _haar_unitary(rng, n):
    Z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    Q, R = np.linalg.qr(Z)
    d = np.diagonal(R)
    return Q * (d / np.abs(d))


def random_matrix(ensemble, n, rng):
    """Draw one ``n x n`` matrix from a named ensemble."""
    if ensemble == "complex-gaussian":
        return (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    if ensemble == "real-gaussian":
        return rng.standard_normal((n, n)).astype(np.complex128)
    if ensemble == "upper-triangular":
        Z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
        return np.triu(Z)
    if ensemble == "unitary-similarity-of-jordan":
        lam = complex(*rng.standard_normal(2)) / np.sqrt(2)
        Jn = lam * np.eye(n) + np.eye(n, k=1)
        U = _haar_unitary(rng, n)
        return U @ Jn @ U.conj().T
    raise ValueError(f"unknown ensemble {ensemble!r}; choose from {', '.join(ENSEMBLES)}")


@dataclass(frozen=True)
class FuzzRecord:
    seed: int
    trial: int
    n: int
    ensemble: str
    conj1_slack: float
    conj2_slack: float
    bound_slacks: dict
    tol: float

    def matrix(self):
        return random_matrix(self.ensemble, self.n, trial_rng(self.seed, self.trial))

    @property
    def theorem_violations(self):
        return [k for k in THEOREM_BOUNDS if self.bound_slacks[k] < -self.tol]


@dataclass
class FuzzResult:
    records: list
    summary: dict

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["seed", "trial", "n", "ensemble", "conj1_slack", "conj2_slack"]
                        + [f"slack_{k}" for k in THEOREM_BOUNDS])
        for r in self.records:
            writer.writerow([r.seed, r.trial, r.n, r.ensemble, repr(r.conj1_slack), repr(r.conj2_slack)]
                            + [repr(r.bound_slacks[k]) for k in THEOREM_BOUNDS])
        return buf.getvalue()


def _smallest(records, key, k=10):
    ranked = sorted(records, key=lambda r: (getattr(r, key), r.trial))[:k]
    return [{"slack": getattr(r, key), "seed": r.seed, "trial": r.trial} for r in ranked]


def summarize(records, ensemble, n, seed, conj_tol=THEOREM_RTOL):
    theorem_min = {k: min(r.bound_slacks[k] for r in records) for k in THEOREM_BOUNDS}
    summary = {
        "ensemble": ensemble,
        "n": n,
        "trials": len(records),
        "seed": seed,
        "theorem_min_slack": theorem_min,
        "theorem_violations": [
            {"seed": r.seed, "trial": r.trial, "bounds": r.theorem_violations}
            for r in records
            if r.theorem_violations
        ],
    }
    for key in ("conj1_slack", "conj2_slack"):
        name = key.split("_")[0]
        summary[name] = {
            "min_slack": min(getattr(r, key) for r in records),
            "candidates": sum(getattr(r, key) < -conj_tol for r in records),
            "smallest": _smallest(records, key),
        }
    return summary


def fuzz_conjectures(
    ensemble,
    n,
    trials,
    seed,
    n_angles=numrange.DEFAULT_AREA_ANGLES,
    width_angles=numrange.DEFAULT_WIDTH_ANGLES,
    area_tol=numrange.DEFAULT_AREA_TOL,
) -> FuzzResult:
    """Evaluate the full bound suite on ``trials`` random matrices.

    Trial ``i`` draws from ``trial_rng(seed, i)``, so any record can be
    regenerated on its own and the run is deterministic. ``area_tol=None``
    keeps the unrefined inscribed area: the theorem checks stay valid (the
    area is a lower estimate) but conjecture-2 slacks carry grid error.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if ensemble not in ENSEMBLES:
        raise ValueError(f"unknown ensemble {ensemble!r}; choose from {', '.join(ENSEMBLES)}")
    records = []
    for i in range(trials):
        A = random_matrix(ensemble, n, trial_rng(seed, i))
        rep = evaluate_bounds(A, n_angles, elliptical=False, width_angles=width_angles, area_tol=area_tol)
        records.append(
            FuzzRecord(
                seed=seed,
                trial=i,
                n=n,
                ensemble=ensemble,
                conj1_slack=rep.conj1_slack,
                conj2_slack=rep.conj2_slack,
                bound_slacks={k: rep.slacks[k] for k in THEOREM_BOUNDS},
                tol=rep.tol,
            )
        )
    return FuzzResult(records, summarize(records, ensemble, n, seed))
