"""Ricci curvature of invariant metrics and the closed forms for the worked cases.

:func:`ricci` evaluates the standard Ricci formula for a reductive
homogeneous space over a Q-orthonormal frame of m:

    ric(X, Y) = -1/2 sum <[X,e_i]_m, e_j><[Y,e_i]_m, e_j>
                + 1/4 sum <[e_i,e_j]_m, X><[e_i,e_j]_m, Y>
                - 1/4 sum <[X,[Y,e_i]_m]_m, e_i> + (X <-> Y)
                - 1/2 sum <[X,[Y,e_i]_h], e_i> + (X <-> Y)
                - 1/2 <[H,X]_m, Y> + (X <-> Y)

with the h-projection taken along g = h + m and H the mean curvature
vector (<H, X> = tr ad X).  This direct evaluation is the reference;
the closed forms below are transcriptions kept for comparison only.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from .metrics import orthonormal_frame

__all__ = [
    "RicciTensor", "CurvatureReport", "mean_curvature_vector", "ricci", "ricci_in_frame", "einstein_report",
    "closed_form_sl2h", "sl2h_offdiagonal", "sl2h_branch_value", "closed_form_sl2c2",
    "sl2c2_offdiagonal", "sl2c2_delta", "spectral_residual", "EINSTEIN", "NOT_EINSTEIN",
]

EINSTEIN = "EINSTEIN"
NOT_EINSTEIN = "NOT_EINSTEIN"


@dataclass(frozen=True)
class RicciTensor:
    frame: object = field(repr=False)
    matrix: np.ndarray

    def __getitem__(self, idx):
        return self.matrix[idx]

    def symmetry_defect(self):
        return float(np.abs(self.matrix - self.matrix.T).max())


@dataclass(frozen=True)
class CurvatureReport:
    ricci: RicciTensor = field(repr=False)
    scalar: float
    lambda_star: float
    residual: float
    verdict: str
    tol: float = 1e-9

    def to_dict(self, matrices=False):
        mp = self.ricci.frame.point
        out = {"space": mp.space, "values": {k: float(v) for k, v in mp.values.items()},
               "scalar": self.scalar, "lambda_star": self.lambda_star, "residual": self.residual,
               "verdict": self.verdict, "tol": self.tol}
        if matrices:
            out["ricci"] = self.ricci.matrix.tolist()
        return out


def mean_curvature_vector(rd, mp):
    """m-coordinates of H, the Q-dual of X -> tr ad X; zero for unimodular g."""
    tau = rd.floats["tau"]
    return np.linalg.solve(mp.Qf, tau)


def _frame_tensors(rd, F):
    f = rd.floats
    Finv = np.linalg.inv(F)
    c = np.einsum("ai,bj,abc,kc->ijk", F, F, f["Cm"], Finv, optimize=True)
    ch = np.einsum("ai,bj,abh->ijh", F, F, f["Ch"], optimize=True)
    ah = np.einsum("hab,ai,kb->hik", f["Ah"], F, Finv, optimize=True)
    return c, ch, ah


def ricci_in_frame(rd, F):
    """Ricci matrix for the metric that makes the columns of F orthonormal."""
    c, ch, ah = _frame_tensors(rd, F)
    T1 = -0.5 * np.einsum("xij,yij->xy", c, c)
    T2 = 0.25 * np.einsum("ijx,ijy->xy", c, c)
    T3 = -0.25 * np.einsum("yik,xki->xy", c, c)
    # [X, h] = -[h, X], hence the sign flip against ah
    T4 = 0.5 * np.einsum("yih,hxi->xy", ch, ah)
    Hf = F.T @ rd.floats["tau"]          # H in frame coordinates
    T5 = -0.5 * np.einsum("i,ixy->xy", Hf, c)
    return T1 + T2 + T3 + T3.T + T4 + T4.T + T5 + T5.T


def ricci(rd, mp, frame=None):
    """Ricci components Ric(e_i, e_j) in a Q-orthonormal frame (default: Gram-Schmidt)."""
    fr = frame if frame is not None else orthonormal_frame(mp)
    return RicciTensor(fr, ricci_in_frame(rd, fr.frame))


def einstein_report(rd, mp, tol=1e-9, frame=None):
    ric = ricci(rd, mp, frame)
    R = ric.matrix
    n = R.shape[0]
    scalar = float(np.trace(R))
    lam = scalar / n
    residual = float(np.abs(R - lam * np.eye(n)).max())
    return CurvatureReport(ric, scalar, lam, residual, EINSTEIN if residual < tol else NOT_EINSTEIN, tol)


def spectral_residual(report):
    """Largest |eigenvalue| of Ric - lambda* g; unlike the max-norm it does not depend on the frame."""
    R = report.ricci.matrix
    return float(np.abs(np.linalg.eigvalsh(R - report.lambda_star * np.eye(R.shape[0]))).max())


# SL2(H)/Sp(1)Sp(1) ----------------------------------------------------------------

def _sl2h_domain(a, b, c, d):
    if not (a > 0 and b > 0 and c > 0 and d * d < b * c):
        raise ValueError("closed form needs a, b, c > 0 and d^2 < bc")


def closed_form_sl2h(a, b, c, d):
    """The printed 9x9 Ricci matrix (1/(a Delta)) [[R1, 0, 0], [0, R2 I, R3 I], [0, R3 I, R4 I]]."""
    _sl2h_domain(a, b, c, d)
    delta = b * (b * c - d * d)
    R1 = 8 * b * (a * a - b * b - 2 * b * c - c * c + 4 * d * d)
    R2 = -2 * (a * a * b - b ** 3 + 7 * a * b * c + b * c * c - 7 * a * d * d + 2 * b * d * d - 2 * c * d * d)
    R3 = 2 * (7 * a - 2 * b + 2 * c) * d
    R4 = -2 * (a * a * b + b ** 3 + 2 * c * d * d - 7 * a * (b * b - d * d) - b * (c * c + 2 * d * d))
    M = np.zeros((9, 9))
    M[0, 0] = R1
    for k in range(4):
        M[1 + k, 1 + k] = R2
        M[5 + k, 5 + k] = R4
        M[1 + k, 5 + k] = M[5 + k, 1 + k] = R3
    return M / (a * delta)


def sl2h_offdiagonal(a, b, c, d):
    """The printed standalone value of Ric(e2, e6): 2(7a - 2b + 2c)d / (ab sqrt(bc - d^2))."""
    _sl2h_domain(a, b, c, d)
    return 2 * (7 * a - 2 * b + 2 * c) * d / (a * b * math.sqrt(b * c - d * d))


def sl2h_branch_value(a, b, c, d):
    """The printed value 45a / (2(bc - d^2)) of Ric(e2, e2) on the branch b = (7a + 2c)/2."""
    _sl2h_domain(a, b, c, d)
    return 45 * a / (2 * (b * c - d * d))


# SL2(C)^2/U(1)^2 ------------------------------------------------------------------------

def _sl2c2_domain(a, b, c, d, l, q, f, g, n):
    if not all(v > 0 for v in (a, b, d, q, f, g)):
        raise ValueError("closed form needs a, b, d, q, f, g > 0")
    if not (c * c < a * b and l * l < d * q and n * n < f * g):
        raise ValueError("closed form needs c^2 < ab, l^2 < dq, n^2 < fg")


def sl2c2_delta(a, b, c, d, l, q, f, g, n):
    """The printed auxiliary quantity Delta of the (e1, e2) entry."""
    _sl2c2_domain(a, b, c, d, l, q, f, g, n)
    return (2 + 2 * l * l / d ** 2 + (a * b - c * c) / (f * g - n * n)
            + 2 * (a * b - c * c) * n * n / (n * n - f * g) ** 2
            + (d * d + l * l) ** 2 / (d * d * (d * q - l * l)) + (d * q - l * l) / d ** 2)


def sl2c2_offdiagonal(a, b, c, d, l, q, f, g, n):
    """The printed standalone value 2 c Delta / (a sqrt(ab - c^2)) of Ric(e1, e2)."""
    D = sl2c2_delta(a, b, c, d, l, q, f, g, n)
    return 2 * c * D / (a * math.sqrt(a * b - c * c))


def closed_form_sl2c2(a, b, c, d, l, q, f, g, n):
    """The printed 10x10 matrix (1/(a d f Gamma Sigma^2 Omega^2)) [R1 ... R9], entries verbatim.

    Returns ``(matrix, standalone)`` where ``standalone`` is the separately
    printed (e1, e2) value from :func:`sl2c2_offdiagonal`.
    """
    _sl2c2_domain(a, b, c, d, l, q, f, g, n)
    Gm = a * b - c * c
    Sg = d * q - l * l
    Om = f * g - n * n
    sg = d * q + l * l
    om = f * g + n * n
    rG, rS, rO = math.sqrt(Gm), math.sqrt(Sg), math.sqrt(Om)
    R1 = -2 * f * Gm * (-2 * c * c * d * Sg ** 2 * om
                        + (-2 * a * a * d * sg + Sg * (2 * d ** 3 + 2 * d * (sg + Sg) + q * (sg + Sg))) * Om ** 2)
    R2 = 2 * c * f * rG * Sg * (2 * d * Gm * Sg * om + (2 * d ** 3 + 2 * d * (sg + Sg) + q * (sg + Sg)))
    R3 = -2 * (2 * c * c * d ** 3 * f * Sg * Om ** 2
               + c * c * f * Sg * (2 * d * (sg - Sg) + q * (sg + Sg)) * Om ** 2
               + d * Sg ** 2 * (2 * a * a * f ** 3 * Om - 2 * f * Gm ** 2 * om + a * a * g * Om * (om + Om)
                                + 2 * f * Om * (2 * c * c * Om + a * a * (om + Om))))
    R4 = -f * Sg * (-c * c * (2 * d ** 3 + q * (sg - 3 * Sg) + 2 * d * (sg - Sg))
                    + Gm * (2 * a * a * d - 2 * d ** 3 - 2 * d * sg - q * sg - 8 * a * Sg + 2 * d * Sg
                            + 3 * q * Sg)) * Om ** 2
    R5 = 4 * f * l * rS * Om ** 2 * (a * a * Gm * d - 2 * a * Gm * Sg + Sg * (c * c + Gm) * (d + q))
    R6 = -f * Om * (2 * a * a * d * Gm * (2 * sg - Sg)
                    + (c * c + Gm) * (2 * d ** 3 + q * (sg - 3 * Sg) + 2 * d * (sg - Sg)) * Sg
                    + 4 * a * Gm * Sg * (2 * d * d - sg + Sg))
    R7 = d * Sg ** 2 * Om * (-2 * f * Gm * (c * c + Gm)
                             + a * a * (2 * f ** 3 + g * (om - 3 * Om) + 2 * f * (om - Om)) + 8 * a * Gm * Om)
    R8 = -4 * d * n * Sg ** 2 * rO * (f * Gm * (c * c + Gm) + a * (a * (f + g) - 2 * Gm) * Om)
    R9 = d * Sg ** 2 * (-4 * f * Gm ** 2 * om
                        - (2 * f * (a * a * f * f + 4 * a * f * Gm - Gm ** 2)
                           + a * (a * (2 * f + g) - 4 * Gm) * om) * Om
                        + a * (2 * a * f + 3 * a * g - 4 * Gm) * Om ** 2 + 2 * c * c * f * Gm * (Om - 2 * om))
    M = np.zeros((10, 10))
    M[0, 0], M[1, 1] = R1, R2
    M[0, 1] = M[1, 0] = R3
    M[2, 2] = M[3, 3] = R4
    M[4, 4] = M[5, 5] = R6
    M[2, 5] = M[5, 2] = R5
    M[3, 4] = M[4, 3] = -R5
    M[6, 6] = M[7, 7] = R7
    M[8, 8] = M[9, 9] = R9
    M[6, 9] = M[9, 6] = R8
    M[7, 8] = M[8, 7] = -R8
    M /= a * d * f * Gm * Sg ** 2 * Om ** 2
    return M, sl2c2_offdiagonal(a, b, c, d, l, q, f, g, n)
