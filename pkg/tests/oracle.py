"""Brute-force Ricci curvature through the Levi-Civita Nomizu map.

Independent of ``einshom.curvature``: works in the m-basis (no frames),
builds Lambda(X) = 1/2 [X, .]_m + U(X, .) from the Koszul formula,
forms the full curvature operator and traces it.
"""

import numpy as np


def nomizu_ricci(rd, Q):
    """Ricci tensor in the m-basis (entries Ric(m_i, m_j)) for the Gram matrix Q."""
    Cm = rd.floats["Cm"]            # [m_i, m_j]_m = Cm[i, j, :]
    Ch = rd.floats["Ch"]            # [m_i, m_j]_h = Ch[i, j, :]
    Ah = rd.floats["Ah"]            # [h_a, m_i]   = Ah[a, i, :]
    n = Cm.shape[0]
    Qi = np.linalg.inv(Q)
    # <[Z, X]_m, Y> for basis vectors: K[z, x, y]
    K = np.einsum("zxk,ky->zxy", Cm, Q)
    # 2 <U(X, Y), Z> = <[Z, X]_m, Y> + <X, [Z, Y]_m>
    U_low = 0.5 * (K + K.transpose(0, 2, 1))            # indexed [z, x, y]
    U = np.einsum("zxy,zw->xyw", U_low, Qi)            # U(m_x, m_y) = U[x, y, :]
    # Lambda(m_x) as a matrix acting on column vectors: column y is Lambda(m_x) m_y
    Lam = np.empty((n, n, n))
    for x in range(n):
        Lam[x] = (0.5 * Cm[x] + U[x]).T
    R = np.zeros((n, n, n, n))                           # R[x, y] is the operator R(m_x, m_y)
    for x in range(n):
        for y in range(n):
            br_m = Cm[x, y]
            br_h = Ch[x, y]
            op = Lam[x] @ Lam[y] - Lam[y] @ Lam[x]
            op -= np.einsum("k,kab->ab", br_m, Lam)
            op -= np.einsum("a,aij->ji", br_h, Ah)
            R[x, y] = op
    # Ric(Y, Z) = trace(X -> R(X, Y) Z)
    return np.einsum("xyzx->yz", R.transpose(0, 1, 3, 2))


def ricci_in_orthonormal_frame(rd, Q, F):
    return F.T @ nomizu_ricci(rd, Q) @ F
