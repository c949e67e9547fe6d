"""Independent numerical oracles shared by the test modules."""

import numpy as np


def rk4(rhs, y0, t_end, steps):
    """Classical RK4 from t=0 to t_end; a complex t_end integrates along that direction."""
    y = np.asarray(y0, dtype=complex if isinstance(t_end, complex) else float)
    h = t_end / steps
    t = 0.0 * h
    for _ in range(steps):
        k1 = rhs(t, y)
        k2 = rhs(t + h / 2, y + h / 2 * k1)
        k3 = rhs(t + h / 2, y + h / 2 * k2)
        k4 = rhs(t + h, y + h * k3)
        y = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        t = t + h
    return y


def jacobi_rhs(m):
    """sn' = cn·dn, cn' = -sn·dn, dn' = -m·sn·cn."""
    def rhs(_, y):
        sn, cn, dn = y
        return np.array([cn * dn, -sn * dn, -m * sn * cn])
    return rhs
