#!/usr/bin/env python3
"""High-precision reference values for the 1D interval problem.

Solves the piecewise closed form of

    -a s'' + (1-chi) s = -chi'   on (b_l, b_r),   s(b_l) = s(b_r) = 0

directly from the ansatz (exponential tails in the void intervals, a
linear segment across the film) by imposing the distributional jump
conditions a*(s_star - s'(f_l-0)) = 1 and a*(s_star - s'(f_r+0)) = 1
and solving the resulting 2x2 system with mpmath at 150 significant
digits.  No formula from the C++ library is reused here; the linear
systems are solved numerically so this file stays an independent
oracle.

Also solves the homogeneous variant

    -a d'' + (1-chi) d = 0,  d(b_l) = g_l,  d(b_r) = g_r

with C^1 matching at the film interfaces (4x4 system), and reports the
film gradient energy, the void L2 mass and interior values used by the
verification tests.

Run:  python3 scripts/golden_1d.py > scripts/golden_1d.out
"""

import mpmath as mp

mp.mp.dps = 150


def solve_nonhomogeneous(b_l, b_r, f_l, f_r, a):
    """Returns (C_l, C_r, s_star, h) for the film load problem."""
    b_l, b_r, f_l, f_r, a = map(mp.mpf, (b_l, b_r, f_l, f_r, a))
    r = mp.sqrt(a)
    T = f_r - f_l
    al = (f_l - b_l) / r
    be = (b_r - f_r) / r

    # Unknowns (C_l, C_r).  s_star = (C_l sinh(al) + C_r sinh(be)) / T.
    # Tails: s = -C_l sinh((x-b_l)/r) on the left, -C_r sinh((x-b_r)/r)
    # on the right, so s'(f_l-0) = -(C_l/r) cosh(al) and
    # s'(f_r+0) = -(C_r/r) cosh(be).
    # Jump conditions: a*s_star + r*C_l*cosh(al) = 1
    #                  a*s_star + r*C_r*cosh(be) = 1
    m00 = (a / T) * mp.sinh(al) + r * mp.cosh(al)
    m01 = (a / T) * mp.sinh(be)
    m10 = (a / T) * mp.sinh(al)
    m11 = (a / T) * mp.sinh(be) + r * mp.cosh(be)
    # Cramer; the dynamic range of the entries is enormous for small a,
    # which is why dps is set so high above.
    det = m00 * m11 - m01 * m10
    C_l = (m11 - m01) / det
    C_r = (m00 - m10) / det
    s_star = (C_l * mp.sinh(al) + C_r * mp.sinh(be)) / T
    h = 2 / (r * s_star)

    # sanity: both jump conditions to full precision
    res1 = a * s_star + r * C_l * mp.cosh(al) - 1
    res2 = a * s_star + r * C_r * mp.cosh(be) - 1
    assert abs(res1) < mp.mpf(10) ** (-45), res1
    assert abs(res2) < mp.mpf(10) ** (-45), res2
    return C_l, C_r, s_star, h


def solve_homogeneous(b_l, b_r, f_l, f_r, a, g_l, g_r):
    """Homogeneous problem with Dirichlet data g_l, g_r.

    Left void:  d = g_l cosh((y-b_l)/r) + E_l sinh((y-b_l)/r)
    Film:       d = c0 + c1 (y - f_l)
    Right void: d = g_r cosh((b_r-y)/r) + E_r sinh((b_r-y)/r)
    Unknowns (E_l, E_r, c0, c1); value and flux continuity at f_l, f_r.
    """
    b_l, b_r, f_l, f_r, a, g_l, g_r = map(mp.mpf, (b_l, b_r, f_l, f_r, a, g_l, g_r))
    r = mp.sqrt(a)
    T = f_r - f_l
    al = (f_l - b_l) / r
    be = (b_r - f_r) / r

    # rows: value@f_l, flux@f_l, value@f_r, flux@f_r
    M = mp.matrix(4, 4)
    rhs = mp.matrix(4, 1)
    # g_l cosh(al) + E_l sinh(al) = c0
    M[0, 0] = mp.sinh(al); M[0, 2] = -1
    rhs[0] = -g_l * mp.cosh(al)
    # (g_l sinh(al) + E_l cosh(al))/r = c1
    M[1, 0] = mp.cosh(al) / r; M[1, 3] = -1
    rhs[1] = -g_l * mp.sinh(al) / r
    # c0 + c1 T = g_r cosh(be) + E_r sinh(be)
    M[2, 2] = 1; M[2, 3] = T; M[2, 1] = -mp.sinh(be)
    rhs[2] = g_r * mp.cosh(be)
    # c1 = -(g_r sinh(be) + E_r cosh(be))/r
    M[3, 3] = 1; M[3, 1] = mp.cosh(be) / r
    rhs[3] = -g_r * mp.sinh(be) / r
    E_l, E_r, c0, c1 = mp.lu_solve(M, rhs)

    def d(y):
        if y <= f_l:
            return g_l * mp.cosh((y - b_l) / r) + E_l * mp.sinh((y - b_l) / r)
        if y >= f_r:
            return g_r * mp.cosh((b_r - y) / r) + E_r * mp.sinh((b_r - y) / r)
        return c0 + c1 * (y - f_l)

    film_grad_energy = c1 * c1 * T  # per unit x-measure
    void_mass = mp.quad(lambda y: d(y) ** 2, [b_l, f_l]) + mp.quad(
        lambda y: d(y) ** 2, [f_r, b_r]
    )
    sup_interior = max(
        abs(d(b_l + (b_r - b_l) * mp.mpf(i) / 20000)) for i in range(1, 20000)
    )
    return E_l, E_r, c0, c1, d, film_grad_energy, void_mass, sup_interior


def show(name, v):
    print(f"{name} = {mp.nstr(v, 50)}")


print("# golden 1D values, 150-digit arithmetic (printed to 50)")
print()
print("## case A: b_l=0 b_r=3 f_l=0.5 f_r=0.99 a=1e-4")
C_l, C_r, s_star, h = solve_nonhomogeneous(0, 3, "0.5", "0.99", "1e-4")
show("C_l", C_l)
show("C_r", C_r)
show("s_star", s_star)
show("h", h)
print()
print("## case B: b_l=0 b_r=3 f_l=0.5 f_r=0.99 a=1e-6")
C_l, C_r, s_star, h = solve_nonhomogeneous(0, 3, "0.5", "0.99", "1e-6")
show("C_l", C_l)
show("C_r", C_r)
show("log_C_l", mp.log(C_l))  # C_r underflows a double; compare in log form
show("log_C_r", mp.log(C_r))
show("s_star", s_star)
show("h", h)
print()
print("## case C: b_l=0 b_r=1 f_l=0.4 f_r=0.6 a=1e-4")
C_l, C_r, s_star, h = solve_nonhomogeneous(0, 1, "0.4", "0.6", "1e-4")
show("C_l", C_l)
show("C_r", C_r)
show("s_star", s_star)
show("h", h)
show("s_at_f_l", -C_l * mp.sinh(mp.mpf("0.4") / mp.mpf("0.01")))
print()
print("## case D: asymmetric, b_l=-0.7 b_r=1.3 f_l=0.1 f_r=0.35 a=2.5e-3")
C_l, C_r, s_star, h = solve_nonhomogeneous("-0.7", "1.3", "0.1", "0.35", "2.5e-3")
show("C_l", C_l)
show("C_r", C_r)
show("s_star", s_star)
show("h", h)
print()
print("## case E: homogeneous, b_l=0 b_r=1 f_l=0.4 f_r=0.6 a=1e-2 g_l=0.8 g_r=-0.5")
E_l, E_r, c0, c1, d, ge, vm, si = solve_homogeneous(0, 1, "0.4", "0.6", "1e-2", "0.8", "-0.5")
show("E_l", E_l)
show("E_r", E_r)
show("c0", c0)
show("c1", c1)
show("d_at_0.5", d(mp.mpf("0.5")))
show("d_at_0.2", d(mp.mpf("0.2")))
show("d_at_0.8", d(mp.mpf("0.8")))
show("film_grad_energy", ge)
show("void_mass", vm)
show("sup_interior", si)
print()
print("## case F: homogeneous thin film, b_l=0 b_r=1 f_l=0.4995 f_r=0.5005 a=1e-2 g=0.7 both ends")
E_l, E_r, c0, c1, d, ge, vm, si = solve_homogeneous(0, 1, "0.4995", "0.5005", "1e-2", "0.7", "0.7")
show("E_l", E_l)
show("E_r", E_r)
show("c0", c0)
show("c1", c1)
show("d_at_0.25", d(mp.mpf("0.25")))
show("d_at_0.5", d(mp.mpf("0.5")))
show("film_grad_energy", ge)
show("void_mass", vm)
show("sup_interior", si)
