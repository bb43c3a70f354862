#!/usr/bin/env python3
"""Generate src/mms/lshape_generated.rs.

Spatial profiles of the L-shape manufactured solution:

    u(t, x, y)     = t^2 * w(x, y)
    theta(t, x, y) = p(t, x, y) = 2 t * s(x, y)

    w = (x^2 - 1)^2 (y^2 - 1)^2 r^(1+v) G(phi + pi/2)
    s = (x^2 - 1)   (y^2 - 1)   r^(2/3) sin(2/3 (phi + pi/2))

with (r, phi) polar coordinates about the reentrant corner, phi in [-pi/2, pi].
The generated functions take (x, y, r, phi) so the caller controls the branch
of the angle; only derivatives of atan2 (which are branch free) are used.

Usage: python3 tools/gen_lshape.py > src/mms/lshape_generated.rs
"""

import re

import mpmath as mp
import sympy as sp
from sympy import rust_code

mp.mp.dps = 40
# smallest positive root of sin(3*pi*v/2) = v; rounds to 0.5444837
V = mp.findroot(lambda z: mp.sin(3 * mp.pi * z / 2) - z, 0.5444837)

x, y = sp.symbols("x y", real=True)
r_sym, phi_sym = sp.symbols("r phi", positive=True)
v = sp.Float(str(V), 40)
omega = sp.Rational(3, 2) * sp.pi

rr = sp.sqrt(x**2 + y**2)
ph = sp.atan2(y, x)


def g_fun(a):
    c1 = sp.sin((v - 1) * omega) / (v - 1) - sp.sin((v + 1) * omega) / (v + 1)
    c2 = sp.cos((v - 1) * omega) - sp.cos((v + 1) * omega)
    return c1 * (sp.cos((v - 1) * a) - sp.cos((v + 1) * a)) - (
        sp.sin((v - 1) * a) / (v - 1) - sp.sin((v + 1) * a) / (v + 1)
    ) * c2


bubble_w = (x**2 - 1) ** 2 * (y**2 - 1) ** 2
bubble_s = (x**2 - 1) * (y**2 - 1)
w = bubble_w * rr ** (1 + v) * g_fun(ph + sp.pi / 2)
s = bubble_s * rr ** sp.Rational(2, 3) * sp.sin(sp.Rational(2, 3) * (ph + sp.pi / 2))

# sanity: clamped condition on the reentrant side phi' = 3 pi / 2
a = sp.Symbol("a")
gp = sp.diff(g_fun(a), a).subs(a, omega)
assert abs(sp.N(gp, 30)) < 1e-25, sp.N(gp, 30)


def d(e, *vs):
    for var in vs:
        e = sp.diff(e, var)
    return e


w_x, w_y = d(w, x), d(w, y)
w_xx, w_xy, w_yy = d(w_x, x), d(w_x, y), d(w_y, y)
lap_w = w_xx + w_yy
bilap_w = d(lap_w, x, x) + d(lap_w, y, y)

s_x, s_y = d(s, x), d(s, y)
lap_s = d(s_x, x) + d(s_y, y)


def polar(e):
    e = e.subs(sp.atan2(y, x), phi_sym)
    e = e.subs(sp.sqrt(x**2 + y**2), r_sym)
    e = e.subs(x**2 + y**2, r_sym**2)
    return e.evalf(30)


def float_literals(code):
    # bare integer literals become f64; powi exponents stay integral
    code = re.sub(r"powi\((-?\d+)\)", r"powi(@\1@)", code)
    code = re.sub(r"(?<![\w.@])(\d+)(?![\w.@])", r"\1.0", code)
    return code.replace("@", "")


def emit(name, doc, fields):
    exprs = [polar(e) for _, e in fields]
    reps, reduced = sp.cse(exprs, symbols=sp.numbered_symbols("c"))
    out = []
    out.append(f"/// {doc}")
    out.append("#[allow(clippy::all, unused_parens)]")
    out.append(f"pub(crate) fn {name}(x: f64, y: f64, r: f64, phi: f64) -> [f64; {len(fields)}] {{")
    for sym, e in reps:
        out.append(f"    let {sym} = {float_literals(rust_code(e))};")
    vals = ", ".join(float_literals(rust_code(e)) for e in reduced)
    out.append(f"    [{vals}]")
    out.append("}")
    return "\n".join(out)


print("// @generated by tools/gen_lshape.py; do not edit by hand.")
print("#![allow(clippy::all)]")
print()
print("use std::f64::consts::PI;")
print()
print(f"/// Singular exponent of the clamped-plate corner function on the 270 degree corner.")
print(f"pub const UPSILON: f64 = {mp.nstr(V, 20)};")
print()
print(
    emit(
        "deflection_profile",
        "`[w, w_x, w_y, w_xx, w_xy, w_yy, bilaplacian w]`",
        [
            ("w", w),
            ("w_x", w_x),
            ("w_y", w_y),
            ("w_xx", w_xx),
            ("w_xy", w_xy),
            ("w_yy", w_yy),
            ("bilap", bilap_w),
        ],
    )
)
print()
print(
    emit(
        "moment_profile",
        "`[s, s_x, s_y, laplacian s]`",
        [("s", s), ("s_x", s_x), ("s_y", s_y), ("lap", lap_s)],
    )
)
