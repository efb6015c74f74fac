#!/usr/bin/env python3
"""How the zero density behaves as you approach the boundary circle.

For the i.i.d.-coefficient series the density of zeros blows up like
1/(pi (1-|z|^2)^2) in every direction.  Dependence between coefficients
reshapes that profile through the spectral density of the coefficient
process: where the spectral density is positive the blow-up keeps the same
leading term but is pushed DOWN by a constant deficit; where it has a simple
zero the blow-up drops a whole order; where it has a double zero the profile
flattens to a constant.

This script walks one example of each regime and sets the quadrature values
of rho1 against the boundary expansion coefficients.
"""

import math

from gafzeros import presets
from gafzeros.asymptotics import rho1_boundary
from gafzeros.intensity import rho1

RADII = [0.9, 0.97, 0.99, 0.997, 0.999]


def show(title, F, phi):
    case, rep = rho1_boundary(F, phi)
    print(f"\n=== {title} (boundary regime: case {case}) ===")
    print("expansion coefficients (powers of y = 1-r^2):")
    for k in sorted(rep.coefficients):
        print(f"    y^{k:+d}: {rep.coefficients[k]: .8f}")
    print(f"{'r':>7} {'rho1 (quadrature)':>18} {'expansion':>12} {'ratio':>8}")
    for r in RADII:
        z = r * complex(math.cos(phi), math.sin(phi))
        exact = rho1(F, z)
        approx = rep(1 - r * r)
        print(f"{r:7.3f} {exact:18.6f} {approx:12.6f} {exact / approx:8.5f}")
    return rep


# regime (i): positive spectral density -----------------------------------
a, phi = 0.3, math.pi / 3
rep = show(f"one-dependent coefficients, a={a}, phi=pi/3", presets.ma1(a), phi)
deficit = a * a / (1 + 2 * a * math.cos(phi)) ** 2
print(f"deficit functional a^2/(1+2a cos phi)^2 = {deficit:.6f}"
      f"  (report carries {rep.inputs['deficit']:.6f})")

# regime (ii): simple zero of the density ----------------------------------
show("one-dependent, a=1/2, looking at the density zero (phi=pi)",
     presets.ma1(0.5), math.pi)
print("the 1/(pi y^2) blow-up has dropped to [1/(2 pi)] / y")

# regime (iii): double zero -> flat profile --------------------------------
F = presets.indicator(-math.pi / 2, math.pi / 2)
phi = 3 * math.pi / 4
show("half-circle support, looking into the unsupported half", F, phi)
print(f"flat limit 1/(12 pi cos^2 phi) = {1 / (12 * math.pi * math.cos(phi) ** 2):.8f}"
      f" = 1/(6 pi) at phi = 3 pi/4")
