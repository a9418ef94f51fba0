"""Unperturbed spectra, their normalisation constants, and a perturbed spectrum.

For the free operator the eigenvalues are the positive zeros of J_{kappa+1/2}
mirrored about 0, plus the zero mode.  A smooth potential shifts them; the
shift to first order is the differential formula, checked against central
differences at the end.
"""
import numpy as np

from akns.forward import Potential, eigenvalues, frechet_check
from akns.grid import legendre_coeffs
from akns.spectrum0 import eigenvalues0, normconst, normconst_slope


def main():
    for kappa in range(4):
        sl = eigenvalues0(kappa, 3)
        c = [normconst(kappa, n) for n in range(4)]
        print(f"kappa={kappa}  lambda_1..3 = {np.round(sl.values[4:], 6)}  c_0..3 = {np.round(c, 6)}")

    print("\nc_n^2 approaches its asymptote like n^-4:")
    for kappa in (1, 2, 3):
        slope, _ = normconst_slope(kappa, 10, 40)
        print(f"  kappa={kappa}: fitted log-log slope {slope:.2f}")

    cp, cq = legendre_coeffs(2, 6, 3)
    V = Potential.legendre(cp, cq, 0.5)
    free = eigenvalues(1, Potential.zero(), 4).values
    pert = eigenvalues(1, V, 4).values
    print("\nkappa=1, perturbed minus free eigenvalues:")
    print("  ", np.round(pert - free, 6))

    r = frechet_check(1, 2, V)
    print(f"\nlambda_2 differential: formula {r['formula']:.8f}, "
          f"finite difference {r['finite_difference']:.8f}, rel gap {r['rel_gap']:.1e}")


if __name__ == "__main__":
    main()
