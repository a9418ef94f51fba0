"""Partial sums of Kneser-Sommerfeld type series against their closed forms.

Each identity expresses a Bessel-zero series as a ratio of Bessel functions.
The gap after N terms shrinks with N; the fitted log-log slope shows the
actual rate, which is usually faster than the first-order tail bound because
consecutive terms oscillate and partly cancel.
"""
from akns.ksum import IDENTITIES, draw_parameters, ks_eval, ks_rate


def main():
    for ident in IDENTITIES:
        kappa, x, X, z = draw_parameters(ident, 1, 42)[0]
        ev = ks_eval(ident, kappa, x, X, z, 100_000)
        r = ks_rate(ident, kappa, x, X, z)
        print(f"{ident:10s} kappa={kappa} x={x:.3f} X={X:.3f} z={z:.3f}  "
              f"gap(1e5)={ev.gap:.2e}  slope={r['slope']:.2f}")


if __name__ == "__main__":
    main()
