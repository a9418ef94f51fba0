"""Transcribed coefficient tables for the four pair analyses.

Every coefficient is a triple ``(poly, at0, at1)`` meaning

    sum_i poly[i] x^i + sum_j at0[j] / x^j + sum_j at1[j] / (1 - x)^j

with integer or string-rational entries.  ``G`` tables hold the one-sided
differential expression whose parity about x = 1/2 is known, indexed by the
derivative order of the unknown; ``ODE`` tables hold the symmetric equation
``sum_k a_k y^(k) = 0`` indexed by the derivative order of ``y``.
"""
