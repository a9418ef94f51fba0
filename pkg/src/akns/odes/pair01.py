"""Pair (0, 1): second-order symmetry equation."""

# G = -1/2 u'' + (1 - 1/x) u' + (2/x + 1/x^2) u, odd; u = v1 (j = 1) or u = v2' (j = 2)
G = {
    2: (["-1/2"], {}, {}),
    1: ([1], {1: -1}, {}),
    0: ([], {1: 2, 2: 1}, {}),
}
G_ODD = True
UNKNOWN_EVEN = True
SHIFT = 0

# v1'' + (1/x - 1/(1-x)) v1' - (2/x + 2/(1-x) + 1/x^2 + 1/(1-x)^2) v1 = 0
ODE = {
    2: ([1], {}, {}),
    1: ([], {1: 1}, {1: -1}),
    0: ([], {1: -2, 2: -1}, {1: -2, 2: -1}),
}

CLOSED_FORM = "(2*x**2 - 2*x + 1)/(2*x*(1 - x))"
MIDPOINT = (1, 0)          # v1(1/2), v1'(1/2)
BLOWUP_LIMIT = "1/2"       # lim x v1(x), x -> 0
