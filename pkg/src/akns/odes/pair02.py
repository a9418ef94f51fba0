"""Pair (0, 2): fourth-order symmetry equation."""

# G = u^(5) + (8/x - 6) u^(4) + (12 - 48/x - 8/x^2) u''' + (96/x - 24/x^3) u''
#     + (96/x^2 + 144/x^3 + 96/x^4) u' - (96/x^3 + 144/x^4 + 96/x^5) u,  odd
G = {
    5: ([1], {}, {}),
    4: ([-6], {1: 8}, {}),
    3: ([12], {1: -48, 2: -8}, {}),
    2: ([], {1: 96, 3: -24}, {}),
    1: ([], {2: 96, 3: 144, 4: 96}, {}),
    0: ([], {3: -96, 4: -144, 5: -96}, {}),
}
G_ODD = True
UNKNOWN_EVEN = True
SHIFT = 0

ODE = {
    4: ([-12], {1: 8}, {1: 8}),
    3: ([], {1: -48, 2: -8}, {1: 48, 2: 8}),
    2: ([], {1: 96, 3: -24}, {1: 96, 3: -24}),
    1: ([], {2: 96, 3: 144, 4: 96}, {2: -96, 3: -144, 4: -96}),
    0: ([], {3: -96, 4: -144, 5: -96}, {3: -96, 4: -144, 5: -96}),
}

# local part of D A_2(D)[w_1] acting on v1, k -> coefficient
MIDPOINT_OPERATOR = {
    3: (["-1/4"], {}, {}),
    2: (["3/2"], {1: -2}, {}),
    1: ([-3], {1: 12, 2: -2}, {}),
    0: ([], {1: -24, 2: 24, 3: 2}, {}),
}
V1_HALF = 1
V1PP_HALF = "128/5"
CLOSED_FORM = ("5/3 - 5/(8*x) - 5/(8*(1 - x)) - 15/(8*(2 - 3*x + 3*x**2))"
               " + 25/(12*(2 - 3*x + 3*x**2)**2)")
BLOWUP_LIMIT = "-5/8"
INDICIAL_AT0 = (-1, 1, 3, 4)
INDICIAL_SCALE = 8
