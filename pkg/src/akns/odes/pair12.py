"""Pair (1, 2): two fourth-order equations for derivatives of the odd part f_o."""

# j = 1: H in terms of f_o (orders 1..5), odd; y = f_o'
H = {
    5: ([1], {}, {}),
    4: ([-4], {1: 6}, {}),
    3: ([], {1: -24, 2: -12}, {}),
    2: ([24], {2: 12, 3: 12}, {}),
    1: ([], {1: 144, 2: 72, 3: 24}, {}),
}
H_ODD = True
H_SHIFT = 1

ODE_Y = {
    4: ([2], {}, {}),
    3: ([], {1: 6}, {1: -6}),
    2: ([], {1: -24, 2: -12}, {1: -24, 2: -12}),
    1: ([], {2: 12, 3: 12}, {2: -12, 3: -12}),
    0: ([], {1: 144, 2: 72, 3: 24}, {1: 144, 2: 72, 3: 24}),
}

# j = 2: G in terms of f_o (orders 3..7), odd; y = f_o'''
G = {
    7: (["1/2"], {}, {}),
    6: ([-2], {1: 3}, {}),
    5: ([], {1: -12, 2: -6}, {}),
    4: ([12], {2: 6, 3: 6}, {}),
    3: ([], {1: 72, 2: 36, 3: 12}, {}),
}
G_ODD = True
G_SHIFT = 3

ODE_FO = {
    4: ([1], {}, {}),
    3: ([], {1: 3}, {1: -3}),
    2: ([], {1: -12, 2: -6}, {1: -12, 2: -6}),
    1: ([], {2: 6, 3: 6}, {2: -6, 3: -6}),
    0: ([], {1: 72, 2: 36, 3: 12}, {1: 72, 2: 36, 3: 12}),
}
UNKNOWN_EVEN = False   # f_o is odd

# local part of 4 D A_2(D)[g] acting on f, k -> coefficient
MIDPOINT_OPERATOR = {
    3: ([1], {}, {}),
    2: ([-6], {1: 6}, {}),
    1: ([12], {1: -36}, {}),
    0: ([], {1: 72, 2: -36}, {}),
}
Y_MIDPOINT = (1, 0, 48, 0)
CLOSED_FORM_Y = "-1 + 1/(4*(x - 1)**2) + 1/(4*x**2)"
CLOSED_FORM_F = "-x**2 - log(1 - x)/2 - log(x)/2 + 1/(4*(1 - x)) - 1/(4*x)"
INDICIAL_AT0 = (-2, 0, 2, 3)
