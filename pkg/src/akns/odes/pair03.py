"""Pair (0, 3): eighth-order symmetry equation for w = v2' (and for v1)."""

# G = F^(6) in terms of v2 (orders 1..9), odd; w = v2'
G = {
    9: ([-1], {}, {}),
    8: ([12], {1: -18}, {}),
    7: ([-60], {1: 216, 2: -18}, {}),
    6: ([120], {1: -1080, 2: 432, 3: 348}, {}),
    5: ([], {1: 2160, 2: -3240, 3: -3312, 4: -1260}, {}),
    4: ([], {2: 8640, 3: 10080, 4: 5184, 5: 720}, {}),
    3: ([], {3: -2880, 4: 4320, 5: 12096, 6: 9360}, {}),
    2: ([], {4: -17280, 5: -43200, 6: -51840, 7: -30240}, {}),
    1: ([], {5: 17280, 6: 43200, 7: 51840, 8: 30240}, {}),
}
G_ODD = True
UNKNOWN_EVEN = False   # v2 is odd
SHIFT = 1

ODE = {
    8: ([-2], {}, {}),
    7: ([], {1: -18}, {1: 18}),
    6: ([-120], {1: 216, 2: -18}, {1: 216, 2: -18}),
    5: ([], {1: -1080, 2: 432, 3: 348}, {1: 1080, 2: -432, 3: -348}),
    4: ([], {1: 2160, 2: -3240, 3: -3312, 4: -1260}, {1: 2160, 2: -3240, 3: -3312, 4: -1260}),
    3: ([], {2: 8640, 3: 10080, 4: 5184, 5: 720}, {2: -8640, 3: -10080, 4: -5184, 5: -720}),
    2: ([], {3: -2880, 4: 4320, 5: 12096, 6: 9360}, {3: -2880, 4: 4320, 5: 12096, 6: 9360}),
    1: ([], {4: -17280, 5: -43200, 6: -51840, 7: -30240}, {4: 17280, 5: 43200, 6: 51840, 7: 30240}),
    0: ([], {5: 17280, 6: 43200, 7: 51840, 8: 30240}, {5: 17280, 6: 43200, 7: 51840, 8: 30240}),
}

# local parts of F, F'' and F^(4) acting on v2 (orders 0..7); the nonlocal
# terms carry a factor vanishing at 1/2 or act on an odd function there
F0 = {
    3: ([-1], {}, {}),
    2: ([12], {1: -18}, {}),
    1: ([-60], {1: 216, 2: -126}, {}),
    0: ([120], {1: -1080, 2: 1728, 3: -624}, {}),
}
F2 = {
    5: ([-1], {}, {}),
    4: ([12], {1: -18}, {}),
    3: ([-60], {1: 216, 2: -90}, {}),
    2: ([120], {1: -1080, 2: 1296, 3: -156}, {}),
    1: ([], {1: 2160, 2: -7560, 3: 4464, 4: -324}, {}),
    0: ([], {2: 17280, 3: -37440, 4: 17280, 5: -1440}, {}),
}
F4 = {
    7: ([-1], {}, {}),
    6: ([12], {1: -18}, {}),
    5: ([-60], {1: 216, 2: -54}, {}),
    4: ([120], {1: -1080, 2: 864, 3: 168}, {}),
    3: ([], {1: 2160, 2: -5400, 3: -288, 4: 72}, {}),
    2: ([], {2: 12960, 3: -9360, 4: -1728, 5: -720}, {}),
    1: ([], {3: 44640, 4: -19440, 5: 1728, 6: 720}, {}),
    0: ([], {4: 172800, 5: -86400}, {}),
}
W_DERIVS = (1, 0, -132, 0, 3024, 0, 3052224, 0)   # w^(k)(1/2), v2'(1/2) = 1

# even branch: v1^(4) = 12 v1'' + 4608 v1, v1^(6) = 156 v1^(4) - 18432 v1'' + 147456 v1
V1_RELATIONS = {4: {2: 12, 0: 4608}, 6: {4: 156, 2: -18432, 0: 147456}}

INDICIAL_AT0 = (7, 6, 5, 3, 1, -1, complex(-1, 23 ** 0.5), complex(-1, -(23 ** 0.5)))
OMEGA_SQ = 23
