"""Literature values used by the verification suites and the acceptance tests.

Entries are transcribed as printed, typos included; ``KNOWN_TYPOS`` lists
the entries that disagree with exact recomputation.
"""

# n -> K_n
KUREPA_DETERMINANTS = {
    7: 15,
    8: -47,
    9: 197,
    10: -1029,
    11: 6439,
    12: -46927,
    13: 390249,
    14: -3645737,
    15: 37792331,
    16: -430400211,
    17: 5341017373,
}

# n -> (factorization, r_n): n < 100000 with |S_{n-1} mod n| <= 2
RESIDUE_TABLE = {
    2: ("2", 0), 3: ("3", 1), 4: ("2^2", 2), 5: ("5", -1), 6: ("2*3", 2),
    7: ("7", -1), 8: ("2^3", -2), 9: ("3^2", 1), 11: ("11", 1), 12: ("2^2*3", 2),
    23: ("23", -2), 31: ("31", 2), 33: ("3*11", 1), 35: ("5*7", -1), 46: ("2*23", 2),
    49: ("7^2", -1), 62: ("2*31", -2), 67: ("67", -2), 69: ("3*23", -2), 92: ("2^2*23", 2),
    99: ("3^2*11", 1), 124: ("2^2*31", -2), 134: ("2*67", 2), 138: ("2*3*23", 2),
    201: ("3*67", -2), 227: ("227", -2), 245: ("5*7^2", -1), 248: ("2^3*31", -2),
    268: ("2^2*67", 2), 276: ("2^2*3*23", 2), 373: ("373", 2), 402: ("2*3*67", 2),
    454: ("2*227", 2), 681: ("3*227", -2), 746: ("2*373", -2), 804: ("2^2*3*67", 2),
    908: ("2^2*227", 2), 1362: ("2*3*227", 2), 1492: ("2^2*373", -2), 1541: ("23*67", -2),
    2724: ("2^2*3*227", 2), 2984: ("2^3*373", -2), 3082: ("2*23*67", 2),
    4623: ("3*23*67", -2), 5221: ("23*227", -2), 6164: ("2^2*23*67", 2),
    9246: ("2*3*23*67", 2), 10331: ("10331", -2), 10442: ("2*23*227", 2),
    11563: ("31*373", 2), 15209: ("67*227", -2), 15663: ("3*23*227", -2),
    18492: ("2^2*3*23*67", 2), 20662: ("2*10331", 2), 20884: ("2^2*23*227", 2),
    23126: ("2*31*373", 2), 30418: ("2*67*227", 2), 30993: ("3*10331", -2),
    31326: ("2*3*23*227", 2), 41324: ("2^2*10331", 2), 45627: ("3*67*227", -2),
    46252: ("2^2*31*373", -2), 60836: ("2^2*67*227", 2), 61986: ("2*3*10331", 2),
    62652: ("2^2*3*23*227", 2), 91254: ("2*3*67*227", 2), 92504: ("2^3*31*373", -2),
}

# n -> |r_n / n| * 1000, truncated to six decimals, for the rows where it is at most 1
RESIDUE_TABLE_RATIOS = {
    2: 0.0, 2724: 0.734214, 2984: 0.670241, 3082: 0.648929, 4623: 0.432619,
    5221: 0.383068, 6164: 0.324464, 9246: 0.216309, 10331: 0.193592,
    10442: 0.191534, 11563: 0.172965, 15209: 0.131501, 15663: 0.127689,
    18492: 0.108154, 20662: 0.096796, 20884: 0.095767, 23126: 0.086482,
    30418: 0.065750, 30993: 0.064530, 31326: 0.063844, 41324: 0.048398,
    45627: 0.043833, 46252: 0.043241, 60836: 0.032875, 61986: 0.032265,
    62652: 0.031922, 91254: 0.021916, 92504: 0.021620,
}

# n -> (factorization, s_n, r_n): odd 7 <= n < 2500 with |-8 K_n mod n| <= 10
DETERMINANT_TABLE = {
    7: ("7", -1, -1), 9: ("3^2", -1, 1), 11: ("11", 1, 1), 15: ("3*5", 2, 4),
    21: ("3*7", -10, -8), 23: ("23", -2, -2), 27: ("3^3", 8, 10), 31: ("31", 2, -2),
    33: ("3*11", -1, 1), 35: ("3*5", -3, -1), 39: ("3*13", 8, 10), 49: ("7^2", -3, -1),
    63: ("3^2*7", -10, -8), 67: ("67", -2, -2), 69: ("3*23", -4, -2), 95: ("5*19", 7, 9),
    99: ("3^2*11", -1, 1), 117: ("3^2*13", 8, 10), 121: ("11^2", 10, 12),
    123: ("3*41", 2, 4), 201: ("3*67", -4, -2), 205: ("5*41", 2, 4), 227: ("227", -2, -2),
    245: ("5*7^2", -3, -1), 351: ("3^3*13", 8, 10), 373: ("373", 2, 2),
    417: ("3*139", -7, -5), 453: ("3*151", 8, 10), 489: ("3*163", 2, 4),
    615: ("3*5*41", 2, 4), 681: ("3*227", -4, -2), 815: ("5*163", 2, 4),
    831: ("3*277", 5, 7), 923: ("13*71", -5, -3), 985: ("5*197", 7, 9),
    1541: ("23*67", -4, -2), 1745: ("5*349", -8, -6),
}

# n -> (K_n, S_{n-1}, (8 K_n + S_{n-1}) mod n in balanced form)
DETERMINANT_CONGRUENCE_TABLE = {
    7: (15, 265, 0),
    8: (-47, 1854, -2),
    9: (197, 14833, 2),
    10: (-1029, 133496, 4),
    11: (6439, 1334961, 0),
    12: (-46927, 14684570, 6),
    13: (390249, 176214841, 0),
    14: (-3645737, 2290792932, 4),
    15: (37792331, 32071101049, 2),
    16: (-430400211, 481066515734, -2),
    17: (5341017373, 7697064251745, 0),
    18: (-71724018781, 130850092279664, 0),
    19: (1036207207363983, 2355301661033953, 0),
    20: (-16024176975479, 44750731559645106, -6),
    21: (264083895859409, 895014631192902121, 2),
}

# n < 20000 with B_{n-1} = 1 (mod n), and the listed S_{n-1} mod n
BELL_ONE = (2, 4, 16, 28, 46, 134, 454, 1442, 1665, 4252)
BELL_ONE_RESIDUES = (0, 2, 6, -6, 2, -2, 2, 568, -476, 22)

PRIME_POWERS_NEAR_ZERO = {4: 2, 8: -2, 9: 1, 49: -1}
NEAR_MISS_PRIMES_BELOW_400 = (3, 5, 7, 11, 23, 31, 67, 227, 373)
NEAR_MISS_COUNT_1000_100000_D99 = 118

# (label, value) pairs for the heuristic estimators
HEURISTIC_CONSTANTS = {
    "event_prob_4_2^23": 0.105652,
    "event_prob_2^23_5e7": 0.899309,
    "mertens_23_2^23_d9": 30.8977,
    "mertens_3_2^23_d0": 2.67493,
    "mertens_353_2^23_d0": 0.999729,
    "mertens_1e3_1e5_d99": 101.654,
    "mertens_2^23_1e19_d0": 1.00949,
}

KNOWN_TYPOS = {
    ("residue_table", 23126): "r_n printed as 2; S_23125 = -2 (mod 23126)",
    ("determinant_table", 31): "r_n printed as -2; S_30 = 2 (mod 31)",
    ("determinant_table", 35): "factorization printed as 3*5; 35 = 5*7",
    ("determinant_congruence_table", 19): "K_19 printed as 1036207207363983; exact value 1036207363983",
    ("bell_one", 134): "S_133 mod 134 printed as -2; exact value 2",
    ("heuristic", "event_prob_2^23_5e7"): "upper endpoint printed as 5000000, below 2^23; 5*10^7 reproduces the value",
}
