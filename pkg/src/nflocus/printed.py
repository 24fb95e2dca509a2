"""Printed representation matrices of the nine exceptional matroids.

Each entry gives the parameter names, the defining equations of the
slice, the polynomials whose vanishing is removed from it, and the
3 x n matrix as rows of polynomial strings.  The fixture catalog is
derived from these by reading off which 3-subsets have a determinant
that does not vanish identically on the slice.
"""

PRINTED = {
    "M9": {
        # entry (3, 6) is a-1; the printed -a+1 loses the three lines through 6
        "params": ["a"],
        "equations": ["a^2-a+1"],
        "removed": [],
        "roots": (4, 4),
        "rows": [
            "1 0 1 0 1 0 1 1 1",
            "0 1 1 0 0 1 -a+1 -a+1 1",
            "0 0 0 1 1 a-1 a 1 a",
        ],
    },
    "M11": {
        "params": ["a"],
        "equations": ["a^2-a-1"],
        "removed": [],
        "roots": (5, 5),
        "rows": [
            "1 0 1 1 0 1 1 0 0 1 1",
            "0 1 1 a+1 0 0 0 1 1 -a -a",
            "0 0 0 0 1 1 a -1 -a+1 a+1 a",
        ],
    },
    "M12_1": {
        # the printed matrix loses 7 of the 16 three-point lines; this is the
        # completed configuration, normalized on the basis {1, 2, 5}
        "params": ["a"],
        "equations": ["2*a^2-2*a+1"],
        "removed": [],
        "roots": (5, 6),
        "rows": [
            "1 0 1 1 0 1 1 1 1 0 1 1",
            "0 1 1 a^2-a+1 0 a a a 0 1 1 a^2-a+1",
            "0 0 0 0 1 1 -a+1 -2*a+1 1 -2*a -2*a+1 -a+1",
        ],
    },
    "M12_2": {
        "params": ["a"],
        "equations": ["2"],
        "removed": ["a", "a+1"],
        "roots": (5, 6),
        "rows": [
            "1 0 1 1 0 1 1 a+1 1 0 a+1 1",
            "0 1 1 a^2+1 0 a+1 a+1 a^2+1 0 a+1 a+1 a^2+1",
            "0 0 0 0 1 1 a -a 1 1 -a a",
        ],
    },
    "M13_1": {
        # column 5 is (a1, -1, 0); the printed (1, -1, 0) misses two lines through 5
        "params": ["a1", "a2"],
        "equations": ["a1*a2^2-2*a1*a2+a1-a2"],
        "removed": ["6*a2^3+4*a1^2-10*a1*a2-a2^2-a1-9*a2"],
        "roots": (6, 6),
        "rows": [
            "1 0 1 1 a1 0 1 1 1 0 0 0 1",
            "0 1 1 -a2^2+a2 -1 0 0 0 0 1 1 1 -a2+1",
            "0 0 0 0 0 a1 1 a1*a2-a1+a2 -a2^2+a2 -1 a1 -a1*a2+a1-a2 a2",
        ],
    },
    "M13_2": {
        "params": ["a"],
        "equations": ["a^2+1"],
        "removed": ["2"],
        "roots": (6, 6),
        "rows": [
            "1 0 1 1 1 0 1 1 1 1 1 1 1",
            "0 1 1 -1 -a 0 0 0 0 1 -1 -a a",
            "0 0 0 0 0 1 1 1-a a+1 2 2 2 2",
        ],
    },
    "M13_3": {
        "params": ["a"],
        "equations": ["a^2-a-1"],
        "removed": ["2", "a"],
        "roots": (6, 6),
        "rows": [
            "1 0 1 1 1 0 1 1 1 0 0 1 1",
            "0 1 1 -a+1 -a 0 0 0 0 1 1 -a+1 -1",
            "0 0 0 0 0 1 1 -a a+1 -1 -a-1 a 1",
        ],
    },
    "M13_4": {
        "params": ["a"],
        "equations": ["2*a^2-2*a+1"],
        "removed": ["2*a-3", "3*a-1"],
        "roots": (6, 6),
        "rows": [
            "1 0 1 1 1 0 1 1 0 1 1 0 1",
            "0 1 1 -2*a+1 1-a 0 0 0 1 a 1 1 1",
            "0 0 0 0 0 1 1 2*a 2-2*a 1 2-2*a 1-2*a 1",
        ],
    },
    "M13_5": {
        "params": ["a"],
        "equations": ["2*a^2+2*a+1"],
        "removed": ["2*a+3", "a+2"],
        "roots": (6, 6),
        "rows": [
            "1 0 1 1 1 0 1 1 1 0 0 1 1",
            "0 1 1 -2*a-1 -2*a 0 0 0 0 1 1 -2*a-1 -2*a-2",
            "0 0 0 0 0 1 1 -a -2*a-1 a -1 1 1",
        ],
    },
}

# phi dimensions and nonfree loci as reported alongside the printed slices
TABLE = {
    "M9": {"size": 9, "roots": (4, 4), "phi": (16, 16), "phi_red": (1, 1), "nfl": "V(3)"},
    "M11": {"size": 11, "roots": (5, 5), "phi": (25, 25), "phi_red": (1, 1), "nfl": "V(2)"},
    "M12_1": {"size": 12, "roots": (5, 6), "phi": (24, 25), "phi_red": (8, 4), "nfl": "empty"},
    "M12_2": {"size": 12, "roots": (5, 6), "phi": (24, 25), "phi_red": (4, 4), "nfl": "slice"},
    "M13_1": {"size": 13, "roots": (6, 6), "phi": (36, 36), "phi_red": (9, 2), "nfl": "empty"},
    "M13_2": {"size": 13, "roots": (6, 6), "phi": (36, 36), "phi_red": (8, 5), "nfl": "slice"},
    "M13_3": {"size": 13, "roots": (6, 6), "phi": (36, 36), "phi_red": (2, 2), "nfl": "slice"},
    "M13_4": {"size": 13, "roots": (6, 6), "phi": (36, 36), "phi_red": (2, 1), "nfl": "empty"},
    "M13_5": {"size": 13, "roots": (6, 6), "phi": (36, 36), "phi_red": (2, 1), "nfl": "empty"},
}
