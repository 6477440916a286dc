"""Regenerate the JSON fixtures in this directory.

Run from the repository root:  python3 fixtures/make_fixtures.py
"""

import json
from fractions import Fraction
from pathlib import Path

HERE = Path(__file__).resolve().parent
PACKAGE_COPY = HERE.parent / "src" / "demazure" / "fixtures"

GCMS = {
    "a1xa1": ("A1 x A1, m = 2", [[2, 0], [0, 2]]),
    "a2": ("A2, m = 3", [[2, -1], [-1, 2]]),
    "b2": ("B2, m = 4", [[2, -1], [-2, 2]]),
    "c2": ("B2 with the other orientation, m = 4", [[2, -2], [-1, 2]]),
    "g2rank2": ("G2, m = 6", [[2, -1], [-3, 2]]),
    "g2swapped": ("G2 with the other orientation, m = 6", [[2, -3], [-1, 2]]),
    "a1aff": ("A1 affine, m = infinity", [[2, -2], [-2, 2]]),
    "a2aff": ("A2 affine", [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]),
    "g2aff": ("G2 affine, delta = a0 + 2 a1 + 3 a2", [[2, -1, 0], [-1, 2, -1], [0, -3, 2]]),
    "hyperbolic24": ("indefinite rank 2", [[2, -4], [-4, 2]]),
}


def frac(x):
    return str(Fraction(x))


def lambda_n(n):
    """A1 affine lattice spanned by a0 and (1/4n + 1/2) a0 + (1/4n) a1."""
    q = Fraction(1, 4 * n)
    return {
        "name": f"Lambda_{n}",
        "gcm": GCMS["a1aff"][1],
        "B": [[frac(1), frac(q + Fraction(1, 2))], [frac(0), frac(q)]],
    }


def delta_over_m(gcm, labels, i, m, with_dstar):
    """Basis: d* (optional), the simple roots other than alpha_i, then delta/m.

    Requires labels[i] == 1 so alpha_i = m (delta/m) - sum of the others.
    """
    l = len(gcm)
    others = [k for k in range(l) if k != i]
    n = len(others) + 1 + int(with_dstar)
    off = int(with_dstar)
    roots = []
    for k in range(l):
        v = [0] * n
        if k == i:
            for pos, o in enumerate(others):
                v[off + pos] = -labels[o]
            v[-1] = m
        else:
            v[off + others.index(k)] = 1
        roots.append(v)
    coroots = []
    for j in range(l):
        row = [0] * n
        if with_dstar:
            row[0] = int(j == 0)
        for pos, o in enumerate(others):
            row[off + pos] = gcm[j][o]
        coroots.append(row)
    return {"gcm": gcm, "simple_roots": roots, "coroots": coroots}


def build():
    out = {}
    for key, (name, matrix) in GCMS.items():
        out[f"{key}.json"] = {"name": name, "matrix": matrix}
    for n in (1, 2, 3, 9):
        out[f"lambda{n}.json"] = lambda_n(n)
    a1 = GCMS["a1aff"][1]
    for m in (1, 2, 3, -5):
        lat = delta_over_m(a1, [1, 1], 1, m, True)
        lat["name"] = f"A1 affine: Z d* + Z a0 + Z delta/{m}"
        out[f"a1aff-delta-over-{m}.json".replace("--", "-minus")] = lat
    a2 = GCMS["a2aff"][1]
    for m in (2, 7):
        lat = delta_over_m(a2, [1, 1, 1], 2, m, True)
        lat["name"] = f"A2 affine: Z d* + Z a0 + Z a1 + Z delta/{m}"
        out[f"a2aff-delta-over-{m}.json"] = lat
    g2 = GCMS["g2aff"][1]
    for m in (1, 2, 5, -4):
        lat = delta_over_m(g2, [1, 2, 3], 0, m, False)
        lat["name"] = f"G2 affine: Z delta/{m} + Z a1 + Z a2"
        out[f"g2aff-delta-over-{m}.json".replace("--", "-minus")] = lat
    out["indefinite24.json"] = {
        "name": "Z a1 + Z (a1 + a2)/2 for [[2,-4],[-4,2]]",
        "gcm": GCMS["hyperbolic24"][1],
        "B": [["1", "1/2"], ["0", "1/2"]],
    }
    out["a1aff-half-pairing.json"] = {
        "name": "A1 affine, B = [[1, 1/2], [0, 1/2]]",
        "gcm": a1,
        "B": [["1", "1/2"], ["0", "1/2"]],
    }
    # a1/2 pairs to -1/2 with the second coroot, so FDL2 fails
    out["a2-half-root.json"] = {
        "name": "A2 with Z a1/2 + Z a2",
        "gcm": GCMS["a2"][1],
        "B": [["1/2", "0"], ["0", "1"]],
    }
    # Z d* + Z a1/2 + Z delta: fundamental weights lie in it but a1/2 blocks FDL1
    out["rwl-counterexample.json"] = {
        "name": "A1 affine restricted weight lattice Z d* + Z a1/2 + Z delta",
        "gcm": a1,
        "simple_roots": [[0, -2, 1], [0, 2, 0]],
        "coroots": [[1, -1, 0], [0, 1, 0]],
    }
    for key in ("a2", "g2rank2", "hyperbolic24"):
        matrix = GCMS[key][1]
        out[f"{key}-weights.json"] = {
            "name": f"weight lattice of {key}",
            "gcm": matrix,
            "simple_roots": [list(col) for col in zip(*matrix)],
            "coroots": [[int(i == j) for j in range(len(matrix))] for i in range(len(matrix))],
        }
    out["fgl-hyperbolic-custom.json"] = None  # filled in below
    return out


def custom_law():
    from demazure.fga import make_fgl

    return make_fgl("hyperbolic", 8).F.to_dict()


def main():
    files = build()
    files["fgl-hyperbolic-custom.json"] = custom_law()
    PACKAGE_COPY.mkdir(exist_ok=True)
    for name, data in files.items():
        text = json.dumps(data, indent=1) + "\n"
        for folder in (HERE, PACKAGE_COPY):
            (folder / name).write_text(text)
    print(f"wrote {len(files)} fixtures")


if __name__ == "__main__":
    main()
