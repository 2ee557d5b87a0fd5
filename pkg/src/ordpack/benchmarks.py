"""Built-in benchmark instances.

okp17: strip packing of 17 rectangles into a strip of width 100, with
precedence constraints on the height (time) axis.  square21: the 21 squares
that tile a 112 x 112 square, with precedence constraints in one or both axes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import Instance, make_instance

OKP17_BASE = 100
OKP17_BOXES = [
    (8, 81), (5, 76), (42, 19), (6, 80), (41, 48), (6, 86), (58, 20), (99, 3), (9, 52),
    (100, 14), (7, 53), (24, 54), (23, 77), (42, 32), (17, 30), (11, 90), (26, 65),
]
_OKP17_3 = [(11, 8), (11, 16), (8, 16), (8, 17), (11, 7), (16, 7)]
OKP17_PRECEDENCE = {
    0: [],
    1: [(11, 8), (11, 16)],
    2: [(11, 8), (11, 16), (8, 16)],
    3: _OKP17_3,
    4: _OKP17_3 + [(17, 16)],
}
OKP17_OPTIMA = {0: 169, 1: 172, 2: 182, 3: 184, 4: 245}

SQUARE21_BASE = 112
SQUARE21_SIDES = [50, 42, 37, 35, 33, 29, 27, 25, 24, 19, 18, 17, 16, 15, 11, 9, 8, 7, 6, 4, 2]
_MAT = [(2, 4), (6, 7), (8, 9), (11, 15), (16, 17), (18, 19), (24, 25), (27, 29), (33, 35),
        (37, 42), (2, 50), (50, 4)]
_TRI = [(2, 15), (15, 17), (2, 27), (4, 16), (16, 29), (4, 29), (6, 17), (17, 33), (6, 33),
        (7, 18), (18, 35), (7, 35), (8, 19), (19, 37), (8, 37), (9, 24), (24, 42), (9, 42),
        (11, 25), (25, 50), (11, 50)]
_2MAT_X = [(2, 19), (6, 25), (8, 29), (11, 35), (16, 42), (18, 4), (24, 7), (27, 9), (33, 15),
           (37, 17), (50, 4), (18, 50)]


@dataclass(frozen=True)
class Benchmark:
    name: str
    instance: Instance
    mode: str  # "cspp" (minimise the last dimension) or "square" (common size of all dims)
    optimum: int | None = None
    bounds: tuple[int, int] | None = None


def okp17(variant: int) -> Instance:
    names = [str(k) for k in range(1, 18)]
    idx = {nm: k for k, nm in enumerate(names)}
    height = sum(h for _, h in OKP17_BOXES)
    cons = [(1, idx[str(a)], idx[str(b)]) for a, b in OKP17_PRECEDENCE[variant]]
    return make_instance(OKP17_BOXES, (OKP17_BASE, height), cons, names=names,
                         dim_names=("x", "t"), objective_dim=1)


def square21(variant: str) -> Instance:
    names = [str(s) for s in SQUARE21_SIDES]
    idx = {s: k for k, s in enumerate(SQUARE21_SIDES)}
    widths = [(s, s) for s in SQUARE21_SIDES]
    if variant == "no":
        pairs = {1: []}
    elif variant == "mat":
        pairs = {1: _MAT}
    elif variant == "tri":
        pairs = {1: _TRI}
    elif variant == "2mat":
        pairs = {0: _2MAT_X, 1: _MAT}
    else:
        raise ValueError(f"unknown square21 variant {variant!r}")
    cons = [(dim, idx[a], idx[b]) for dim, ps in pairs.items() for a, b in ps]
    height = sum(SQUARE21_SIDES)
    size0 = height if variant == "2mat" else SQUARE21_BASE
    return make_instance(widths, (size0, height), cons, names=names, dim_names=("x", "t"),
                         objective_dim=1)


def suite(name: str = "all") -> list[Benchmark]:
    out = []
    if name in ("okp17", "all"):
        for k in range(5):
            out.append(Benchmark(f"okp17-{k}", okp17(k), "cspp", OKP17_OPTIMA[k]))
    if name in ("square21", "all"):
        out.append(Benchmark("square21-no", square21("no"), "cspp", 112))
        out.append(Benchmark("square21-mat", square21("mat"), "cspp", 117))
        out.append(Benchmark("square21-tri", square21("tri"), "cspp", 125))
        out.append(Benchmark("square21-2mat", square21("2mat"), "square", None, (118, 120)))
    if not out:
        raise ValueError(f"unknown suite {name!r}")
    return out
