#!/usr/bin/env python3
"""One-off generator for the frozen ring catalogue JSON files."""
import json
import os

OUT = os.path.join(os.path.dirname(__file__), "crates/hodge-limits/data/rings")
BOX = 4


def partitions():
    parts = []
    for degree in range(0, 2 * BOX + 1):
        for b in range(0, degree // 2 + 1):
            a = degree - b
            if b <= a <= BOX:
                parts.append((a, b))
    return parts


def symbol(p):
    a, b = p
    if (a, b) == (0, 0):
        return "1"
    if b == 0:
        return f"s{a}"
    return f"s{a},{b}"


def pieri(part, c):
    a, b = part
    out = {}
    if c < 0 or c > BOX:
        return out
    if c == 0:
        out[part] = 1
        return out
    for f in range(b, a + 1):
        e = a + b + c - f
        if e >= a and e <= BOX and e >= f:
            out[(e, f)] = out.get((e, f), 0) + 1
    return out


def pieri_on(comb, c):
    out = {}
    for part, coeff in comb.items():
        for res, mult in pieri(part, c).items():
            out[res] = out.get(res, 0) + coeff * mult
    return {k: v for k, v in out.items() if v != 0}


def product(x, y):
    c, d = y
    start = {x: 1}
    out = pieri_on(pieri_on(start, c), d)
    if d >= 1:
        corr = pieri_on(pieri_on(start, c + 1), d - 1)
        for part, coeff in corr.items():
            out[part] = out.get(part, 0) - coeff
    return {k: v for k, v in out.items() if v != 0}


def gr26():
    parts = partitions()
    basis = [{"symbol": symbol(p), "degree": 2 * (p[0] + p[1])} for p in parts]
    prods = []
    for i, x in enumerate(parts):
        for j, y in enumerate(parts):
            if i > j:
                continue
            if 2 * (x[0] + x[1] + y[0] + y[1]) > 4 * BOX:
                continue
            value = [[symbol(k), v] for k, v in sorted(product(x, y).items())]
            prods.append({"left": symbol(x), "right": symbol(y), "value": value})
    return {
        "schema_version": 1,
        "name": "Gr26",
        "top_degree": 4 * BOX,
        "basis": basis,
        "products": prods,
        "integration": [["s4,4", 1]],
        "note": None,
    }


def p2():
    basis = [
        {"symbol": "1", "degree": 0},
        {"symbol": "H", "degree": 2},
        {"symbol": "H^2", "degree": 4},
    ]
    prods = [
        {"left": "1", "right": "1", "value": [["1", 1]]},
        {"left": "1", "right": "H", "value": [["H", 1]]},
        {"left": "1", "right": "H^2", "value": [["H^2", 1]]},
        {"left": "H", "right": "H", "value": [["H^2", 1]]},
    ]
    return {
        "schema_version": 1,
        "name": "P2",
        "top_degree": 4,
        "basis": basis,
        "products": prods,
        "integration": [["H^2", 1]],
        "note": None,
    }


def p2xp2():
    monos = [(a, b) for s in range(0, 5) for a in range(0, 3) for b in range(0, 3) if a + b == s]

    def sym(m):
        a, b = m
        if (a, b) == (0, 0):
            return "1"
        parts = []
        if a == 1:
            parts.append("H1")
        elif a == 2:
            parts.append("H1^2")
        if b == 1:
            parts.append("H2")
        elif b == 2:
            parts.append("H2^2")
        return "*".join(parts)

    basis = [{"symbol": sym(m), "degree": 2 * (m[0] + m[1])} for m in monos]
    prods = []
    for i, x in enumerate(monos):
        for j, y in enumerate(monos):
            if i > j:
                continue
            if 2 * (x[0] + x[1] + y[0] + y[1]) > 8:
                continue
            a, b = x[0] + y[0], x[1] + y[1]
            value = [[sym((a, b)), 1]] if a <= 2 and b <= 2 else []
            prods.append({"left": sym(x), "right": sym(y), "value": value})
    return {
        "schema_version": 1,
        "name": "P2xP2",
        "top_degree": 8,
        "basis": basis,
        "products": prods,
        "integration": [["H1^2*H2^2", 1]],
        "note": None,
    }


def op2_shell():
    counts = [1, 1, 1, 1, 2, 2, 2, 2, 3, 2, 2, 2, 2, 1, 1, 1, 1]
    basis = []
    for half, count in enumerate(counts):
        for i in range(count):
            basis.append({"symbol": f"x{2 * half}_{i + 1}", "degree": 2 * half})
    return {
        "schema_version": 1,
        "name": "OP2-shell",
        "top_degree": 32,
        "basis": basis,
        "products": None,
        "integration": [["x32_1", 1]],
        "note": (
            "Betti shell only: middle-degree Schubert-type products for this "
            "space match the calculus for lines in projective 5-space and are "
            "recorded by external citation; structure constants are "
            "intentionally not fabricated here."
        ),
    }


def main():
    os.makedirs(OUT, exist_ok=True)
    for name, data in [
        ("p2.json", p2()),
        ("p2xp2.json", p2xp2()),
        ("gr26.json", gr26()),
        ("op2_shell.json", op2_shell()),
    ]:
        with open(os.path.join(OUT, name), "w") as fh:
            json.dump(data, fh, indent=1)
            fh.write("\n")
        print("wrote", name)


if __name__ == "__main__":
    main()
