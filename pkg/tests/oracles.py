"""Independent reference implementations used to derive and check fixtures.

Nothing here imports the bitmask sign machinery of the package: blades are
index lists multiplied by bubble sort, and closure is decided from explicit
products of basis elements.  Run as a script to regenerate the frozen
values in ``fixtures/derived.json``.
"""

from __future__ import annotations

import itertools
import json
import sys
from pathlib import Path

import numpy as np
from scipy.linalg import expm

FIXTURES = Path(__file__).parent / "fixtures"


def metric(a: int, p: int) -> int:
    return 1 if a <= p else -1


def blade_mul(x: tuple[int, ...], y: tuple[int, ...], p: int) -> tuple[int, tuple[int, ...]]:
    """``e^x e^y`` by sorting the concatenated word and contracting squares."""
    word = list(x) + list(y)
    sign = 1
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(word) - 1:
            if word[i] > word[i + 1]:
                word[i], word[i + 1] = word[i + 1], word[i]
                sign = -sign
                changed = True
            elif word[i] == word[i + 1]:
                sign *= metric(word[i], p)
                del word[i : i + 2]
                changed = True
                continue
            i += 1
    return sign, tuple(word)


def blades(n: int) -> list[tuple[int, ...]]:
    return [c for k in range(n + 1) for c in itertools.combinations(range(1, n + 1), k)]


def to_mask(blade: tuple[int, ...]) -> int:
    return sum(1 << (a - 1) for a in blade)


def mv_mul(u: dict, v: dict, p: int) -> dict:
    """Product of ``{blade tuple: coefficient}`` dictionaries."""
    out: dict = {}
    for x, a in u.items():
        for y, b in v.items():
            s, z = blade_mul(x, y, p)
            out[z] = out.get(z, 0) + s * a * b
    return {k: c for k, c in out.items() if c != 0}


def mv_op(op: str, u: dict, v: dict, p: int) -> dict:
    uv, vu = mv_mul(u, v, p), mv_mul(v, u, p)
    sign = {"product": 0, "commutator": -1, "anticommutator": 1}[op]
    if sign == 0:
        return uv
    keys = set(uv) | set(vu)
    out = {k: uv.get(k, 0) + sign * vu.get(k, 0) for k in keys}
    return {k: c for k, c in out.items() if c != 0}


def left_matrix(u: dict, n: int, p: int) -> np.ndarray:
    """Matrix of ``X -> u X`` on the blade basis ordered by mask."""
    size = 1 << n
    mat = np.zeros((size, size), dtype=complex)
    for b in blades(n):
        for z, c in mv_mul(u, {b: 1}, p).items():
            mat[to_mask(z), to_mask(b)] += c
    return mat


def exp_oracle(u: dict, n: int, p: int) -> np.ndarray:
    """Dense coefficients (indexed by mask) of ``exp(u)``."""
    e0 = np.zeros(1 << n, dtype=complex)
    e0[0] = 1
    return expm(left_matrix(u, n, p)) @ e0


# domains as sets of allowed scalar parts: "r" real, "i" imaginary
DOMAIN_PARTS = {0: set(), 1: {"r"}, 2: {"i"}, 3: {"r", "i"}}


def closed_oracle(domains: tuple[int, ...], op: str, p: int) -> bool:
    """Closure of a graded subspace, decided from products of basis elements."""
    n = len(domains) - 1
    gens = []
    for b in blades(n):
        for part in DOMAIN_PARTS[domains[len(b)]]:
            gens.append({b: 1 if part == "r" else 1j})
    for u in gens:
        for v in gens:
            for z, c in mv_op(op, u, v, p).items():
                allowed = DOMAIN_PARTS[domains[len(z)]]
                c = complex(c)
                if c.real != 0 and "r" not in allowed:
                    return False
                if c.imag != 0 and "i" not in allowed:
                    return False
    return True


def rank_pairs(n: int, p: int, op: str) -> dict[tuple[int, int], list[int]]:
    """Result ranks that ``op`` produces from blades of ranks ``k`` and ``l``."""
    out: dict[tuple[int, int], set[int]] = {}
    bl = blades(n)
    for x in bl:
        for y in bl:
            res = mv_op(op, {x: 1}, {y: 1}, p)
            out.setdefault((len(x), len(y)), set()).update(len(z) for z in res)
    return {k: sorted(v) for k, v in out.items()}


def closed_specs(n: int, op: str, field: str, p: int | None = None) -> list[list[int]]:
    """Every nonempty closed graded subspace, by brute force over all domain choices."""
    p = n if p is None else p
    choices = (0, 1) if field == "real" else (0, 1, 2, 3)
    found = []
    for doms in itertools.product(choices, repeat=n + 1):
        if any(doms) and closed_oracle(doms, op, p):
            found.append(list(doms))
    return found


def wc_count(n: int) -> int:
    """Closed commutator subspaces whose ranks carry the Lie algebra domains."""
    wc = [2 if k % 4 in (0, 1) else 1 for k in range(n + 1)]
    total = 0
    for present in itertools.product((0, 1), repeat=n + 1):
        doms = tuple(d * on for d, on in zip(wc, present))
        total += any(doms) and closed_oracle(doms, "commutator", n)
    return total


def derive() -> dict:
    out: dict = {"closed_specs": {}, "rank_pairs": {}}
    for op in ("product", "commutator", "anticommutator"):
        for n in range(1, 5):
            out["closed_specs"][f"{op} real {n}"] = closed_specs(n, op, "real")
        for n in range(1, 4):
            out["closed_specs"][f"{op} complex {n}"] = closed_specs(n, op, "complex")
        for n in range(1, 6):
            out["rank_pairs"][f"{op} {n}"] = {f"{k} {l}": v for (k, l), v in rank_pairs(n, n, op).items()}
    out["wc_commutator_counts"] = {str(n): wc_count(n) for n in range(1, 8)}
    # (e^12)^2 in Cl(1,1) and the product (e1 + e2)(e1 - e2) in Cl(2,0)
    out["e12_squared_11"] = blade_mul((1, 2), (1, 2), 1)[0]
    out["e1pe2_e1me2_20"] = {
        "".join(map(str, k)): c
        for k, c in mv_mul({(1,): 1, (2,): 1}, {(1,): 1, (2,): -1}, 2).items()
    }
    return out


if __name__ == "__main__":
    data = derive()
    path = FIXTURES / "derived.json"
    path.write_text(json.dumps(data, indent=1, sort_keys=True) + "\n")
    print(f"wrote {path}", file=sys.stderr)
