"""Crossing-vector case tables for the two-path argument (n = 7 and n = 5)."""
from __future__ import annotations

from dataclasses import dataclass

from thrackle.crossvec import ConsistencyError, CrossVector, admissible_pair, vertex_orbit

LATIN = "abcdefg"
GREEK = "αβγδεζη"
TABLE2_SURVIVORS = frozenset({"1b", "1β", "1γ", "5α"})


@dataclass
class CaseTable:
    n: int
    w_rows: dict          # row name -> CrossVector
    u_rows: dict
    examined: int
    survivors: list       # (w row, u row) pairs passing admissible_pair

    @property
    def names(self) -> set[str]:
        return {a + b for a, b in self.survivors}

    def as_text(self) -> str:
        lines = ["V(w):"]
        lines += [f"  {k}  {v}" for k, v in self.w_rows.items()]
        lines.append("V(u):")
        lines += [f"  {k}  {v}" for k, v in self.u_rows.items()]
        lines.append(f"pairs examined: {self.examined}")
        lines.append("admissible: " + ", ".join(a + b for a, b in self.survivors))
        return "\n".join(lines)


def table2_rows() -> tuple[dict, dict]:
    """V(w) for w in the label-2 domain, V(u) for u in the two label-1 domains."""
    w_rows = {str(i + 1): v for i, v in enumerate(vertex_orbit(7, 2))}
    u_rows = {}
    # the two label-1 domains next to the first crossing, reached by turning
    # the picture by one and two steps
    for names, steps in ((LATIN, 1), (GREEK, 2)):
        for name, v in zip(names, vertex_orbit(7, 1)):
            u_rows[name] = v.rotate(steps)
    return w_rows, u_rows


def _filter(w_rows: dict, u_rows: dict) -> list[tuple[str, str]]:
    return [(a, b) for a, vw in w_rows.items() for b, vu in u_rows.items()
            if admissible_pair(vw, vu)]


def reproduce_table2(check: bool = True) -> CaseTable:
    w_rows, u_rows = table2_rows()
    t = CaseTable(7, w_rows, u_rows, len(w_rows) * len(u_rows), _filter(w_rows, u_rows))
    if check and t.names != TABLE2_SURVIVORS:
        raise ConsistencyError(f"admissible pairs {sorted(t.names)} differ from "
                               f"{sorted(TABLE2_SURVIVORS)}")
    return t


@dataclass
class FiveCase:
    w: CrossVector
    listed: list          # orbit vectors for u, before cyclic shifts
    examined: int
    survivors: list       # (index into listed, left shift, vector)

    @property
    def vectors(self) -> list[CrossVector]:
        out = []
        for _, _, v in self.survivors:
            if v not in out:
                out.append(v)
        return out


def reproduce_v5u() -> FiveCase:
    """n = 5: V(u) ranges over the s = 1 orbit up to cyclic shifts."""
    w = vertex_orbit(5, 2)[0]
    listed = vertex_orbit(5, 1)
    surv = []
    examined = 0
    for i, v in enumerate(listed):
        for k in range(5):
            cand = v.relabel(-k)
            examined += 1
            if admissible_pair(w, cand):
                surv.append((i, k, cand))
    return FiveCase(w, listed, examined, surv)
