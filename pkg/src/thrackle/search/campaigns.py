"""Named search campaigns with declared polarity and JSON manifests.

A manifest is a JSON object::

    {"campaign": "no55", "n": 5, "m": 5, "budget": null, "workers": 1,
     "report": "out/no55.json", "certificates": "out/no55-certs"}

Only ``campaign`` is required.  ``report`` receives the JSON report and
``certificates`` a directory with one interchange document per completion.
"""
from __future__ import annotations

import json
import os
from collections import Counter
from dataclasses import dataclass, field

from thrackle.core_map import serialize
from thrackle.musquash import ParameterError, standard_musquash

from .routing import SearchResult, attach_path, search_figure_eight, verify_lemma_1edge
from .tables import TABLE2_SURVIVORS, reproduce_table2, reproduce_v5u

HOLDS, VIOLATED, UNVERDICTED = "holds", "violated", "unverdicted"
EXIT = {HOLDS: 0, VIOLATED: 1, UNVERDICTED: 3}


@dataclass(frozen=True)
class Campaign:
    name: str
    polarity: str          # "none-expected" | "some-expected" | "property"
    defaults: dict
    doc: str


CAMPAIGNS = {
    "no55": Campaign("no55", "none-expected", {"n": 5, "m": 5},
                     "two five-cycles sharing a vertex"),
    "figure-eight": Campaign("figure-eight", "none-expected", {"n": 7, "m": 3},
                             "an m-cycle attached at a vertex of the standard n-musquash"),
    "two-path": Campaign("two-path", "some-expected", {"n": 7, "k": 2},
                         "a k-path attached at the outer corner of a musquash vertex"),
    "lemma-1edge": Campaign("lemma-1edge", "property", {"n": 5},
                            "free arcs crossing every musquash edge once"),
    "table2": Campaign("table2", "property", {},
                       "admissible crossing-vector pairs for n = 7 and n = 5"),
}


@dataclass
class CampaignReport:
    campaign: str
    params: dict
    verdict: str
    summary: dict = field(default_factory=dict)
    result: SearchResult | None = None

    @property
    def exit_code(self) -> int:
        return EXIT[self.verdict]

    def to_json(self) -> dict:
        return {"campaign": self.campaign, "params": self.params, "verdict": self.verdict,
                "summary": self.summary}


def load_manifest(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or "campaign" not in data:
        raise ParameterError("manifest must be a JSON object with a 'campaign' key")
    return data


def _params(name: str, given: dict) -> dict:
    if name not in CAMPAIGNS:
        raise ParameterError(f"unknown campaign {name!r}; choose from {sorted(CAMPAIGNS)}")
    params = dict(CAMPAIGNS[name].defaults)
    for key in ("n", "m", "k"):
        if given.get(key) is not None:
            params[key] = given[key]
    n = params.get("n")
    if n is not None and (not isinstance(n, int) or n < 3 or n % 2 == 0):
        raise ParameterError(f"n must be an odd integer >= 3, got {n!r}")
    if name in ("no55", "figure-eight") and params["m"] not in (3, 5):
        raise ParameterError(f"m must be 3 or 5, got {params['m']!r}")
    if name == "lemma-1edge" and n not in (5, 7):
        raise ParameterError("lemma-1edge runs at n = 5 or 7")
    if name == "two-path" and not (isinstance(params["k"], int) and 1 <= params["k"] <= 5):
        raise ParameterError("k must lie in 1..5")
    return params


def run_campaign(name: str, budget: int | None = None, workers: int = 1,
                 certificates: str | None = None, **given) -> CampaignReport:
    params = _params(name, given)
    kw = {"budget": budget, "workers": workers}
    if name in ("no55", "figure-eight"):
        res = search_figure_eight(params["n"], params["m"], **kw)
        rep = _polar(name, params, res, want_none=True)
    elif name == "two-path":
        res = attach_path(standard_musquash(params["n"]), 0, params["k"], **kw)
        rep = _polar(name, params, res, want_none=False)
        census = Counter(tuple(c.labels[v] for v in sorted(c.labels)) for c in res.details)
        rep.summary["label_census"] = {",".join(map(str, k)): v for k, v in sorted(census.items())}
        if params["k"] == 2 and rep.verdict == HOLDS:
            if set(census) != {(1, 0)}:
                rep.verdict = VIOLATED
    elif name == "lemma-1edge":
        lr = verify_lemma_1edge(params["n"], **kw)
        res = lr.result
        if res.budget_exhausted:
            verdict = UNVERDICTED
        else:
            verdict = HOLDS if lr.ok else VIOLATED
        rep = CampaignReport(name, params, verdict, res.summary(), res)
        rep.summary["label_pairs"] = {f"{a},{b}": c for (a, b), c in lr.pairs.items()}
        rep.summary["violations"] = len(lr.violations)
    else:
        t = reproduce_table2(check=False)
        five = reproduce_v5u()
        ok = (t.names == TABLE2_SURVIVORS and t.examined == 98
              and len(five.vectors) == 2)
        rep = CampaignReport(name, params, HOLDS if ok else VIOLATED, {
            "n7_examined": t.examined,
            "n7_admissible": sorted(t.names),
            "n5_examined": five.examined,
            "n5_vectors": [str(v) for v in five.vectors],
        })
        res = None
    if certificates and res is not None:
        os.makedirs(certificates, exist_ok=True)
        for i, d in enumerate(res.completions):
            with open(os.path.join(certificates, f"{name}-{i:05d}.json"), "w",
                      encoding="utf-8") as fh:
                fh.write(serialize(d))
        rep.summary["certificates"] = certificates
    return rep


def _polar(name, params, res: SearchResult, want_none: bool) -> CampaignReport:
    if res.budget_exhausted:
        verdict = UNVERDICTED
    elif want_none:
        verdict = HOLDS if not res.completions else VIOLATED
    else:
        verdict = HOLDS if res.completions else VIOLATED
    return CampaignReport(name, params, verdict, res.summary(), res)


def run_manifest(path: str) -> CampaignReport:
    data = load_manifest(path)
    rep = run_campaign(data["campaign"], budget=data.get("budget"),
                       workers=int(data.get("workers", 1)),
                       certificates=data.get("certificates"),
                       **{k: data.get(k) for k in ("n", "m", "k")})
    if data.get("report"):
        out = os.path.dirname(data["report"])
        if out:
            os.makedirs(out, exist_ok=True)
        with open(data["report"], "w", encoding="utf-8") as fh:
            json.dump(rep.to_json(), fh, indent=2, ensure_ascii=False)
            fh.write("\n")
    return rep
