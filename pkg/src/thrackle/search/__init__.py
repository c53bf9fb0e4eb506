"""Exhaustive search for thrackle-preserving arc attachments."""
from __future__ import annotations

from thrackle.search.campaigns import (
    CAMPAIGNS,
    CampaignReport,
    load_manifest,
    run_campaign,
    run_manifest,
)
from thrackle.search.routing import (
    DEFAULT_KERNEL,
    KERNELS,
    Completion,
    LemmaReport,
    RouteSpec,
    SearchResult,
    attach_path,
    outer_corner,
    route_arc,
    run_specs,
    search_figure_eight,
    snapshot_to_drawing,
    verify_lemma_1edge,
)
from thrackle.search.tables import CaseTable, FiveCase, reproduce_table2, reproduce_v5u, table2_rows

__all__ = [
    "CAMPAIGNS", "CampaignReport", "CaseTable", "Completion", "DEFAULT_KERNEL", "FiveCase",
    "KERNELS", "LemmaReport", "RouteSpec", "SearchResult", "attach_path", "load_manifest",
    "outer_corner", "reproduce_table2", "reproduce_v5u", "route_arc", "run_campaign",
    "run_manifest", "run_specs", "search_figure_eight", "snapshot_to_drawing", "table2_rows",
    "verify_lemma_1edge",
]
