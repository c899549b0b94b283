from __future__ import annotations

import json

from gwp.commands import certify_group, decompose_group, inspect_group
from gwp.reports import CertReport, DecompositionReport, InspectReport, load_report, render_text, to_json
from gwp.settings import DeskSettings


def test_reports_round_trip_through_json(chain2):
    settings = DeskSettings()
    reports = [
        (InspectReport, inspect_group(chain2)),
        (DecompositionReport, decompose_group(chain2, settings)),
        (CertReport, certify_group(chain2, settings)),
    ]
    for cls, report in reports:
        payload = json.loads(to_json(report))
        assert payload["schema_version"] == 1
        assert load_report(cls, payload) == report


def test_cert_report_text(chain2):
    text = render_text(certify_group(chain2, DeskSettings(), seed=4))
    assert "verdict: Certified" in text
    assert "g1: " in text and "g2: " in text
    assert "lower bound: ok (sign rank 2)" in text


def test_decomposition_text_lists_the_tree(chain3):
    text = render_text(decompose_group(chain3, DeskSettings(sample_size=20)))
    assert text.splitlines()[1].startswith("- S_2 ≀ (S_2 ≀ (S_2))")
    assert "[wreath, order 128]" in text
