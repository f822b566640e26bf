"""Shared fixtures and the acceptance-summary report.

Tests named test_cNN_* under tests/test_acceptance.py are grouped by
criterion number NN and summarized as one PASS/FAIL line each at the end
of the run.
"""

import json
import re

import pytest

from chorodisk.synth import blob_map, corpus, map_to_geojson, planted_disk_map

_ACCEPT_RE = re.compile(r"test_acceptance\.py::test_c(\d+)[a-z]?_([a-zA-Z0-9_]+)")


@pytest.fixture(scope="session")
def planted_map():
    return planted_disk_map()


@pytest.fixture(scope="session")
def corpus_maps():
    return corpus()


@pytest.fixture(scope="session")
def one_blob_map():
    return blob_map(977, n_blobs=2)


@pytest.fixture(scope="session")
def planted_geojson(tmp_path_factory, planted_map):
    path = tmp_path_factory.mktemp("maps") / "planted.geojson"
    path.write_text(json.dumps(map_to_geojson(planted_map)))
    return str(path)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    groups = {}
    for status in ("passed", "failed", "error", "skipped"):
        for rep in terminalreporter.stats.get(status, []):
            m = _ACCEPT_RE.search(getattr(rep, "nodeid", ""))
            if not m:
                continue
            num, slug = int(m.group(1)), m.group(2)
            entry = groups.setdefault(num, {"slug": slug, "outcomes": []})
            reason = ""
            if status == "skipped":
                # longrepr tail carries the skip message
                reason = str(rep.longrepr[-1]) if isinstance(rep.longrepr, tuple) else str(rep.longrepr)
            entry["outcomes"].append((status, reason))
    if not groups:
        return
    tw = terminalreporter
    tw.section("acceptance criteria")
    for num in sorted(groups):
        slug = groups[num]["slug"].replace("_", " ")
        outcomes = groups[num]["outcomes"]
        statuses = {s for s, _ in outcomes}
        if {"failed", "error"} & statuses:
            verdict, color = "FAIL", "red"
        elif statuses == {"skipped"}:
            verdict, color = "SKIP", "yellow"
        else:
            verdict, color = "PASS", "green"
        note = ""
        skips = [r for s, r in outcomes if s == "skipped"]
        if skips and verdict == "PASS":
            note = f"  [{len(skips)} subtest skipped: {skips[0]}]"
        elif skips and verdict == "SKIP":
            note = f"  [{skips[0]}]"
        tw.write(f"criterion {num:2d} ({slug}): ")
        tw.write(verdict, **{color: True})
        tw.write(note + "\n")
