"""Stable text formats for timelines, reports and tables.

Floats are written with ``repr`` so parse-then-emit is byte-identical.
"""

from __future__ import annotations

import csv
import io
import json

from .sim import CollisionReport, EventKind, TimelineEvent

TIMELINE_FIELDS = ("node_id", "kind", "time")


def _cell(v):
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def timeline_to_jsonl(events: list[TimelineEvent]) -> str:
    return "".join(
        json.dumps({"node_id": e.node_id, "kind": e.kind.value, "time": float(e.time)}) + "\n"
        for e in events
    )


def timeline_from_jsonl(text: str) -> list[TimelineEvent]:
    out = []
    for line in text.splitlines():
        if line.strip():
            d = json.loads(line)
            out.append(TimelineEvent(int(d["node_id"]), EventKind(d["kind"]), float(d["time"])))
    return out


def timeline_to_csv(events: list[TimelineEvent]) -> str:
    return table_to_csv(TIMELINE_FIELDS, [(e.node_id, e.kind.value, float(e.time)) for e in events])


def timeline_from_csv(text: str) -> list[TimelineEvent]:
    rows = list(csv.DictReader(io.StringIO(text)))
    return [TimelineEvent(int(r["node_id"]), EventKind(r["kind"]), float(r["time"])) for r in rows]


def report_to_json(report: CollisionReport, extra: dict | None = None) -> str:
    doc = dict(extra or {})
    doc["collisions"] = report.to_dict()
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def report_from_json(text: str) -> tuple[CollisionReport, dict]:
    doc = json.loads(text)
    report = CollisionReport.from_dict(doc.pop("collisions"))
    return report, doc


def table_to_csv(header, rows, comments=()) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(v) for v in row])
    for c in comments:
        buf.write(f"# {c}\n")
    return buf.getvalue()


def table_to_json(header, rows, meta: dict | None = None) -> str:
    doc = dict(meta or {})
    doc["rows"] = [dict(zip(header, row)) for row in rows]
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
