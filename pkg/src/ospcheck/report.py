"""Self-describing, schema-versioned report documents."""

import json
from dataclasses import dataclass, field

from . import __version__
from .catalog import RelationReport, aggregate

SCHEMA_VERSION = 1
TIMING_KEYS = ("elapsed", "timings")


@dataclass
class ReportDocument:
    config: dict
    rmatrix: dict
    reports: list = field(default_factory=list)
    engine_version: str = __version__
    schema_version: int = SCHEMA_VERSION
    timings: dict = field(default_factory=dict)

    @property
    def aggregate(self):
        return aggregate(self.reports)

    def to_dict(self, timing=True):
        out = {
            "schema_version": self.schema_version,
            "engine_version": self.engine_version,
            "config": dict(self.config),
            "rmatrix": self.rmatrix,
            "reports": [r.to_dict() for r in self.reports],
            "aggregate": "pass" if self.aggregate else "fail",
            "timings": dict(self.timings),
        }
        if not timing:
            out = _strip_timing(out)
        return out

    def to_json(self, timing=True):
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, d):
        if d.get("schema_version") != SCHEMA_VERSION:
            raise ValueError("unsupported report schema version %r" % d.get("schema_version"))
        reports = [RelationReport.from_dict(r) for r in d["reports"]]
        doc = cls(config=d["config"], rmatrix=d["rmatrix"], reports=reports,
                  engine_version=d["engine_version"], schema_version=d["schema_version"],
                  timings=d.get("timings", {}))
        if ("pass" if doc.aggregate else "fail") != d["aggregate"]:
            raise ValueError("aggregate verdict does not match the relation reports")
        return doc

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def __eq__(self, other):
        return isinstance(other, ReportDocument) and self.to_dict() == other.to_dict()

    def to_text(self):
        lines = [
            "ospcheck %s  (schema %d)" % (self.engine_version, self.schema_version),
            "config: " + ", ".join("%s=%s" % kv for kv in sorted(self.config.items())),
        ]
        rm = self.rmatrix
        if rm:
            lines.append("slice convention: %s" % rm.get("convention", "-"))
            for name, ok in sorted(rm.get("checks", {}).items()):
                lines.append("  R-matrix %-16s %s" % (name, "ok" if ok else "FAILED"))
        for r in self.reports:
            mark = r.verdict.upper() if r.verdict != "holds" else "holds"
            flag = "" if r.asserted else "  [no expectation asserted]"
            lines.append("%-42s %-9s %-18s %7.2fs%s" % (r.key, mark, r.method, r.elapsed, flag))
            if r.witness:
                lines.append("    witness: " + r.witness.replace("\n", "\n             "))
            for note in r.notes:
                lines.append("    note: " + note)
        lines.append("aggregate: %s" % ("PASS" if self.aggregate else "FAIL"))
        return "\n".join(lines) + "\n"


def _strip_timing(obj):
    if isinstance(obj, dict):
        return {k: _strip_timing(v) for k, v in obj.items() if k not in TIMING_KEYS}
    if isinstance(obj, list):
        return [_strip_timing(v) for v in obj]
    return obj
