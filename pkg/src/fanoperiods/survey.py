"""Batch surveys over polytope files with a content-addressed store.

One record per Minkowski polynomial: period head, fitted operator,
ramification report, type verdict.  Records are immutable JSON files
named by the hash of their canonical content, so re-running a survey
writes nothing new and concurrent writers cannot disagree about a file's
contents (atomic single-record writes, last-writer-wins on identical
content).  Deduplication of period sequences uses the hash of the first
``dedup_depth`` coefficients, which is the survey's operational notion
of "distinct period sequence".
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from . import fuchs, minkowski, pf
from .laurent import format_polynomial, period_sequence
from .polytope import parse_polytope


@dataclass(frozen=True)
class SurveyConfig:
    terms: int = 50
    fit_terms: int = 41
    max_order: int = 6
    max_degree: int = 12
    slack: int = 10
    dedup_depth: int = 20

    def fit_config(self) -> pf.FitConfig:
        return pf.FitConfig(
            max_order=self.max_order,
            max_degree=self.max_degree,
            slack=self.slack,
        )


def _coeff_str(c) -> str:
    return str(c)


def head_hash(seq, depth: int) -> str:
    head = ",".join(_coeff_str(c) for c in list(seq)[:depth])
    return hashlib.sha256(head.encode()).hexdigest()


@dataclass(frozen=True)
class SurveyRecord:
    input_id: str
    mp_index: int
    polynomial: str
    period_head: tuple
    operator: str
    ramification: dict
    type_verdict: str
    head_hash: str

    def to_json(self) -> str:
        payload = {
            "input_id": self.input_id,
            "mp_index": self.mp_index,
            "polynomial": self.polynomial,
            "period_head": list(self.period_head),
            "operator": self.operator,
            "ramification": self.ramification,
            "type_verdict": self.type_verdict,
            "head_hash": self.head_hash,
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))

    @property
    def record_hash(self) -> str:
        return hashlib.sha256(self.to_json().encode()).hexdigest()

    @classmethod
    def from_json(cls, text: str) -> "SurveyRecord":
        d = json.loads(text)
        return cls(
            input_id=d["input_id"],
            mp_index=d["mp_index"],
            polynomial=d["polynomial"],
            period_head=tuple(d["period_head"]),
            operator=d["operator"],
            ramification=d["ramification"],
            type_verdict=d["type_verdict"],
            head_hash=d["head_hash"],
        )


class SurveyStore:
    """Directory of immutable records plus per-input failure notes."""

    def __init__(self, root):
        self.root = Path(root)
        self.records_dir = self.root / "records"
        self.failures_dir = self.root / "failures"
        self.records_dir.mkdir(parents=True, exist_ok=True)
        self.failures_dir.mkdir(parents=True, exist_ok=True)

    @staticmethod
    def _atomic_write(path: Path, content: str) -> bool:
        if path.exists():
            return False
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as handle:
                handle.write(content)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return True

    def write_record(self, record: SurveyRecord) -> bool:
        path = self.records_dir / (record.record_hash + ".json")
        return self._atomic_write(path, record.to_json())

    def write_failure(self, input_id: str, message: str) -> bool:
        payload = json.dumps(
            {"input_id": input_id, "error": message},
            sort_keys=True,
            separators=(",", ":"),
        )
        name = hashlib.sha256(payload.encode()).hexdigest() + ".json"
        return self._atomic_write(self.failures_dir / name, payload)

    def records(self):
        out = []
        for path in sorted(self.records_dir.glob("*.json")):
            out.append(SurveyRecord.from_json(path.read_text()))
        return out

    def failures(self):
        out = []
        for path in sorted(self.failures_dir.glob("*.json")):
            out.append(json.loads(path.read_text()))
        return out

    def verify(self):
        """Re-hash every record; returns the list of corrupt filenames."""
        bad = []
        for path in sorted(self.records_dir.glob("*.json")):
            record = SurveyRecord.from_json(path.read_text())
            if record.record_hash + ".json" != path.name:
                bad.append(path.name)
        return bad


def survey_polytope(p, config: SurveyConfig, input_id=None):
    """Run the full pipeline on one reflexive polytope.

    Returns a list of SurveyRecords, one per Minkowski polynomial; the
    fitted operator is verified against the terms beyond the fitting
    window before being recorded.
    """
    input_id = input_id or (p.id or "polytope")
    result = minkowski.minkowski_polynomials(p)
    records = []
    for idx, f in enumerate(result.polynomials):
        seq = period_sequence(f, config.terms)
        op = pf.fit_operator(seq.head(config.fit_terms), config.fit_config())
        residual = op.apply(seq)
        if any(c != 0 for c in residual):
            raise ValueError(
                f"fitted operator fails on the verification terms of "
                f"{input_id} mp{idx}"
            )
        report = fuchs.ramification_report(op)
        verdict = pf.operator_at_zero(op).verdict
        records.append(
            SurveyRecord(
                input_id=input_id,
                mp_index=idx,
                polynomial=format_polynomial(f),
                period_head=tuple(
                    _coeff_str(c) for c in list(seq)[: config.dedup_depth]
                ),
                operator=pf.format_operator(op),
                ramification=report.to_dict(),
                type_verdict=verdict,
                head_hash=head_hash(seq, config.dedup_depth),
            )
        )
    return records


@dataclass
class SurveySummary:
    inputs: int = 0
    mps: int = 0
    new_records: int = 0
    distinct_heads: int = 0
    defect_counts: dict = field(default_factory=dict)
    type_counts: dict = field(default_factory=dict)
    record_defect_counts: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "inputs": self.inputs,
            "mps": self.mps,
            "new_records": self.new_records,
            "distinct_heads": self.distinct_heads,
            "defect_counts": self.defect_counts,
            "type_counts": self.type_counts,
            "record_defect_counts": self.record_defect_counts,
            "failures": self.failures,
        }

    def describe(self) -> str:
        lines = [
            f"inputs {self.inputs}   minkowski polynomials {self.mps}   "
            f"new records {self.new_records}   failures {len(self.failures)}",
            f"distinct period heads: {self.distinct_heads}",
            "defect counts (distinct heads): "
            + json.dumps(self.defect_counts, sort_keys=True),
            "type counts (distinct heads): "
            + json.dumps(self.type_counts, sort_keys=True),
        ]
        for failure in self.failures:
            lines.append(f"FAILED {failure['input_id']}: {failure['error']}")
        return "\n".join(lines)


def run_survey(paths, store: SurveyStore, config: SurveyConfig) -> SurveySummary:
    """Process polytope files (sorted, so the run is deterministic),
    record results, and summarize the store contents."""
    summary = SurveySummary()
    for path in sorted(Path(p) for p in paths):
        summary.inputs += 1
        input_id = None
        try:
            polytope = parse_polytope(path.read_text(), path=str(path))
            input_id = polytope.id or path.stem
            records = survey_polytope(polytope, config, input_id=input_id)
        except Exception as exc:  # record, continue with the batch
            entry = {"input_id": input_id or path.stem, "error": str(exc)}
            summary.failures.append(entry)
            store.write_failure(entry["input_id"], entry["error"])
            continue
        for record in records:
            summary.mps += 1
            if store.write_record(record):
                summary.new_records += 1

    by_head = {}
    for record in store.records():
        by_head.setdefault(record.head_hash, record)
        defect = str(record.ramification["defect"])
        summary.record_defect_counts[defect] = (
            summary.record_defect_counts.get(defect, 0) + 1
        )
    summary.distinct_heads = len(by_head)
    for record in by_head.values():
        defect = str(record.ramification["defect"])
        summary.defect_counts[defect] = summary.defect_counts.get(defect, 0) + 1
        summary.type_counts[record.type_verdict] = (
            summary.type_counts.get(record.type_verdict, 0) + 1
        )
    return summary
