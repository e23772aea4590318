"""Report containers and serialization for verification runs."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Tuple

SCHEMA_VERSION = 1


@dataclass
class LawResult:
    law: str
    indices: Tuple
    status: str  # "pass" | "fail" | "implied"
    detail: str = ""
    ms: float = 0.0

    def to_dict(self) -> Dict:
        return {"id": self.law, "indices": list(self.indices),
                "status": self.status, "detail": self.detail,
                "ms": round(self.ms, 3)}

    @classmethod
    def from_dict(cls, d: Dict) -> "LawResult":
        return cls(law=d["id"], indices=tuple(d["indices"]),
                   status=d["status"], detail=d["detail"], ms=d["ms"])


@dataclass
class SuiteReport:
    config: Dict
    laws: List[LawResult] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "pass" if all(r.status != "fail" for r in self.laws) else "fail"

    def counts(self) -> Tuple[int, int, int]:
        p = sum(1 for r in self.laws if r.status == "pass")
        f = sum(1 for r in self.laws if r.status == "fail")
        o = len(self.laws) - p - f
        return p, f, o

    def to_json(self) -> str:
        body = {
            "schema": SCHEMA_VERSION,
            "config": self.config,
            "laws": [r.to_dict() for r in self.laws],
            "notes": self.notes,
            "verdict": self.verdict,
        }
        return json.dumps(body, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "SuiteReport":
        body = json.loads(text)
        if body.get("schema") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema {body.get('schema')!r}")
        rep = cls(config=body["config"],
                  laws=[LawResult.from_dict(d) for d in body["laws"]],
                  notes=list(body.get("notes", [])))
        if rep.verdict != body["verdict"]:
            raise ValueError("verdict does not match law statuses")
        return rep

    def to_text(self) -> str:
        lines = []
        cfg = ", ".join(f"{k}={v}" for k, v in self.config.items())
        lines.append(f"config: {cfg}")
        width = max((len(r.law) for r in self.laws), default=10)
        iw = max((len(_fmt_idx(r.indices)) for r in self.laws), default=8)
        for r in self.laws:
            mark = {"pass": "ok", "fail": "FAIL", "implied": "implied"}[r.status]
            line = (f"  {r.law:<{width}}  {_fmt_idx(r.indices):<{iw}}  "
                    f"{mark:<8} {r.ms:9.1f} ms")
            if r.detail:
                line += f"  {r.detail}"
            lines.append(line)
        for note in self.notes:
            lines.append(f"note: {note}")
        p, f, o = self.counts()
        lines.append(f"verdict: {self.verdict} ({p} passed, {f} failed, "
                     f"{o} other)")
        return "\n".join(lines)


def _fmt_idx(indices: Tuple) -> str:
    if not indices:
        return "-"
    return "(" + ",".join(str(i) for i in indices) + ")"
