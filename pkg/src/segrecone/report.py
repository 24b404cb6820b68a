"""Run configuration and report assembly for the verification driver.

A report is a plain document {version, config, checks: [...]} with one
record per check, sorted by check id.  Records carry exact numbers only:
integers stay integers, non-integral rationals are rendered as
"numerator/denominator" strings so nothing is rounded on the way out.
Identical configs produce byte-identical documents except for the
elapsed-time fields, which are excluded from the determinism contract.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import EngineError

ENGINE_VERSION = "0.1.0"

CHECK_IDS = (
    "aq-local",
    "coh-main",
    "euler",
    "h0-surj",
    "k1",
    "k3",
    "k4",
    "k5plus",
    "key-seq",
    "monoid",
    "pro-iso-d",
    "vanish-omega",
)

TABLE_IDS = ("hilbert", "omega-dims", "k4-system", "k3-system")

# Fixed anchor strings, one per check and table id.  They describe what is
# being verified, in the engine's own vocabulary; every emitted record must
# carry a non-empty entry from this table.
ANCHORS = {
    "coh-main": "line-bundle cohomology on the quadric surface: closed "
                "forms audited against the four-chart Cech oracle",
    "key-seq": "graded layer sequences of the reduced form sheaves: "
               "certified layer totals against direct section counts",
    "vanish-omega": "higher cohomology of the reduced form sheaves on "
                    "thickenings vanishes, certified layer by layer",
    "h0-surj": "global sections of reduced forms surject onto sections of "
               "the top cyclic quotient sheaf; degree-three targets vanish",
    "aq-local": "first naive-cotangent modules of the truncations, compared "
                "degree by degree against closed-form models",
    "pro-iso-d": "kernel system of the cotangent comparison map is "
                 "pro-zero with every transition killing the kernel",
    "euler": "restricted Euler sequence: coordinate sections give an "
             "invertible character matrix, forcing section vanishing",
    "k1": "weight-one comparison: truncated cone one-forms against "
          "sections of reduced one-forms, pro-isomorphism certificate",
    "k4": "weight-four witness: the class of x1 dx2 dx3 dx4 maps to the "
          "nonzero top form at every level, compatibly with transitions",
    "k5plus": "weight-five-and-up inputs: degree-three differential is "
              "onto the top forms and fifth exterior powers vanish",
    "k3": "weight-three kernel system, with the section-side target "
          "computed two independent ways",
    "monoid": "defining binomial, failure of c-divisibility, and a "
              "normality certificate for the cone monoid",
    "hilbert": "graded dimensions of the cone algebra",
    "omega-dims": "dimensions of exterior powers of the differential "
                  "modules of the truncations",
    "k4-system": "weight-four pro-system: level dims, transition ranks, "
                 "witness flags",
    "k3-system": "weight-three kernel system: level dims",
}


@dataclass
class Config:
    """Driver configuration; invalid combinations are engine errors."""
    nmax: int = 5
    window: int = 3
    box_pad: int = 4
    fmt: str = "json"
    jobs: int = 1
    out: str | None = None
    coh_range: tuple = (-6, 6)

    def __post_init__(self):
        if self.nmax < self.window + 1:
            raise EngineError("nmax must be at least window + 1")
        if self.window < 1:
            raise EngineError("window must be >= 1")
        if self.box_pad < 0:
            raise EngineError("box pad must be >= 0")
        if self.fmt not in ("json", "csv", "text"):
            raise EngineError(f"unknown format {self.fmt!r}")
        if self.jobs < 1:
            raise EngineError("jobs must be >= 1")
        lo, hi = self.coh_range
        if lo > hi:
            raise EngineError("empty audit range")

    def to_dict(self) -> dict:
        return {
            "nmax": self.nmax,
            "window": self.window,
            "degree_box_pad": self.box_pad,
            "format": self.fmt,
            "jobs": self.jobs,
            "range": f"{self.coh_range[0]}..{self.coh_range[1]}",
        }


@dataclass
class CheckRecord:
    check_id: str
    verdict: str                  # PASS | FAIL | ERROR
    witnesses: list = field(default_factory=list)
    dims: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def paper_anchor(self) -> str:
        return ANCHORS[self.check_id]

    def to_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "paper_anchor": self.paper_anchor,
            "verdict": self.verdict,
            "witnesses": jsonable(self.witnesses),
            "dims": jsonable(self.dims),
            "elapsed": round(self.elapsed, 6),
        }


def jsonable(obj):
    """Exact-arithmetic-safe conversion to JSON-ready values.

    Integral rationals become ints; anything non-integral becomes the
    string "p/q".  Tuples become lists, dict keys become strings."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, Fraction):
        if obj.denominator == 1:
            return int(obj)
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, int):
        return obj
    if isinstance(obj, float):
        return obj
    if isinstance(obj, dict):
        return {_key(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj, key=repr) if isinstance(obj, (set, frozenset)) \
            else obj
        return [jsonable(v) for v in items]
    return repr(obj)


def _key(k) -> str:
    if isinstance(k, str):
        return k
    if isinstance(k, (int, Fraction)):
        return str(jsonable(k))
    if isinstance(k, tuple):
        return ",".join(str(jsonable(x)) for x in k)
    return repr(k)


def build_document(config: Config, records: list) -> dict:
    checks = sorted(records, key=lambda r: r.check_id)
    return {
        "version": ENGINE_VERSION,
        "config": config.to_dict(),
        "checks": [r.to_dict() for r in checks],
    }


def render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def render_checks_csv(doc: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["check_id", "verdict", "elapsed", "paper_anchor"])
    for rec in doc["checks"]:
        w.writerow([rec["check_id"], rec["verdict"], rec["elapsed"],
                    rec["paper_anchor"]])
    return buf.getvalue()


def render_checks_text(doc: dict) -> str:
    lines = [f"verification report (engine {doc['version']})"]
    cfg = doc["config"]
    lines.append("config: " + ", ".join(f"{k}={v}" for k, v in cfg.items()))
    for rec in doc["checks"]:
        lines.append(f"[{rec['verdict']:5}] {rec['check_id']} "
                     f"({rec['elapsed']}s)")
        for wit in rec["witnesses"]:
            lines.append(f"        witness: {json.dumps(wit)}")
    return "\n".join(lines) + "\n"


def build_table_document(config: Config, table_id: str, header: list,
                         rows: list) -> dict:
    return {
        "version": ENGINE_VERSION,
        "config": config.to_dict(),
        "table": {
            "table_id": table_id,
            "paper_anchor": ANCHORS[table_id],
            "header": list(header),
            "rows": [list(jsonable(r)) for r in rows],
        },
    }


def render_table_csv(doc: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    t = doc["table"]
    w.writerow(t["header"])
    for row in t["rows"]:
        w.writerow(row)
    return buf.getvalue()


def render_table_text(doc: dict) -> str:
    t = doc["table"]
    cols = [t["header"]] + [[str(x) for x in row] for row in t["rows"]]
    widths = [max(len(str(r[i])) for r in cols) for i in range(len(t["header"]))]
    lines = [f"table {t['table_id']} (engine {doc['version']})"]
    for row in cols:
        lines.append("  ".join(str(x).rjust(w) for x, w in zip(row, widths)))
    return "\n".join(lines) + "\n"
