"""carlitz_rank.campaign — campaign configuration, reports and execution.

A campaign is split into independent cells (field x n x k for the theorem
campaigns, one cell per field for the sweeps). Cells run serially or on a
process pool; either way results are merged in sorted cell order, so a
report is a pure function of its config and seed. Each cell draws its
samples from its own generator seeded with (seed, campaign, cell key), so
budgets and draws do not depend on scheduling.

Serialized reports carry ``schema_version``; wall time, worker count and the
output target stay out of the serialized form so that reruns are
byte-identical.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import logging
import os
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Literal

import numpy as np
from pydantic import BaseModel, Field, ValidationError, computed_field, field_validator
from sympy import factorint

from .bounds import BoundReport, SqrtInequality
from .curves import CurveCountReport
from .errors import CarlitzRankError, ConfigInvalidError, IoFailureError
from .field import FieldSpec, construct_field

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
MAX_PAIRS_ENV = "CARLITZ_RANK_MAX_PAIRS"
DEFAULT_MAX_PAIRS = 50_000_000


def default_max_pairs() -> int:
    """Exhaustive-mode cost cap: ``$CARLITZ_RANK_MAX_PAIRS`` or 5e7 pairs."""
    raw = os.environ.get(MAX_PAIRS_ENV)
    if raw:
        try:
            return int(float(raw))
        except ValueError:
            pass
    return DEFAULT_MAX_PAIRS


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------


class CampaignKind(str, enum.Enum):
    MAIN = "MainTheorem"
    MONOMIAL = "MonomialTheorem"
    COROLLARY = "CorollaryComplete"
    EXAMPLE_F9 = "ExampleF9"
    MU_SWEEP = "MuSweep"
    CURVE_SWEEP = "CurveSweep"

    @property
    def tag(self) -> int:
        """Stable small integer mixed into every cell seed."""
        return list(CampaignKind).index(self)


class FieldRef(BaseModel):
    """A field of the campaign grid, with optional per-field overrides."""

    model_config = {"frozen": True}

    p: int
    r: int = 1
    n_max: int | None = Field(default=None, ge=0)
    budget: int | None = Field(default=None, ge=0)

    @property
    def q(self) -> int:
        return self.p ** self.r

    def spec(self) -> FieldSpec:
        return construct_field(self.p, self.r)

    @classmethod
    def parse(cls, text: str) -> FieldRef:
        """``"P"``, ``"P^R"`` or ``"P,R"``."""
        for sep in ("^", ","):
            if sep in text:
                p, r = text.split(sep, 1)
                return cls(p=int(p), r=int(r))
        return cls(p=int(text))


class CampaignConfig(BaseModel):
    model_config = {"frozen": True}

    campaign: CampaignKind
    fields: list[FieldRef] = Field(default_factory=list)
    n_max: int = Field(default=2, ge=0)
    k_max: int = Field(default=3, ge=1)
    budget: int = Field(default=0, ge=0, description="pairs per cell; 0 = exhaustive")
    seed: int = Field(default=0, ge=0)
    oracle_samples: int = Field(default=100, ge=0)
    curve_samples: int = Field(default=50, ge=1)
    max_pairs: int = Field(default_factory=default_max_pairs, ge=1)
    workers: int = Field(default=1, ge=1, exclude=True)
    out: Path | None = Field(default=None, exclude=True)
    format: Literal["json", "csv"] = Field(default="json", exclude=True)

    @field_validator("fields")
    @classmethod
    def _fields_construct(cls, value: list[FieldRef]) -> list[FieldRef]:
        for ref in value:
            try:
                ref.spec()
            except CarlitzRankError as exc:
                raise ValueError(str(exc)) from None
        return value

    @classmethod
    def build(cls, **values: Any) -> CampaignConfig:
        """Construct, turning validation failures into ConfigInvalidError."""
        try:
            config = cls.model_validate(values)
        except ValidationError as exc:
            raise ConfigInvalidError(_summarize(exc)) from None
        if not config.fields and config.campaign is not CampaignKind.EXAMPLE_F9:
            raise ConfigInvalidError(f"{config.campaign.value}: the field list is empty")
        return config

    def n_limit(self, ref: FieldRef) -> int:
        return self.n_max if ref.n_max is None else ref.n_max

    def budget_for(self, ref: FieldRef) -> int:
        return self.budget if ref.budget is None else ref.budget

    @classmethod
    def acceptance(cls, kind: CampaignKind | str, **overrides: Any) -> CampaignConfig:
        """The acceptance grid of one campaign kind."""
        kind = CampaignKind(kind)
        small = [FieldRef(p=5), FieldRef(p=7), FieldRef(p=2, r=3)]
        f9 = FieldRef(p=3, r=2)
        grids: dict[CampaignKind, dict[str, Any]] = {
            CampaignKind.MAIN: dict(
                fields=small + [FieldRef(p=3, r=2, n_max=3, budget=10_000)],
                n_max=2, k_max=3),
            CampaignKind.MONOMIAL: dict(fields=small + [f9], n_max=3, k_max=5),
            CampaignKind.COROLLARY: dict(fields=small + [f9], n_max=3, k_max=1),
            CampaignKind.EXAMPLE_F9: dict(fields=[f9], n_max=3, k_max=2),
            CampaignKind.MU_SWEEP: dict(fields=prime_power_fields(64), n_max=2, k_max=3,
                                        oracle_samples=100),
            CampaignKind.CURVE_SWEEP: dict(fields=prime_power_fields(81), k_max=6,
                                           curve_samples=50),
        }
        values = {"campaign": kind, **grids[kind], **overrides}
        return cls.build(**values)


def _summarize(exc: ValidationError) -> str:
    parts = []
    for err in exc.errors():
        where = ".".join(str(x) for x in err["loc"]) or "config"
        parts.append(f"{where}: {err['msg']}")
    return "invalid campaign config: " + "; ".join(parts)


def prime_power_fields(limit: int) -> list[FieldRef]:
    """Every GF(p^r) with 3 <= q <= limit, in increasing q."""
    out = []
    for q in range(3, limit + 1):
        factors = factorint(q)
        if len(factors) == 1:
            ((p, r),) = factors.items()
            out.append(FieldRef(p=p, r=r))
    return out


# ---------------------------------------------------------------------------
# witnesses and reports
# ---------------------------------------------------------------------------


class Witness(BaseModel):
    """Everything needed to replay one (f, g) pair and re-derive its verdicts.

    `checks` are asserted (a False entry makes a counterexample); `observed`
    are recorded only.
    """

    model_config = {"frozen": True}

    campaign: CampaignKind
    p: int
    r: int
    form: str = ""
    g: list[int] = Field(default_factory=list)
    n: int = 0
    k: int | None = None
    nu: int | None = None
    m: int | None = None
    mu: int | None = None
    fibers: list[tuple[int, int]] = Field(default_factory=list)
    rank: int | None = None
    linearity: int | None = None
    form_class: str | None = None
    bounds: list[BoundReport] = Field(default_factory=list)
    mu_floor: SqrtInequality | None = None
    curve: CurveCountReport | None = None
    checks: dict[str, bool] = Field(default_factory=dict)
    observed: dict[str, bool] = Field(default_factory=dict)
    values: dict[str, int] = Field(default_factory=dict)

    @property
    def failed(self) -> list[str]:
        return sorted(name for name, ok in self.checks.items() if not ok)


Row = dict[str, int | str | bool | None]


class CellResult(BaseModel):
    key: tuple[int, ...]
    counts: dict[str, int] = Field(default_factory=dict)
    counterexamples: list[Witness] = Field(default_factory=list)
    witnesses: list[Witness] = Field(default_factory=list)
    informational: list[Witness] = Field(default_factory=list)
    discrepancies: list[str] = Field(default_factory=list)
    rows: list[Row] = Field(default_factory=list)

    def bump(self, name: str, by: int = 1) -> None:
        self.counts[name] = self.counts.get(name, 0) + by


class CampaignReport(BaseModel):
    schema_version: int = SCHEMA_VERSION
    campaign: CampaignKind
    config: CampaignConfig
    counts: dict[str, int] = Field(default_factory=dict)
    counterexamples: list[Witness] = Field(default_factory=list)
    witnesses: list[Witness] = Field(default_factory=list)
    informational: list[Witness] = Field(default_factory=list)
    discrepancies: list[str] = Field(default_factory=list)
    rows: list[Row] = Field(default_factory=list)
    wall_time: float = Field(default=0.0, exclude=True)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def verdict(self) -> Literal["PASS", "FAIL"]:
        return "FAIL" if self.counterexamples else "PASS"

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    @classmethod
    def merge(cls, config: CampaignConfig, cells: Iterable[CellResult]) -> CampaignReport:
        report = cls(campaign=config.campaign, config=config)
        for cell in sorted(cells, key=lambda c: c.key):
            for name, value in cell.counts.items():
                report.counts[name] = report.counts.get(name, 0) + value
            report.counterexamples.extend(cell.counterexamples)
            report.witnesses.extend(cell.witnesses)
            report.informational.extend(cell.informational)
            report.discrepancies.extend(cell.discrepancies)
            report.rows.extend(cell.rows)
        report.counts = dict(sorted(report.counts.items()))
        return report

    # -- serialization ------------------------------------------------------

    def to_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), sort_keys=True, indent=2) + "\n"

    def to_csv(self) -> str:
        columns = sorted({key for row in self.rows for key in row})
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        for row in self.rows:
            writer.writerow({key: _csv_cell(row.get(key)) for key in columns})
        return buf.getvalue()

    def render(self, fmt: Literal["json", "csv"] = "json") -> str:
        return self.to_csv() if fmt == "csv" else self.to_json()


def _csv_cell(value: object) -> object:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return value


def write_report(report: CampaignReport, path: Path | str,
                 fmt: Literal["json", "csv"] = "json") -> Path:
    path = Path(path)
    try:
        if path.parent != Path(""):
            path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(report.render(fmt), encoding="utf-8")
    except OSError as exc:
        raise IoFailureError(path, exc) from exc
    logger.info("wrote %s report to %s", fmt, path)
    return path


# ---------------------------------------------------------------------------
# cells
# ---------------------------------------------------------------------------


def cell_rng(config: CampaignConfig, key: Sequence[int]) -> np.random.Generator:
    """The generator of one cell: independent of every other cell."""
    entropy = [config.seed, config.campaign.tag, *key]
    return np.random.default_rng(np.random.SeedSequence(entropy))


CellFn = Callable[[CampaignConfig, tuple[int, ...]], CellResult]


def execute_cells(config: CampaignConfig, keys: Sequence[tuple[int, ...]],
                  fn: CellFn) -> list[CellResult]:
    """Run `fn` over every cell key; results come back in key order.

    `fn` must be a module-level function so the process pool can pickle it.
    """
    keys = sorted(keys)
    if config.workers <= 1 or len(keys) <= 1:
        return [fn(config, key) for key in keys]
    workers = min(config.workers, len(keys))
    logger.info("%s: %d cells on %d workers", config.campaign.value, len(keys), workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, [config] * len(keys), keys))
