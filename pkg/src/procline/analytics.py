"""Catalog and usage statistics over a variant set.

The report counts operation exemplars as declared in the extension models,
keyed three ways: per type, per (variant, type), and per
(variant, group, defining metamodel). Types without exemplars stay in the
report with count zero so coverage questions ("which defined operations are
never used?") fall out directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .catalog import OperationCatalog
from .merge import VariantSet
from .model import MetamodelVersion


@dataclass(frozen=True)
class UsageReport:
    """Exemplar usage statistics, self-contained (no catalog needed to read it)."""

    variant_ids: tuple[str, ...]
    defined_per_metamodel: Mapping[MetamodelVersion, int]
    per_type_counts: Mapping[str, int]
    cells: Mapping[tuple[str, str], int]
    matrix: Mapping[tuple[str, str, MetamodelVersion], int]
    variant_totals: Mapping[str, int]
    total_exemplars: int
    unknown_types: Mapping[tuple[str, str], int] = field(default_factory=dict)
    type_groups: Mapping[str, str] = field(default_factory=dict)
    type_metamodels: Mapping[str, MetamodelVersion] = field(default_factory=dict)
    type_synthetic: Mapping[str, bool] = field(default_factory=dict)

    @property
    def used_types(self) -> tuple[str, ...]:
        return tuple(sorted(n for n, c in self.per_type_counts.items() if c > 0))

    @property
    def unused_types(self) -> tuple[str, ...]:
        return tuple(sorted(n for n, c in self.per_type_counts.items() if c == 0))

    def group_total(self, variant_id: str, group: str) -> int:
        return sum(
            count for (v, g, _), count in self.matrix.items() if v == variant_id and g == group
        )


def usage_report(variant_set: VariantSet, catalog: OperationCatalog) -> UsageReport:
    """Count declared exemplars across all variants of the set.

    Exemplars whose type name is not in the catalog land in
    ``unknown_types`` and still count toward the variant totals; everything
    else is keyed by catalog metadata.
    """
    variant_ids = tuple(variant_set.variant_ids())
    type_groups = {t.name: t.group for t in catalog}
    type_metamodels = {t.name: t.defining_metamodel for t in catalog}
    type_synthetic = {t.name: t.synthetic for t in catalog}

    per_type = {t.name: 0 for t in catalog}
    cells = {(v, t.name): 0 for v in variant_ids for t in catalog}
    groups = catalog.groups()
    matrix = {
        (v, g, mm): 0 for v in variant_ids for g in groups for mm in MetamodelVersion
    }
    variant_totals = {v: 0 for v in variant_ids}
    unknown: dict[tuple[str, str], int] = {}

    for variant_id in variant_ids:
        for exemplar in variant_set.extensions[variant_id].exemplars:
            variant_totals[variant_id] += 1
            type_def = catalog.get(exemplar.type_name)
            if type_def is None:
                key = (variant_id, exemplar.type_name)
                unknown[key] = unknown.get(key, 0) + 1
                continue
            per_type[type_def.name] += 1
            cells[(variant_id, type_def.name)] += 1
            matrix[(variant_id, type_def.group, type_def.defining_metamodel)] += 1

    return UsageReport(
        variant_ids=variant_ids,
        defined_per_metamodel=catalog.counts_by_metamodel(),
        per_type_counts=per_type,
        cells=cells,
        matrix=matrix,
        variant_totals=variant_totals,
        total_exemplars=sum(variant_totals.values()),
        unknown_types=unknown,
        type_groups=type_groups,
        type_metamodels=type_metamodels,
        type_synthetic=type_synthetic,
    )


def top_n(report: UsageReport, n: int = 10) -> list[tuple[str, int]]:
    """The n most used types as (name, count), count descending, ties by name."""
    used = [(name, count) for name, count in report.per_type_counts.items() if count > 0]
    used.sort(key=lambda pair: (-pair[1], pair[0]))
    return used[:n]


@dataclass(frozen=True)
class UnusedSlice:
    unused_count: int
    defined_count: int

    @property
    def fraction(self) -> float:
        if self.defined_count == 0:
            return 0.0
        return self.unused_count / self.defined_count


@dataclass(frozen=True)
class UnusedReport:
    unused_types: tuple[str, ...]
    overall: UnusedSlice
    per_metamodel: Mapping[MetamodelVersion, UnusedSlice]


def unused_report(report: UsageReport) -> UnusedReport:
    """Defined-but-unused types, overall and sliced by defining metamodel."""
    unused = report.unused_types
    per_mm = {}
    for mm in MetamodelVersion:
        defined = report.defined_per_metamodel.get(mm, 0)
        unused_here = sum(1 for name in unused if report.type_metamodels[name] == mm)
        per_mm[mm] = UnusedSlice(unused_here, defined)
    return UnusedReport(
        unused_types=unused,
        overall=UnusedSlice(len(unused), len(report.per_type_counts)),
        per_metamodel=per_mm,
    )
