"""XML reading and writing for models, extensions, catalogs, and traces.

Parsing is strict: unknown tags or attributes, missing required attributes,
bad enum values, wrong schema versions, and duplicate ids are all rejected
with :class:`SchemaError` (syntactic problems surface as
:class:`ParseError`). Serialization is canonical: UTF-8 text, LF line ends,
two-space indent, elements and references sorted by id, attribute tags
sorted by key, text blocks in model order. Canonical files are a fixed
point of parse-then-serialize, which is what makes them diffable.

Statistics exports (CSV and plain text) live here too, next to the other
output formats.
"""

from __future__ import annotations

import csv
import io
import xml.etree.ElementTree as ET
from typing import Iterable
from xml.sax.saxutils import escape, quoteattr

from .analytics import UsageReport, top_n, unused_report
from .atomic import AtomicKind
from .catalog import (
    OperationCatalog,
    OperationExemplar,
    OperationTypeDef,
    StepTemplate,
)
from .errors import (
    MissingParentDeclarationError,
    ParseError,
    SchemaError,
)
from .merge import ExtensionModel, MergeTrace, TraceEntryKind
from .model import (
    ElementKind,
    MetamodelVersion,
    ProcessElement,
    ProcessModel,
    Reference,
    ReferenceKind,
    TextBlock,
)

SCHEMA_VERSION = "1"


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def _root_node(text: str, expected_tag: str, source: str) -> ET.Element:
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        line = exc.position[0] if exc.position else None
        raise ParseError(str(exc), source=source, line=line) from exc
    if root.tag != expected_tag:
        raise SchemaError(
            f"expected <{expected_tag}> document, got <{root.tag}>", path=source
        )
    return root


def _check_attrs(
    node: ET.Element,
    required: tuple[str, ...],
    optional: tuple[str, ...] = (),
    *,
    source: str,
) -> None:
    for name in required:
        if name not in node.attrib:
            raise SchemaError(f"<{node.tag}> lacks attribute {name!r}", path=source)
    allowed = set(required) | set(optional)
    for name in node.attrib:
        if name not in allowed:
            raise SchemaError(f"<{node.tag}> has unexpected attribute {name!r}", path=source)


def _check_schema_version(node: ET.Element, source: str) -> None:
    version = node.attrib.get("schemaVersion")
    if version != SCHEMA_VERSION:
        raise SchemaError(
            f"<{node.tag}> declares schemaVersion {version!r}, expected {SCHEMA_VERSION!r}",
            path=source,
        )


def _no_stray_text(node: ET.Element, source: str) -> None:
    if (node.text or "").strip():
        raise SchemaError(f"<{node.tag}> holds unexpected text", path=source)


def _leaf(node: ET.Element, source: str) -> str:
    if len(node):
        raise SchemaError(f"<{node.tag}> must not have child tags", path=source)
    return node.text or ""


def _metamodel(value: str, source: str) -> MetamodelVersion:
    try:
        return MetamodelVersion(value)
    except ValueError:
        raise SchemaError(f"unknown metamodel version {value!r}", path=source) from None


def _claim_id(seen: set[str], new_id: str, source: str) -> None:
    if new_id in seen:
        raise SchemaError(f"duplicate id {new_id!r} in document", path=source)
    seen.add(new_id)


def _parse_element_node(node: ET.Element, seen: set[str], source: str) -> ProcessElement:
    _check_attrs(node, ("id", "kind", "name"), source=source)
    _no_stray_text(node, source)
    elem_id = node.attrib["id"]
    _claim_id(seen, elem_id, source)
    try:
        kind = ElementKind(node.attrib["kind"])
    except ValueError:
        raise SchemaError(f"unknown element kind {node.attrib['kind']!r}", path=source) from None
    description = ""
    saw_description = False
    attributes: dict[str, str] = {}
    blocks: list[TextBlock] = []
    for child in node:
        if child.tag == "description":
            if saw_description:
                raise SchemaError(f"element {elem_id!r} repeats <description>", path=source)
            _check_attrs(child, (), source=source)
            description = _leaf(child, source)
            saw_description = True
        elif child.tag == "attribute":
            _check_attrs(child, ("key",), source=source)
            key = child.attrib["key"]
            if key in attributes:
                raise SchemaError(
                    f"element {elem_id!r} repeats attribute key {key!r}", path=source
                )
            attributes[key] = _leaf(child, source)
        elif child.tag == "textBlock":
            _check_attrs(child, ("id",), source=source)
            blocks.append(TextBlock(id=child.attrib["id"], text=_leaf(child, source)))
        else:
            raise SchemaError(f"unexpected <{child.tag}> inside <element>", path=source)
    try:
        return ProcessElement(
            id=elem_id,
            kind=kind,
            name=node.attrib["name"],
            description=description,
            attributes=attributes,
            text_blocks=tuple(blocks),
        )
    except ValueError as exc:
        raise SchemaError(str(exc), path=source) from None


def _parse_reference_node(node: ET.Element, seen: set[str], source: str) -> Reference:
    _check_attrs(node, ("id", "kind", "source", "target"), source=source)
    _no_stray_text(node, source)
    ref_id = node.attrib["id"]
    _claim_id(seen, ref_id, source)
    try:
        kind = ReferenceKind(node.attrib["kind"])
    except ValueError:
        raise SchemaError(f"unknown reference kind {node.attrib['kind']!r}", path=source) from None
    attributes: dict[str, str] = {}
    for child in node:
        if child.tag != "attribute":
            raise SchemaError(f"unexpected <{child.tag}> inside <reference>", path=source)
        _check_attrs(child, ("key",), source=source)
        key = child.attrib["key"]
        if key in attributes:
            raise SchemaError(f"reference {ref_id!r} repeats attribute key {key!r}", path=source)
        attributes[key] = _leaf(child, source)
    try:
        return Reference(
            id=ref_id,
            kind=kind,
            source=node.attrib["source"],
            target=node.attrib["target"],
            attributes=attributes,
        )
    except ValueError as exc:
        raise SchemaError(str(exc), path=source) from None


def parse_model(text: str, *, source: str = "") -> ProcessModel:
    """Read a reference/process model document."""
    root = _root_node(text, "processModel", source)
    _check_attrs(root, ("schemaVersion", "metamodel"), source=source)
    _check_schema_version(root, source)
    _no_stray_text(root, source)
    metamodel = _metamodel(root.attrib["metamodel"], source)
    seen: set[str] = set()
    elements: list[ProcessElement] = []
    references: list[Reference] = []
    for child in root:
        if child.tag == "element":
            elements.append(_parse_element_node(child, seen, source))
        elif child.tag == "reference":
            references.append(_parse_reference_node(child, seen, source))
        else:
            raise SchemaError(f"unexpected <{child.tag}> inside <processModel>", path=source)
    return ProcessModel.of(metamodel, elements, references)


def _parse_exemplar_node(node: ET.Element, source: str) -> OperationExemplar:
    _check_attrs(node, ("type", "target"), source=source)
    _no_stray_text(node, source)
    args: dict[str, str] = {}
    for child in node:
        if child.tag != "arg":
            raise SchemaError(f"unexpected <{child.tag}> inside <exemplar>", path=source)
        _check_attrs(child, ("name",), source=source)
        name = child.attrib["name"]
        if name in args:
            raise SchemaError(
                f"exemplar of {node.attrib['type']!r} repeats argument {name!r}", path=source
            )
        args[name] = _leaf(child, source)
    try:
        return OperationExemplar(
            type_name=node.attrib["type"], target=node.attrib["target"], args=args
        )
    except ValueError as exc:
        raise SchemaError(str(exc), path=source) from None


def parse_extension(text: str, *, source: str = "") -> ExtensionModel:
    """Read an extension model document.

    The ``parent`` attribute is how a variant anchors itself in the family
    tree, so its absence is reported as the dedicated
    :class:`MissingParentDeclarationError`.
    """
    root = _root_node(text, "extensionModel", source)
    _check_attrs(root, ("schemaVersion", "id", "metamodel"), optional=("parent",), source=source)
    _check_schema_version(root, source)
    _no_stray_text(root, source)
    if "parent" not in root.attrib:
        raise MissingParentDeclarationError(
            f"extension {root.attrib['id']!r} declares no parent", path=source
        )
    metamodel = _metamodel(root.attrib["metamodel"], source)
    seen: set[str] = set()
    sections_seen: set[str] = set()
    new_elements: list[ProcessElement] = []
    new_references: list[Reference] = []
    exclusions: list[str] = []
    exemplars: list[OperationExemplar] = []
    for section in root:
        if section.tag in sections_seen:
            raise SchemaError(f"repeated <{section.tag}> section", path=source)
        sections_seen.add(section.tag)
        _no_stray_text(section, source)
        if section.tag == "newElements":
            _check_attrs(section, (), source=source)
            for child in section:
                if child.tag != "element":
                    raise SchemaError(
                        f"unexpected <{child.tag}> inside <newElements>", path=source
                    )
                new_elements.append(_parse_element_node(child, seen, source))
        elif section.tag == "newReferences":
            _check_attrs(section, (), source=source)
            for child in section:
                if child.tag != "reference":
                    raise SchemaError(
                        f"unexpected <{child.tag}> inside <newReferences>", path=source
                    )
                new_references.append(_parse_reference_node(child, seen, source))
        elif section.tag == "exclusions":
            _check_attrs(section, (), source=source)
            for child in section:
                if child.tag != "exclude":
                    raise SchemaError(
                        f"unexpected <{child.tag}> inside <exclusions>", path=source
                    )
                _check_attrs(child, ("id",), source=source)
                if len(child) or (child.text or "").strip():
                    raise SchemaError("<exclude> must be empty", path=source)
                exclusions.append(child.attrib["id"])
        elif section.tag == "operations":
            _check_attrs(section, (), source=source)
            for child in section:
                if child.tag != "exemplar":
                    raise SchemaError(
                        f"unexpected <{child.tag}> inside <operations>", path=source
                    )
                exemplars.append(_parse_exemplar_node(child, source))
        else:
            raise SchemaError(f"unexpected <{section.tag}> inside <extensionModel>", path=source)
    try:
        return ExtensionModel(
            variant_id=root.attrib["id"],
            parent_id=root.attrib["parent"],
            metamodel=metamodel,
            new_elements=tuple(new_elements),
            new_references=tuple(new_references),
            exclusions=tuple(exclusions),
            exemplars=tuple(exemplars),
        )
    except ValueError as exc:
        raise SchemaError(str(exc), path=source) from None


def _parse_step_node(node: ET.Element, source: str) -> StepTemplate:
    _check_attrs(node, ("atomic", "target"), source=source)
    _no_stray_text(node, source)
    try:
        atomic = AtomicKind(node.attrib["atomic"])
    except ValueError:
        raise SchemaError(f"unknown atomic kind {node.attrib['atomic']!r}", path=source) from None
    args: dict[str, str] = {}
    for child in node:
        if child.tag != "arg":
            raise SchemaError(f"unexpected <{child.tag}> inside <step>", path=source)
        _check_attrs(child, ("name",), source=source)
        name = child.attrib["name"]
        if name in args:
            raise SchemaError(f"step repeats argument {name!r}", path=source)
        args[name] = _leaf(child, source)
    return StepTemplate(atomic=atomic, target=node.attrib["target"], args=args)


def _target_kind(value: str, source: str) -> ElementKind | ReferenceKind:
    try:
        return ElementKind(value)
    except ValueError:
        pass
    try:
        return ReferenceKind(value)
    except ValueError:
        raise SchemaError(f"unknown target kind {value!r}", path=source) from None


def parse_catalog(text: str, *, source: str = "") -> OperationCatalog:
    """Read an operation catalog document."""
    root = _root_node(text, "operationCatalog", source)
    _check_attrs(root, ("schemaVersion",), source=source)
    _check_schema_version(root, source)
    _no_stray_text(root, source)
    type_defs: list[OperationTypeDef] = []
    for node in root:
        if node.tag != "operationType":
            raise SchemaError(f"unexpected <{node.tag}> inside <operationCatalog>", path=source)
        _check_attrs(
            node,
            ("name", "group", "targetKind", "metamodel"),
            optional=("synthetic",),
            source=source,
        )
        _no_stray_text(node, source)
        synthetic_raw = node.attrib.get("synthetic", "false")
        if synthetic_raw not in ("true", "false"):
            raise SchemaError(
                f"synthetic must be 'true' or 'false', got {synthetic_raw!r}", path=source
            )
        recipe = []
        for child in node:
            if child.tag != "step":
                raise SchemaError(f"unexpected <{child.tag}> inside <operationType>", path=source)
            recipe.append(_parse_step_node(child, source))
        try:
            type_defs.append(
                OperationTypeDef(
                    name=node.attrib["name"],
                    group=node.attrib["group"],
                    target_kind=_target_kind(node.attrib["targetKind"], source),
                    defining_metamodel=_metamodel(node.attrib["metamodel"], source),
                    recipe=tuple(recipe),
                    synthetic=synthetic_raw == "true",
                )
            )
        except ValueError as exc:
            raise SchemaError(str(exc), path=source) from None
    return OperationCatalog(type_defs)


# ---------------------------------------------------------------------------
# canonical serialization
# ---------------------------------------------------------------------------

class _Writer:
    def __init__(self) -> None:
        self._lines: list[str] = ['<?xml version="1.0" encoding="UTF-8"?>']

    def line(self, depth: int, content: str) -> None:
        self._lines.append("  " * depth + content)

    def text(self) -> str:
        return "\n".join(self._lines) + "\n"


def _attrs(pairs: Iterable[tuple[str, str]]) -> str:
    return "".join(f" {name}={quoteattr(value)}" for name, value in pairs)


def _leaf_line(tag: str, pairs: Iterable[tuple[str, str]], text: str) -> str:
    opening = f"<{tag}{_attrs(pairs)}"
    if text == "":
        return opening + "/>"
    return f"{opening}>{escape(text)}</{tag}>"


def _write_container(
    writer: _Writer, depth: int, tag: str, pairs: Iterable[tuple[str, str]], body_lines: list
) -> None:
    """body_lines: rendered child lines as (depth, content); empty means self-close."""
    if not body_lines:
        writer.line(depth, f"<{tag}{_attrs(pairs)}/>")
        return
    writer.line(depth, f"<{tag}{_attrs(pairs)}>")
    for child_depth, content in body_lines:
        writer.line(child_depth, content)
    writer.line(depth, f"</{tag}>")


def _element_lines(elem: ProcessElement, depth: int) -> list:
    lines = []
    if elem.description != "":
        lines.append((depth + 1, _leaf_line("description", (), elem.description)))
    for key in sorted(elem.attributes):
        lines.append((depth + 1, _leaf_line("attribute", [("key", key)], elem.attributes[key])))
    for block in elem.text_blocks:
        lines.append((depth + 1, _leaf_line("textBlock", [("id", block.id)], block.text)))
    return lines


def _write_element(writer: _Writer, depth: int, elem: ProcessElement) -> None:
    pairs = [("id", elem.id), ("kind", elem.kind.value), ("name", elem.name)]
    _write_container(writer, depth, "element", pairs, _element_lines(elem, depth))


def _write_reference(writer: _Writer, depth: int, ref: Reference) -> None:
    pairs = [
        ("id", ref.id),
        ("kind", ref.kind.value),
        ("source", ref.source),
        ("target", ref.target),
    ]
    lines = [
        (depth + 1, _leaf_line("attribute", [("key", key)], ref.attributes[key]))
        for key in sorted(ref.attributes)
    ]
    _write_container(writer, depth, "reference", pairs, lines)


def serialize_model(model: ProcessModel) -> str:
    writer = _Writer()
    pairs = [("schemaVersion", SCHEMA_VERSION), ("metamodel", model.metamodel.value)]
    if not model.elements and not model.references:
        writer.line(0, f"<processModel{_attrs(pairs)}/>")
        return writer.text()
    writer.line(0, f"<processModel{_attrs(pairs)}>")
    for elem_id in sorted(model.elements):
        _write_element(writer, 1, model.elements[elem_id])
    for ref_id in sorted(model.references):
        _write_reference(writer, 1, model.references[ref_id])
    writer.line(0, "</processModel>")
    return writer.text()


def _write_exemplar(writer: _Writer, depth: int, exemplar: OperationExemplar) -> None:
    pairs = [("type", exemplar.type_name), ("target", exemplar.target)]
    lines = [
        (depth + 1, _leaf_line("arg", [("name", name)], exemplar.args[name]))
        for name in sorted(exemplar.args)
    ]
    _write_container(writer, depth, "exemplar", pairs, lines)


def serialize_extension(ext: ExtensionModel) -> str:
    writer = _Writer()
    pairs = [
        ("schemaVersion", SCHEMA_VERSION),
        ("id", ext.variant_id),
        ("parent", ext.parent_id),
        ("metamodel", ext.metamodel.value),
    ]
    has_body = ext.new_elements or ext.new_references or ext.exclusions or ext.exemplars
    if not has_body:
        writer.line(0, f"<extensionModel{_attrs(pairs)}/>")
        return writer.text()
    writer.line(0, f"<extensionModel{_attrs(pairs)}>")
    if ext.new_elements:
        writer.line(1, "<newElements>")
        for elem in ext.new_elements:
            _write_element(writer, 2, elem)
        writer.line(1, "</newElements>")
    if ext.new_references:
        writer.line(1, "<newReferences>")
        for ref in ext.new_references:
            _write_reference(writer, 2, ref)
        writer.line(1, "</newReferences>")
    if ext.exclusions:
        writer.line(1, "<exclusions>")
        for excluded_id in ext.exclusions:
            writer.line(2, f"<exclude{_attrs([('id', excluded_id)])}/>")
        writer.line(1, "</exclusions>")
    if ext.exemplars:
        writer.line(1, "<operations>")
        for exemplar in ext.exemplars:
            _write_exemplar(writer, 2, exemplar)
        writer.line(1, "</operations>")
    writer.line(0, "</extensionModel>")
    return writer.text()


def serialize_catalog(catalog: OperationCatalog) -> str:
    writer = _Writer()
    pairs = [("schemaVersion", SCHEMA_VERSION)]
    if len(catalog) == 0:
        writer.line(0, f"<operationCatalog{_attrs(pairs)}/>")
        return writer.text()
    writer.line(0, f"<operationCatalog{_attrs(pairs)}>")
    for type_def in catalog:
        type_pairs = [
            ("name", type_def.name),
            ("group", type_def.group),
            ("targetKind", type_def.target_kind.value),
            ("metamodel", type_def.defining_metamodel.value),
        ]
        if type_def.synthetic:
            type_pairs.append(("synthetic", "true"))
        writer.line(1, f"<operationType{_attrs(type_pairs)}>")
        for step in type_def.recipe:
            step_pairs = [("atomic", step.atomic.value), ("target", step.target)]
            lines = [
                (3, _leaf_line("arg", [("name", name)], step.args[name]))
                for name in sorted(step.args)
            ]
            _write_container(writer, 2, "step", step_pairs, lines)
        writer.line(1, "</operationType>")
    writer.line(0, "</operationCatalog>")
    return writer.text()


def serialize_trace(trace: MergeTrace) -> str:
    """Trace metadata as XML. Change sets are runtime data and stay out."""
    writer = _Writer()
    pairs = [("schemaVersion", SCHEMA_VERSION)]
    if trace.final_metamodel is not None:
        pairs.append(("finalMetamodel", trace.final_metamodel.value))
    if not trace.entries:
        writer.line(0, f"<mergeTrace{_attrs(pairs)}/>")
        return writer.text()
    writer.line(0, f"<mergeTrace{_attrs(pairs)}>")
    for entry in trace.entries:
        entry_pairs = [
            ("kind", entry.kind.value),
            ("variant", entry.variant_id),
            ("subject", entry.subject),
        ]
        if entry.target:
            entry_pairs.append(("target", entry.target))
        if entry.kind is TraceEntryKind.EXCLUSION_APPLIED:
            entry_pairs.append(("cascadeCount", str(entry.cascade_count)))
        if entry.kind is TraceEntryKind.OPERATION_EXECUTED:
            entry_pairs.append(("stepCount", str(entry.step_count)))
        if entry.detail:
            entry_pairs.append(("detail", entry.detail))
        writer.line(1, f"<entry{_attrs(entry_pairs)}/>")
    writer.line(0, "</mergeTrace>")
    return writer.text()


def render_trace_text(trace: MergeTrace) -> str:
    """One line per trace entry, for terminal output."""
    final = trace.final_metamodel.value if trace.final_metamodel else "unchanged"
    lines = [f"merge trace: {len(trace.entries)} entries, final metamodel {final}"]
    for entry in trace.entries:
        parts = [f"[{entry.variant_id}] {entry.kind.value} {entry.subject}"]
        if entry.target:
            parts.append(f"on {entry.target}")
        if entry.kind is TraceEntryKind.EXCLUSION_APPLIED:
            parts.append(f"(cascaded references: {entry.cascade_count})")
        if entry.kind is TraceEntryKind.OPERATION_EXECUTED:
            steps = "step" if entry.step_count == 1 else "steps"
            parts.append(f"({entry.step_count} {steps})")
        if entry.detail:
            parts.append(f"- {entry.detail}")
        lines.append("  " + " ".join(parts))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# statistics exports
# ---------------------------------------------------------------------------

CSV_HEADER = ("variantId", "operationGroup", "operationType", "definingMetamodel", "exemplarCount")

UNKNOWN_GROUP = "(unknown)"


def export_stats_csv(report: UsageReport) -> str:
    """Usage statistics as CSV, one row per variant and operation type.

    Types without exemplars keep their zero rows so the output schema does
    not depend on the data. Exemplars of types missing from the catalog get
    the reserved group ``(unknown)`` and an empty metamodel column.
    """
    rows = []
    for (variant_id, type_name), count in report.cells.items():
        rows.append(
            (
                variant_id,
                report.type_groups[type_name],
                type_name,
                report.type_metamodels[type_name].value,
                count,
            )
        )
    for (variant_id, type_name), count in report.unknown_types.items():
        rows.append((variant_id, UNKNOWN_GROUP, type_name, "", count))
    rows.sort(key=lambda row: (row[0], row[1], row[2]))
    buffer = io.StringIO()
    writer = csv.writer(buffer)
    writer.writerow(CSV_HEADER)
    writer.writerows(rows)
    return buffer.getvalue()


def _format_count_table(rows: list[tuple[str, str]], indent: str = "  ") -> list[str]:
    width = max(len(label) for label, _ in rows)
    return [f"{indent}{label.ljust(width)}  {value}" for label, value in rows]


def render_stats_text(report: UsageReport) -> str:
    """Usage statistics as a small plain-text report."""
    defined = report.defined_per_metamodel
    total_defined = sum(defined.values())
    per_mm = ", ".join(f"{mm.value}: {defined[mm]}" for mm in MetamodelVersion)
    unused = unused_report(report)
    lines = [
        f"defined operation types: {total_defined} ({per_mm})",
        f"used: {len(report.used_types)}  "
        f"unused: {unused.overall.unused_count} ({unused.overall.fraction:.1%})",
        "",
        "exemplars per variant:",
    ]
    variant_rows = [(v, str(report.variant_totals[v])) for v in report.variant_ids]
    variant_rows.append(("total", str(report.total_exemplars)))
    lines.extend(_format_count_table(variant_rows))
    leaders = top_n(report)
    if leaders:
        lines.append("")
        lines.append("most used types:")
        leader_rows = [
            (
                name,
                f"{count}  ({report.type_metamodels[name].value}, {report.type_groups[name]})",
            )
            for name, count in leaders
        ]
        lines.extend(_format_count_table(leader_rows))
    if report.unknown_types:
        lines.append("")
        lines.append("exemplars of unknown types:")
        unknown_rows = [
            (f"{variant_id}: {type_name}", str(count))
            for (variant_id, type_name), count in sorted(report.unknown_types.items())
        ]
        lines.extend(_format_count_table(unknown_rows))
    return "\n".join(lines) + "\n"
