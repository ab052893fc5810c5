"""Core process model: typed elements, typed references, and model diffs.

A :class:`ProcessModel` is an immutable value. Every operation that would
change a model returns a new one; callers can therefore hold on to any
intermediate state (merge bases, trace snapshots) without defensive copies.

Identity lives in one namespace: element ids and reference ids must not
collide, so a bare id always resolves to exactly one thing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from enum import Enum
from typing import Iterable, Iterator, Mapping

from .errors import (
    DanglingReferenceError,
    DuplicateIdError,
    FieldNotFoundError,
    Issue,
    IssueCode,
    UnknownIdError,
)


class MetamodelVersion(str, Enum):
    """Metamodel generations, ordered oldest to newest."""

    V1_3 = "1.3"
    V1_3B = "1.3B"
    V1_3Z = "1.3Z"

    @property
    def rank(self) -> int:
        return _METAMODEL_RANK[self]

    def __lt__(self, other: object) -> bool:  # type: ignore[override]
        if not isinstance(other, MetamodelVersion):
            return NotImplemented
        return self.rank < other.rank

    def __le__(self, other: object) -> bool:  # type: ignore[override]
        if not isinstance(other, MetamodelVersion):
            return NotImplemented
        return self.rank <= other.rank

    def __gt__(self, other: object) -> bool:  # type: ignore[override]
        if not isinstance(other, MetamodelVersion):
            return NotImplemented
        return self.rank > other.rank

    def __ge__(self, other: object) -> bool:  # type: ignore[override]
        if not isinstance(other, MetamodelVersion):
            return NotImplemented
        return self.rank >= other.rank


_METAMODEL_RANK = {
    MetamodelVersion.V1_3: 0,
    MetamodelVersion.V1_3B: 1,
    MetamodelVersion.V1_3Z: 2,
}


class ElementKind(str, Enum):
    DISCIPLINE = "Discipline"
    WORK_PRODUCT = "WorkProduct"
    TOPIC = "Topic"
    SUB_TOPIC = "SubTopic"
    ACTIVITY = "Activity"
    TASK = "Task"
    ROLE = "Role"
    DECISION_GATE = "DecisionGate"
    PROCESS_MODULE = "ProcessModule"
    PROJECT_TYPE_VARIANT = "ProjectTypeVariant"
    CHAPTER = "Chapter"
    SECTION = "Section"
    GLOSSARY_ITEM = "GlossaryItem"
    ABBREVIATION = "Abbreviation"
    LITERATURE_REFERENCE = "LiteratureReference"
    METHOD_REFERENCE = "MethodReference"
    TOOL_REFERENCE = "ToolReference"
    MAPPING_ENTRY = "MappingEntry"
    APPENDIX_ENTRY = "AppendixEntry"


class ReferenceKind(str, Enum):
    RESPONSIBILITY = "Responsibility"
    SUPPORTING_ROLE = "SupportingRole"
    TOPIC_ASSIGNMENT = "TopicAssignment"
    CREATING_DEPENDENCY = "CreatingDependency"
    TAILORING_DEPENDENCY = "TailoringDependency"
    MODULE_CONTAINMENT = "ModuleContainment"
    CONFIGURATION_ENTRY = "ConfigurationEntry"
    LITERATURE_LINK = "LiteratureLink"
    METHOD_LINK = "MethodLink"
    TOOL_LINK = "ToolLink"
    MAPPING_LINK = "MappingLink"


#: Admissible (source kinds, target kinds) per reference kind. A reference
#: whose endpoints fall outside these sets is a consistency violation.
REFERENCE_CONSTRAINTS: Mapping[ReferenceKind, tuple[frozenset[ElementKind], frozenset[ElementKind]]] = {
    ReferenceKind.RESPONSIBILITY: (
        frozenset({ElementKind.WORK_PRODUCT}),
        frozenset({ElementKind.ROLE}),
    ),
    ReferenceKind.SUPPORTING_ROLE: (
        frozenset({ElementKind.WORK_PRODUCT}),
        frozenset({ElementKind.ROLE}),
    ),
    ReferenceKind.TOPIC_ASSIGNMENT: (
        frozenset({ElementKind.WORK_PRODUCT}),
        frozenset({ElementKind.TOPIC}),
    ),
    ReferenceKind.CREATING_DEPENDENCY: (
        frozenset({ElementKind.ACTIVITY}),
        frozenset({ElementKind.WORK_PRODUCT}),
    ),
    ReferenceKind.TAILORING_DEPENDENCY: (
        frozenset({ElementKind.PROCESS_MODULE}),
        frozenset({ElementKind.PROCESS_MODULE}),
    ),
    ReferenceKind.MODULE_CONTAINMENT: (
        frozenset({ElementKind.PROCESS_MODULE}),
        frozenset(
            {
                ElementKind.DISCIPLINE,
                ElementKind.WORK_PRODUCT,
                ElementKind.TOPIC,
                ElementKind.SUB_TOPIC,
                ElementKind.ACTIVITY,
                ElementKind.TASK,
                ElementKind.ROLE,
                ElementKind.DECISION_GATE,
            }
        ),
    ),
    ReferenceKind.CONFIGURATION_ENTRY: (
        frozenset({ElementKind.PROJECT_TYPE_VARIANT}),
        frozenset({ElementKind.PROCESS_MODULE}),
    ),
    ReferenceKind.LITERATURE_LINK: (
        frozenset(
            {
                ElementKind.CHAPTER,
                ElementKind.SECTION,
                ElementKind.TOPIC,
                ElementKind.WORK_PRODUCT,
            }
        ),
        frozenset({ElementKind.LITERATURE_REFERENCE}),
    ),
    ReferenceKind.METHOD_LINK: (
        frozenset({ElementKind.ACTIVITY, ElementKind.TASK}),
        frozenset({ElementKind.METHOD_REFERENCE}),
    ),
    ReferenceKind.TOOL_LINK: (
        frozenset({ElementKind.ACTIVITY, ElementKind.TASK}),
        frozenset({ElementKind.TOOL_REFERENCE}),
    ),
    ReferenceKind.MAPPING_LINK: (
        frozenset({ElementKind.MAPPING_ENTRY}),
        frozenset(
            {
                ElementKind.DISCIPLINE,
                ElementKind.WORK_PRODUCT,
                ElementKind.TOPIC,
                ElementKind.ACTIVITY,
                ElementKind.TASK,
                ElementKind.ROLE,
                ElementKind.DECISION_GATE,
                ElementKind.PROCESS_MODULE,
            }
        ),
    ),
}

#: Element kinds that configure which content a tailored process contains.
#: Excluding one of these while substituting a copy is the masking pattern.
CONFIGURATION_CONTAINER_KINDS = frozenset(
    {ElementKind.PROJECT_TYPE_VARIANT, ElementKind.PROCESS_MODULE}
)

#: Attribute key that carries an element's position among its siblings.
ORDERING_ATTRIBUTE = "orderingNumber"


@dataclass(frozen=True)
class TextBlock:
    """One named block of running text inside an element."""

    id: str
    text: str

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("text block id must be non-empty")


@dataclass(frozen=True)
class ProcessElement:
    """A named, typed asset of the process model.

    ``attributes`` is an ordered string map (insertion order is kept for
    iteration; equality ignores order). ``text_blocks`` is an ordered list
    and its order is meaningful.
    """

    id: str
    kind: ElementKind
    name: str
    description: str = ""
    attributes: Mapping[str, str] = field(default_factory=dict)
    text_blocks: tuple[TextBlock, ...] = ()

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("element id must be non-empty")
        if not self.name:
            raise ValueError(f"element {self.id!r}: name must be non-empty")
        object.__setattr__(self, "kind", ElementKind(self.kind))
        object.__setattr__(self, "attributes", dict(self.attributes))
        blocks = tuple(self.text_blocks)
        object.__setattr__(self, "text_blocks", blocks)
        seen = set()
        for block in blocks:
            if block.id in seen:
                raise ValueError(f"element {self.id!r}: duplicate text block id {block.id!r}")
            seen.add(block.id)

    def with_name(self, name: str) -> "ProcessElement":
        return _element_replace(self, name=name)

    def with_description(self, description: str) -> "ProcessElement":
        return _element_replace(self, description=description)

    def with_kind(self, kind: ElementKind) -> "ProcessElement":
        return _element_replace(self, kind=kind)

    def with_attribute(self, key: str, value: str) -> "ProcessElement":
        attrs = dict(self.attributes)
        attrs[key] = value
        return _element_replace(self, attributes=attrs)

    def without_attribute(self, key: str) -> "ProcessElement":
        attrs = {k: v for k, v in self.attributes.items() if k != key}
        return _element_replace(self, attributes=attrs)

    def find_block(self, block_id: str) -> TextBlock | None:
        for block in self.text_blocks:
            if block.id == block_id:
                return block
        return None

    def with_block_text(self, block_id: str, text: str) -> "ProcessElement":
        if self.find_block(block_id) is None:
            raise FieldNotFoundError(f"element {self.id!r} has no text block {block_id!r}")
        blocks = tuple(
            TextBlock(b.id, text) if b.id == block_id else b for b in self.text_blocks
        )
        return _element_replace(self, text_blocks=blocks)

    def with_text_blocks(self, blocks: Iterable[TextBlock]) -> "ProcessElement":
        return _element_replace(self, text_blocks=tuple(blocks))

    @property
    def ordering_key(self) -> tuple[int, Decimal | int, str]:
        """Sort key for display order: ordering number first, id breaks ties."""
        raw = self.attributes.get(ORDERING_ATTRIBUTE)
        if raw is not None:
            try:
                return (0, Decimal(raw), self.id)
            except InvalidOperation:
                pass
        return (1, 0, self.id)


def _element_replace(elem: ProcessElement, **updates) -> ProcessElement:
    data = {
        "id": elem.id,
        "kind": elem.kind,
        "name": elem.name,
        "description": elem.description,
        "attributes": elem.attributes,
        "text_blocks": elem.text_blocks,
    }
    data.update(updates)
    return ProcessElement(**data)


@dataclass(frozen=True)
class Reference:
    """A typed, directed link between two elements."""

    id: str
    kind: ReferenceKind
    source: str
    target: str
    attributes: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("reference id must be non-empty")
        if not self.source or not self.target:
            raise ValueError(f"reference {self.id!r}: source and target must be non-empty")
        object.__setattr__(self, "kind", ReferenceKind(self.kind))
        object.__setattr__(self, "attributes", dict(self.attributes))

    def with_endpoints(self, source: str | None = None, target: str | None = None) -> "Reference":
        return Reference(
            id=self.id,
            kind=self.kind,
            source=source if source is not None else self.source,
            target=target if target is not None else self.target,
            attributes=self.attributes,
        )

    def with_attribute(self, key: str, value: str) -> "Reference":
        attrs = dict(self.attributes)
        attrs[key] = value
        return Reference(self.id, self.kind, self.source, self.target, attrs)

    def without_attribute(self, key: str) -> "Reference":
        attrs = {k: v for k, v in self.attributes.items() if k != key}
        return Reference(self.id, self.kind, self.source, self.target, attrs)


@dataclass(frozen=True)
class ProcessModel:
    """An immutable process model: a metamodel version plus typed content."""

    metamodel: MetamodelVersion
    elements: Mapping[str, ProcessElement] = field(default_factory=dict)
    references: Mapping[str, Reference] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "metamodel", MetamodelVersion(self.metamodel))
        elements = dict(self.elements)
        references = dict(self.references)
        for key, elem in elements.items():
            if key != elem.id:
                raise ValueError(f"element map key {key!r} does not match element id {elem.id!r}")
        for key, ref in references.items():
            if key != ref.id:
                raise ValueError(f"reference map key {key!r} does not match reference id {ref.id!r}")
        overlap = elements.keys() & references.keys()
        if overlap:
            raise DuplicateIdError(
                f"ids used for both an element and a reference: {sorted(overlap)}"
            )
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "references", references)

    @classmethod
    def of(
        cls,
        metamodel: MetamodelVersion,
        elements: Iterable[ProcessElement] = (),
        references: Iterable[Reference] = (),
    ) -> "ProcessModel":
        """Build a model from element/reference sequences, rejecting duplicate ids."""
        elem_map: dict[str, ProcessElement] = {}
        ref_map: dict[str, Reference] = {}
        for elem in elements:
            if elem.id in elem_map:
                raise DuplicateIdError(f"duplicate element id {elem.id!r}")
            elem_map[elem.id] = elem
        for ref in references:
            if ref.id in ref_map or ref.id in elem_map:
                raise DuplicateIdError(f"duplicate id {ref.id!r}")
            ref_map[ref.id] = ref
        return cls(metamodel=metamodel, elements=elem_map, references=ref_map)

    # -- lookup -------------------------------------------------------------

    def element(self, element_id: str) -> ProcessElement:
        try:
            return self.elements[element_id]
        except KeyError:
            raise UnknownIdError(f"no element with id {element_id!r}") from None

    def reference(self, reference_id: str) -> Reference:
        try:
            return self.references[reference_id]
        except KeyError:
            raise UnknownIdError(f"no reference with id {reference_id!r}") from None

    def has_id(self, some_id: str) -> bool:
        return some_id in self.elements or some_id in self.references

    def elements_in_order(self) -> list[ProcessElement]:
        """Elements in display order (ordering number, then id)."""
        return sorted(self.elements.values(), key=lambda e: e.ordering_key)

    def resolve_reference(self, reference_id: str) -> tuple[ProcessElement, ProcessElement]:
        """Return the (source, target) elements of a reference.

        Raises :class:`UnknownIdError` for an unknown reference id and
        :class:`DanglingReferenceError` when an endpoint does not resolve.
        """
        ref = self.reference(reference_id)
        missing = [p for p in (ref.source, ref.target) if p not in self.elements]
        if missing:
            raise DanglingReferenceError(
                f"reference {reference_id!r} has dangling endpoint(s): {missing}"
            )
        return self.elements[ref.source], self.elements[ref.target]

    # -- functional updates --------------------------------------------------

    def with_metamodel(self, metamodel: MetamodelVersion) -> "ProcessModel":
        if metamodel == self.metamodel:
            return self
        return ProcessModel(metamodel, self.elements, self.references)

    def add_element(self, element: ProcessElement) -> "ProcessModel":
        if self.has_id(element.id):
            raise DuplicateIdError(f"id {element.id!r} already in use")
        elements = dict(self.elements)
        elements[element.id] = element
        return ProcessModel(self.metamodel, elements, self.references)

    def add_reference(self, reference: Reference) -> "ProcessModel":
        if self.has_id(reference.id):
            raise DuplicateIdError(f"id {reference.id!r} already in use")
        references = dict(self.references)
        references[reference.id] = reference
        return ProcessModel(self.metamodel, self.elements, references)

    def replace_element(self, element: ProcessElement) -> "ProcessModel":
        if element.id not in self.elements:
            raise UnknownIdError(f"no element with id {element.id!r}")
        elements = dict(self.elements)
        elements[element.id] = element
        return ProcessModel(self.metamodel, elements, self.references)

    def replace_reference(self, reference: Reference) -> "ProcessModel":
        if reference.id not in self.references:
            raise UnknownIdError(f"no reference with id {reference.id!r}")
        references = dict(self.references)
        references[reference.id] = reference
        return ProcessModel(self.metamodel, self.elements, references)

    def remove_element(self, element_id: str) -> tuple["ProcessModel", tuple[str, ...]]:
        """Remove an element and every reference incident to it.

        Returns the new model and the ids of the cascaded references, in
        ascending id order.
        """
        if element_id not in self.elements:
            raise UnknownIdError(f"no element with id {element_id!r}")
        cascaded = tuple(
            sorted(
                ref.id
                for ref in self.references.values()
                if ref.source == element_id or ref.target == element_id
            )
        )
        elements = {k: v for k, v in self.elements.items() if k != element_id}
        references = {k: v for k, v in self.references.items() if k not in set(cascaded)}
        return ProcessModel(self.metamodel, elements, references), cascaded

    def remove_reference(self, reference_id: str) -> "ProcessModel":
        if reference_id not in self.references:
            raise UnknownIdError(f"no reference with id {reference_id!r}")
        references = {k: v for k, v in self.references.items() if k != reference_id}
        return ProcessModel(self.metamodel, self.elements, references)

    # -- validation ----------------------------------------------------------

    def check_consistency(self) -> list[Issue]:
        """Report dangling endpoints and endpoint-kind violations.

        Duplicate ids cannot occur in a constructed model (construction
        rejects them), so no issues of that code originate here. One issue
        is produced per offending endpoint, in reference id order.
        """
        issues: list[Issue] = []
        for ref in sorted(self.references.values(), key=lambda r: r.id):
            allowed_sources, allowed_targets = REFERENCE_CONSTRAINTS[ref.kind]
            for side, endpoint, allowed in (
                ("source", ref.source, allowed_sources),
                ("target", ref.target, allowed_targets),
            ):
                elem = self.elements.get(endpoint)
                if elem is None:
                    issues.append(
                        Issue(
                            IssueCode.DANGLING_REFERENCE,
                            ref.id,
                            f"{side} {endpoint!r} does not resolve to an element",
                        )
                    )
                elif elem.kind not in allowed:
                    issues.append(
                        Issue(
                            IssueCode.KIND_CONSTRAINT_VIOLATION,
                            ref.id,
                            f"{ref.kind.value} {side} must be one of "
                            f"{sorted(k.value for k in allowed)}, got {elem.kind.value}",
                        )
                    )
        return issues


# -- change sets -------------------------------------------------------------

FIELD_KIND = "kind"
FIELD_NAME = "name"
FIELD_DESCRIPTION = "description"
FIELD_SOURCE = "source"
FIELD_TARGET = "target"
ATTRIBUTE_FIELD_PREFIX = "attribute:"
TEXT_BLOCK_FIELD_PREFIX = "textblock:"
TEXT_BLOCK_ORDER_FIELD = "textblock-order"


@dataclass(frozen=True)
class FieldChange:
    """A before/after pair for one logical field. ``None`` means absent."""

    field: str
    before: str | None
    after: str | None


@dataclass(frozen=True)
class ElementChange:
    element_id: str
    changes: tuple[FieldChange, ...]


@dataclass(frozen=True)
class ReferenceChange:
    reference_id: str
    changes: tuple[FieldChange, ...]


@dataclass(frozen=True)
class ChangeSet:
    """Difference between two models, applicable with :func:`apply_change_set`."""

    added_elements: tuple[ProcessElement, ...] = ()
    removed_elements: tuple[str, ...] = ()
    modified_elements: tuple[ElementChange, ...] = ()
    added_references: tuple[Reference, ...] = ()
    removed_references: tuple[str, ...] = ()
    modified_references: tuple[ReferenceChange, ...] = ()
    metamodel_change: tuple[MetamodelVersion, MetamodelVersion] | None = None

    def is_empty(self) -> bool:
        return (
            not self.added_elements
            and not self.removed_elements
            and not self.modified_elements
            and not self.added_references
            and not self.removed_references
            and not self.modified_references
            and self.metamodel_change is None
        )

    def change_count(self) -> int:
        return (
            len(self.added_elements)
            + len(self.removed_elements)
            + len(self.modified_elements)
            + len(self.added_references)
            + len(self.removed_references)
            + len(self.modified_references)
            + (1 if self.metamodel_change else 0)
        )


def _diff_attributes(before: Mapping[str, str], after: Mapping[str, str]) -> Iterator[FieldChange]:
    for key in sorted(before.keys() | after.keys()):
        old, new = before.get(key), after.get(key)
        if old != new:
            yield FieldChange(ATTRIBUTE_FIELD_PREFIX + key, old, new)


def _diff_element(a: ProcessElement, b: ProcessElement) -> ElementChange | None:
    changes: list[FieldChange] = []
    if a.kind != b.kind:
        changes.append(FieldChange(FIELD_KIND, a.kind.value, b.kind.value))
    if a.name != b.name:
        changes.append(FieldChange(FIELD_NAME, a.name, b.name))
    if a.description != b.description:
        changes.append(FieldChange(FIELD_DESCRIPTION, a.description, b.description))
    changes.extend(_diff_attributes(a.attributes, b.attributes))
    a_blocks = {blk.id: blk.text for blk in a.text_blocks}
    b_blocks = {blk.id: blk.text for blk in b.text_blocks}
    for block_id in sorted(a_blocks.keys() | b_blocks.keys()):
        old, new = a_blocks.get(block_id), b_blocks.get(block_id)
        if old != new:
            changes.append(FieldChange(TEXT_BLOCK_FIELD_PREFIX + block_id, old, new))
    a_order = [blk.id for blk in a.text_blocks]
    b_order = [blk.id for blk in b.text_blocks]
    if a_order != b_order:
        # emitted last so application can reorder after per-block edits
        changes.append(FieldChange(TEXT_BLOCK_ORDER_FIELD, " ".join(a_order), " ".join(b_order)))
    if not changes:
        return None
    return ElementChange(a.id, tuple(changes))


def _diff_reference(a: Reference, b: Reference) -> ReferenceChange | None:
    changes: list[FieldChange] = []
    if a.kind != b.kind:
        changes.append(FieldChange(FIELD_KIND, a.kind.value, b.kind.value))
    if a.source != b.source:
        changes.append(FieldChange(FIELD_SOURCE, a.source, b.source))
    if a.target != b.target:
        changes.append(FieldChange(FIELD_TARGET, a.target, b.target))
    changes.extend(_diff_attributes(a.attributes, b.attributes))
    if not changes:
        return None
    return ReferenceChange(a.id, tuple(changes))


def compare_models(a: ProcessModel, b: ProcessModel) -> ChangeSet:
    """Minimal field-level difference between two models.

    The result is empty exactly when ``a == b``, and applying it to ``a``
    yields ``b``. All parts are listed in ascending id order.
    """
    added_elements = tuple(b.elements[k] for k in sorted(b.elements.keys() - a.elements.keys()))
    removed_elements = tuple(sorted(a.elements.keys() - b.elements.keys()))
    modified_elements = []
    for element_id in sorted(a.elements.keys() & b.elements.keys()):
        diff = _diff_element(a.elements[element_id], b.elements[element_id])
        if diff is not None:
            modified_elements.append(diff)
    added_references = tuple(
        b.references[k] for k in sorted(b.references.keys() - a.references.keys())
    )
    removed_references = tuple(sorted(a.references.keys() - b.references.keys()))
    modified_references = []
    for reference_id in sorted(a.references.keys() & b.references.keys()):
        diff = _diff_reference(a.references[reference_id], b.references[reference_id])
        if diff is not None:
            modified_references.append(diff)
    metamodel_change = None
    if a.metamodel != b.metamodel:
        metamodel_change = (a.metamodel, b.metamodel)
    return ChangeSet(
        added_elements=added_elements,
        removed_elements=removed_elements,
        modified_elements=tuple(modified_elements),
        added_references=added_references,
        removed_references=removed_references,
        modified_references=tuple(modified_references),
        metamodel_change=metamodel_change,
    )


def _apply_element_change(elem: ProcessElement, change: ElementChange) -> ProcessElement:
    for fc in change.changes:
        if fc.field == FIELD_KIND:
            elem = elem.with_kind(ElementKind(fc.after))
        elif fc.field == FIELD_NAME:
            elem = elem.with_name(fc.after or "")
        elif fc.field == FIELD_DESCRIPTION:
            elem = elem.with_description(fc.after or "")
        elif fc.field.startswith(ATTRIBUTE_FIELD_PREFIX):
            key = fc.field[len(ATTRIBUTE_FIELD_PREFIX):]
            elem = elem.without_attribute(key) if fc.after is None else elem.with_attribute(key, fc.after)
        elif fc.field.startswith(TEXT_BLOCK_FIELD_PREFIX):
            block_id = fc.field[len(TEXT_BLOCK_FIELD_PREFIX):]
            if fc.after is None:
                elem = elem.with_text_blocks(b for b in elem.text_blocks if b.id != block_id)
            elif elem.find_block(block_id) is None:
                elem = elem.with_text_blocks((*elem.text_blocks, TextBlock(block_id, fc.after)))
            else:
                elem = elem.with_block_text(block_id, fc.after)
        elif fc.field == TEXT_BLOCK_ORDER_FIELD:
            wanted = (fc.after or "").split()
            by_id = {b.id: b for b in elem.text_blocks}
            if sorted(wanted) != sorted(by_id):
                raise FieldNotFoundError(
                    f"element {elem.id!r}: block order {wanted} does not match blocks {sorted(by_id)}"
                )
            elem = elem.with_text_blocks(by_id[block_id] for block_id in wanted)
        else:
            raise FieldNotFoundError(f"element {elem.id!r}: unknown field {fc.field!r}")
    return elem


def _apply_reference_change(ref: Reference, change: ReferenceChange) -> Reference:
    for fc in change.changes:
        if fc.field == FIELD_KIND:
            ref = Reference(ref.id, ReferenceKind(fc.after), ref.source, ref.target, ref.attributes)
        elif fc.field == FIELD_SOURCE:
            ref = ref.with_endpoints(source=fc.after)
        elif fc.field == FIELD_TARGET:
            ref = ref.with_endpoints(target=fc.after)
        elif fc.field.startswith(ATTRIBUTE_FIELD_PREFIX):
            key = fc.field[len(ATTRIBUTE_FIELD_PREFIX):]
            ref = ref.without_attribute(key) if fc.after is None else ref.with_attribute(key, fc.after)
        else:
            raise FieldNotFoundError(f"reference {ref.id!r}: unknown field {fc.field!r}")
    return ref


def apply_change_set(model: ProcessModel, change_set: ChangeSet) -> ProcessModel:
    """Apply a change set produced by :func:`compare_models`.

    Raises :class:`UnknownIdError` or :class:`DuplicateIdError` when the
    change set does not fit the model it is applied to. Removals listed in
    the change set are literal; no cascading happens here.
    """
    metamodel = model.metamodel
    if change_set.metamodel_change is not None:
        metamodel = change_set.metamodel_change[1]
    elements = dict(model.elements)
    references = dict(model.references)
    for reference_id in change_set.removed_references:
        if reference_id not in references:
            raise UnknownIdError(f"cannot remove unknown reference {reference_id!r}")
        del references[reference_id]
    for element_id in change_set.removed_elements:
        if element_id not in elements:
            raise UnknownIdError(f"cannot remove unknown element {element_id!r}")
        del elements[element_id]
    for elem in change_set.added_elements:
        if elem.id in elements or elem.id in references:
            raise DuplicateIdError(f"cannot add element {elem.id!r}: id already in use")
        elements[elem.id] = elem
    for ref in change_set.added_references:
        if ref.id in references or ref.id in elements:
            raise DuplicateIdError(f"cannot add reference {ref.id!r}: id already in use")
        references[ref.id] = ref
    for element_change in change_set.modified_elements:
        if element_change.element_id not in elements:
            raise UnknownIdError(f"cannot modify unknown element {element_change.element_id!r}")
        elements[element_change.element_id] = _apply_element_change(
            elements[element_change.element_id], element_change
        )
    for reference_change in change_set.modified_references:
        if reference_change.reference_id not in references:
            raise UnknownIdError(
                f"cannot modify unknown reference {reference_change.reference_id!r}"
            )
        references[reference_change.reference_id] = _apply_reference_change(
            references[reference_change.reference_id], reference_change
        )
    return ProcessModel(metamodel, elements, references)
