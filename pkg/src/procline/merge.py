"""Variant derivation: extension models, chain resolution, and merging.

A merge runs in three phases: declared assets are integrated first, then
exclusions are applied (cascading over incident references), then operation
exemplars execute in document order. A merge either returns a consistent
model or raises; the inputs are never modified. Every effect lands in an
auditable :class:`MergeTrace` whose entries carry replayable change sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping

from .atomic import AtomicKind, field_key
from .catalog import (
    OperationCatalog,
    OperationExemplar,
    expand_exemplar,
    validate_exemplar,
)
from .errors import (
    ConflictError,
    CycleError,
    Issue,
    IssueCode,
    IllegalTargetError,
    MissingParentError,
    UnknownIdError,
    UnknownVariantError,
    ValidationFailedError,
)
from .model import (
    CONFIGURATION_CONTAINER_KINDS,
    ChangeSet,
    MetamodelVersion,
    ProcessElement,
    ProcessModel,
    Reference,
    REFERENCE_CONSTRAINTS,
    apply_change_set,
    compare_models,
)

_EMPTY_CHANGE_SET = ChangeSet()


@dataclass(frozen=True)
class ExtensionModel:
    """Everything one variant declares on top of its parent."""

    variant_id: str
    parent_id: str
    metamodel: MetamodelVersion
    new_elements: tuple[ProcessElement, ...] = ()
    new_references: tuple[Reference, ...] = ()
    exclusions: tuple[str, ...] = ()
    exemplars: tuple[OperationExemplar, ...] = ()

    def __post_init__(self) -> None:
        if not self.variant_id:
            raise ValueError("extension model needs a variant id")
        if not self.parent_id:
            raise ValueError(f"extension {self.variant_id!r} needs a parent id")
        object.__setattr__(self, "metamodel", MetamodelVersion(self.metamodel))
        object.__setattr__(self, "new_elements", tuple(self.new_elements))
        object.__setattr__(self, "new_references", tuple(self.new_references))
        object.__setattr__(self, "exclusions", tuple(self.exclusions))
        object.__setattr__(self, "exemplars", tuple(self.exemplars))

    def exemplar_count(self) -> int:
        return len(self.exemplars)


@dataclass(frozen=True)
class VariantSet:
    """A reference model plus the extension models derived from it."""

    root: ProcessModel
    extensions: Mapping[str, ExtensionModel] = field(default_factory=dict)
    root_id: str = "root"

    def __post_init__(self) -> None:
        extensions = dict(self.extensions)
        for key, ext in extensions.items():
            if key != ext.variant_id:
                raise ValueError(f"extension map key {key!r} does not match variant id {ext.variant_id!r}")
            if key == self.root_id:
                raise ValueError(f"variant id {key!r} collides with the root id")
        object.__setattr__(self, "extensions", extensions)

    @classmethod
    def of(
        cls,
        root: ProcessModel,
        extensions: Iterable[ExtensionModel],
        root_id: str = "root",
    ) -> "VariantSet":
        by_id: dict[str, ExtensionModel] = {}
        for ext in extensions:
            if ext.variant_id in by_id:
                raise ValueError(f"duplicate variant id {ext.variant_id!r}")
            by_id[ext.variant_id] = ext
        return cls(root=root, extensions=by_id, root_id=root_id)

    def variant_ids(self) -> list[str]:
        return sorted(self.extensions)


class TraceEntryKind(str, Enum):
    ASSET_ADDED = "AssetAdded"
    EXCLUSION_APPLIED = "ExclusionApplied"
    OPERATION_EXECUTED = "OperationExecuted"
    UNTYPED_CHANGE = "UntypedChange"


@dataclass(frozen=True)
class TraceEntry:
    """One audited merge effect.

    ``subject`` holds the added asset id, the excluded id, the operation
    type name, or a short tag for untyped changes. ``change_set`` is the
    model delta this entry caused; replaying all entry deltas over the root
    reconstructs the merged model.
    """

    kind: TraceEntryKind
    variant_id: str
    subject: str
    target: str = ""
    detail: str = ""
    cascade_count: int = 0
    step_count: int = 0
    change_set: ChangeSet = _EMPTY_CHANGE_SET


@dataclass(frozen=True)
class MergeTrace:
    """Ordered audit log of one merge (or one merged chain)."""

    entries: tuple[TraceEntry, ...] = ()
    final_metamodel: MetamodelVersion | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(self.entries))

    def __len__(self) -> int:
        return len(self.entries)

    def by_kind(self, kind: TraceEntryKind) -> list[TraceEntry]:
        return [e for e in self.entries if e.kind is kind]

    def untyped_changes(self) -> list[TraceEntry]:
        return self.by_kind(TraceEntryKind.UNTYPED_CHANGE)

    def replay(self, root: ProcessModel) -> ProcessModel:
        """Reconstruct the merged model from the recorded change sets."""
        model = root
        for entry in self.entries:
            model = apply_change_set(model, entry.change_set)
        if self.final_metamodel is not None:
            model = model.with_metamodel(self.final_metamodel)
        return model


def resolve_chain(variant_set: VariantSet, leaf_id: str) -> list[ExtensionModel]:
    """Extensions from the root's direct child down to the leaf, in merge order."""
    if leaf_id not in variant_set.extensions:
        raise UnknownVariantError(f"no variant named {leaf_id!r}")
    chain: list[ExtensionModel] = []
    seen: set[str] = set()
    current = leaf_id
    while True:
        if current in seen:
            raise CycleError(f"parent chain of {leaf_id!r} cycles at {current!r}")
        seen.add(current)
        ext = variant_set.extensions[current]
        chain.append(ext)
        parent = ext.parent_id
        if parent == variant_set.root_id:
            break
        if parent not in variant_set.extensions:
            raise MissingParentError(
                f"variant {current!r} declares parent {parent!r}, which is neither "
                f"the root ({variant_set.root_id!r}) nor a known variant"
            )
        current = parent
    chain.reverse()
    return chain


def _tagged(issues: Iterable[Issue], variant_id: str) -> list[Issue]:
    return [
        Issue(i.code, i.subject, i.message, variant_id) if not i.variant_id else i
        for i in issues
    ]


def _new_reference_issues(model: ProcessModel, ref: Reference) -> list[Issue]:
    issues: list[Issue] = []
    allowed_sources, allowed_targets = REFERENCE_CONSTRAINTS[ref.kind]
    for side, endpoint, allowed in (
        ("source", ref.source, allowed_sources),
        ("target", ref.target, allowed_targets),
    ):
        elem = model.elements.get(endpoint)
        if elem is None:
            issues.append(
                Issue(
                    IssueCode.DANGLING_REFERENCE,
                    ref.id,
                    f"new reference {side} {endpoint!r} does not resolve",
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


def merge_once(
    base: ProcessModel,
    extension: ExtensionModel,
    catalog: OperationCatalog,
    *,
    last_wins: bool = False,
) -> tuple[ProcessModel, MergeTrace]:
    """Merge one extension over its base model.

    All-or-nothing: either a consistent merged model and its trace are
    returned, or :class:`ValidationFailedError` (carrying every collected
    issue) or :class:`ConflictError` is raised and the base is untouched.

    Two exemplars of the same extension replacing the same text field are a
    conflict. ``last_wins=True`` downgrades that to an ``UntypedChange``
    trace entry and lets the later exemplar win. A conflict is raised as
    soon as it is seen, even when other validation issues are pending.
    """
    variant = extension.variant_id
    issues: list[Issue] = []
    entries: list[TraceEntry] = []
    previous = base
    working = base
    if extension.metamodel > base.metamodel:
        working = base.with_metamodel(extension.metamodel)

    # phase 1: integrate declared assets
    for elem in extension.new_elements:
        if working.has_id(elem.id):
            issues.append(
                Issue(IssueCode.DUPLICATE_ID, elem.id, "new element id already in use", variant)
            )
            continue
        working = working.add_element(elem)
        entries.append(
            TraceEntry(
                TraceEntryKind.ASSET_ADDED,
                variant,
                subject=elem.id,
                change_set=compare_models(previous, working),
            )
        )
        previous = working
    for ref in extension.new_references:
        if working.has_id(ref.id):
            issues.append(
                Issue(IssueCode.DUPLICATE_ID, ref.id, "new reference id already in use", variant)
            )
            continue
        ref_issues = _new_reference_issues(working, ref)
        if ref_issues:
            issues.extend(_tagged(ref_issues, variant))
            continue
        working = working.add_reference(ref)
        entries.append(
            TraceEntry(
                TraceEntryKind.ASSET_ADDED,
                variant,
                subject=ref.id,
                change_set=compare_models(previous, working),
            )
        )
        previous = working

    # phase 2: exclusions, cascading over incident references
    added_kinds = {elem.kind for elem in extension.new_elements}
    for excluded_id in extension.exclusions:
        if excluded_id in working.elements:
            kind = working.elements[excluded_id].kind
            working, cascaded = working.remove_element(excluded_id)
            entries.append(
                TraceEntry(
                    TraceEntryKind.EXCLUSION_APPLIED,
                    variant,
                    subject=excluded_id,
                    cascade_count=len(cascaded),
                    change_set=compare_models(previous, working),
                )
            )
            previous = working
            if kind in CONFIGURATION_CONTAINER_KINDS and kind in added_kinds:
                entries.append(
                    TraceEntry(
                        TraceEntryKind.UNTYPED_CHANGE,
                        variant,
                        subject=excluded_id,
                        detail=(
                            f"masking substitution: {kind.value} {excluded_id!r} excluded "
                            f"and replaced by newly added {kind.value} content"
                        ),
                    )
                )
        elif excluded_id in working.references:
            working = working.remove_reference(excluded_id)
            entries.append(
                TraceEntry(
                    TraceEntryKind.EXCLUSION_APPLIED,
                    variant,
                    subject=excluded_id,
                    cascade_count=0,
                    change_set=compare_models(previous, working),
                )
            )
            previous = working
        else:
            issues.append(
                Issue(IssueCode.UNKNOWN_ID, excluded_id, "exclusion does not resolve", variant)
            )

    # phase 3: exemplars in document order
    replaced_fields: dict[tuple[str, str], str] = {}
    for exemplar in extension.exemplars:
        exemplar_issues = validate_exemplar(catalog, working, exemplar)
        if exemplar_issues:
            issues.extend(_tagged(exemplar_issues, variant))
            continue
        steps = expand_exemplar(catalog, exemplar)
        for step in steps:
            if step.kind is not AtomicKind.REPLACE_TEXT:
                continue
            location = (step.target, field_key(step.args))
            earlier = replaced_fields.get(location)
            if earlier is None:
                continue
            if not last_wins:
                raise ConflictError(
                    f"variant {variant!r}: {exemplar.type_name} and {earlier} both replace "
                    f"{location[1]!r} of {location[0]!r}",
                    element_id=location[0],
                    field=location[1],
                )
            entries.append(
                TraceEntry(
                    TraceEntryKind.UNTYPED_CHANGE,
                    variant,
                    subject=exemplar.type_name,
                    target=location[0],
                    detail=(
                        f"conflict override (last wins): {exemplar.type_name} replaces "
                        f"{location[1]!r} of {location[0]!r} already written by {earlier}"
                    ),
                )
            )
        for step in steps:
            if step.kind is AtomicKind.REPLACE_TEXT:
                replaced_fields[(step.target, field_key(step.args))] = exemplar.type_name
            working = _apply_validated_step(working, step)
        entries.append(
            TraceEntry(
                TraceEntryKind.OPERATION_EXECUTED,
                variant,
                subject=exemplar.type_name,
                target=exemplar.target,
                step_count=len(steps),
                change_set=compare_models(previous, working),
            )
        )
        previous = working

    if issues:
        raise ValidationFailedError(issues)
    consistency = working.check_consistency()
    if consistency:
        raise ValidationFailedError(_tagged(consistency, variant))
    return working, MergeTrace(tuple(entries), final_metamodel=working.metamodel)


def _apply_validated_step(model: ProcessModel, step) -> ProcessModel:
    # validate_exemplar simulated every step, so this must not fail
    from .atomic import apply_atomic

    return apply_atomic(model, step)


def merge_chain(
    variant_set: VariantSet,
    leaf_id: str,
    catalog: OperationCatalog,
    *,
    last_wins: bool = False,
) -> tuple[ProcessModel, MergeTrace]:
    """Merge the whole parent chain of ``leaf_id`` over the root model."""
    model = variant_set.root
    entries: list[TraceEntry] = []
    for extension in resolve_chain(variant_set, leaf_id):
        model, trace = merge_once(model, extension, catalog, last_wins=last_wins)
        entries.extend(trace.entries)
    return model, MergeTrace(tuple(entries), final_metamodel=model.metamodel)


def apply_masking(
    base: ProcessModel,
    exclusions: Iterable[str],
    substitutes: Iterable[ProcessElement] = (),
    substitute_references: Iterable[Reference] = (),
    *,
    variant_id: str = "masking",
) -> tuple[ProcessModel, MergeTrace]:
    """Substitute configuration containers: exclude, then stand in copies.

    Every exclusion must name a configuration container (a project type
    variant or a process module); anything else raises
    :class:`IllegalTargetError`. Each substitution is flagged with an
    ``UntypedChange`` trace entry because no typed operation describes it.
    """
    exclusions = list(exclusions)
    for excluded_id in exclusions:
        elem = base.elements.get(excluded_id)
        if elem is None:
            if excluded_id in base.references:
                raise IllegalTargetError(
                    f"masking exclusion {excluded_id!r} is a reference, not a configuration container"
                )
            raise UnknownIdError(f"masking exclusion {excluded_id!r} does not resolve")
        if elem.kind not in CONFIGURATION_CONTAINER_KINDS:
            raise IllegalTargetError(
                f"masking exclusion {excluded_id!r} is a {elem.kind.value}, not a configuration container"
            )
    entries: list[TraceEntry] = []
    previous = base
    working = base
    for elem in substitutes:
        working = working.add_element(elem)
        entries.append(
            TraceEntry(
                TraceEntryKind.ASSET_ADDED,
                variant_id,
                subject=elem.id,
                change_set=compare_models(previous, working),
            )
        )
        previous = working
    for ref in substitute_references:
        ref_issues = _new_reference_issues(working, ref)
        if ref_issues:
            raise ValidationFailedError(_tagged(ref_issues, variant_id))
        working = working.add_reference(ref)
        entries.append(
            TraceEntry(
                TraceEntryKind.ASSET_ADDED,
                variant_id,
                subject=ref.id,
                change_set=compare_models(previous, working),
            )
        )
        previous = working
    for excluded_id in exclusions:
        kind = working.elements[excluded_id].kind
        working, cascaded = working.remove_element(excluded_id)
        entries.append(
            TraceEntry(
                TraceEntryKind.EXCLUSION_APPLIED,
                variant_id,
                subject=excluded_id,
                cascade_count=len(cascaded),
                change_set=compare_models(previous, working),
            )
        )
        previous = working
        entries.append(
            TraceEntry(
                TraceEntryKind.UNTYPED_CHANGE,
                variant_id,
                subject=excluded_id,
                detail=(
                    f"masking substitution: {kind.value} {excluded_id!r} excluded "
                    f"in favor of substitute content"
                ),
            )
        )
    consistency = working.check_consistency()
    if consistency:
        raise ValidationFailedError(_tagged(consistency, variant_id))
    return working, MergeTrace(tuple(entries), final_metamodel=working.metamodel)
