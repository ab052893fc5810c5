"""Atomic model transformation steps.

These are the building blocks operation types are assembled from. Each step
names a target (element or reference id) and carries string arguments. The
same checks back both entry points: :func:`validate_step` collects findings,
:func:`apply_atomic` raises on the first one and otherwise returns the
transformed model. A step never touches anything beyond its target, the
endpoints it rewires, and references cascaded by an element removal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from enum import Enum
from typing import Mapping

from .errors import (
    DuplicateIdError,
    FieldNotFoundError,
    IllegalTargetError,
    Issue,
    IssueCode,
    MissingArgumentError,
    UnknownIdError,
)
from .model import (
    ORDERING_ATTRIBUTE,
    ElementKind,
    ProcessElement,
    ProcessModel,
    Reference,
    ReferenceKind,
    REFERENCE_CONSTRAINTS,
)


class AtomicKind(str, Enum):
    RENAME_ELEMENT = "RenameElement"
    REPLACE_TEXT = "ReplaceText"
    ADD_TEXT = "AddText"
    SWAP_REFERENCES = "SwapReferences"
    REMOVE_ELEMENT = "RemoveElement"
    REMOVE_REFERENCE = "RemoveReference"
    ADD_REFERENCE = "AddReference"
    CHANGE_ATTRIBUTE = "ChangeAttribute"
    MOVE_ELEMENT = "MoveElement"


# Text-bearing field selectors used by ReplaceText and AddText.
FIELD_SELECTOR_DESCRIPTION = "description"
FIELD_SELECTOR_TEXT_BLOCK = "textBlock"
FIELD_SELECTOR_ATTRIBUTE = "attribute"

POSITION_PREFIX = "prefix"
POSITION_POSTFIX = "postfix"


@dataclass(frozen=True)
class AtomicStep:
    """One atomic transformation: a kind, a target id, and string args.

    For ``AddReference`` the target is the element the new reference is
    anchored to; the reference's own data lives in the args.
    """

    kind: AtomicKind
    target: str
    args: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", AtomicKind(self.kind))
        object.__setattr__(self, "args", dict(self.args))

    def arg(self, name: str) -> str:
        try:
            return self.args[name]
        except KeyError:
            raise MissingArgumentError(
                f"{self.kind.value} step on {self.target!r}: missing argument {name!r}"
            ) from None


def field_key(step_args: Mapping[str, str]) -> str:
    """Canonical identity of the text field a ReplaceText/AddText step hits.

    Two steps with the same target and the same field key write the same
    storage location; that identity drives conflict detection.
    """
    selector = step_args.get("field", "")
    if selector == FIELD_SELECTOR_TEXT_BLOCK:
        return f"{selector}:{step_args.get('blockId', '')}"
    if selector == FIELD_SELECTOR_ATTRIBUTE:
        return f"{selector}:{step_args.get('key', '')}"
    return selector


def _issue(code: IssueCode, step: AtomicStep, message: str) -> Issue:
    return Issue(code, step.target, f"{step.kind.value}: {message}")


def _missing_args(step: AtomicStep, *names: str) -> list[Issue]:
    issues = []
    for name in names:
        if not step.args.get(name):
            issues.append(_issue(IssueCode.MISSING_ARGUMENT, step, f"argument {name!r} is required"))
    return issues


def _field_selector_issues(step: AtomicStep) -> list[Issue]:
    selector = step.args.get("field")
    if not selector:
        return _missing_args(step, "field")
    if selector not in (FIELD_SELECTOR_DESCRIPTION, FIELD_SELECTOR_TEXT_BLOCK, FIELD_SELECTOR_ATTRIBUTE):
        return [_issue(IssueCode.ILLEGAL_TARGET, step, f"unknown field selector {selector!r}")]
    if selector == FIELD_SELECTOR_TEXT_BLOCK:
        return _missing_args(step, "blockId")
    if selector == FIELD_SELECTOR_ATTRIBUTE:
        return _missing_args(step, "key")
    return []


def _text_field_issues(model: ProcessModel, step: AtomicStep) -> list[Issue]:
    """Shared checks for ReplaceText and AddText; 'text' may be empty but must be present."""
    issues = _field_selector_issues(step)
    if "text" not in step.args:
        issues.append(_issue(IssueCode.MISSING_ARGUMENT, step, "argument 'text' is required"))
    if issues:
        return issues
    selector = step.args["field"]
    if step.target in model.elements:
        elem = model.elements[step.target]
        if selector == FIELD_SELECTOR_TEXT_BLOCK and elem.find_block(step.args["blockId"]) is None:
            issues.append(
                _issue(IssueCode.FIELD_NOT_FOUND, step, f"no text block {step.args['blockId']!r}")
            )
        elif selector == FIELD_SELECTOR_ATTRIBUTE and step.args["key"] not in elem.attributes:
            issues.append(
                _issue(IssueCode.FIELD_NOT_FOUND, step, f"no attribute {step.args['key']!r}")
            )
    elif step.target in model.references:
        if selector != FIELD_SELECTOR_ATTRIBUTE:
            issues.append(
                _issue(
                    IssueCode.ILLEGAL_TARGET,
                    step,
                    f"references only carry attribute text, not {selector!r}",
                )
            )
        elif step.args["key"] not in model.references[step.target].attributes:
            issues.append(
                _issue(IssueCode.FIELD_NOT_FOUND, step, f"no attribute {step.args['key']!r}")
            )
    else:
        issues.append(_issue(IssueCode.UNKNOWN_ID, step, "target does not resolve"))
    return issues


def _element_target_issues(model: ProcessModel, step: AtomicStep) -> list[Issue]:
    if step.target in model.elements:
        return []
    if step.target in model.references:
        return [_issue(IssueCode.ILLEGAL_TARGET, step, "target must be an element, not a reference")]
    return [_issue(IssueCode.UNKNOWN_ID, step, "target does not resolve")]


def _reference_target_issues(model: ProcessModel, step: AtomicStep) -> list[Issue]:
    if step.target in model.references:
        return []
    if step.target in model.elements:
        return [_issue(IssueCode.ILLEGAL_TARGET, step, "target must be a reference, not an element")]
    return [_issue(IssueCode.UNKNOWN_ID, step, "target does not resolve")]


def _endpoint_kind_issue(
    step: AtomicStep, kind: ReferenceKind, side: str, elem: ProcessElement
) -> Issue | None:
    allowed_sources, allowed_targets = REFERENCE_CONSTRAINTS[kind]
    allowed = allowed_sources if side == "source" else allowed_targets
    if elem.kind in allowed:
        return None
    return _issue(
        IssueCode.ILLEGAL_TARGET,
        step,
        f"{kind.value} {side} must be one of {sorted(k.value for k in allowed)}, "
        f"got {elem.kind.value}",
    )


def validate_step(model: ProcessModel, step: AtomicStep) -> list[Issue]:
    """Everything that would make :func:`apply_atomic` fail on this model."""
    kind = step.kind
    if kind is AtomicKind.RENAME_ELEMENT:
        return _missing_args(step, "newName") or _element_target_issues(model, step)
    if kind in (AtomicKind.REPLACE_TEXT, AtomicKind.ADD_TEXT):
        issues = _text_field_issues(model, step)
        if kind is AtomicKind.ADD_TEXT:
            position = step.args.get("position")
            if not position:
                issues.extend(_missing_args(step, "position"))
            elif position not in (POSITION_PREFIX, POSITION_POSTFIX):
                issues.append(
                    _issue(IssueCode.ILLEGAL_TARGET, step, f"position must be prefix or postfix, got {position!r}")
                )
        return issues
    if kind is AtomicKind.SWAP_REFERENCES:
        issues = _reference_target_issues(model, step)
        new_source = step.args.get("newSource")
        new_target = step.args.get("newTarget")
        if not new_source and not new_target:
            issues.append(
                _issue(IssueCode.MISSING_ARGUMENT, step, "needs newSource and/or newTarget")
            )
        if issues:
            return issues
        ref = model.references[step.target]
        for side, endpoint in (("source", new_source), ("target", new_target)):
            if endpoint is None:
                continue
            elem = model.elements.get(endpoint)
            if elem is None:
                issues.append(
                    _issue(IssueCode.UNKNOWN_ID, step, f"new {side} {endpoint!r} does not resolve")
                )
            else:
                kind_issue = _endpoint_kind_issue(step, ref.kind, side, elem)
                if kind_issue:
                    issues.append(kind_issue)
        return issues
    if kind is AtomicKind.REMOVE_ELEMENT:
        return _element_target_issues(model, step)
    if kind is AtomicKind.REMOVE_REFERENCE:
        return _reference_target_issues(model, step)
    if kind is AtomicKind.ADD_REFERENCE:
        issues = _missing_args(step, "refId", "refKind", "source", "target")
        if not model.has_id(step.target):
            issues.append(_issue(IssueCode.UNKNOWN_ID, step, "anchor target does not resolve"))
        if issues:
            return issues
        try:
            ref_kind = ReferenceKind(step.args["refKind"])
        except ValueError:
            return [_issue(IssueCode.ILLEGAL_TARGET, step, f"unknown reference kind {step.args['refKind']!r}")]
        if model.has_id(step.args["refId"]):
            issues.append(
                Issue(IssueCode.DUPLICATE_ID, step.args["refId"], "AddReference: id already in use")
            )
        for side in ("source", "target"):
            endpoint = step.args[side]
            elem = model.elements.get(endpoint)
            if elem is None:
                issues.append(
                    _issue(IssueCode.UNKNOWN_ID, step, f"{side} {endpoint!r} does not resolve")
                )
            else:
                kind_issue = _endpoint_kind_issue(step, ref_kind, side, elem)
                if kind_issue:
                    issues.append(kind_issue)
        return issues
    if kind is AtomicKind.CHANGE_ATTRIBUTE:
        issues = _missing_args(step, "key")
        if "value" not in step.args:
            issues.append(_issue(IssueCode.MISSING_ARGUMENT, step, "argument 'value' is required"))
        if not model.has_id(step.target):
            issues.append(_issue(IssueCode.UNKNOWN_ID, step, "target does not resolve"))
        return issues
    if kind is AtomicKind.MOVE_ELEMENT:
        issues = _missing_args(step, "newOrderingNumber")
        if not issues:
            try:
                Decimal(step.args["newOrderingNumber"])
            except InvalidOperation:
                issues.append(
                    _issue(
                        IssueCode.ILLEGAL_TARGET,
                        step,
                        f"newOrderingNumber must be a decimal string, got {step.args['newOrderingNumber']!r}",
                    )
                )
        return issues + _element_target_issues(model, step)
    raise AssertionError(f"unhandled atomic kind {kind!r}")


_ISSUE_EXCEPTIONS = {
    IssueCode.UNKNOWN_ID: UnknownIdError,
    IssueCode.FIELD_NOT_FOUND: FieldNotFoundError,
    IssueCode.MISSING_ARGUMENT: MissingArgumentError,
    IssueCode.ILLEGAL_TARGET: IllegalTargetError,
    IssueCode.DUPLICATE_ID: DuplicateIdError,
}


def _raise_first(issues: list[Issue]) -> None:
    if issues:
        first = issues[0]
        raise _ISSUE_EXCEPTIONS.get(first.code, IllegalTargetError)(str(first))


def _spliced(current: str, addition: str, position: str) -> str:
    if position == POSITION_PREFIX:
        return addition + current
    return current + addition


def apply_atomic(model: ProcessModel, step: AtomicStep) -> ProcessModel:
    """Apply one step, returning the transformed model.

    The input model is never modified. Raises the exception matching the
    first finding :func:`validate_step` reports.
    """
    _raise_first(validate_step(model, step))
    kind = step.kind
    if kind is AtomicKind.RENAME_ELEMENT:
        return model.replace_element(model.element(step.target).with_name(step.arg("newName")))
    if kind in (AtomicKind.REPLACE_TEXT, AtomicKind.ADD_TEXT):
        selector = step.arg("field")
        text = step.arg("text")
        if step.target in model.references:
            ref = model.references[step.target]
            key = step.arg("key")
            if kind is AtomicKind.ADD_TEXT:
                text = _spliced(ref.attributes[key], text, step.arg("position"))
            return model.replace_reference(ref.with_attribute(key, text))
        elem = model.element(step.target)
        if selector == FIELD_SELECTOR_DESCRIPTION:
            if kind is AtomicKind.ADD_TEXT:
                text = _spliced(elem.description, text, step.arg("position"))
            return model.replace_element(elem.with_description(text))
        if selector == FIELD_SELECTOR_TEXT_BLOCK:
            block_id = step.arg("blockId")
            if kind is AtomicKind.ADD_TEXT:
                block = elem.find_block(block_id)
                assert block is not None  # validated above
                text = _spliced(block.text, text, step.arg("position"))
            return model.replace_element(elem.with_block_text(block_id, text))
        key = step.arg("key")
        if kind is AtomicKind.ADD_TEXT:
            text = _spliced(elem.attributes[key], text, step.arg("position"))
        return model.replace_element(elem.with_attribute(key, text))
    if kind is AtomicKind.SWAP_REFERENCES:
        ref = model.reference(step.target)
        return model.replace_reference(
            ref.with_endpoints(
                source=step.args.get("newSource"), target=step.args.get("newTarget")
            )
        )
    if kind is AtomicKind.REMOVE_ELEMENT:
        new_model, _ = model.remove_element(step.target)
        return new_model
    if kind is AtomicKind.REMOVE_REFERENCE:
        return model.remove_reference(step.target)
    if kind is AtomicKind.ADD_REFERENCE:
        return model.add_reference(
            Reference(
                id=step.arg("refId"),
                kind=ReferenceKind(step.arg("refKind")),
                source=step.arg("source"),
                target=step.arg("target"),
            )
        )
    if kind is AtomicKind.CHANGE_ATTRIBUTE:
        key, value = step.arg("key"), step.arg("value")
        if step.target in model.references:
            return model.replace_reference(model.references[step.target].with_attribute(key, value))
        return model.replace_element(model.element(step.target).with_attribute(key, value))
    if kind is AtomicKind.MOVE_ELEMENT:
        elem = model.element(step.target)
        return model.replace_element(
            elem.with_attribute(ORDERING_ATTRIBUTE, step.arg("newOrderingNumber"))
        )
    raise AssertionError(f"unhandled atomic kind {kind!r}")
