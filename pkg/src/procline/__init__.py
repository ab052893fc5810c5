"""Process line engine: derive process variants from typed extension models.

A reference process model plus a family of extension models yields merged,
consistency-checked variants. Extensions declare new assets, exclusions,
and exemplars of typed variability operations; every merge effect is logged
in a replayable trace, and the catalog/usage statistics answer which
operation types exist and how often they are used.
"""

from .analytics import (
    UnusedReport,
    UnusedSlice,
    UsageReport,
    top_n,
    unused_report,
    usage_report,
)
from .atomic import AtomicKind, AtomicStep, apply_atomic, validate_step
from .catalog import (
    OperationCatalog,
    OperationExemplar,
    OperationTypeDef,
    StepTemplate,
    builtin_catalog,
    expand_exemplar,
    validate_exemplar,
)
from .errors import (
    ConflictError,
    CycleError,
    DanglingReferenceError,
    DuplicateIdError,
    DuplicateTypeNameError,
    FieldNotFoundError,
    IllegalTargetError,
    Issue,
    IssueCode,
    MergeError,
    MissingArgumentError,
    MissingParentDeclarationError,
    MissingParentError,
    ParseError,
    ProclineError,
    SchemaError,
    UnknownIdError,
    UnknownOperationTypeError,
    UnknownVariantError,
    ValidationFailedError,
)
from .merge import (
    ExtensionModel,
    MergeTrace,
    TraceEntry,
    TraceEntryKind,
    VariantSet,
    apply_masking,
    merge_chain,
    merge_once,
    resolve_chain,
)
from .model import (
    ChangeSet,
    ElementKind,
    MetamodelVersion,
    ProcessElement,
    ProcessModel,
    Reference,
    ReferenceKind,
    TextBlock,
    apply_change_set,
    compare_models,
)
from .xmlio import (
    export_stats_csv,
    parse_catalog,
    parse_extension,
    parse_model,
    render_stats_text,
    render_trace_text,
    serialize_catalog,
    serialize_extension,
    serialize_model,
    serialize_trace,
)

__version__ = "0.1.0"

__all__ = [
    "AtomicKind",
    "AtomicStep",
    "ChangeSet",
    "ConflictError",
    "CycleError",
    "DanglingReferenceError",
    "DuplicateIdError",
    "DuplicateTypeNameError",
    "ElementKind",
    "ExtensionModel",
    "FieldNotFoundError",
    "IllegalTargetError",
    "Issue",
    "IssueCode",
    "MergeError",
    "MergeTrace",
    "MetamodelVersion",
    "MissingArgumentError",
    "MissingParentDeclarationError",
    "MissingParentError",
    "OperationCatalog",
    "OperationExemplar",
    "OperationTypeDef",
    "ParseError",
    "ProcessElement",
    "ProcessModel",
    "ProclineError",
    "Reference",
    "ReferenceKind",
    "SchemaError",
    "StepTemplate",
    "TextBlock",
    "TraceEntry",
    "TraceEntryKind",
    "UnknownIdError",
    "UnknownOperationTypeError",
    "UnknownVariantError",
    "UnusedReport",
    "UnusedSlice",
    "UsageReport",
    "ValidationFailedError",
    "VariantSet",
    "apply_atomic",
    "apply_change_set",
    "apply_masking",
    "builtin_catalog",
    "compare_models",
    "expand_exemplar",
    "export_stats_csv",
    "merge_chain",
    "merge_once",
    "parse_catalog",
    "parse_extension",
    "parse_model",
    "render_stats_text",
    "render_trace_text",
    "resolve_chain",
    "serialize_catalog",
    "serialize_extension",
    "serialize_model",
    "serialize_trace",
    "top_n",
    "unused_report",
    "usage_report",
    "validate_exemplar",
    "validate_step",
]
