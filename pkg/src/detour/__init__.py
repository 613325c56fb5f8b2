"""Organic generation of plane algebraic curves by tracing constructions through complex detours."""
from .construction import Construction, ConstructionState, evaluate, initial_state
from .dsl import ParseError, parse_construction
from .emit import emit_csv, emit_json, emit_svg
from .errors import (
    AmbiguousStep,
    DegenerateConfiguration,
    DegenerateInput,
    DegenerateOp,
    DetourError,
    EmptyLocus,
    NonTerminating,
    RefinementExhausted,
    SingularStart,
)
from .projective import Circle, HomLine, HomPoint, Tolerances
from .tracer import Locus, LocusPoint, TraceConfig, trace, trace_variant_a, trace_variant_b

__all__ = [
    "AmbiguousStep",
    "Circle",
    "Construction",
    "ConstructionState",
    "DegenerateConfiguration",
    "DegenerateInput",
    "DegenerateOp",
    "DetourError",
    "EmptyLocus",
    "HomLine",
    "HomPoint",
    "Locus",
    "LocusPoint",
    "NonTerminating",
    "ParseError",
    "RefinementExhausted",
    "SingularStart",
    "Tolerances",
    "TraceConfig",
    "emit_csv",
    "emit_json",
    "emit_svg",
    "evaluate",
    "initial_state",
    "parse_construction",
    "trace",
    "trace_variant_a",
    "trace_variant_b",
]
