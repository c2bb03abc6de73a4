from .beamer import (
    BeamerParseError,
    BeamerSource,
    BibEntry,
    Bullet,
    CodegenError,
    CommentSite,
    Frame,
    MacroCallSite,
    NotLatex,
    ParsedDeck,
    frame_text,
    is_title_frame,
    parse_beamer,
    reassemble,
    splice,
    strip_fences,
)
from .compiler import (
    CompileConfigError,
    CompileReport,
    EngineConfig,
    EngineMissing,
    FirstError,
    compile_deck,
    parse_log,
    resolve_engine,
)
from .generate import (
    MaxAttemptsExceeded,
    RepairError,
    RepairRejected,
    compile_with_repair,
    ensure_macro_library,
    generate_beamer,
    repair,
)
from .lint import LintFinding, LintRule, Severity, error_findings, is_content_frame, lint

__all__ = [
    "BeamerParseError",
    "BeamerSource",
    "BibEntry",
    "Bullet",
    "CodegenError",
    "CommentSite",
    "CompileConfigError",
    "CompileReport",
    "EngineConfig",
    "EngineMissing",
    "FirstError",
    "Frame",
    "LintFinding",
    "LintRule",
    "MacroCallSite",
    "MaxAttemptsExceeded",
    "NotLatex",
    "ParsedDeck",
    "RepairError",
    "RepairRejected",
    "Severity",
    "compile_deck",
    "compile_with_repair",
    "ensure_macro_library",
    "error_findings",
    "frame_text",
    "generate_beamer",
    "is_content_frame",
    "is_title_frame",
    "lint",
    "parse_beamer",
    "parse_log",
    "reassemble",
    "repair",
    "resolve_engine",
    "splice",
    "strip_fences",
]
