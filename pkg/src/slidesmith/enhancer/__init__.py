from .enhance import (
    CommentCategory,
    ConstraintViolation,
    EnhancementViolation,
    InstructorComment,
    check_comment_rules,
    check_figure_rules,
    classify_comment,
    extract_comments,
    insert_comments,
    insert_figures,
    validate_enhancements,
)
from .macros import (
    FIGURE_KINDS,
    INLINE_KINDS,
    ArgParseError,
    ArityMismatch,
    MacroCall,
    MacroError,
    MacroKind,
    expand_macro,
    kind_for_name,
    macro_library,
    network_layers,
    render_macro,
    standalone_document,
)

__all__ = [
    "ArgParseError",
    "ArityMismatch",
    "CommentCategory",
    "ConstraintViolation",
    "EnhancementViolation",
    "FIGURE_KINDS",
    "INLINE_KINDS",
    "InstructorComment",
    "MacroCall",
    "MacroError",
    "MacroKind",
    "check_comment_rules",
    "check_figure_rules",
    "classify_comment",
    "expand_macro",
    "extract_comments",
    "insert_comments",
    "insert_figures",
    "kind_for_name",
    "macro_library",
    "network_layers",
    "render_macro",
    "standalone_document",
    "validate_enhancements",
]
