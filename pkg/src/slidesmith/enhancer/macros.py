"""The six prewritten figure macros: library text, call validation, rendering."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from importlib import resources

from ..latex import parse_newcommands, strip_comments, substitute_params


class MacroError(Exception):
    pass


class ArityMismatch(MacroError):
    pass


class ArgParseError(MacroError):
    pass


class MacroKind(Enum):
    PIPELINE = "drawpipeline"
    INLINE_FORMULA = "inlineformula"
    INLINE_PSEUDOCODE = "inlinepseudocode"
    CONF_MAT = "drawconfmat"
    NETWORK = "drawnetwork"
    GENERIC_PLOT = "drawgenericplot"

    @property
    def arity(self) -> int:
        return _ARITY[self]

    @property
    def latex_name(self) -> str:
        return self.value


_ARITY = {
    MacroKind.PIPELINE: 2,
    MacroKind.INLINE_FORMULA: 1,
    MacroKind.INLINE_PSEUDOCODE: 1,
    MacroKind.CONF_MAT: 4,
    MacroKind.NETWORK: 1,
    MacroKind.GENERIC_PLOT: 6,
}

# Figure macros occupy the one-figure-per-frame slot; inline macros do not.
FIGURE_KINDS = frozenset(
    {MacroKind.PIPELINE, MacroKind.CONF_MAT, MacroKind.NETWORK, MacroKind.GENERIC_PLOT}
)
INLINE_KINDS = frozenset({MacroKind.INLINE_FORMULA, MacroKind.INLINE_PSEUDOCODE})


def parse_int_list(raw: str) -> list[int]:
    parts = [part.strip() for part in raw.split(",")]
    if any(not part for part in parts):
        raise ArgParseError(f"empty entry in list: {raw!r}")
    try:
        return [int(part) for part in parts]
    except ValueError as exc:
        raise ArgParseError(f"non-integer entry in list: {raw!r}") from exc


@dataclass(frozen=True)
class MacroCall:
    kind: MacroKind
    args: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.args) != self.kind.arity:
            raise ArityMismatch(
                f"{self.kind.latex_name} takes {self.kind.arity} args, got {len(self.args)}"
            )
        if self.kind is MacroKind.CONF_MAT:
            for arg in self.args:
                try:
                    value = int(arg.strip())
                except ValueError as exc:
                    raise ArgParseError(f"confusion matrix cell must be an integer: {arg!r}") from exc
                if value < 0:
                    raise ArgParseError(f"confusion matrix cell must be >= 0: {arg!r}")
        elif self.kind is MacroKind.NETWORK:
            layers = parse_int_list(self.args[0])
            if len(layers) < 2:
                raise ArgParseError(f"network needs at least 2 layers: {self.args[0]!r}")
            if any(n < 1 for n in layers):
                raise ArgParseError(f"layer sizes must be positive: {self.args[0]!r}")


def network_layers(call: MacroCall) -> list[int]:
    if call.kind is not MacroKind.NETWORK:
        raise MacroError("network_layers expects a drawnetwork call")
    return parse_int_list(call.args[0])


@lru_cache(maxsize=1)
def macro_library() -> str:
    """The fixed preamble asset defining all six macros; identical every call."""
    return (
        resources.files("slidesmith.enhancer")
        .joinpath("assets/macros.tex")
        .read_text(encoding="utf-8")
    )


def render_macro(call: MacroCall) -> str:
    """LaTeX snippet invoking the macro; compiles when the library is loaded."""
    return "\\" + call.kind.latex_name + "".join("{" + arg + "}" for arg in call.args)


@lru_cache(maxsize=1)
def _library_definitions() -> dict[str, tuple[int, str]]:
    return parse_newcommands(strip_comments(macro_library()))


def expand_macro(call: MacroCall) -> str:
    """Textual expansion of a call against the library definition.

    Gives tests and diagnostics access to the drawing source a LaTeX engine
    would see (e.g. the layer list a network drawing iterates over).
    """
    defs = _library_definitions()
    if call.kind.latex_name not in defs:
        raise MacroError(f"library does not define \\{call.kind.latex_name}")
    arity, body = defs[call.kind.latex_name]
    if arity != call.kind.arity:
        raise MacroError(
            f"library arity {arity} for \\{call.kind.latex_name} != expected {call.kind.arity}"
        )
    return substitute_params(body, call.args)


_KIND_BY_NAME = {kind.latex_name: kind for kind in MacroKind}


def kind_for_name(name: str) -> MacroKind | None:
    return _KIND_BY_NAME.get(name)


def standalone_document(call: MacroCall) -> str:
    """Minimal compilable document exercising one macro call."""
    return (
        "\\documentclass{beamer}\n"
        + macro_library()
        + "\\begin{document}\n\\begin{frame}{Macro smoke test}\n"
        + render_macro(call)
        + "\n\\end{frame}\n\\end{document}\n"
    )
