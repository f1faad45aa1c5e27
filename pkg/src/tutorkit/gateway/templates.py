"""Prompt templates with named placeholders and a write-once registry."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from tutorkit.errors import MissingSlotError, UnknownTemplateError

_PLACEHOLDER = re.compile(r"\{([a-z0-9_]+)\}")


def placeholders_in(body: str) -> set[str]:
    """Names of all placeholders appearing in a template body."""
    return set(_PLACEHOLDER.findall(body))


@dataclass(frozen=True)
class PromptTemplate:
    """One registered prompt body; ``required_slots`` is derived from the body."""

    id: str
    body: str
    required_slots: frozenset[str] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "required_slots", frozenset(placeholders_in(self.body)))

    def render(self, bindings: dict[str, str]) -> str:
        """Replace every placeholder with its binding in a single pass.

        Binding values are inserted verbatim and never re-scanned, so text
        containing brace characters cannot smuggle new placeholders in.
        Extra bindings are ignored; a missing one raises MissingSlotError.
        """
        missing = self.required_slots - bindings.keys()
        if missing:
            raise MissingSlotError(self.id, sorted(missing)[0])

        def _sub(match: re.Match) -> str:
            return bindings[match.group(1)]

        return _PLACEHOLDER.sub(_sub, self.body)


class TemplateRegistry:
    """Immutable-after-registration mapping of template id to body."""

    def __init__(self):
        self._templates: dict[str, PromptTemplate] = {}

    def register(self, template_id: str, body: str) -> PromptTemplate:
        if template_id in self._templates:
            raise ValueError(f"template {template_id!r} is already registered")
        template = PromptTemplate(template_id, body)
        self._templates[template_id] = template
        return template

    def get(self, template_id: str) -> PromptTemplate:
        try:
            return self._templates[template_id]
        except KeyError:
            raise UnknownTemplateError(f"no template registered as {template_id!r}") from None

    def render(self, template_id: str, bindings: dict[str, str]) -> str:
        return self.get(template_id).render(bindings)

    def ids(self) -> list[str]:
        return sorted(self._templates)
