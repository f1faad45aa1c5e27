"""Exception types shared across the package."""


class TutorError(Exception):
    """Base class for all tutorkit errors."""


class UnknownTemplateError(TutorError):
    """No template registered under the requested id."""


class MissingSlotError(TutorError):
    """A template placeholder was left unbound; carries the slot name."""

    def __init__(self, template_id: str, slot: str):
        super().__init__(f"template {template_id!r}: missing binding for slot {slot!r}")
        self.template_id = template_id
        self.slot = slot


class ProviderError(TutorError):
    """Transport-level provider failure after retries were exhausted."""


class ScriptExhaustedError(TutorError):
    """Scripted provider queue for a tool tag ran dry.

    Signals a mismatch between a test script and what the engine actually
    asked for, so it is never swallowed by contained-failure handling.
    """

    def __init__(self, tool_tag: str):
        super().__init__(f"scripted completion queue for tag {tool_tag!r} is empty")
        self.tool_tag = tool_tag


class UnknownNodeError(TutorError):
    """A plan operation referenced a node id not present in the tree."""


class PlanDepthError(TutorError):
    """A plan tree exceeded the three-layer depth bound."""


class EmptyPlanError(TutorError):
    """A proposed plan update carried no nodes."""


class OutlineParseError(TutorError):
    """An outline-formatted completion could not be turned into a tree."""


class RoundOrderError(TutorError):
    """History rounds must be appended with consecutive indices."""


class NoCurrentObjectiveError(TutorError):
    """Teach was asked for while every objective is already completed."""


class EmptyQuizPoolError(TutorError):
    """Quiz tool fired with no eligible objective carrying pool entries."""


class ObjectiveNotCompletedError(TutorError):
    """Quiz generation was asked for an objective with no completion verdict."""


class NoPendingQuizError(TutorError):
    """Evaluation was asked for when no quiz was awaiting an answer."""


class SessionFinishedError(TutorError):
    """A message arrived for a session that already finalized."""


class UnknownSessionError(TutorError):
    """No session with the given id."""


class TopicCatalogError(TutorError):
    """Topic catalog file failed to parse; message names the bad row."""
