"""Parsers for structured model output: routes, verdicts, grades, questions.

Model replies are text and arrive slightly off-format all the time, so every
parser here is tolerant about surroundings and strict about substance. A
parser returns None (or skips the item) rather than raising; callers decide
whether to re-ask or fall back.
"""

from __future__ import annotations

import logging
import re

from tutorkit.tools.base import Judgment

logger = logging.getLogger(__name__)

ROUTES = ("TEACH", "ANSWER", "QUIZ")

_LEADING_JUNK = re.compile(r"^[\s\*\#\>\-\:\.\"'`\(\)\[\]]+")
_GRADE_LINE = re.compile(
    r"^\s*GRADE\s+(\d+)\s*:\s*([^|]*?)\s*\|\s*(correct|incorrect)\s*\|\s*(.*)$",
    re.IGNORECASE,
)
_STEM_LINE = re.compile(r"^\s*STEM\s*:\s*(.+)$", re.IGNORECASE)
_OPTION_LINE = re.compile(r"^\s*OPTION\s+([A-Z])\s*:\s*(.+)$", re.IGNORECASE)
_ANSWER_LINE = re.compile(r"^\s*ANSWER\s*:\s*\(?([A-Z])\)?\.?\s*$", re.IGNORECASE)


def _first_word(text: str) -> str:
    """First alphabetic word of a reply, markdown litter stripped."""
    stripped = _LEADING_JUNK.sub("", text.strip())
    match = re.match(r"([A-Za-z]+)", stripped)
    return match.group(1).upper() if match else ""


def parse_route(text: str) -> str | None:
    """TEACH / ANSWER / QUIZ from the first word, else None."""
    word = _first_word(text)
    return word if word in ROUTES else None


def parse_yes_no(text: str) -> bool | None:
    """Leading YES -> True, leading NO -> False, anything else -> None."""
    word = _first_word(text)
    if word == "YES":
        return True
    if word == "NO":
        return False
    return None


def parse_grades(text: str, expected: int) -> list[Judgment] | None:
    """GRADE lines -> judgments, one per question number.

    Lines whose number falls outside 1..expected are dropped; duplicate
    numbers keep the first occurrence. Returns None when not a single valid
    line was found, so the caller can re-ask.
    """
    seen: dict[int, Judgment] = {}
    for line in text.splitlines():
        match = _GRADE_LINE.match(line)
        if not match:
            continue
        number = int(match.group(1))
        if number < 1 or number > expected or number in seen:
            continue
        chosen_raw = match.group(2).strip()
        chosen = None if chosen_raw in ("", "-") else chosen_raw.upper()
        seen[number] = Judgment(
            question=number,
            chosen=chosen,
            correct=match.group(3).lower() == "correct",
            feedback=match.group(4).strip(),
        )
    if not seen:
        return None
    return [seen[number] for number in sorted(seen)]


class ParsedQuestion:
    """Raw STEM / OPTION / ANSWER triple before it becomes a QuizItem."""

    __slots__ = ("stem", "options", "answer")

    def __init__(self):
        self.stem: str | None = None
        self.options: list[tuple[str, str]] = []
        self.answer: str | None = None

    def valid(self) -> bool:
        if not self.stem or not self.answer:
            return False
        if not 2 <= len(self.options) <= 5:
            return False
        labels = [label for label, _ in self.options]
        texts = [text for _, text in self.options]
        if len(set(labels)) != len(labels) or len(set(texts)) != len(texts):
            return False
        return self.answer in labels


def parse_questions(text: str) -> list[ParsedQuestion] | None:
    """STEM/OPTION/ANSWER blocks -> questions, malformed blocks skipped.

    A block runs from one STEM line to its ANSWER line; code fences and
    chatter between blocks are ignored. Returns None when no valid question
    survived, so the caller can re-ask.
    """
    questions: list[ParsedQuestion] = []
    current: ParsedQuestion | None = None
    for line in text.splitlines():
        stem = _STEM_LINE.match(line)
        if stem:
            current = ParsedQuestion()
            current.stem = stem.group(1).strip()
            questions.append(current)
            continue
        if current is None:
            continue
        option = _OPTION_LINE.match(line)
        if option:
            current.options.append(
                (option.group(1).upper(), option.group(2).strip())
            )
            continue
        answer = _ANSWER_LINE.match(line)
        if answer:
            current.answer = answer.group(1).upper()
            current = None  # block closed; stray options must not attach

    valid = [question for question in questions if question.valid()]
    dropped = len(questions) - len(valid)
    if dropped:
        logger.debug("dropped %d malformed question block(s)", dropped)
    return valid or None
