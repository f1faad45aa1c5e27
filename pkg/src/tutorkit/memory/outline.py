"""Plain-text outline form of a plan: how plans travel through prompts.

Serialization writes one node per line, two spaces of indent per layer,
with a ``[done]`` suffix on completed nodes. Parsing is deliberately more
tolerant than the serializer: model-written outlines arrive with dash or
star bullets, numeric or letter enumeration, tabs, and code fences, and we
take indentation as the only structural signal.
"""

from __future__ import annotations

import re

from tutorkit.errors import OutlineParseError
from tutorkit.memory.plan import CoursePlan, ObjectiveNode, Status, iter_preorder

DONE_SUFFIX = "[done]"

_FENCE = re.compile(r"^\s*```")
_MARKERS = (
    re.compile(r"^[-*•]\s+"),                 # bullets
    re.compile(r"^\(?\d+[.):]\s+"),                # 1.  2)  (3)
    re.compile(r"^\(?[ivxlcdm]+[.)]\s+", re.I),    # i.  iv)  (roman)
    re.compile(r"^\(?[a-z][.)]\s+", re.I),         # a.  B)
)
_DONE = re.compile(r"\s*\[\s*done\s*\]\s*$", re.I)


def plan_to_outline(plan: CoursePlan, include_status: bool = True) -> str:
    """Render the plan as an indented outline, root first."""
    lines = []
    for node, depth in iter_preorder(plan.root):
        suffix = ""
        if include_status and node.status is Status.COMPLETED:
            suffix = f" {DONE_SUFFIX}"
        lines.append(f"{'  ' * (depth - 1)}- {node.title}{suffix}")
    return "\n".join(lines)


def _indent_width(line: str) -> int:
    width = 0
    for ch in line:
        if ch == " ":
            width += 1
        elif ch == "\t":
            width += 4
        else:
            break
    return width


def _strip_markers(text: str) -> str:
    for marker in _MARKERS:
        stripped = marker.sub("", text, count=1)
        if stripped != text:
            return stripped
    return text


def parse_outline(text: str) -> list[ObjectiveNode]:
    """Parse an indented outline into a forest of objective nodes.

    Returns the top-level nodes in order; node ids are placeholders
    (``p1``, ``p2``, ...) for the caller to replace. Raises
    OutlineParseError when no usable line is found.
    """
    forest: list[ObjectiveNode] = []
    stack: list[tuple[int, ObjectiveNode]] = []
    counter = 0

    for raw in text.splitlines():
        if not raw.strip() or _FENCE.match(raw):
            continue
        width = _indent_width(raw)
        body = _strip_markers(raw.strip())
        completed = bool(_DONE.search(body))
        title = _DONE.sub("", body).strip()
        if not title:
            continue
        counter += 1
        node = ObjectiveNode(
            id=f"p{counter}",
            title=title,
            status=Status.COMPLETED if completed else Status.PENDING,
        )
        while stack and stack[-1][0] >= width:
            stack.pop()
        if stack:
            stack[-1][1].children.append(node)
        else:
            forest.append(node)
        stack.append((width, node))

    if not forest:
        raise OutlineParseError("no outline items found in completion")
    return forest


def assign_fresh_ids(root: ObjectiveNode, start: int = 0) -> ObjectiveNode:
    """Re-id a parsed tree in pre-order as n{start}, n{start+1}, ..."""
    counter = start
    for node, _ in iter_preorder(root):
        node.id = f"n{counter}"
        counter += 1
    return root
