"""Course plan tree: objectives with completion status and a depth-first cursor.

The plan is a tree of at most three layers rooted at the main learning
objective. Instruction walks it depth-first, so "the next thing to teach"
is always the first pending node in pre-order.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator

from tutorkit.errors import EmptyPlanError, PlanDepthError, UnknownNodeError

MAX_DEPTH = 3
MIN_DIFFICULTY = 1
MAX_DIFFICULTY = 5

_WHITESPACE = re.compile(r"\s+")


class Status(str, Enum):
    PENDING = "pending"
    COMPLETED = "completed"


def normalize_title(title: str) -> str:
    """Case-folded, whitespace-collapsed form used for node identity."""
    return _WHITESPACE.sub(" ", title.strip()).casefold()


@dataclass
class ObjectiveNode:
    id: str
    title: str
    status: Status = Status.PENDING
    children: list["ObjectiveNode"] = field(default_factory=list)

    def __post_init__(self):
        if not self.title or not self.title.strip():
            raise ValueError("objective title must be non-empty")
        if not isinstance(self.status, Status):
            self.status = Status(self.status)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "title": self.title,
            "status": self.status.value,
            "children": [child.to_dict() for child in self.children],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ObjectiveNode":
        return cls(
            id=data["id"],
            title=data["title"],
            status=Status(data["status"]),
            children=[cls.from_dict(child) for child in data.get("children", [])],
        )


def iter_preorder(node: ObjectiveNode, depth: int = 1) -> Iterator[tuple[ObjectiveNode, int]]:
    """Yield (node, depth) parent-first, children in stored order."""
    yield node, depth
    for child in node.children:
        yield from iter_preorder(child, depth + 1)


def tree_depth(root: ObjectiveNode) -> int:
    return max(depth for _, depth in iter_preorder(root))


def node_count(root: ObjectiveNode) -> int:
    return sum(1 for _ in iter_preorder(root))


def validate_tree(root: ObjectiveNode) -> None:
    """Enforce the structural invariants: depth bound, unique ids, non-empty titles."""
    seen_ids: set[str] = set()
    for node, depth in iter_preorder(root):
        if depth > MAX_DEPTH:
            raise PlanDepthError(
                f"node {node.title!r} sits at depth {depth}, deeper than {MAX_DEPTH} layers"
            )
        if node.id in seen_ids:
            raise ValueError(f"duplicate node id {node.id!r}")
        seen_ids.add(node.id)


@dataclass
class CoursePlan:
    """The course syllabus plus its progress record.

    ``revision`` increases by exactly one per applied update; ``difficulty``
    is fixed for the life of the session that owns the plan.
    """

    root: ObjectiveNode
    difficulty: int
    revision: int = 1

    def __post_init__(self):
        if not MIN_DIFFICULTY <= self.difficulty <= MAX_DIFFICULTY:
            raise ValueError(f"difficulty must be {MIN_DIFFICULTY}..{MAX_DIFFICULTY}")
        validate_tree(self.root)

    def find(self, node_id: str) -> ObjectiveNode:
        for node, _ in iter_preorder(self.root):
            if node.id == node_id:
                return node
        raise UnknownNodeError(f"no plan node with id {node_id!r}")

    def has_node(self, node_id: str) -> bool:
        return any(node.id == node_id for node, _ in iter_preorder(self.root))

    def preorder_ids(self) -> list[str]:
        return [node.id for node, _ in iter_preorder(self.root)]

    def node_count(self) -> int:
        return node_count(self.root)

    def to_dict(self) -> dict:
        return {
            "revision": self.revision,
            "difficulty": self.difficulty,
            "root": self.root.to_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "CoursePlan":
        return cls(
            root=ObjectiveNode.from_dict(data["root"]),
            difficulty=data["difficulty"],
            revision=data["revision"],
        )


def next_uncompleted(plan: CoursePlan) -> ObjectiveNode | None:
    """First pending node in depth-first pre-order; None when all are done."""
    for node, _ in iter_preorder(plan.root):
        if node.status is Status.PENDING:
            return node
    return None


def mark_completed(plan: CoursePlan, node_id: str) -> CoursePlan:
    """Set one node's status to completed. Idempotent; nothing else changes."""
    plan.find(node_id).status = Status.COMPLETED
    return plan


def title_path(plan: CoursePlan, node_id: str) -> list[str]:
    """Titles from the root down to the node, e.g. for prompt rendering."""

    def walk(node: ObjectiveNode, prefix: list[str]) -> list[str] | None:
        path = prefix + [node.title]
        if node.id == node_id:
            return path
        for child in node.children:
            found = walk(child, path)
            if found is not None:
                return found
        return None

    found = walk(plan.root, [])
    if found is None:
        raise UnknownNodeError(f"no objective with id {node_id!r}")
    return found


def _title_paths(root: ObjectiveNode) -> dict[tuple[str, ...], ObjectiveNode]:
    """Map each node's normalized title path (from the root) to the node.

    On duplicate sibling titles the first occurrence in pre-order wins, which
    keeps matching deterministic even for sloppy proposals.
    """
    paths: dict[tuple[str, ...], ObjectiveNode] = {}

    def walk(node: ObjectiveNode, prefix: tuple[str, ...]):
        path = prefix + (normalize_title(node.title),)
        paths.setdefault(path, node)
        for child in node.children:
            walk(child, path)

    walk(root, ())
    return paths


def _max_id_suffix(root: ObjectiveNode) -> int:
    best = 0
    for node, _ in iter_preorder(root):
        match = re.fullmatch(r"n(\d+)", node.id)
        if match:
            best = max(best, int(match.group(1)))
    return best


def apply_plan_update(plan: CoursePlan, proposed: ObjectiveNode) -> CoursePlan:
    """Adopt a proposed tree, carrying progress over by title-path identity.

    A proposed node whose normalized title path equals an existing node's
    path inherits that node's id and completed status; everything else gets
    a fresh id with status pending. Statuses carried inside the proposal are
    ignored: progress is owned by the current plan, not the proposer.
    """
    if proposed is None:
        raise EmptyPlanError("proposed plan has no nodes")
    for _, depth in iter_preorder(proposed):
        if depth > MAX_DEPTH:
            raise PlanDepthError(
                f"proposed tree has {depth} layers, at most {MAX_DEPTH} are allowed"
            )

    existing = _title_paths(plan.root)
    next_id = _max_id_suffix(plan.root) + 1

    def rebuild(node: ObjectiveNode, prefix: tuple[str, ...]) -> ObjectiveNode:
        nonlocal next_id
        path = prefix + (normalize_title(node.title),)
        match = existing.get(path)
        if match is not None:
            new_id, status = match.id, match.status
        else:
            new_id, status = f"n{next_id}", Status.PENDING
            next_id += 1
        seen_child_titles: set[str] = set()
        children = []
        for child in node.children:
            key = normalize_title(child.title)
            if key in seen_child_titles:
                continue  # duplicate sibling titles would make path identity ambiguous
            seen_child_titles.add(key)
            children.append(rebuild(child, path))
        return ObjectiveNode(id=new_id, title=node.title.strip(), status=status,
                             children=children)

    new_root = rebuild(proposed, ())
    return CoursePlan(root=new_root, difficulty=plan.difficulty,
                      revision=plan.revision + 1)


def removed_node_ids(old: CoursePlan, new: CoursePlan) -> list[str]:
    """Ids present in the old plan but absent from the new one."""
    kept = set(new.preorder_ids())
    return [node_id for node_id in old.preorder_ids() if node_id not in kept]


def build_plan(topic: str, children_titles: list[tuple[str, list[str]]],
               difficulty: int) -> CoursePlan:
    """Convenience constructor: topic root plus (title, [subtitle...]) pairs."""
    counter = 1

    def make(title: str, grandchildren: list[str]) -> ObjectiveNode:
        nonlocal counter
        node = ObjectiveNode(id=f"n{counter}", title=title)
        counter += 1
        for sub in grandchildren:
            node.children.append(ObjectiveNode(id=f"n{counter}", title=sub))
            counter += 1
        return node

    root = ObjectiveNode(id="n0", title=topic)
    for title, subs in children_titles:
        root.children.append(make(title, subs))
    return CoursePlan(root=root, difficulty=difficulty)
