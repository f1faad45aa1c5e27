"""
The course plan tree and its depth-first cursor
===============================================

A course plan is a small tree of learning objectives, at most three layers
deep. Teaching always targets the first pending node in pre-order, progress
is a per-node completed flag, and a redesign may reshape the tree without
losing any of that progress.
"""

from tutorkit.memory.outline import (
    assign_fresh_ids,
    parse_outline,
    plan_to_outline,
)
from tutorkit.memory.plan import (
    apply_plan_update,
    build_plan,
    mark_completed,
    next_uncompleted,
    removed_node_ids,
    title_path,
)

# Build a plan the convenient way: a root topic plus (section, subsections)
# pairs. Ids are assigned in pre-order.
plan = build_plan(
    "Plate tectonics",
    [
        ("What plates are", []),
        ("Plate boundaries", ["Divergent", "Convergent", "Transform"]),
        ("Earthquakes and volcanoes", []),
    ],
    difficulty=2,
)
print(plan_to_outline(plan))

# The cursor: teaching starts at the root and walks depth-first. Completing
# a node moves the cursor to the next pending one in pre-order.
for _ in range(3):
    current = next_uncompleted(plan)
    print("teach next:", " > ".join(title_path(plan, current.id)))
    mark_completed(plan, current.id)

# Status shows up in the outline as a [done] suffix.
print()
print(plan_to_outline(plan))

# A redesign proposes a whole new tree as an outline. Nodes whose title
# path matches an existing node keep its id and its completed status;
# everything new starts pending. The proposal below drops the volcano
# section and adds a fieldwork one.
proposal = parse_outline(
    "- Plate tectonics\n"
    "  - What plates are\n"
    "  - Plate boundaries\n"
    "    - Divergent\n"
    "    - Convergent\n"
    "    - Transform\n"
    "  - Reading a seismic map\n"
)[0]
updated = apply_plan_update(plan, assign_fresh_ids(proposal, start=100))

print()
print("revision %d -> %d" % (plan.revision, updated.revision))
print("dropped node ids:", removed_node_ids(plan, updated))
print(plan_to_outline(updated))

# The first two objectives stayed completed through the reshape, so the
# cursor resumes exactly where the learner left off.
print()
print("cursor after redesign:", next_uncompleted(updated).title)
