"""
Dual-horizon conversation memory
================================

The tutor remembers a session on two horizons at once. Short term is a
bounded window of the most recent rounds, kept verbatim for prompts. Long
term embeds every utterance and retrieves by cosine similarity, so a
question from round 30 can surface what was said in round 2.
"""

from tutorkit.gateway.embeddings import HashEmbeddingProvider
from tutorkit.memory.history import LearningHistory

# The hash embedder is the deterministic offline stand-in for a real
# embedding model: every distinct text gets its own stable unit vector.
embedder = HashEmbeddingProvider(dim=32)
history = LearningHistory(embedder, capacity=5)

# Feed a twelve-round conversation that drifts across subtopics.
rounds = [
    ("What is erosion?", "Erosion is the wearing away of rock and soil."),
    ("How do rivers erode rock?", "Rivers grind rock with the sediment they carry."),
    ("Does wind do the same?", "Wind erosion sandblasts surfaces with carried grains."),
    ("What about glaciers?", "Glaciers pluck and abrade the bedrock beneath them."),
    ("Which is fastest?", "Water moves the most material overall."),
    ("How do coasts retreat?", "Waves undercut cliffs until the face collapses."),
    ("Can plants slow erosion?", "Roots bind soil and slow surface runoff."),
    ("What is weathering?", "Weathering breaks rock in place; erosion moves it."),
    ("Is soil erosion a problem for farms?", "Yes - topsoil loss outpaces soil formation."),
    ("What are terraces for?", "Terraces shorten slopes so water loses its punch."),
    ("Do dams cause erosion?", "Downstream of a dam, sediment-starved water erodes more."),
    ("How long does a canyon take?", "Major canyons record millions of years of cutting."),
]
for index, (learner, system) in enumerate(rounds, start=1):
    history.append_round(learner, system, index)

# The short-term window holds only the last five rounds, in order.
print("short-term window (capacity %d):" % history.capacity)
print(history.transcript())

# Long term kept everything: two embedded records per round.
print()
print("long-term records:", len(history.long_term))

# Retrieval reaches past the window. The hash embedder has no semantics -
# it exists so offline runs are deterministic - but the mechanics are the
# real ones: exhaustive cosine ranking with fixed tie-breaks. An exact
# repeat of an old utterance has similarity 1.0 and comes back first, even
# though round 2 left the short-term window ten rounds ago.
print()
print("query: 'How do rivers erode rock?'")
for record in history.retrieve_relevant("How do rivers erode rock?", k=4):
    print("  (round %d, %s) %s" % (record.round, record.speaker.value, record.text))

# Swap in a wire embedding provider and the same call returns semantic
# neighbors instead; nothing else in the session changes.
