"""tutorkit: a tool-chained tutoring session engine.

A meta agent routes each learner message to one of four interaction tools
while backend reflection and reaction tools maintain a course-plan tree,
learning profile, quiz pool, and dual-horizon conversational memory. Ships
with a deterministic scripted model provider, an event-sourced session
service, and an ablation harness.
"""

from tutorkit.errors import TutorError
from tutorkit.variants import Variant, VariantTraits, traits_for

__version__ = "0.1.0"

__all__ = ["TutorError", "Variant", "VariantTraits", "traits_for", "__version__"]
