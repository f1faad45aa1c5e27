"""Prompt catalog: every template body, section markers, and input tables.

Memory content enters prompts only under one of five fixed section markers,
so tests can assert exactly which stores each tool was shown. The
difficulty-keyed texts follow the five Bloom-taxonomy levels; all other
wordings are original to this project.
"""

from __future__ import annotations

from tutorkit.gateway.templates import TemplateRegistry

# The five memory stores, as they are headed inside prompts.
SECTION_HISTORY = "### Learning history"
SECTION_OBJECTIVE = "### Current objective"
SECTION_PROFILE = "### Learning profile"
SECTION_QUIZ_POOL = "### Quiz pool"
SECTION_PLAN = "### Course plan"

MEMORY_SECTIONS = {
    "history": SECTION_HISTORY,
    "objective": SECTION_OBJECTIVE,
    "profile": SECTION_PROFILE,
    "quiz_pool": SECTION_QUIZ_POOL,
    "plan": SECTION_PLAN,
}

# Memory sections each tool's prompt carries in the full system.
TOOL_INPUT_SECTIONS = {
    "teach": {"history", "objective", "profile"},
    "answer": {"history"},
    "quiz": {"quiz_pool", "profile"},
    "evaluation": {"history"},
    "profile_generation": {"history", "profile"},
    "objective_completion": {"history", "objective"},
    "course_design": {"plan", "profile"},
    "quiz_generation": {"history", "objective"},
}


def memory_sections_in(prompt: str) -> set[str]:
    """Which of the five memory section markers appear in a prompt."""
    return {name for name, marker in MEMORY_SECTIONS.items() if marker in prompt}


# Bloom-taxonomy difficulty texts for the course design tool, levels 1..5.
COURSE_DESIGN_DIFFICULTY = {
    1: ("Level 1: Remembering (Knowledge) At this level, the focus is on "
        "providing basic facts. Students are required to remember facts, "
        "definitions, and concepts. Design a **very** short course."),
    2: ("Level 2: Understanding (Comprehension) This level involves describing "
        "and interpreting facts, definitions, and concepts. Design a course as "
        "concise as possible."),
    3: ("Level 3: Applying (Application) At this level, students are expected "
        "to use acquired knowledge in new and practical situations. The focus "
        "is on applying concepts to solve problems and complete tasks. Try to "
        "make the course concise and well-structured."),
    4: ("Level 4: Analyzing (Analysis) In this level, the course should break "
        "down information into its components to understand the relationships "
        "between parts and the overall structure. Try to make the course "
        "concise and well-structured."),
    5: ("Level 5: Evaluating (Evaluation) The course should assess the "
        "quality, validity, and relevance of information and arguments. Try to "
        "make the course concise and well-structured."),
}

# Bloom-taxonomy difficulty texts for the teach tool, levels 1..5.
TEACH_DIFFICULTY = {
    1: ("Teach in very simple and accessible language. Keep generated text "
        "short within a few sentences."),
    2: ("Teach in simple and accessible language. Keep language and wording "
        "easy to understand."),
    3: ("Teach in well-structured language and paragraph. Make information "
        "digestable. Try to use structured format to make it clearer, "
        "e.g. bullet point."),
    4: ("Use precise language to explain things in a systematic way. Try to "
        "use structured format to make it clearer, e.g. bullet point."),
    5: ("Use precise language to explain things in a systematic way. Try to "
        "use structured format to make it clearer, e.g. bullet point."),
}

_OUTLINE_RULES = (
    "Write the full plan as an indented outline, one objective per line: "
    "top-level objectives flush left, sub-objectives indented by two spaces. "
    "Use at most two outline levels and keep each objective a concise phrase."
)

_MCQ_RULES = (
    "questions inside one fenced block, each question formatted as:\n"
    "STEM: <question text>\n"
    "OPTION A: <choice>\n"
    "OPTION B: <choice>\n"
    "ANSWER: <label of the correct option>\n"
    "Use 2 to 5 options per question."
)

_TEMPLATES = {
    "teach": (
        "You are a private tutor teaching one objective at a time.\n"
        "{difficulty_text}\n\n"
        f"{SECTION_OBJECTIVE}\n{{objective}}\n\n"
        f"{SECTION_PROFILE}\n{{profile}}\n\n"
        f"{SECTION_HISTORY}\n{{history}}\n\n"
        "Teach the current objective now, without repeating earlier material."
    ),
    "teach_ablation": (
        "You are a private tutor working through the course plan from top to "
        "bottom.\n"
        "{difficulty_text}\n\n"
        f"{SECTION_PLAN}\n{{plan}}\n\n"
        f"{SECTION_HISTORY}\n{{history}}\n\n"
        "Teach whatever comes next in the plan, without repeating earlier "
        "material."
    ),
    "answer": (
        "You are a tutor answering the learner's latest question directly.\n\n"
        f"{SECTION_HISTORY}\n"
        "Recent conversation:\n{history}\n\n"
        "Relevant earlier conversation:\n{retrieved}\n\n"
        "Learner's question: {question}\n\n"
        "Answer the question clearly, staying consistent with the material "
        "taught so far."
    ),
    "answer_recent_only": (
        "You are a tutor answering the learner's latest question directly.\n\n"
        f"{SECTION_HISTORY}\n"
        "Recent conversation:\n{history}\n\n"
        "Learner's question: {question}\n\n"
        "Answer the question clearly, staying consistent with the material "
        "taught so far."
    ),
    "quiz": (
        "You are a tutor opening a short review quiz.\n\n"
        f"{SECTION_QUIZ_POOL}\n{{pool}}\n\n"
        f"{SECTION_PROFILE}\n{{profile}}\n\n"
        "Write one or two encouraging sentences introducing this quiz. Do not "
        "restate the questions themselves."
    ),
    "quiz_ablation": (
        "You are a tutor opening a short review quiz.\n\n"
        f"{SECTION_QUIZ_POOL}\n{{pool}}\n\n"
        f"{SECTION_HISTORY}\n{{history}}\n\n"
        "Write one or two encouraging sentences introducing this quiz. Do not "
        "restate the questions themselves."
    ),
    "evaluation": (
        "You are grading the learner's answers to a quiz.\n\n"
        "Quiz under review:\n{quiz}\n\n"
        "Learner's answer: {answer}\n\n"
        f"{SECTION_HISTORY}\n"
        "Recent conversation:\n{history}\n\n"
        "Relevant earlier conversation:\n{retrieved}\n\n"
        "Give the learner short personalized feedback, then end with one line "
        "per question in exactly this form:\n"
        "GRADE <question number>: <chosen label, or - if none> | <correct or "
        "incorrect> | <one sentence of feedback>"
    ),
    "profile_generation": (
        "You maintain a short paragraph describing one learner's progress.\n\n"
        f"{SECTION_HISTORY}\n{{history}}\n\n"
        f"{SECTION_PROFILE}\n{{profile}}\n\n"
        "Rewrite the learning profile as one short paragraph: what has been "
        "learned so far, how the learner prefers to study, and what needs "
        "attention next."
    ),
    "objective_completion": (
        "Decide whether the current learning objective has been covered well "
        "enough to move on.\n\n"
        f"{SECTION_OBJECTIVE}\n{{objective}}\n\n"
        f"{SECTION_HISTORY}\n{{history}}\n\n"
        "Reply with YES or NO as the first word, then a brief reason."
    ),
    "course_design_initial": (
        "Design a course plan for the topic below.\n"
        "{difficulty_text}\n\n"
        "Topic: {topic}\n\n"
        f"{_OUTLINE_RULES}"
    ),
    "course_design_update": (
        "Revise the course plan for the topic below, keeping what works and "
        "changing what the learner's profile suggests.\n"
        "{difficulty_text}\n\n"
        "Topic: {topic}\n\n"
        f"{SECTION_PLAN}\n{{plan}}\n\n"
        f"{SECTION_PROFILE}\n{{profile}}\n\n"
        f"{_OUTLINE_RULES}"
    ),
    "course_design_update_ablation": (
        "Revise the course plan for the topic below, keeping what works and "
        "changing what the recent conversation suggests.\n"
        "{difficulty_text}\n\n"
        "Topic: {topic}\n\n"
        f"{SECTION_PLAN}\n{{plan}}\n\n"
        f"{SECTION_HISTORY}\n{{history}}\n\n"
        f"{_OUTLINE_RULES}"
    ),
    "quiz_generation": (
        "Write review questions for one just-finished learning objective.\n\n"
        f"{SECTION_OBJECTIVE}\n{{objective}}\n\n"
        f"{SECTION_HISTORY}\n"
        "Relevant earlier conversation:\n{retrieved}\n\n"
        f"Write {{count}} representative multiple choice {_MCQ_RULES}"
    ),
    "final_quiz": (
        "The course is wrapping up. Write a final quiz covering what was "
        "learned.\n\n"
        "Topic: {topic}\n\n"
        f"{SECTION_HISTORY}\n"
        "Relevant earlier conversation:\n{retrieved}\n\n"
        f"Write up to {{count}} multiple choice {_MCQ_RULES}"
    ),
    "final_quiz_plan": (
        "The course is wrapping up. Write a final quiz covering what was "
        "learned.\n\n"
        "Topic: {topic}\n\n"
        f"{SECTION_PLAN}\n{{plan}}\n\n"
        f"Write up to {{count}} multiple choice {_MCQ_RULES}"
    ),
    "meta_route": (
        "You route the learner's message to one interaction tool.\n\n"
        "Learner's message: {message}\n\n"
        f"{SECTION_HISTORY}\n{{history}}\n\n"
        f"{SECTION_OBJECTIVE}\n{{objective}}\n\n"
        "Rounds since the last quiz: {rounds_since_quiz}\n\n"
        "Reply with exactly one word: TEACH to continue instruction, ANSWER to "
        "address the learner's message, or QUIZ to run a review quiz."
    ),
}

EMPTY_HISTORY = "(no conversation yet)"
EMPTY_PROFILE = "(no profile yet)"
EMPTY_RETRIEVED = "(none)"


def build_registry() -> TemplateRegistry:
    registry = TemplateRegistry()
    for template_id, body in _TEMPLATES.items():
        registry.register(template_id, body)
    return registry
