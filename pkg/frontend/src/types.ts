/** Wire types for the tutoring session service, plus the UI's own turn model. */

export type NodeStatus = "pending" | "completed";

export interface PlanNode {
  id: string;
  title: string;
  status: NodeStatus;
  children: PlanNode[];
}

export interface Plan {
  revision: number;
  difficulty: number;
  root: PlanNode;
}

export type Phase = "active" | "finished";

export interface SessionSummary {
  session_id: string;
  topic: string;
  difficulty: number;
  variant: string;
  round: number;
  phase: Phase;
  finish_reason: string | null;
  plan: Plan;
}

export interface QuizOption {
  label: string;
  text: string;
}

export interface QuizItem {
  objective_id: string;
  stem: string;
  options: QuizOption[];
  answer_key: string;
  source_round: number;
}

export interface Judgment {
  question: number;
  chosen: string | null;
  correct: boolean;
  feedback: string;
}

export type ReplyKind = "teach" | "answer" | "quiz" | "evaluation";

export interface SystemReply {
  kind: ReplyKind;
  text: string;
  quiz_items?: QuizItem[];
  judgments?: Judgment[];
  deterministic?: boolean;
  unstructured?: boolean;
}

export interface TranscriptTurn {
  round: number;
  speaker: "learner" | "system";
  kind?: string;
  text: string;
  final?: boolean;
}

export interface Transcript {
  session_id: string;
  topic: string;
  phase: Phase;
  finish_reason: string | null;
  turns: TranscriptTurn[];
}

export interface TopicEntry {
  category: string;
  objective: string;
  difficulty: number;
}

/** One rendered chat bubble. Quiz turns carry their items so a form can be built. */
export interface ChatTurn {
  speaker: "learner" | "system";
  text: string;
  kind?: string;
  timestamp: number;
  quizItems?: QuizItem[];
  judgments?: Judgment[];
  final?: boolean;
}
