/** Page bootstrap: wires the static skeleton to the controller. */

import { TutorApi } from "./api.js";
import { SessionController } from "./controller.js";
import { renderTopicPicker } from "./topicPicker.js";

declare global {
  interface Window {
    /** Base URL of the session service; same origin when unset. */
    TUTOR_API_BASE?: string;
    /** Opt-in ablation-blinding mode for the plan sidebar. */
    TUTOR_BLIND_MODE?: boolean;
  }
}

function mustFind(doc: Document, id: string): HTMLElement {
  const el = doc.getElementById(id);
  if (!el) throw new Error(`missing page element #${id}`);
  return el;
}

export function boot(doc: Document, win: Window = doc.defaultView as Window): SessionController {
  const api = new TutorApi(win.TUTOR_API_BASE ?? "");
  const els = {
    sidebar: mustFind(doc, "plan"),
    chat: mustFind(doc, "chat"),
    input: mustFind(doc, "composer-input") as HTMLTextAreaElement,
    send: mustFind(doc, "composer-send") as HTMLButtonElement,
    banners: mustFind(doc, "banners"),
    status: mustFind(doc, "status"),
  };
  const controller = new SessionController(api, els, {
    blindNextObjective: win.TUTOR_BLIND_MODE === true,
  });

  els.send.addEventListener("click", () => void controller.send());
  els.input.addEventListener("keydown", (event) => {
    if (event.key === "Enter" && !event.shiftKey) {
      event.preventDefault();
      void controller.send();
    }
  });

  const picker = mustFind(doc, "picker");
  const session = mustFind(doc, "session");
  session.hidden = true;

  api.getTopics().then(
    (topics) =>
      renderTopicPicker(picker, topics, ({ topic, difficulty }) => {
        void controller.startCourse(topic, difficulty).then((ok) => {
          if (ok) {
            picker.hidden = true;
            session.hidden = false;
            els.input.focus();
          }
        });
      }),
    // Service unreachable: an error banner and no session view.
    (err) => controller.showError(err),
  );
  return controller;
}

if (typeof document !== "undefined" && document.getElementById("chat")) {
  if (document.readyState === "loading") {
    document.addEventListener("DOMContentLoaded", () => boot(document));
  } else {
    boot(document);
  }
}
