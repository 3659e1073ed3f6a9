import { GameClient } from "./api.js";
import { GameController, type ControllerState } from "./state.js";

const client = new GameClient("", (url, init) => fetch(url, init));
const controller = new GameController(client);

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

const startButton = el<HTMLButtonElement>("start");
const yesButton = el<HTMLButtonElement>("yes");
const noButton = el<HTMLButtonElement>("no");
const retryButton = el<HTMLButtonElement>("retry");
const banner = el<HTMLDivElement>("error-banner");
const bannerText = el<HTMLSpanElement>("error-text");
const questionPanel = el<HTMLDivElement>("question");
const revealPanel = el<HTMLDivElement>("reveal");
const alphabetLine = el<HTMLParagraphElement>("alphabet-line");
const askedLine = el<HTMLParagraphElement>("asked-line");
const noLabels = el<HTMLSpanElement>("no-labels");
const yesLabels = el<HTMLSpanElement>("yes-labels");
const pendingLine = el<HTMLParagraphElement>("pending-line");
const historyList = el<HTMLUListElement>("history");
const revealLabel = el<HTMLSpanElement>("reveal-label");
const revealDetail = el<HTMLParagraphElement>("reveal-detail");

function labelSample(sample: string[], total: number): string {
  const shown = sample.join(", ");
  return total > sample.length ? `${shown}, … (${total} total)` : shown;
}

function render(state: ControllerState): void {
  const { alphabet, session, question, phase } = state;

  alphabetLine.textContent = alphabet
    ? `${alphabet.size} concepts · entropy ${alphabet.entropy_bits.toFixed(3)} bits · ` +
      `expected questions ${alphabet.expected_questions.toFixed(3)}`
    : "loading alphabet…";

  // invariant: the displayed count is the server transcript length
  askedLine.textContent = `questions answered: ${controller.questionCount()}`;

  banner.hidden = phase !== "error";
  if (phase === "error") bannerText.textContent = state.error ?? "request failed";

  startButton.disabled = phase === "busy";
  startButton.textContent = session ? "Start over" : "Start";

  const answering = phase === "question" && question !== null;
  questionPanel.hidden = !answering;
  if (answering && question) {
    noLabels.textContent = labelSample(question.no_labels_sample, question.no_count);
    yesLabels.textContent = labelSample(question.yes_labels_sample, question.yes_count);
    pendingLine.textContent =
      `this answer is worth ${question.pending_bits.toFixed(3)} bits ` +
      `(yes ${(question.p_yes * 100).toFixed(1)}% / no ${(question.p_no * 100).toFixed(1)}%)`;
  }
  yesButton.disabled = !answering;
  noButton.disabled = !answering;

  historyList.replaceChildren(
    ...state.history.map((step, i) => {
      const item = document.createElement("li");
      item.textContent =
        `Q${i + 1}: ${step.bit === 1 ? "yes" : "no"} ` +
        `(+${step.bitsGained.toFixed(3)} bits)`;
      return item;
    }),
  );

  revealPanel.hidden = phase !== "finished";
  if (phase === "finished" && session) {
    revealLabel.textContent = session.answer_label ?? "?";
    const bits = session.transcript.join("");
    const expected = alphabet ? alphabet.expected_questions.toFixed(3) : "?";
    revealDetail.textContent =
      `codeword ${bits} · ${session.asked} questions used · ` +
      `${expected} expected on average`;
  }
}

controller.subscribe(render);
startButton.addEventListener("click", () => void controller.start());
yesButton.addEventListener("click", () => void controller.answer(1));
noButton.addEventListener("click", () => void controller.answer(0));
retryButton.addEventListener("click", () => void controller.retry());

void controller.init();
render(controller.getState());
