const INITIAL = {
    phase: "idle",
    alphabet: null,
    session: null,
    question: null,
    history: [],
    error: null,
};
/**
 * Session state machine.  All transitions are driven by server
 * responses; the question count is always derived from the server
 * transcript, and at most one request is in flight at any time.
 */
export class GameController {
    client;
    state = { ...INITIAL };
    inFlight = false;
    listeners = [];
    constructor(client) {
        this.client = client;
    }
    getState() {
        return this.state;
    }
    /** Question count shown in the UI: the server transcript length, nothing else. */
    questionCount() {
        return this.state.session?.transcript.length ?? 0;
    }
    subscribe(listener) {
        this.listeners.push(listener);
    }
    setState(patch) {
        this.state = { ...this.state, ...patch };
        for (const listener of this.listeners) {
            listener(this.state);
        }
    }
    async init() {
        if (this.inFlight)
            return;
        this.inFlight = true;
        try {
            const alphabet = await this.client.alphabet();
            this.setState({ alphabet, error: null });
        }
        catch (err) {
            this.setState({ phase: "error", error: describe(err) });
        }
        finally {
            this.inFlight = false;
        }
    }
    async start() {
        if (this.inFlight)
            return;
        this.inFlight = true;
        this.setState({ phase: "busy", session: null, question: null, history: [], error: null });
        try {
            const { id } = await this.client.createSession();
            const session = await this.client.getSession(id);
            const question = await this.client.getQuestion(id);
            this.setState({ phase: "question", session, question });
        }
        catch (err) {
            this.setState({ phase: "error", error: describe(err) });
        }
        finally {
            this.inFlight = false;
        }
    }
    /**
     * Post one answer.  Returns false without issuing a request when a
     * request is already in flight or no question is pending.
     */
    async answer(bit) {
        const { session, question, phase } = this.state;
        if (this.inFlight || phase !== "question" || !session || session.finished || !question) {
            return false;
        }
        this.inFlight = true;
        const step = { bit, bitsGained: question.pending_bits };
        this.setState({ phase: "busy" });
        try {
            const updated = await this.client.answer(session.id, bit);
            const history = [...this.state.history, step];
            if (updated.finished) {
                this.setState({ phase: "finished", session: updated, question: null, history });
            }
            else {
                const next = await this.client.getQuestion(updated.id);
                this.setState({ phase: "question", session: updated, question: next, history });
            }
            return true;
        }
        catch (err) {
            this.setState({ phase: "error", error: describe(err) });
            return false;
        }
        finally {
            this.inFlight = false;
        }
    }
    /** Recover from an error banner; a live session is resumed in place. */
    async retry() {
        if (this.inFlight)
            return;
        const session = this.state.session;
        if (!session) {
            this.setState({ phase: "idle", error: null });
            await this.init();
            return;
        }
        this.inFlight = true;
        this.setState({ phase: "busy", error: null });
        try {
            const view = await this.client.getSession(session.id);
            if (view.finished) {
                this.setState({ phase: "finished", session: view, question: null });
            }
            else {
                const question = await this.client.getQuestion(view.id);
                this.setState({ phase: "question", session: view, question });
            }
        }
        catch (err) {
            this.setState({ phase: "error", error: describe(err) });
        }
        finally {
            this.inFlight = false;
        }
    }
}
function describe(err) {
    if (err instanceof Error)
        return err.message;
    return String(err);
}
