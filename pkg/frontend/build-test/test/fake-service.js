/**
 * In-memory stand-in for the game service, speaking the same JSON over
 * a FetchLike interface.  Implements the dyadic flowers deck whose
 * Huffman codes are rose=0, tulip=10, daisy=110, lily=111.
 */
const FLOWERS = {
    p: 1.0,
    left: { p: 0.5, label: "rose" },
    right: {
        p: 0.5,
        left: { p: 0.25, label: "tulip" },
        right: {
            p: 0.25,
            left: { p: 0.125, label: "daisy" },
            right: { p: 0.125, label: "lily" },
        },
    },
};
/** Degenerate one-concept deck: the mandatory single question, codeword "0". */
const SINGLETON = { p: 1.0, label: "only" };
function leaves(node) {
    if (node.label)
        return [node.label];
    return [...leaves(node.left), ...leaves(node.right)];
}
function splitEntropy(pNo, pYes) {
    let bits = 0;
    for (const q of [pNo, pYes]) {
        if (q > 0 && q < 1)
            bits -= q * Math.log2(q);
    }
    return bits;
}
export class FakeService {
    requests = [];
    alphabet;
    root;
    sessions = new Map();
    nextId = 1;
    constructor(deck = "flowers") {
        this.root = deck === "flowers" ? FLOWERS : SINGLETON;
        this.alphabet =
            deck === "flowers"
                ? { size: 4, entropy_bits: 1.75, expected_questions: 1.75 }
                : { size: 1, entropy_bits: 0.0, expected_questions: 1.0 };
    }
    fetch = (url, init) => {
        const method = init?.method ?? "GET";
        this.requests.push(`${method} ${url}`);
        return Promise.resolve(this.route(method, url, init?.body));
    };
    respond(status, payload) {
        return {
            ok: status >= 200 && status < 300,
            status,
            json: () => Promise.resolve(payload),
        };
    }
    sessionView(session) {
        const view = {
            id: session.id,
            asked: session.transcript.length,
            finished: session.finished,
            transcript: [...session.transcript],
        };
        if (session.finished)
            view.answer_label = session.node.label;
        return view;
    }
    route(method, url, body) {
        if (method === "GET" && url === "/alphabet") {
            return this.respond(200, this.alphabet);
        }
        if (method === "POST" && url === "/sessions") {
            const id = `fake${this.nextId++}`;
            this.sessions.set(id, { id, node: this.root, transcript: [], finished: false });
            return this.respond(201, { id });
        }
        const answerMatch = url.match(/^\/sessions\/(\w+)\/answer$/);
        if (method === "POST" && answerMatch) {
            const session = this.sessions.get(answerMatch[1]);
            if (!session)
                return this.respond(404, { error: "unknown_session", message: "no session" });
            if (session.finished) {
                return this.respond(409, { error: "finished", message: "session is finished" });
            }
            const bit = JSON.parse(body ?? "{}").bit;
            if (bit !== 0 && bit !== 1) {
                return this.respond(400, { error: "bad_request", message: "bit must be 0 or 1" });
            }
            if (!session.node.label) {
                session.node = bit === 0 ? session.node.left : session.node.right;
            }
            session.transcript.push(bit);
            session.finished = session.node.label !== undefined;
            return this.respond(200, this.sessionView(session));
        }
        const questionMatch = url.match(/^\/sessions\/(\w+)\/question$/);
        if (method === "GET" && questionMatch) {
            const session = this.sessions.get(questionMatch[1]);
            if (!session)
                return this.respond(404, { error: "unknown_session", message: "no session" });
            if (session.finished) {
                return this.respond(409, { error: "finished", message: "no question pending" });
            }
            if (session.node.label) {
                // degenerate one-leaf deck: the single mandatory question
                return this.respond(200, {
                    no_labels_sample: [session.node.label],
                    yes_labels_sample: [],
                    no_count: 1,
                    yes_count: 0,
                    p_no: 1.0,
                    p_yes: 0.0,
                    pending_bits: 0.0,
                });
            }
            const left = session.node.left;
            const right = session.node.right;
            const total = left.p + right.p;
            const pNo = left.p / total;
            const pYes = right.p / total;
            return this.respond(200, {
                no_labels_sample: leaves(left).slice(0, 6),
                yes_labels_sample: leaves(right).slice(0, 6),
                no_count: leaves(left).length,
                yes_count: leaves(right).length,
                p_no: pNo,
                p_yes: pYes,
                pending_bits: splitEntropy(pNo, pYes),
            });
        }
        const sessionMatch = url.match(/^\/sessions\/(\w+)$/);
        if (method === "GET" && sessionMatch) {
            const session = this.sessions.get(sessionMatch[1]);
            if (!session)
                return this.respond(404, { error: "unknown_session", message: "no session" });
            return this.respond(200, this.sessionView(session));
        }
        return this.respond(404, { error: "not_found", message: `no route ${method} ${url}` });
    }
}
/** Wraps a FetchLike so the next `failures` calls reject like a dead network. */
export class FlakyFetch {
    inner;
    failures = 0;
    constructor(inner) {
        this.inner = inner;
    }
    fetch = (url, init) => {
        if (this.failures > 0) {
            this.failures -= 1;
            return Promise.reject(new TypeError("network down"));
        }
        return this.inner(url, init);
    };
}
/** FetchLike gate that holds every request until released by the test. */
export class GatedFetch {
    inner;
    waiters = [];
    constructor(inner) {
        this.inner = inner;
    }
    get pending() {
        return this.waiters.length;
    }
    release() {
        const next = this.waiters.shift();
        if (next)
            next();
    }
    releaseAll() {
        while (this.waiters.length)
            this.release();
    }
    fetch = async (url, init) => {
        await new Promise((resolve) => this.waiters.push(resolve));
        return this.inner(url, init);
    };
}
