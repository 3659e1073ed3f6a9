export class ApiError extends Error {
    code;
    status;
    constructor(code, status, message) {
        super(message);
        this.code = code;
        this.status = status;
        this.name = "ApiError";
    }
}
/** Thin typed client for the game service endpoints. */
export class GameClient {
    baseUrl;
    fetchFn;
    constructor(baseUrl, fetchFn) {
        this.baseUrl = baseUrl;
        this.fetchFn = fetchFn;
    }
    async request(method, path, body) {
        const response = await this.fetchFn(this.baseUrl + path, {
            method,
            headers: { "Content-Type": "application/json" },
            body: body === undefined ? undefined : JSON.stringify(body),
        });
        let payload;
        try {
            payload = await response.json();
        }
        catch {
            throw new ApiError("bad_payload", response.status, "response was not JSON");
        }
        if (!response.ok) {
            const err = payload;
            throw new ApiError(err.error ?? "http_error", response.status, err.message ?? `request failed with status ${response.status}`);
        }
        return payload;
    }
    alphabet() {
        return this.request("GET", "/alphabet");
    }
    createSession() {
        return this.request("POST", "/sessions");
    }
    getSession(id) {
        return this.request("GET", `/sessions/${id}`);
    }
    getQuestion(id) {
        return this.request("GET", `/sessions/${id}/question`);
    }
    answer(id, bit) {
        return this.request("POST", `/sessions/${id}/answer`, { bit });
    }
}
