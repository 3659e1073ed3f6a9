/** Wire types, mirroring the game service JSON schema exactly. */
export {};
