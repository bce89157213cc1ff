/// <reference types="vitest/config" />
import { defineConfig } from "vite";

// In development the UI proxies API paths to a locally running service
// (`catsd serve --port 8000`); built assets can sit behind any static
// host on the same origin as the API.
export default defineConfig({
  server: {
    proxy: {
      "/projects": "http://127.0.0.1:8000",
      "/compute": "http://127.0.0.1:8000",
      "/spec": "http://127.0.0.1:8000",
    },
  },
  build: {
    outDir: "dist",
  },
  test: {
    include: ["tests/**/*.test.{ts,tsx}"],
  },
});
