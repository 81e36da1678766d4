import { defineConfig } from "vitest/config";

export default defineConfig({
  build: {
    outDir: "dist",
    emptyOutDir: true,
  },
  server: {
    proxy: {
      // Dev server proxies API calls to a locally running `mlogs serve`.
      "/projects": "http://127.0.0.1:8000",
      "/healthz": "http://127.0.0.1:8000",
    },
  },
  test: {
    // e2e suites install a jsdom DOM themselves; node keeps fetch and
    // FormData consistent with the File objects the tests build.
    environment: "node",
    testTimeout: 120_000,
    hookTimeout: 120_000,
  },
});
