import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "happy-dom",
    testTimeout: 30000,
    hookTimeout: 30000,
    fileParallelism: false,
  },
});
