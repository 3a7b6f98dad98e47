import { defineConfig } from "vite";

// Dev server proxies API and telemetry to a locally running gateway
// (`bciwheel serve --port 8000`), so the cockpit stays same-origin.
export default defineConfig({
  server: {
    proxy: {
      "/command": "http://localhost:8000",
      "/intent": "http://localhost:8000",
      "/state": "http://localhost:8000",
      "/map": "http://localhost:8000",
      "/telemetry": { target: "ws://localhost:8000", ws: true },
    },
  },
});
