#pragma once

#include <memory>
#include <string>

namespace placekit {

// JSON-over-HTTP solve service. Stateless between requests; each solve
// owns its rng.
//   POST /v1/solve     SolveRequest -> SolveResponse
//   POST /v1/generate  {scale, seed} -> scenario document
//   GET  /v1/health    liveness probe
class SolveServer {
 public:
  SolveServer();
  ~SolveServer();

  // Blocks until stop() is called. Returns false if binding failed.
  bool listen(const std::string& host, int port);
  // Binds to an ephemeral port and serves on a background thread
  // (test support). Returns the bound port.
  int start_async(const std::string& host);
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace placekit
