#include "placekit/server.hpp"

#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "placekit/interfaces.hpp"
#include "placekit/scenario.hpp"

namespace placekit {

using nlohmann::json;

struct SolveServer::Impl {
  httplib::Server server;
  std::thread worker;
};

namespace {

void reply_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void reply_validation_error(httplib::Response& res,
                            const ValidationError& error) {
  json errors = json::array();
  for (const auto& issue : error.issues())
    errors.push_back({{"path", issue.path}, {"message", issue.message}});
  reply_json(res, 400, {{"errors", errors}});
}

void handle_solve(const httplib::Request& req, httplib::Response& res) {
  json body;
  try {
    body = json::parse(req.body);
  } catch (const json::parse_error& e) {
    reply_json(res, 400,
               {{"errors", {{{"path", ""},
                             {"message", std::string("JSON parse error: ") +
                                             e.what()}}}}});
    return;
  }
  try {
    const SolveRequest request = parse_solve_request(body);
    const SolveOutcome outcome =
        run_solver(request.instance, request.solver, request.config);
    reply_json(res, 200, solve_response_to_json(request.instance, outcome));
  } catch (const ValidationError& e) {
    reply_validation_error(res, e);
  } catch (const InfeasibleError& e) {
    reply_json(res, 422, {{"error", e.what()}});
  } catch (const DomainError& e) {
    reply_json(res, 400,
               {{"errors", {{{"path", ""}, {"message", e.what()}}}}});
  }
}

void handle_generate(const httplib::Request& req, httplib::Response& res) {
  json body;
  try {
    body = json::parse(req.body);
  } catch (const json::parse_error& e) {
    reply_json(res, 400, {{"error", std::string("JSON parse error: ") +
                                        e.what()}});
    return;
  }
  if (!body.is_object() || !body.contains("scale") ||
      !body["scale"].is_string()) {
    reply_json(res, 400, {{"error", "expected {scale, seed}"}});
    return;
  }
  const std::uint64_t seed =
      body.contains("seed") ? body["seed"].get<std::uint64_t>() : 0;
  try {
    const ScenarioInstance inst =
        generate(builtin_scale(body["scale"].get<std::string>()), seed);
    reply_json(res, 200, save_scenario(inst));
  } catch (const std::invalid_argument& e) {
    reply_json(res, 400, {{"error", e.what()}});
  } catch (const GenerationError& e) {
    reply_json(res, 422, {{"error", e.what()}});
  }
}

}  // namespace

SolveServer::SolveServer() : impl_(std::make_unique<Impl>()) {
  impl_->server.Get("/v1/health",
                    [](const httplib::Request&, httplib::Response& res) {
                      reply_json(res, 200, {{"status", "ok"}});
                    });
  impl_->server.Post("/v1/solve", handle_solve);
  impl_->server.Post("/v1/generate", handle_generate);
}

SolveServer::~SolveServer() { stop(); }

bool SolveServer::listen(const std::string& host, int port) {
  return impl_->server.listen(host, port);
}

int SolveServer::start_async(const std::string& host) {
  const int port = impl_->server.bind_to_any_port(host);
  impl_->worker = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return port;
}

void SolveServer::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
  if (impl_->worker.joinable()) impl_->worker.join();
}

}  // namespace placekit
