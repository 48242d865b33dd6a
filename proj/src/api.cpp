#include "scalereq/api.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <map>

#include "httplib.h"
#include "scalereq/evaluate.hpp"
#include "scalereq/json_io.hpp"
#include "scalereq/risk.hpp"
#include "scalereq/triage.hpp"
#include "scalereq/validation.hpp"

namespace scalereq {

namespace {

using nlohmann::json;

struct OverrideError {
  std::string parameter;
  std::string scenario;
  std::string message;
};

ApiResponse json_response(int status, const ordered_json& body) { return {status, body.dump() + "\n"}; }

ApiResponse error_response(int status, std::string_view message) {
  return json_response(status, ordered_json{{"error", message}});
}

ordered_json eval_error_json(const EvalError& e) {
  return {{"kind", to_string(e.kind())}, {"detail", e.detail()}, {"members", e.members()}};
}

std::string today() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buffer[16];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%d", &utc);
  return buffer;
}

// Checks one proposed input value against the model; empty on success.
std::string check_input_value(const Model& model, const Parameter* p, std::string_view scenario, double value) {
  if (!p) return "unknown parameter";
  if (!p->is_input()) return "parameter " + p->name + " is derived and cannot be set";
  if (!model.find_scenario(scenario)) return "unknown scenario " + std::string(scenario);
  if (!std::isfinite(value)) return "value must be finite";
  switch (p->category) {
    case Category::Fraction:
      if (value < 0.0 || value > 1.0) return "fraction value " + format_shortest(value) + " is outside [0, 1]";
      break;
    case Category::Burstiness:
      if (value < 1.0) return "burstiness value " + format_shortest(value) + " is below 1";
      break;
    case Category::Count:
      if (value < 0.0) return "count value " + format_shortest(value) + " is negative";
      break;
    default: break;
  }
  return {};
}

std::optional<json> parse_body(std::string_view body) {
  try {
    return json::parse(body.begin(), body.end());
  } catch (const json::parse_error&) {
    return std::nullopt;
  }
}

}  // namespace

struct ApiService::Snapshot {
  Model model;
  std::map<std::string, ApiResponse, std::less<>> responses;
};

ApiService::ApiService(std::string model_path) : path_(std::move(model_path)) {
  Model model = load_model_file(path_);
  const ValidationReport report = validate(model);
  if (!report.ok()) {
    const auto& first = report.errors.front();
    throw Error("model does not validate: " + first.path + ": " + first.message);
  }
  publish(std::move(model));
}

ApiService::~ApiService() = default;

std::shared_ptr<const ApiService::Snapshot> ApiService::snapshot() const {
  std::lock_guard lock(snapshot_mutex_);
  return snapshot_;
}

void ApiService::publish(Model model) {
  auto snap = std::make_shared<Snapshot>();
  const std::uint64_t revision = model.meta.revision;
  auto wrap = [&](std::string_view key, ordered_json payload) {
    ordered_json body;
    body["revision"] = revision;
    body[std::string(key)] = std::move(payload);
    return json_response(200, body);
  };

  snap->responses["model"] = wrap("model", model_to_json(model));
  ordered_json scenarios = ordered_json::array();
  for (const auto& s : model.scenarios) {
    scenarios.push_back({{"name", s.name}, {"description", s.description}, {"rationale", s.rationale}});
  }
  snap->responses["scenarios"] = wrap("scenarios", std::move(scenarios));
  snap->responses["triage"] = wrap("triage", to_json(triage(model)));
  snap->responses["checklist"] = wrap("checklist", to_json(elicitation_checklist(model)));
  try {
    const EvaluationResult eval = evaluate_all(model);
    snap->responses["eval"] = wrap("evaluation", to_json(eval, model));
    snap->responses["risk"] = wrap("risk", to_json(assess_risk(model, eval)));
  } catch (const EvalError& e) {
    ordered_json body{{"revision", revision}, {"error", eval_error_json(e)}};
    snap->responses["eval"] = json_response(500, body);
    snap->responses["risk"] = json_response(500, body);
  } catch (const Error& e) {
    ordered_json body{{"revision", revision}, {"error", {{"kind", "internal"}, {"detail", e.what()}}}};
    snap->responses["eval"] = json_response(500, body);
    snap->responses["risk"] = json_response(500, body);
  }
  snap->model = std::move(model);

  std::lock_guard lock(snapshot_mutex_);
  snapshot_ = std::move(snap);
}

std::uint64_t ApiService::revision() const { return snapshot()->model.meta.revision; }

Model ApiService::model() const { return snapshot()->model; }

ApiResponse ApiService::get(std::string_view resource) const {
  const auto snap = snapshot();
  auto it = snap->responses.find(resource);
  if (it == snap->responses.end()) return error_response(404, "unknown resource");
  return it->second;
}

ApiResponse ApiService::whatif(std::string_view body) const {
  const auto snap = snapshot();
  auto request = parse_body(body);
  if (!request || !request->is_object()) return error_response(400, "request body must be a JSON object");
  json overrides = json::object();
  if (request->contains("overrides")) overrides = (*request)["overrides"];
  if (!overrides.is_object()) return error_response(400, "overrides must be an object");

  Model copy = snap->model;
  std::vector<OverrideError> errors;
  for (const auto& [name, per_scenario] : overrides.items()) {
    if (!per_scenario.is_object()) {
      errors.push_back({name, "", "expected an object of scenario values"});
      continue;
    }
    Parameter* p = copy.find_parameter(name);
    for (const auto& [scenario, value] : per_scenario.items()) {
      if (!value.is_number()) {
        errors.push_back({name, scenario, "value must be a number"});
        continue;
      }
      const double v = value.get<double>();
      std::string problem = check_input_value(copy, p, scenario, v);
      if (!problem.empty()) {
        errors.push_back({name, scenario, std::move(problem)});
        continue;
      }
      p->values[scenario] = v;
    }
  }
  if (!errors.empty()) {
    ordered_json list = ordered_json::array();
    for (const auto& e : errors) {
      list.push_back({{"parameter", e.parameter}, {"scenario", e.scenario}, {"message", e.message}});
    }
    return json_response(422, ordered_json{{"revision", snap->model.meta.revision}, {"errors", std::move(list)}});
  }

  try {
    const EvaluationResult eval = evaluate_all(copy);
    ordered_json out;
    out["revision"] = snap->model.meta.revision;
    out["evaluation"] = to_json(eval, copy);
    out["risk"] = to_json(assess_risk(copy, eval));
    return json_response(200, out);
  } catch (const EvalError& e) {
    return json_response(500, ordered_json{{"revision", snap->model.meta.revision}, {"error", eval_error_json(e)}});
  }
}

ApiResponse ApiService::update_parameter(std::string_view name, std::string_view body) {
  auto request = parse_body(body);
  if (!request || !request->is_object()) return error_response(400, "request body must be a JSON object");
  const json& r = *request;
  if (!r.contains("scenario") || !r["scenario"].is_string()) return error_response(400, "scenario must be a string");
  const std::string scenario = r["scenario"].get<std::string>();
  if (!r.contains("value") || !r["value"].is_number()) return error_response(400, "value must be a number");
  const double value = r["value"].get<double>();

  std::lock_guard write_lock(write_mutex_);
  const auto snap = snapshot();
  const Model& current = snap->model;

  const Parameter* p = current.find_parameter(name);
  if (!p) return error_response(404, "unknown parameter " + std::string(name));
  if (!current.find_scenario(scenario)) return error_response(404, "unknown scenario " + scenario);

  if (!r.contains("provenance") || !r["provenance"].is_object()) return error_response(400, "provenance is required");
  const json& pj = r["provenance"];
  Provenance provenance;
  if (pj.contains("source") && pj["source"].is_string()) provenance.source = pj["source"].get<std::string>();
  if (provenance.source.empty()) return error_response(400, "provenance.source is required");
  if (pj.contains("date")) {
    if (!pj["date"].is_string() || !is_iso_date(pj["date"].get<std::string>())) {
      return error_response(400, "provenance.date must be an ISO-8601 date");
    }
    provenance.date = pj["date"].get<std::string>();
  } else {
    provenance.date = today();
  }
  if (pj.contains("note") && pj["note"].is_string()) provenance.note = pj["note"].get<std::string>();

  if (std::string problem = check_input_value(current, p, scenario, value); !problem.empty()) {
    return json_response(422, ordered_json{{"revision", current.meta.revision},
                                           {"errors", {{{"parameter", name}, {"scenario", scenario}, {"message", problem}}}}});
  }

  if (r.contains("expected_revision")) {
    const json& expected = r["expected_revision"];
    if (!expected.is_number_unsigned() && !expected.is_number_integer()) {
      return error_response(400, "expected_revision must be an integer");
    }
    if (expected.get<std::int64_t>() != static_cast<std::int64_t>(current.meta.revision)) {
      return json_response(409, ordered_json{{"revision", current.meta.revision},
                                             {"error", "stale revision; reload and retry"}});
    }
  }

  Model next = current;
  Parameter* target = next.find_parameter(name);
  target->values[scenario] = value;
  target->provenance = provenance;
  next.meta.revision += 1;
  try {
    save_model_file(next, path_);
  } catch (const Error& e) {
    return error_response(500, e.what());
  }
  const std::uint64_t revision = next.meta.revision;
  publish(std::move(next));

  ordered_json out;
  out["revision"] = revision;
  out["parameter"] = name;
  out["scenario"] = scenario;
  out["value"] = value;
  out["provenance"] = to_json(provenance);
  return json_response(200, out);
}

void mount_routes(httplib::Server& server, ApiService& service, const std::optional<std::string>& ui_dir) {
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Methods", "GET, POST, PUT, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});

  auto reply = [](httplib::Response& res, const ApiResponse& api) {
    res.status = api.status;
    res.set_content(api.body, "application/json");
  };

  for (const char* resource : {"model", "scenarios", "eval", "triage", "risk", "checklist"}) {
    server.Get(std::string("/api/") + resource, [&service, reply, resource](const httplib::Request&, httplib::Response& res) {
      reply(res, service.get(resource));
    });
  }
  server.Post("/api/whatif", [&service, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, service.whatif(req.body));
  });
  server.Put("/api/parameters/:name", [&service, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, service.update_parameter(req.path_params.at("name"), req.body));
  });
  server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  if (ui_dir) server.set_mount_point("/", *ui_dir);
}

}  // namespace scalereq
