#include "triad/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "triad/errors.hpp"

namespace triad {

namespace {
using json = nlohmann::ordered_json;

json integral_to_json(const IntegralResult& ir) {
  return json{{"value", ir.value},
              {"target", ir.target},
              {"rel_err", ir.rel_err},
              {"normalized", ir.normalized}};
}

IntegralResult integral_from_json(const json& j) {
  IntegralResult ir;
  ir.value = j.at("value").get<double>();
  ir.target = j.at("target").get<double>();
  ir.rel_err = j.at("rel_err").get<double>();
  ir.normalized = j.at("normalized").get<double>();
  return ir;
}

}  // namespace

std::string emit_report(const ObstructionReport& r) {
  json j;
  j["nu"] = r.nu;
  j["grid"] = json{{"nodes_per_axis", r.nodes_per_axis}, {"epsilon", r.epsilon}};
  j["stages"] = json::array();
  for (const auto& s : r.stages) {
    json js{{"name", s.name},
            {"max_residual", s.max_residual},
            {"tolerance", s.tolerance},
            {"pass", s.pass}};
    if (s.lower_bound) js["lower_bound"] = true;
    j["stages"].push_back(js);
  }
  j["integrals"] = json::object();
  for (const auto& [k, v] : r.integrals) j["integrals"][k] = integral_to_json(v);
  if (r.lambda)
    j["lambda"] = *r.lambda;
  else
    j["lambda"] = nullptr;
  j["gauge"] = json{{"t1", r.gauge_t1}, {"t2", r.gauge_t2}};
  j["bott_terms"] = r.bott_term_integrals;
  j["haar"] = json{{"value", r.haar_value}, {"normalized", r.haar_normalized}};
  j["seed"] = r.seed;
  j["lane"] = r.lane;
  j["pass"] = r.pass;
  return j.dump(2) + "\n";
}

ObstructionReport parse_report(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("report parse failure: ") + e.what());
  }
  ObstructionReport r;
  r.nu = j.at("nu").get<double>();
  r.nodes_per_axis = j.at("grid").at("nodes_per_axis").get<int>();
  r.epsilon = j.at("grid").at("epsilon").get<double>();
  for (const auto& js : j.at("stages")) {
    StageResult s;
    s.name = js.at("name").get<std::string>();
    s.max_residual = js.at("max_residual").get<double>();
    s.tolerance = js.at("tolerance").get<double>();
    s.pass = js.at("pass").get<bool>();
    s.lower_bound = js.value("lower_bound", false);
    r.stages.push_back(s);
  }
  for (const auto& [k, v] : j.at("integrals").items()) r.integrals[k] = integral_from_json(v);
  if (!j.at("lambda").is_null()) r.lambda = j.at("lambda").get<double>();
  r.gauge_t1 = j.at("gauge").at("t1").get<std::string>();
  r.gauge_t2 = j.at("gauge").at("t2").get<std::string>();
  r.bott_term_integrals = j.at("bott_terms").get<std::array<double, 4>>();
  r.haar_value = j.at("haar").at("value").get<double>();
  r.haar_normalized = j.at("haar").at("normalized").get<bool>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.lane = j.at("lane").get<std::string>();
  r.pass = j.at("pass").get<bool>();
  return r;
}

bool operator==(const StageResult& a, const StageResult& b) {
  return a.name == b.name && a.max_residual == b.max_residual && a.tolerance == b.tolerance &&
         a.pass == b.pass && a.lower_bound == b.lower_bound;
}

bool operator==(const IntegralResult& a, const IntegralResult& b) {
  return a.value == b.value && a.target == b.target && a.rel_err == b.rel_err &&
         a.normalized == b.normalized;
}

bool operator==(const ObstructionReport& a, const ObstructionReport& b) {
  return a.nu == b.nu && a.nodes_per_axis == b.nodes_per_axis && a.epsilon == b.epsilon &&
         a.seed == b.seed && a.lane == b.lane && a.gauge_t1 == b.gauge_t1 &&
         a.gauge_t2 == b.gauge_t2 && a.lambda == b.lambda && a.stages == b.stages &&
         a.integrals == b.integrals && a.bott_term_integrals == b.bott_term_integrals &&
         a.haar_value == b.haar_value && a.haar_normalized == b.haar_normalized &&
         a.pass == b.pass;
}

std::string format_report_text(const ObstructionReport& r) {
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof line, "nu=%g  nodes=%d  epsilon=%g  gauge t1=%s t2=%s  lane=%s\n",
                r.nu, r.nodes_per_axis, r.epsilon, r.gauge_t1.c_str(), r.gauge_t2.c_str(),
                r.lane.c_str());
  os << line;
  if (r.lambda) {
    std::snprintf(line, sizeof line, "curl eigenvalue lambda = %.12g (target %.12g)\n",
                  *r.lambda, -r.nu);
    os << line;
  }
  if (!r.stages.empty()) {
    std::snprintf(line, sizeof line, "%-26s %14s %12s  %s\n", "stage", "max_residual",
                  "tolerance", "result");
    os << line;
    for (const auto& s : r.stages) {
      std::snprintf(line, sizeof line, "%-26s %14.6e %12.3e  %s%s\n", s.name.c_str(),
                    s.max_residual, s.tolerance, s.pass ? "PASS" : "FAIL",
                    s.lower_bound ? " (lower bound)" : "");
      os << line;
    }
  }
  for (const auto& [k, v] : r.integrals) {
    std::snprintf(line, sizeof line,
                  "integral %-8s value=%.12g target=%.12g rel_err=%.3e\n", k.c_str(), v.value,
                  v.target, v.rel_err);
    os << line;
  }
  if (r.integrals.count("volume")) {
    std::snprintf(line, sizeof line,
                  "haar total = %.12g (normalized to 1 only at nu = 1: %s)\n", r.haar_value,
                  r.haar_normalized ? "yes" : "no");
    os << line;
  }
  os << (r.pass ? "RESULT: PASS" : "RESULT: FAIL") << "\n";
  return os.str();
}

}  // namespace triad
