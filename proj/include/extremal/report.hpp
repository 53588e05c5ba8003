#pragma once

// Run manifests and report documents, plus a deterministic JSON writer:
// 2-space indentation, key order preserved, doubles printed with 17
// significant digits so that parse + re-serialize is byte-identical.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "extremal/rng.hpp"
#include "extremal/verification.hpp"
#include "extremal/version.hpp"

namespace extremal {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchema = 1;

struct RunManifest {
  std::string command;
  Json parameters = Json::object();
  std::uint64_t seed = 0;
  Json tolerances = Json::object();
  std::string timestamp;
  std::string tool_version = kToolVersion;
  std::string rng = std::string(Rng::kName);
};

struct ReportDocument {
  RunManifest manifest;
  std::vector<Check> checks;
  std::vector<std::string> findings;
  Json data = Json::object();
  int exit_status = 0;

  bool all_pass() const {
    for (const auto& c : checks) {
      if (!c.pass) return false;
    }
    return true;
  }

  // 0 iff every check passes and nothing was found.
  void finalize() { exit_status = (all_pass() && findings.empty()) ? 0 : 1; }

  void add(const VerificationReport& r) { checks.insert(checks.end(), r.checks.begin(), r.checks.end()); }
};

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace detail {

inline std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  // Keep a float marker so the value re-parses as a float ("-0" would not).
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

inline void write_json(const Json& j, std::string& out, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        out += Json(it.key()).dump();
        out += ": ";
        write_json(it.value(), out, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        write_json(e, out, depth + 1);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

inline Json complex_to_json(std::complex<double> z) {
  auto num = [](double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); };
  if (z.imag() == 0.0) return num(z.real());
  return Json::array({num(z.real()), num(z.imag())});
}

inline double number_or_nan(const Json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

inline std::complex<double> complex_from_json(const Json& j) {
  if (j.is_array()) return {number_or_nan(j.at(0)), number_or_nan(j.at(1))};
  return {number_or_nan(j), 0.0};
}

inline Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace detail

inline std::string write_json(const Json& j) {
  std::string out;
  detail::write_json(j, out, 0);
  return out;
}

inline Json to_json(const Check& c) {
  Json j = Json::object();
  j["name"] = c.name;
  j["pass"] = c.pass;
  j["computed"] = detail::complex_to_json(c.computed);
  j["reference"] = detail::complex_to_json(c.reference);
  j["gap"] = detail::finite_or_null(c.gap);
  j["tolerance"] = detail::finite_or_null(c.tolerance);
  return j;
}

inline Check check_from_json(const Json& j) {
  Check c;
  c.name = j.at("name").get<std::string>();
  c.pass = j.at("pass").get<bool>();
  c.computed = detail::complex_from_json(j.at("computed"));
  c.reference = detail::complex_from_json(j.at("reference"));
  c.gap = detail::number_or_nan(j.at("gap"));
  c.tolerance = detail::number_or_nan(j.at("tolerance"));
  return c;
}

inline Json to_json(const RunManifest& m) {
  Json j = Json::object();
  j["command"] = m.command;
  j["parameters"] = m.parameters;
  j["seed"] = m.seed;
  j["tolerances"] = m.tolerances;
  j["timestamp"] = m.timestamp;
  j["tool_version"] = m.tool_version;
  j["rng"] = m.rng;
  return j;
}

inline RunManifest manifest_from_json(const Json& j) {
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.parameters = j.at("parameters");
  m.seed = j.at("seed").get<std::uint64_t>();
  m.tolerances = j.at("tolerances");
  m.timestamp = j.at("timestamp").get<std::string>();
  m.tool_version = j.at("tool_version").get<std::string>();
  m.rng = j.at("rng").get<std::string>();
  return m;
}

// Everything except the manifest; identical for identical manifests.
inline Json payload_json(const ReportDocument& doc) {
  Json j = Json::object();
  Json checks = Json::array();
  for (const auto& c : doc.checks) checks.push_back(to_json(c));
  j["checks"] = std::move(checks);
  j["findings"] = doc.findings;
  j["data"] = doc.data;
  j["exit_status"] = doc.exit_status;
  return j;
}

inline Json to_json(const ReportDocument& doc) {
  Json j = Json::object();
  j["schema"] = kReportSchema;
  j["manifest"] = to_json(doc.manifest);
  const Json payload = payload_json(doc);
  for (const auto& [key, value] : payload.items()) j[key] = value;
  return j;
}

inline ReportDocument report_from_json(const Json& j) {
  if (j.at("schema").get<int>() != kReportSchema) throw std::runtime_error("unsupported report schema");
  ReportDocument doc;
  doc.manifest = manifest_from_json(j.at("manifest"));
  for (const auto& c : j.at("checks")) doc.checks.push_back(check_from_json(c));
  doc.findings = j.at("findings").get<std::vector<std::string>>();
  doc.data = j.at("data");
  doc.exit_status = j.at("exit_status").get<int>();
  return doc;
}

inline std::string serialize(const ReportDocument& doc) { return write_json(to_json(doc)); }

inline ReportDocument parse_report(const std::string& text) { return report_from_json(Json::parse(text)); }

}  // namespace extremal
