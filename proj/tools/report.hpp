#pragma once

#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include <discrete_appell/identities.hpp>

namespace report {

using json = nlohmann::ordered_json;
using dappell::Complex;

inline constexpr const char* kSuiteVersion = "1.0";

inline json complex_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

inline std::string complex_text(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (std::signbit(z.imag()) ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

inline json params_json(const dappell::ParameterSet& q) {
  return json{{"a", complex_json(q.a)},
              {"b1", complex_json(q.b1)},
              {"b2", complex_json(q.b2)},
              {"c1", complex_json(q.c1)},
              {"c2", complex_json(q.c2)}};
}

inline json discrete_json(const dappell::DiscreteParams& d) {
  json j{{"variant", dappell::to_string(d.variant)}};
  switch (d.variant) {
    case dappell::Variant::V1:
      j["t1"] = complex_json(d.t1);
      j["t2"] = complex_json(d.t2);
      j["k1"] = d.k1;
      j["k2"] = d.k2;
      break;
    case dappell::Variant::V2:
      j["t"] = complex_json(d.t);
      j["k"] = d.k;
      break;
    case dappell::Variant::V3:
      j["t1"] = complex_json(d.t1);
      j["t2"] = complex_json(d.t2);
      j["k"] = d.k;
      break;
  }
  return j;
}

inline json point_json(const dappell::PointRecord& p) {
  json j{{"params", params_json(p.params)},
         {"discrete", discrete_json(p.discrete)},
         {"x", complex_json(p.point.x)},
         {"y", complex_json(p.point.y)}};
  for (const auto& [k, v] : p.extra) j[k] = v;
  return j;
}

inline json grid_json(const std::vector<dappell::GridPoint>& grid) {
  json arr = json::array();
  for (const auto& g : grid)
    arr.push_back(json{{"name", g.name},
                       {"params", params_json(g.params)},
                       {"v1", discrete_json(g.v1)},
                       {"v2", discrete_json(g.v2)},
                       {"x", complex_json(g.point.x)},
                       {"y", complex_json(g.point.y)}});
  return arr;
}

inline json result_json(const dappell::IdentityCheckResult& r) {
  return json{{"id", r.id.str()},
              {"point", point_json(r.point)},
              {"lhs", complex_json(r.lhs)},
              {"rhs", complex_json(r.rhs)},
              {"abs_residual", r.abs_residual},
              {"rel_residual", r.rel_residual},
              {"tolerance", r.tolerance},
              {"passed", r.passed},
              {"skipped", r.skipped},
              {"notes", r.notes}};
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string grid_name(const dappell::PointRecord& p) {
  for (const auto& [k, v] : p.extra)
    if (k == "grid") return v;
  return "";
}

inline std::string verdict(const dappell::IdentityCheckResult& r) {
  return r.skipped ? "SKIP" : (r.passed ? "PASS" : "FAIL");
}

inline std::string suite_report(const std::vector<dappell::GridPoint>& grid,
                                const std::vector<dappell::IdentityCheckResult>& results,
                                const std::string& format) {
  const auto sum = dappell::summarize(results);
  std::ostringstream os;
  os.precision(17);
  if (format == "json") {
    json j;
    j["suite_version"] = kSuiteVersion;
    j["grid"] = grid_json(grid);
    j["results"] = json::array();
    for (const auto& r : results) j["results"].push_back(result_json(r));
    j["summary"] = json{{"pass", sum.pass}, {"fail", sum.fail}, {"skip", sum.skip}};
    os << j.dump(2) << "\n";
  } else if (format == "csv") {
    os << "id,grid,lhs_re,lhs_im,rhs_re,rhs_im,abs_residual,rel_residual,tolerance,verdict,notes\n";
    for (const auto& r : results)
      os << csv_field(r.id.str()) << "," << grid_name(r.point) << "," << r.lhs.real() << ","
         << r.lhs.imag() << "," << r.rhs.real() << "," << r.rhs.imag() << "," << r.abs_residual
         << "," << r.rel_residual << "," << r.tolerance << "," << verdict(r) << ","
         << csv_field(r.notes) << "\n";
  } else {
    os.precision(3);
    for (const auto& r : results) {
      os << verdict(r) << "  " << r.id.str() << " @" << grid_name(r.point);
      if (!r.skipped) os << "  rel=" << r.rel_residual << " tol=" << r.tolerance;
      if (!r.notes.empty()) os << "  (" << r.notes << ")";
      os << "\n";
    }
    os << "pass " << sum.pass << ", fail " << sum.fail << ", skip " << sum.skip << "\n";
  }
  return os.str();
}

}  // namespace report
