// Command-line front end: point evaluation, identity verification and the
// identity catalogue.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <discrete_appell/identities.hpp>

#include "report.hpp"

namespace {

using namespace dappell;
using report::json;

enum Exit { kOk = 0, kUsage = 1, kDiverged = 2, kBudget = 3 };

const std::vector<std::string> kComplexKeys = {"a", "b1", "b2", "c1", "c2", "t1", "t2", "t", "x", "y"};
const std::vector<std::string> kCountKeys = {"k1", "k2", "k"};

const std::map<std::string, Family> kFamilyNames = {
    {"diff-formula", Family::DiffFormula},
    {"diff-op-formula", Family::DiffOpFormula},
    {"finite-sum", Family::FiniteSum},
    {"infinite-sum", Family::InfiniteSum},
    {"recursion", Family::Recursion},
    {"ladder-differential", Family::LadderDifferential},
    {"ladder-difference", Family::LadderDifference},
    {"pairwise-differential", Family::PairwiseDifferential},
    {"pairwise-difference", Family::PairwiseDifference},
    {"reduction", Family::Reduction},
    {"humbert-limit", Family::HumbertLimit},
    {"integral", Family::IntegralRep},
    {"difference-eq", Family::DifferenceEq},
};

struct RunConfig {
  std::map<std::string, std::optional<std::string>> complex_values;
  std::map<std::string, std::optional<unsigned>> counts;
  std::optional<std::string> variant, humbert, format, config;
  bool f2 = false;
  std::vector<std::string> families;
  std::optional<std::size_t> order, max_diagonal;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
};

std::string json_scalar_text(const json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) {
    std::ostringstream os;
    os.precision(17);
    os << v.get<double>();
    return os.str();
  }
  if (v.is_object() && v.contains("re")) {
    std::ostringstream os;
    os.precision(17);
    const double im = v.value("im", 0.0);
    os << v.at("re").get<double>() << (im < 0 ? "" : "+") << im << "i";
    return os.str();
  }
  throw ConfigError("config key '" + key + "' has an unsupported value");
}

/// Values from the config file fill whatever the command line left unset.
void merge_config(RunConfig& rc) {
  if (!rc.config) return;
  std::ifstream in(*rc.config);
  if (!in) throw ConfigError("cannot open config file " + *rc.config);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config file must hold a JSON object");
  for (const auto& [key, v] : doc.items()) {
    try {
      if (rc.complex_values.count(key)) {
        if (!rc.complex_values[key]) rc.complex_values[key] = json_scalar_text(v, key);
      } else if (rc.counts.count(key)) {
        if (!rc.counts[key]) rc.counts[key] = v.get<unsigned>();
      } else if (key == "variant") {
        if (!rc.variant) rc.variant = v.get<std::string>();
      } else if (key == "humbert") {
        if (!rc.humbert) rc.humbert = v.get<std::string>();
      } else if (key == "format") {
        if (!rc.format) rc.format = v.get<std::string>();
      } else if (key == "f2") {
        rc.f2 = rc.f2 || v.get<bool>();
      } else if (key == "family") {
        if (rc.families.empty()) rc.families = v.get<std::vector<std::string>>();
      } else if (key == "order") {
        if (!rc.order) rc.order = v.get<std::size_t>();
      } else if (key == "max_diagonal") {
        if (!rc.max_diagonal) rc.max_diagonal = v.get<std::size_t>();
      } else if (key == "tol") {
        if (!rc.tol) rc.tol = v.get<double>();
      } else if (key == "seed") {
        if (!rc.seed) rc.seed = v.get<std::uint64_t>();
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    } catch (const json::exception& e) {
      throw ConfigError("config key '" + key + "': " + e.what());
    }
  }
}

SummationConfig summation_config(const RunConfig& rc) {
  SummationConfig cfg;
  if (rc.tol) cfg.rel_tolerance = *rc.tol;
  if (rc.max_diagonal) {
    cfg.max_diagonal = *rc.max_diagonal;
  } else if (const char* env = std::getenv("DISCRETE_APPELL_MAX_DIAGONAL")) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(env, &used);
      if (used != std::string(env).size() || v < 1) throw std::invalid_argument(env);
      cfg.max_diagonal = static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      throw ConfigError("DISCRETE_APPELL_MAX_DIAGONAL must be a positive integer");
    }
  }
  cfg.validate();
  return cfg;
}

std::string format_of(const RunConfig& rc) {
  const std::string f = rc.format.value_or("json");
  if (f != "json" && f != "csv" && f != "text") throw ConfigError("unknown format '" + f + "'");
  return f;
}

Complex need_complex(const RunConfig& rc, const std::string& key) {
  const auto& v = rc.complex_values.at(key);
  if (!v) throw ConfigError("missing --" + key);
  return parse_complex(*v);
}

unsigned need_count(const RunConfig& rc, const std::string& key) {
  const auto& v = rc.counts.at(key);
  if (!v) throw ConfigError("missing --" + key);
  return *v;
}

Variant parse_variant(const std::string& s) {
  if (s == "v1") return Variant::V1;
  if (s == "v2") return Variant::V2;
  if (s == "v3") return Variant::V3;
  throw ConfigError("unknown variant '" + s + "'");
}

std::string eval_report(const SeriesValue& v, const std::string& function, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    json j{{"function", function},
           {"value", report::complex_json(v.value)},
           {"status", to_string(v.status)},
           {"terms_used", v.terms_used},
           {"tail_estimate", v.tail_estimate}};
    os << j.dump(2) << "\n";
  } else if (format == "csv") {
    os.precision(17);
    os << "function,value_re,value_im,status,terms_used,tail_estimate\n"
       << function << "," << v.value.real() << "," << v.value.imag() << "," << to_string(v.status)
       << "," << v.terms_used << "," << v.tail_estimate << "\n";
  } else {
    os.precision(17);
    os << "function: " << function << "\n"
       << "value: " << report::complex_text(v.value) << "\n"
       << "status: " << to_string(v.status) << "\n"
       << "terms_used: " << v.terms_used << "\n"
       << "tail_estimate: " << v.tail_estimate << "\n";
  }
  return os.str();
}

int exit_for(SeriesStatus s) {
  switch (s) {
    case SeriesStatus::Terminated:
    case SeriesStatus::Converged: return kOk;
    case SeriesStatus::DivergenceDetected: return kDiverged;
    case SeriesStatus::MaxTermsReached: return kBudget;
  }
  return kUsage;
}

int cmd_eval(const RunConfig& rc) {
  const std::string format = format_of(rc);
  const SummationConfig cfg = summation_config(rc);
  const EvalPoint p{need_complex(rc, "x"), need_complex(rc, "y")};
  ParameterSet q;
  q.a = need_complex(rc, "a");
  q.c1 = need_complex(rc, "c1");
  q.c2 = need_complex(rc, "c2");
  std::optional<HumbertKind> humbert;
  if (rc.humbert) {
    if (*rc.humbert == "psi1")
      humbert = HumbertKind::Psi1;
    else if (*rc.humbert == "psi2")
      humbert = HumbertKind::Psi2;
    else
      throw ConfigError("unknown Humbert function '" + *rc.humbert + "'");
    if (rc.f2) throw ConfigError("--f2 and --humbert exclude each other");
  }
  if (!humbert || *humbert == HumbertKind::Psi1) q.b1 = need_complex(rc, "b1");
  if (!humbert) q.b2 = need_complex(rc, "b2");

  std::string function;
  SeriesValue v;
  try {
    if (rc.f2) {
      function = "F2";
      v = eval_f2(q, p, cfg);
    } else {
      const Variant variant = parse_variant(rc.variant.value_or("v1"));
      DiscreteParams d;
      switch (variant) {
        case Variant::V1:
          d = DiscreteParams::v1(need_complex(rc, "t1"), need_complex(rc, "t2"), need_count(rc, "k1"),
                                 need_count(rc, "k2"));
          break;
        case Variant::V2:
          d = DiscreteParams::v2(need_complex(rc, "t"), need_count(rc, "k"));
          break;
        case Variant::V3:
          d = DiscreteParams::v3(need_complex(rc, "t1"), need_complex(rc, "t2"), need_count(rc, "k"));
          break;
      }
      if (humbert) {
        if (variant == Variant::V3) throw ConfigError("Humbert functions are defined for v1 and v2");
        function = std::string(to_string(*humbert)) + "/" + to_string(variant);
        v = eval_humbert(*humbert, variant, q, d, p, cfg);
      } else {
        function = std::string("F2/") + to_string(variant);
        v = eval_discrete_f2(q, d, p, cfg);
      }
    }
  } catch (const DivergenceError& e) {
    std::cerr << "divergence: " << e.what() << "\n";
    v = e.partial();
    v.status = SeriesStatus::DivergenceDetected;
  }
  std::cout << eval_report(v, function, format) << std::flush;
  if (v.status == SeriesStatus::MaxTermsReached)
    std::cerr << "series hit the diagonal budget before converging\n";
  return exit_for(v.status);
}

IdentityFilter build_filter(const RunConfig& rc) {
  std::vector<Family> fams;
  for (const std::string& name : rc.families) {
    auto it = kFamilyNames.find(name);
    if (it == kFamilyNames.end()) throw ConfigError("unknown family '" + name + "'");
    fams.push_back(it->second);
  }
  std::optional<Variant> only;
  if (rc.variant) {
    only = parse_variant(*rc.variant);
    if (*only == Variant::V3) throw ConfigError("identities are catalogued for v1 and v2");
  }
  return [fams, only](const IdentityId& id) {
    if (only && id.variant != *only) return false;
    return fams.empty() || std::find(fams.begin(), fams.end(), id.family) != fams.end();
  };
}

int cmd_verify(const RunConfig& rc) {
  const std::string format = format_of(rc);
  SuiteOptions opts;
  opts.summation = summation_config(rc);
  if (rc.order) {
    if (*rc.order < 4) throw ConfigError("--order must be at least 4");
    opts.quadrature_order = *rc.order;
  }
  const auto grid = jitter_grid(default_grid(), rc.seed.value_or(0));
  const auto results = run_suite(build_filter(rc), grid, opts);
  std::cout << report::suite_report(grid, results, format) << std::flush;
  return summarize(results).fail == 0 ? kOk : kDiverged;
}

int cmd_list(const RunConfig& rc) {
  const std::string format = format_of(rc);
  const IdentityFilter filter = build_filter(rc);
  std::vector<IdentityId> ids;
  for (const IdentityId& id : list_identities())
    if (filter(id)) ids.push_back(id);
  std::map<std::string, std::size_t> counts;
  std::vector<std::string> order;
  for (const IdentityId& id : ids) {
    const std::string k = std::string(to_string(id.family)) + "/" + to_string(id.variant);
    if (!counts.count(k)) order.push_back(k);
    ++counts[k];
  }
  std::ostringstream os;
  if (format == "json") {
    json j;
    j["identities"] = json::array();
    for (const IdentityId& id : ids) {
      json e{{"id", id.str()}, {"family", to_string(id.family)}, {"variant", to_string(id.variant)},
             {"detail", id.detail}};
      if (is_ladder_family(id.family)) e["relation"] = ladder_relation_text(id);
      j["identities"].push_back(e);
    }
    j["counts"] = json::object();
    for (const auto& k : order) j["counts"][k] = counts[k];
    j["total"] = ids.size();
    os << j.dump(2) << "\n";
  } else if (format == "csv") {
    os << "id,family,variant,detail\n";
    for (const IdentityId& id : ids)
      os << report::csv_field(id.str()) << "," << to_string(id.family) << ","
         << to_string(id.variant) << "," << report::csv_field(id.detail) << "\n";
  } else {
    for (const IdentityId& id : ids) {
      os << id.str();
      if (is_ladder_family(id.family)) os << "    " << ladder_relation_text(id);
      os << "\n";
    }
    os << "\n";
    for (const auto& k : order) os << k << ": " << counts[k] << "\n";
    os << "total: " << ids.size() << "\n";
  }
  std::cout << os.str() << std::flush;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig rc;
  for (const auto& k : kComplexKeys) rc.complex_values[k];
  for (const auto& k : kCountKeys) rc.counts[k];

  CLI::App app{"Discrete analogues of the Appell function F2: evaluation and identity checks"};
  app.require_subcommand(1);

  auto add_shared = [&](CLI::App* sub) {
    sub->add_option("--variant", rc.variant, "v1, v2 or v3");
    sub->add_option("--format", rc.format, "json, csv or text");
    sub->add_option("--config", rc.config, "JSON file with default values for any option");
    sub->add_option("--tol", rc.tol, "relative tolerance of the series engine");
    sub->add_option("--max-diagonal", rc.max_diagonal, "anti-diagonal budget of the series engine");
  };

  CLI::App* eval = app.add_subcommand("eval", "evaluate one function at one point");
  add_shared(eval);
  eval->add_flag("--f2", rc.f2, "classical Appell F2");
  eval->add_option("--humbert", rc.humbert, "psi1 or psi2");
  for (const auto& k : kComplexKeys)
    eval->add_option("--" + k, rc.complex_values[k], "complex literal such as 1.5 or 1.5-0.2i");
  for (const auto& k : kCountKeys) eval->add_option("--" + k, rc.counts[k], "step index");

  CLI::App* verify = app.add_subcommand("verify", "run the identity suite on the default grid");
  add_shared(verify);
  verify->add_option("--family", rc.families, "identity family (repeatable)");
  verify->add_option("--order", rc.order, "quadrature order for integral representations");
  verify->add_option("--seed", rc.seed, "jitter seed for the grid; 0 keeps it fixed");

  CLI::App* list = app.add_subcommand("list-identities", "print the identity catalogue");
  add_shared(list);
  list->add_option("--family", rc.families, "identity family (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    merge_config(rc);
    if (*eval) return cmd_eval(rc);
    if (*verify) return cmd_verify(rc);
    return cmd_list(rc);
  } catch (const DivergenceError& e) {
    std::cerr << "divergence: " << e.what() << "\n";
    return kDiverged;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
