#include "config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace ergodiag::cli {

using nlohmann::json;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void fail(const std::string& field, const std::string& why) {
  throw ConfigError(field + ": " + why);
}

void require_object(const json& j, const std::string& field) {
  if (!j.is_object()) fail(field, "must be an object");
}

void reject_unknown(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  const std::set<std::string> known(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) fail(where.empty() ? key : where + "." + key, "unknown key");
  }
}

const json& member(const json& j, const std::string& where, const char* key) {
  if (!j.contains(key)) fail(where + "." + key, "required");
  return j.at(key);
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "must be a number");
  return j.get<double>();
}

std::int64_t integer(const json& j, const std::string& field) {
  if (!j.is_number_integer()) fail(field, "must be an integer");
  return j.get<std::int64_t>();
}

std::uint64_t unsigned_integer(const json& j, const std::string& field) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(j.get<std::int64_t>());
  fail(field, "must be a non-negative integer");
}

ProcessParams parse_params(const std::string& family, const json& params) {
  const std::string where = "process.params";
  if (family == "AR1") {
    reject_unknown(params, where, {"phi", "gamma0"});
    return Ar1Params{number(member(params, where, "phi"), where + ".phi"),
                     number(member(params, where, "gamma0"), where + ".gamma0")};
  }
  if (family == "REMARK3") {
    reject_unknown(params, where, {});
    return Remark3Params{};
  }
  if (family == "COMMON_SHOCK") {
    reject_unknown(params, where, {"sigma_z", "sigma_eps"});
    return CommonShockParams{number(member(params, where, "sigma_z"), where + ".sigma_z"),
                             number(member(params, where, "sigma_eps"), where + ".sigma_eps")};
  }
  if (family == "DRIFTING_MEAN") {
    reject_unknown(params, where, {"trend", "noise_sd"});
    const json& trend = member(params, where, "trend");
    const std::string tw = where + ".trend";
    require_object(trend, tw);
    const json& kind = member(trend, tw, "kind");
    if (!kind.is_string()) fail(tw + ".kind", "must be a string");
    DriftingMeanParams p;
    if (kind == "LINEAR") {
      reject_unknown(trend, tw, {"kind", "a", "b"});
      p.trend = LinearTrend{number(member(trend, tw, "a"), tw + ".a"), number(member(trend, tw, "b"), tw + ".b")};
    } else if (kind == "SINUSOID") {
      reject_unknown(trend, tw, {"kind", "amplitude", "period"});
      p.trend = SinusoidTrend{number(member(trend, tw, "amplitude"), tw + ".amplitude"),
                              number(member(trend, tw, "period"), tw + ".period")};
    } else {
      fail(tw + ".kind", "must be LINEAR or SINUSOID");
    }
    p.noise_sd = number(member(params, where, "noise_sd"), where + ".noise_sd");
    return p;
  }
  fail("process.family", "must be one of AR1, REMARK3, COMMON_SHOCK, DRIFTING_MEAN");
}

}  // namespace

ProcessConfig parse_process(const json& j) {
  require_object(j, "process");
  reject_unknown(j, "process", {"family", "params"});
  const json& family = member(j, "process", "family");
  if (!family.is_string()) fail("process.family", "must be a string");
  const json params = j.contains("params") ? j.at("params") : json::object();
  require_object(params, "process.params");
  ProcessParams p = parse_params(family.get<std::string>(), params);
  try {
    return ProcessConfig(std::move(p));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("process.params." + std::string(e.what()));
  }
}

CliConfig parse_config(const json& doc) {
  require_object(doc, "config");
  reject_unknown(doc, "", {"process", "experiment", "analyze"});
  CliConfig cfg;
  if (doc.contains("process")) cfg.process = parse_process(doc.at("process"));
  if (doc.contains("experiment")) {
    const json& e = doc.at("experiment");
    require_object(e, "experiment");
    reject_unknown(e, "experiment", {"n_grid", "replicates", "base_seed", "epsilons", "checks", "z_threshold"});
    cfg.experiment_json = e;
    if (cfg.process) (void)cfg.experiment();  // validate eagerly
  }
  if (doc.contains("analyze")) {
    const json& a = doc.at("analyze");
    require_object(a, "analyze");
    reject_unknown(a, "analyze", {"max_lag", "window_c", "target_mean"});
    if (a.contains("max_lag")) {
      cfg.analyze.max_lag = integer(a.at("max_lag"), "analyze.max_lag");
      if (cfg.analyze.max_lag < 0) fail("analyze.max_lag", "must be >= 0");
    }
    if (a.contains("window_c")) {
      cfg.analyze.window_c = number(a.at("window_c"), "analyze.window_c");
      if (!(cfg.analyze.window_c > 0.0)) fail("analyze.window_c", "must be > 0");
    }
    if (a.contains("target_mean")) cfg.analyze.target_mean = number(a.at("target_mean"), "analyze.target_mean");
  }
  return cfg;
}

ExperimentConfig CliConfig::experiment() const {
  if (!process) fail("process", "required");
  if (!experiment_json) fail("experiment", "required");
  const json& e = *experiment_json;
  ExperimentConfig cfg{.process = *process};
  if (e.contains("n_grid")) {
    if (!e.at("n_grid").is_array()) fail("experiment.n_grid", "must be an array");
    cfg.n_grid.clear();
    for (const json& n : e.at("n_grid")) cfg.n_grid.push_back(integer(n, "experiment.n_grid"));
  }
  if (e.contains("replicates")) cfg.replicates = integer(e.at("replicates"), "experiment.replicates");
  cfg.base_seed = unsigned_integer(member(e, "experiment", "base_seed"), "experiment.base_seed");
  if (e.contains("epsilons")) {
    if (!e.at("epsilons").is_array()) fail("experiment.epsilons", "must be an array");
    cfg.epsilons.clear();
    for (const json& x : e.at("epsilons")) cfg.epsilons.push_back(number(x, "experiment.epsilons"));
  }
  if (e.contains("checks")) {
    if (!e.at("checks").is_array()) fail("experiment.checks", "must be an array");
    for (const json& c : e.at("checks")) {
      if (!c.is_string()) fail("experiment.checks", "entries must be strings");
      const auto check = parse_check(c.get<std::string>());
      if (!check) fail("experiment.checks", "unknown check " + c.get<std::string>());
      cfg.checks.push_back(*check);
    }
  }
  if (e.contains("z_threshold")) cfg.z_threshold = number(e.at("z_threshold"), "experiment.z_threshold");
  try {
    cfg.validate();
  } catch (const std::invalid_argument& err) {
    throw ConfigError("experiment." + std::string(err.what()));
  }
  return cfg;
}

CliConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: not valid JSON (") + e.what() + ")");
  }
  return parse_config(doc);
}

json to_json(const ProcessConfig& config) {
  json params = json::object();
  std::visit(Overloaded{
                 [&](const Ar1Params& p) { params = {{"phi", p.phi}, {"gamma0", p.gamma0}}; },
                 [](const Remark3Params&) {},
                 [&](const CommonShockParams& p) {
                   params = {{"sigma_z", p.sigma_z}, {"sigma_eps", p.sigma_eps}};
                 },
                 [&](const DriftingMeanParams& p) {
                   json trend = std::visit(
                       Overloaded{
                           [](const LinearTrend& l) { return json{{"kind", "LINEAR"}, {"a", l.a}, {"b", l.b}}; },
                           [](const SinusoidTrend& s) {
                             return json{{"kind", "SINUSOID"}, {"amplitude", s.amplitude}, {"period", s.period}};
                           },
                       },
                       p.trend);
                   params = {{"trend", trend}, {"noise_sd", p.noise_sd}};
                 },
             },
             config.params());
  return {{"family", std::string(to_string(config.family()))}, {"params", params}};
}

json to_json(const ExperimentConfig& config) {
  json checks = json::array();
  for (Check c : config.effective_checks()) checks.push_back(std::string(to_string(c)));
  return {{"n_grid", config.n_grid},       {"replicates", config.replicates},
          {"base_seed", config.base_seed}, {"epsilons", config.epsilons},
          {"checks", checks},              {"z_threshold", config.z_threshold}};
}

json to_json(const GrowthReport& growth) {
  return {{"n_grid", growth.n_grid},
          {"vn_values", growth.vn_values},
          {"vn_over_n2", growth.vn_over_n2},
          {"fitted_slope", growth.fitted_slope},
          {"liminf_estimate", growth.liminf_estimate},
          {"classification", std::string(to_string(growth.classification))}};
}

json to_json(const ConvergenceReport& report, const ExperimentConfig& config) {
  json records = json::array();
  for (const GridRecord& r : report.records) {
    json tails = json::array();
    for (const TailRecord& t : r.tails) {
      tails.push_back({{"eps", t.eps},
                       {"empirical_tail", t.empirical_tail},
                       {"tail_standard_error", t.tail_standard_error},
                       {"chebyshev_bound", t.chebyshev_bound},
                       {"pz_lower", t.pz_lower ? json(*t.pz_lower) : json(nullptr)}});
    }
    records.push_back({{"n", r.n},
                       {"mean_average", r.mean_average},
                       {"exact_var_an", r.exact_var_an},
                       {"empirical_mse", r.empirical_mse},
                       {"mc_standard_error", r.mc_standard_error},
                       {"tails", tails}});
  }
  json verdicts = json::object();
  for (const auto& [check, result] : report.verdicts) {
    json metrics = json::object();
    for (const auto& [k, v] : result.metrics) metrics[k] = v;
    verdicts[std::string(to_string(check))] = {
        {"verdict", std::string(to_string(result.verdict))}, {"message", result.message}, {"metrics", metrics}};
  }
  return {{"format_version", 1},
          {"spec_label", report.spec_label},
          {"config", {{"process", to_json(config.process)}, {"experiment", to_json(config)}}},
          {"records", records},
          {"growth", to_json(report.growth)},
          {"verdicts", verdicts}};
}

}  // namespace ergodiag::cli
