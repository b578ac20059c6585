#include "cogradar/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>

#include "cogradar/errors.hpp"

namespace cogradar {

using nlohmann::json;

namespace {

double number_field(const json& doc, const char* key) {
  const auto& v = doc.at(key);
  if (!v.is_number()) throw ConfigError(std::string("config field '") + key + "' must be a number");
  return v.get<double>();
}

std::size_t count_field(const json& doc, const char* key) {
  const auto& v = doc.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ConfigError(std::string("config field '") + key + "' must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

OccupancyVector state_from_json(const json& v) {
  if (!v.is_array()) throw ConfigError("each state must be an array of 0/1 values");
  std::vector<std::uint8_t> bits;
  for (const auto& b : v) {
    if (!b.is_number_integer() || (b.get<int>() != 0 && b.get<int>() != 1)) {
      throw ConfigError("state entries must be 0 or 1");
    }
    bits.push_back(static_cast<std::uint8_t>(b.get<int>()));
  }
  return OccupancyVector(std::move(bits));
}

std::string optional_number(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (v == 0.0) return "0";  // folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void apply_config_json(const json& doc, ExperimentConfig& config) {
  static const std::set<std::string> known{
      "d",        "states",   "P",       "initial", "p_miss", "n",        "trials",
      "eta",      "snr0_db",  "inr_db",  "seed",    "policies", "grid",   "p12",
      "p21",      "ts_prior", "ts_noise", "bellman_alpha", "threads"};
  if (!doc.is_object()) throw ConfigError("config file must contain a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (!known.contains(key)) throw ConfigError("unknown config field '" + key + "'");
  }
  try {
    if (doc.contains("d")) config.d = count_field(doc, "d");
    if (doc.contains("states")) {
      config.states.clear();
      for (const auto& s : doc.at("states")) config.states.push_back(state_from_json(s));
      if (!doc.contains("d") && !config.states.empty()) config.d = config.states.front().size();
    }
    if (doc.contains("P")) {
      config.transitions = TransitionMatrix(doc.at("P").get<std::vector<std::vector<double>>>());
    }
    if (doc.contains("initial")) {
      const auto& v = doc.at("initial");
      if (v.is_string() && v.get<std::string>() == "random") {
        config.initial.reset();
      } else if (v.is_number_integer() && v.get<long long>() >= 0) {
        config.initial = v.get<std::size_t>();
      } else {
        throw ConfigError("config field 'initial' must be an index or \"random\"");
      }
    }
    if (doc.contains("p_miss")) config.p_miss = number_field(doc, "p_miss");
    if (doc.contains("n")) config.n = count_field(doc, "n");
    if (doc.contains("trials")) config.trials = count_field(doc, "trials");
    if (doc.contains("eta")) config.eta = number_field(doc, "eta");
    if (doc.contains("snr0_db")) config.snr0_db = number_field(doc, "snr0_db");
    if (doc.contains("inr_db")) config.inr_db = number_field(doc, "inr_db");
    if (doc.contains("seed")) config.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("policies")) config.policies = doc.at("policies").get<std::vector<std::string>>();
    if (doc.contains("grid")) config.grid = Grid::parse(doc.at("grid").get<std::string>());
    if (doc.contains("p12")) config.p12 = number_field(doc, "p12");
    if (doc.contains("p21")) config.p21 = number_field(doc, "p21");
    if (doc.contains("ts_prior")) config.ts.prior_precision = number_field(doc, "ts_prior");
    if (doc.contains("ts_noise")) config.ts.noise_variance = number_field(doc, "ts_noise");
    if (doc.contains("bellman_alpha")) config.bellman_alpha = number_field(doc, "bellman_alpha");
    if (doc.contains("threads")) config.threads = static_cast<unsigned>(count_field(doc, "threads"));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config file: ") + e.what());
  }
}

void apply_config_file(const std::string& path, ExperimentConfig& config) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
  apply_config_json(doc, config);
}

json config_to_json(const ExperimentConfig& config) {
  json doc;
  doc["d"] = config.d;
  doc["n"] = config.n;
  doc["trials"] = config.trials;
  doc["eta"] = config.eta;
  doc["p_miss"] = config.p_miss;
  doc["snr0_db"] = config.snr0_db;
  doc["inr_db"] = config.inr_db;
  doc["policies"] = config.policies;
  json states = json::array();
  for (const auto& s : config.resolved_states()) states.push_back(s.bits());
  doc["states"] = states;
  if (config.transitions) {
    doc["P"] = config.transitions->rows();
  } else {
    doc["p12"] = config.p12;
    doc["p21"] = config.p21;
  }
  if (config.initial) {
    doc["initial"] = *config.initial;
  } else {
    doc["initial"] = "random";
  }
  doc["grid"] = config.grid.to_string();
  doc["seed"] = config.seed;
  doc["ts_prior"] = config.ts.prior_precision;
  doc["ts_noise"] = config.ts.noise_variance;
  doc["bellman_alpha"] = config.bellman_alpha;
  return doc;
}

void write_csv(std::ostream& os, std::string_view experiment, const ExperimentConfig& config,
               const std::vector<ResultRow>& rows) {
  // Thread count is left out on purpose: output must not depend on it.
  os << "# cogradar " << experiment << '\n';
  os << "# seed: " << config.seed << '\n';
  os << "# config: " << config_to_json(config).dump() << '\n';
  os << kCsvHeader << '\n';
  for (const auto& r : rows) {
    const auto& s = r.stats;
    os << r.experiment << ',' << optional_number(r.p12) << ',' << optional_number(r.p21) << ','
       << format_number(r.p_miss) << ',' << r.n << ',' << r.trials << ',' << s.policy << ','
       << format_number(s.collision_rate.mean) << ',' << format_number(s.collision_rate.se) << ','
       << format_number(s.missed_opp_rate.mean) << ',' << format_number(s.missed_opp_rate.se)
       << ',' << format_number(s.mean_loss.mean) << ',' << format_number(s.mean_loss.se) << ','
       << format_number(s.mean_sinr_db.mean) << ',' << format_number(s.mean_sinr_db.se) << ','
       << format_number(s.final_regret.mean) << '\n';
  }
}

json rows_to_json(std::string_view experiment, const ExperimentConfig& config,
                  const std::vector<ResultRow>& rows) {
  json doc;
  doc["experiment"] = experiment;
  doc["config"] = config_to_json(config);
  json out = json::array();
  for (const auto& r : rows) {
    const auto& s = r.stats;
    json row;
    row["experiment"] = r.experiment;
    row["p12"] = r.p12 ? json(*r.p12) : json(nullptr);
    row["p21"] = r.p21 ? json(*r.p21) : json(nullptr);
    row["p_miss"] = r.p_miss;
    row["n"] = r.n;
    row["trials"] = r.trials;
    row["policy"] = s.policy;
    row["collision_rate"] = s.collision_rate.mean;
    row["collision_se"] = s.collision_rate.se;
    row["missed_opp_rate"] = s.missed_opp_rate.mean;
    row["missed_se"] = s.missed_opp_rate.se;
    row["mean_loss"] = s.mean_loss.mean;
    row["loss_se"] = s.mean_loss.se;
    row["mean_sinr_db"] = s.mean_sinr_db.mean;
    row["sinr_se"] = s.mean_sinr_db.se;
    row["final_regret"] = s.final_regret.mean;
    out.push_back(std::move(row));
  }
  doc["rows"] = std::move(out);
  return doc;
}

void write_regret_csv(std::ostream& os, const ExperimentConfig& config,
                      const std::vector<ResultRow>& rows) {
  os << "# cogradar regret\n";
  os << "# seed: " << config.seed << '\n';
  os << "# config: " << config_to_json(config).dump() << '\n';
  os << "t,policy,regret\n";
  for (const auto& r : rows) {
    const auto& curve = r.stats.mean_regret_curve;
    for (std::size_t t = 0; t < curve.size(); ++t) {
      os << (t + 1) << ',' << r.stats.policy << ',' << format_number(curve[t]) << '\n';
    }
  }
}

json dominance_to_json(const DominanceReport& report, const ExperimentConfig& config) {
  json doc;
  doc["policy_pair"] = {report.policy_1, report.policy_2};
  doc["statistic"] = report.statistic == DominanceStatistic::loss ? "loss" : "sinr";
  doc["fsd_verdict"] = to_string(report.fsd);
  doc["ssd_verdict"] = to_string(report.ssd);
  doc["statewise"] = report.statewise;
  doc["lambda_1"] = report.lambda_1;
  doc["lambda_2"] = report.lambda_2;
  doc["state_loss_1"] = report.state_loss_1;
  doc["state_loss_2"] = report.state_loss_2;
  doc["n"] = report.n;
  doc["trials"] = report.trials;
  doc["config"] = config_to_json(config);
  return doc;
}

}  // namespace cogradar
