#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "cogradar/harness.hpp"

namespace cogradar {

/// Column order of the results CSV.
inline constexpr std::string_view kCsvHeader =
    "experiment,p12,p21,p_miss,n,trials,policy,collision_rate,collision_se,missed_opp_rate,"
    "missed_se,mean_loss,loss_se,mean_sinr_db,sinr_se,final_regret";

/// Reads a channel/experiment file. Recognised keys: d, states, P, initial
/// ("random" or an index), p_miss, and the experiment fields n, trials, eta,
/// snr0_db, inr_db, seed, policies, grid, p12, p21, ts_prior, ts_noise,
/// bellman_alpha. Unknown keys are rejected. Throws ConfigError.
void apply_config_json(const nlohmann::json& doc, ExperimentConfig& config);
/// Applies the file's fields on top of `config`.
void apply_config_file(const std::string& path, ExperimentConfig& config);

nlohmann::json config_to_json(const ExperimentConfig& config);

/// Shortest round-trip-safe rendering used in every output file.
std::string format_number(double v);

void write_csv(std::ostream& os, std::string_view experiment, const ExperimentConfig& config,
               const std::vector<ResultRow>& rows);
nlohmann::json rows_to_json(std::string_view experiment, const ExperimentConfig& config,
                            const std::vector<ResultRow>& rows);

/// Regret curves as CSV rows t,policy,regret.
void write_regret_csv(std::ostream& os, const ExperimentConfig& config,
                      const std::vector<ResultRow>& rows);

nlohmann::json dominance_to_json(const DominanceReport& report, const ExperimentConfig& config);

}  // namespace cogradar
