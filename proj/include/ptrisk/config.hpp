#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ptrisk/loss_model.hpp"

namespace ptrisk {

/// Parse or validation failure, carrying the 1-based source position.
struct ConfigError : std::runtime_error {
    ConfigError(const std::string& msg, int line_no, int column_no = 0);
    int line;
    int column;
};

struct ConfigEntry {
    std::string value;
    int line = 0;
};

struct ConfigSection {
    std::string name;
    int line = 0;
    std::map<std::string, ConfigEntry> entries;
};

/// Scenario configuration file. Grammar: '#' starts a comment, sections are
/// '[name]' or '[line.NAME]', entries are 'key = value'. Duplicate keys or
/// sections and unknown keys are rejected with the offending line number.
class ConfigDocument {
  public:
    static ConfigDocument parse(std::string_view text, std::string source_path = "<config>");

    const ConfigSection* find(const std::string& name) const;
    const std::vector<ConfigSection>& sections() const { return sections_; }
    const std::string& source() const { return source_; }

  private:
    std::vector<ConfigSection> sections_;
    std::string source_;
};

struct ScenarioConfig {
    Scenario scenario;
    std::size_t reps = 50;
};

/// Builds a runnable scenario from a parsed document, applying the schema:
/// [scenario] n_sim, n_margin, reps, seed, levels; [line.X] lognormal_mu,
/// lognormal_sigma, threshold_u, gpd_beta, gpd_xi, negbin_alpha, negbin_r;
/// [copula] family, rho, nu, theta; [pt] enabled, gpd_rho, threshold_mode,
/// y. Any violation throws ConfigError before any computation starts.
ScenarioConfig scenario_from_config(const ConfigDocument& doc);

}  // namespace ptrisk
