#include "ptrisk/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <sstream>

namespace ptrisk {

namespace {

std::string position_prefix(int line, int column) {
    std::string s = "line " + std::to_string(line);
    if (column > 0) s += ", column " + std::to_string(column);
    return s + ": ";
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

}  // namespace

ConfigError::ConfigError(const std::string& msg, int line_no, int column_no)
    : std::runtime_error(position_prefix(line_no, column_no) + msg),
      line(line_no),
      column(column_no) {}

ConfigDocument ConfigDocument::parse(std::string_view text, std::string source_path) {
    ConfigDocument doc;
    doc.source_ = std::move(source_path);

    std::istringstream stream{std::string(text)};
    std::string raw;
    int line_no = 0;
    ConfigSection* current = nullptr;

    while (std::getline(stream, raw)) {
        ++line_no;
        std::string line = raw;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::string content = trim(line);
        if (content.empty()) continue;

        if (content.front() == '[') {
            auto close = content.find(']');
            if (close == std::string::npos) {
                throw ConfigError("section header is missing ']'", line_no,
                                  static_cast<int>(raw.find('[')) + 1);
            }
            if (!trim(content.substr(close + 1)).empty()) {
                throw ConfigError("unexpected text after section header", line_no,
                                  static_cast<int>(close) + 2);
            }
            std::string name = trim(content.substr(1, close - 1));
            if (name.empty()) throw ConfigError("empty section name", line_no, 1);
            for (const ConfigSection& s : doc.sections_) {
                if (s.name == name) {
                    throw ConfigError("duplicate section [" + name + "] (first defined at line " +
                                          std::to_string(s.line) + ")",
                                      line_no);
                }
            }
            doc.sections_.push_back(ConfigSection{name, line_no, {}});
            current = &doc.sections_.back();
            continue;
        }

        auto eq = content.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("expected 'key = value'", line_no,
                              static_cast<int>(raw.find_first_not_of(" \t")) + 1);
        }
        std::string key = trim(content.substr(0, eq));
        std::string value = trim(content.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key before '='", line_no, 1);
        if (value.empty()) throw ConfigError("empty value for key '" + key + "'", line_no);
        if (current == nullptr) {
            throw ConfigError("entry '" + key + "' appears before any section header", line_no);
        }
        auto [it, inserted] = current->entries.emplace(key, ConfigEntry{value, line_no});
        if (!inserted) {
            throw ConfigError("duplicate key '" + key + "' in section [" + current->name +
                                  "] (first set at line " + std::to_string(it->second.line) + ")",
                              line_no);
        }
    }
    return doc;
}

const ConfigSection* ConfigDocument::find(const std::string& name) const {
    for (const ConfigSection& s : sections_) {
        if (s.name == name) return &s;
    }
    return nullptr;
}

namespace {

double parse_real(const ConfigEntry& e, const std::string& key) {
    try {
        std::size_t pos = 0;
        double v = std::stod(e.value, &pos);
        if (pos != e.value.size()) throw std::invalid_argument("trailing characters");
        if (!std::isfinite(v)) throw std::invalid_argument("not finite");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("value of '" + key + "' is not a number: '" + e.value + "'", e.line);
    }
}

std::uint64_t parse_count(const ConfigEntry& e, const std::string& key) {
    double v = parse_real(e, key);
    if (v < 0.0 || v != std::floor(v) || v > 9e18) {
        throw ConfigError("value of '" + key + "' must be a non-negative integer", e.line);
    }
    return static_cast<std::uint64_t>(v);
}

std::vector<double> parse_real_list(const ConfigEntry& e, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(e.value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        ConfigEntry fake{trim(item), e.line};
        out.push_back(parse_real(fake, key));
    }
    if (out.empty()) throw ConfigError("empty list for key '" + key + "'", e.line);
    return out;
}

bool parse_bool(const ConfigEntry& e, const std::string& key) {
    if (e.value == "true") return true;
    if (e.value == "false") return false;
    throw ConfigError("value of '" + key + "' must be 'true' or 'false'", e.line);
}

void reject_unknown_keys(const ConfigSection& s, const std::set<std::string>& allowed) {
    for (const auto& [key, entry] : s.entries) {
        if (!allowed.contains(key)) {
            throw ConfigError("unknown key '" + key + "' in section [" + s.name + "]", entry.line);
        }
    }
}

const ConfigEntry& require_key(const ConfigSection& s, const std::string& key) {
    auto it = s.entries.find(key);
    if (it == s.entries.end()) {
        throw ConfigError("section [" + s.name + "] is missing required key '" + key + "'",
                          s.line);
    }
    return it->second;
}

double require_positive(const ConfigSection& s, const std::string& key) {
    const ConfigEntry& e = require_key(s, key);
    double v = parse_real(e, key);
    if (!(v > 0.0)) throw ConfigError("'" + key + "' must be > 0", e.line);
    return v;
}

CopulaModel copula_from_section(const ConfigSection& s, std::size_t dim) {
    reject_unknown_keys(s, {"family", "rho", "nu", "theta"});
    const std::string family = require_key(s, "family").value;
    auto reject = [&](const char* key) {
        if (auto it = s.entries.find(key); it != s.entries.end()) {
            throw ConfigError("key '" + std::string(key) + "' is not a parameter of the " +
                                  family + " copula",
                              it->second.line);
        }
    };
    try {
        if (family == "independence") {
            reject("rho");
            reject("nu");
            reject("theta");
            return CopulaModel::independence(dim);
        }
        if (family == "gaussian") {
            reject("nu");
            reject("theta");
            return CopulaModel::gaussian(dim, require_positive(s, "rho"));
        }
        if (family == "t") {
            reject("theta");
            double rho = parse_real(require_key(s, "rho"), "rho");
            double nu = require_positive(s, "nu");
            return CopulaModel::student_t(dim, rho, nu);
        }
        if (family == "clayton") {
            reject("rho");
            reject("nu");
            return CopulaModel::clayton(dim, require_positive(s, "theta"));
        }
        if (family == "frank") {
            reject("rho");
            reject("nu");
            return CopulaModel::frank(dim, require_positive(s, "theta"));
        }
        if (family == "gumbel") {
            reject("rho");
            reject("nu");
            return CopulaModel::gumbel(dim, require_positive(s, "theta"));
        }
    } catch (const std::invalid_argument& ex) {
        throw ConfigError(std::string("invalid copula parameters: ") + ex.what(), s.line);
    }
    throw ConfigError("unknown copula family '" + family +
                          "' (expected independence|gaussian|t|clayton|frank|gumbel)",
                      require_key(s, "family").line);
}

BusinessLine line_from_section(const ConfigSection& s) {
    reject_unknown_keys(s, {"lognormal_mu", "lognormal_sigma", "threshold_u", "gpd_beta",
                            "gpd_xi", "negbin_alpha", "negbin_r"});
    double mu = parse_real(require_key(s, "lognormal_mu"), "lognormal_mu");
    double sigma = require_positive(s, "lognormal_sigma");
    double u = require_positive(s, "threshold_u");
    double beta = require_positive(s, "gpd_beta");
    double xi = require_positive(s, "gpd_xi");
    double alpha = require_positive(s, "negbin_alpha");
    double r = require_positive(s, "negbin_r");
    std::string name = s.name.substr(std::string("line.").size());
    try {
        return BusinessLine{name, SplicedSeverity(Lognormal(mu, sigma), u, GpdExcess(beta, xi)),
                            NegBin(alpha, r)};
    } catch (const std::invalid_argument& ex) {
        throw ConfigError(std::string("invalid parameters for line '") + name + "': " + ex.what(),
                          s.line);
    }
}

}  // namespace

ScenarioConfig scenario_from_config(const ConfigDocument& doc) {
    std::vector<BusinessLine> lines;
    for (const ConfigSection& s : doc.sections()) {
        bool is_line = s.name.rfind("line.", 0) == 0;
        if (!is_line && s.name != "scenario" && s.name != "copula" && s.name != "pt") {
            throw ConfigError("unknown section [" + s.name + "]", s.line);
        }
        if (is_line) {
            if (s.name.size() == std::string("line.").size()) {
                throw ConfigError("line section needs a name: [line.NAME]", s.line);
            }
            lines.push_back(line_from_section(s));
        }
    }
    if (lines.size() < 2) {
        throw ConfigError("at least two [line.NAME] sections are required (copula dimension >= 2)",
                          1);
    }

    const ConfigSection* copula = doc.find("copula");
    if (copula == nullptr) throw ConfigError("missing required section [copula]", 1);

    CopulaModel joint = copula_from_section(*copula, lines.size());
    ScenarioConfig out{Scenario(std::move(lines), std::move(joint)), 50};

    if (const ConfigSection* s = doc.find("scenario")) {
        reject_unknown_keys(*s, {"n_sim", "n_margin", "reps", "seed", "levels"});
        if (auto it = s->entries.find("n_sim"); it != s->entries.end()) {
            out.scenario.n_sim = parse_count(it->second, "n_sim");
        }
        if (auto it = s->entries.find("n_margin"); it != s->entries.end()) {
            out.scenario.n_margin = parse_count(it->second, "n_margin");
        }
        if (auto it = s->entries.find("reps"); it != s->entries.end()) {
            out.reps = parse_count(it->second, "reps");
            if (out.reps == 0) throw ConfigError("'reps' must be >= 1", it->second.line);
        }
        if (auto it = s->entries.find("seed"); it != s->entries.end()) {
            out.scenario.seed = parse_count(it->second, "seed");
        }
        if (auto it = s->entries.find("levels"); it != s->entries.end()) {
            out.scenario.levels = parse_real_list(it->second, "levels");
            double prev = 0.0;
            for (double a : out.scenario.levels) {
                if (!(a > prev && a < 1.0)) {
                    throw ConfigError("'levels' must be strictly increasing within (0,1)",
                                      it->second.line);
                }
                prev = a;
            }
        }
    }

    if (const ConfigSection* s = doc.find("pt")) {
        reject_unknown_keys(*s, {"enabled", "gpd_rho", "threshold_mode", "y"});
        if (auto it = s->entries.find("enabled"); it != s->entries.end()) {
            out.scenario.pt_enabled = parse_bool(it->second, "enabled");
        }
        if (auto it = s->entries.find("gpd_rho"); it != s->entries.end()) {
            double rho = parse_real(it->second, "gpd_rho");
            if (!(rho >= 0.0 && rho < 1.0)) {
                throw ConfigError("'gpd_rho' must lie in [0,1)", it->second.line);
            }
            out.scenario.pt.gpd_rho = rho;
        }
        if (auto it = s->entries.find("threshold_mode"); it != s->entries.end()) {
            const std::string& mode = it->second.value;
            if (mode == "marginal") {
                out.scenario.pt.threshold_mode = ThresholdMode::Marginal;
            } else if (mode == "explicit") {
                out.scenario.pt.threshold_mode = ThresholdMode::Explicit;
            } else {
                throw ConfigError("'threshold_mode' must be 'marginal' or 'explicit'",
                                  it->second.line);
            }
        }
        auto y_entry = s->entries.find("y");
        if (out.scenario.pt.threshold_mode == ThresholdMode::Explicit) {
            if (y_entry == s->entries.end()) {
                throw ConfigError("threshold_mode = explicit requires the key 'y'", s->line);
            }
            out.scenario.pt.explicit_y = parse_real_list(y_entry->second, "y");
            if (out.scenario.pt.explicit_y.size() != out.scenario.lines.size()) {
                throw ConfigError("'y' must list one threshold per line", y_entry->second.line);
            }
            for (double yi : out.scenario.pt.explicit_y) {
                if (!(yi > -1.0 && yi < 0.0)) {
                    throw ConfigError("'y' components must lie in (-1, 0)", y_entry->second.line);
                }
            }
        } else if (y_entry != s->entries.end()) {
            throw ConfigError("key 'y' is only valid with threshold_mode = explicit",
                              y_entry->second.line);
        }
    }

    try {
        out.scenario.validate();
    } catch (const std::invalid_argument& ex) {
        throw ConfigError(std::string("invalid scenario: ") + ex.what(), 1);
    }
    return out;
}

}  // namespace ptrisk
