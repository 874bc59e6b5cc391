#include "ptrisk/loss_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ptrisk {

std::vector<double> simulate_annual_totals(const BusinessLine& line, std::size_t n_years,
                                           Rng& rng) {
    std::vector<double> totals(n_years, 0.0);
    for (std::size_t year = 0; year < n_years; ++year) {
        long events = sample_negbin(line.frequency, rng);
        double total = 0.0;
        for (long k = 0; k < events; ++k) total += line.severity.quantile(rng.uniform());
        totals[year] = total;
    }
    return totals;
}

EmpiricalMargin::EmpiricalMargin(std::vector<double> totals) : sorted_(std::move(totals)) {
    if (sorted_.empty()) throw std::invalid_argument("EmpiricalMargin: empty sample");
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalMargin::quantile(double p) const {
    if (!(p > 0.0 && p <= 1.0)) {
        throw std::domain_error("EmpiricalMargin::quantile: p must lie in (0,1]");
    }
    const double n = static_cast<double>(sorted_.size());
    // ceil(n p) with a guard against the representation error of n*p.
    auto k = static_cast<std::size_t>(std::ceil(n * p - 1e-9));
    k = std::clamp<std::size_t>(k, 1, sorted_.size());
    return sorted_[k - 1];
}

void Scenario::validate() const {
    if (lines.empty()) throw std::invalid_argument("Scenario: at least one business line required");
    if (joint.dim() != lines.size()) {
        throw std::invalid_argument("Scenario: copula dimension must match the number of lines");
    }
    if (n_sim == 0) throw std::invalid_argument("Scenario: n_sim must be positive");
    if (n_margin == 0) throw std::invalid_argument("Scenario: n_margin must be positive");
    if (levels.empty()) throw std::invalid_argument("Scenario: at least one level required");
    double prev = 0.0;
    for (double a : levels) {
        if (!(a > prev && a < 1.0)) {
            throw std::invalid_argument("Scenario: levels must be strictly increasing in (0,1)");
        }
        prev = a;
    }
    if (pt_enabled) {
        if (!(pt.gpd_rho >= 0.0 && pt.gpd_rho < 1.0)) {
            throw std::invalid_argument("Scenario: pt.gpd_rho must lie in [0,1)");
        }
        std::vector<double> y = scenario_threshold_vector(*this);
        for (double yi : y) {
            if (!(yi > -1.0 && yi < 0.0)) {
                throw std::invalid_argument("Scenario: PT threshold components must lie in (-1,0)");
            }
        }
    }
}

std::vector<double> scenario_threshold_vector(const Scenario& s) {
    if (s.pt.threshold_mode == ThresholdMode::Explicit) {
        if (s.pt.explicit_y.size() != s.lines.size()) {
            throw std::invalid_argument(
                "scenario_threshold_vector: explicit y must have one entry per line");
        }
        return s.pt.explicit_y;
    }
    // Marginal mode: y_i = F_i(u(i)) - 1 with F_i the lognormal body CDF.
    std::vector<double> y;
    y.reserve(s.lines.size());
    for (const BusinessLine& line : s.lines) {
        y.push_back(line.severity.body_cdf_at_threshold() - 1.0);
    }
    return y;
}

std::vector<EmpiricalMargin> build_margins(const Scenario& s) {
    Rng root(s.seed);
    std::vector<EmpiricalMargin> margins;
    margins.reserve(s.lines.size());
    for (std::size_t i = 0; i < s.lines.size(); ++i) {
        Rng stream = root.substream(k_margin_stream_base + i);
        margins.emplace_back(simulate_annual_totals(s.lines[i], s.n_margin, stream));
    }
    return margins;
}

namespace {

Matrix sample_joint_uniforms(const Scenario& s, Rng& rng) {
    if (!s.pt_enabled) return sample_copula(s.joint, s.n_sim, rng);
    GpdCopulaSpec gpd{CopulaModel::gaussian(s.lines.size(), s.pt.gpd_rho)};
    PtCopulaSpec spec(s.joint, gpd, scenario_threshold_vector(s));
    return shift_to_unit_cube(sample_pt_copula(spec, s.n_sim, rng));
}

}  // namespace

Matrix simulate_joint_losses(const Scenario& s, const std::vector<EmpiricalMargin>& margins,
                             Rng& rng) {
    s.validate();
    if (margins.size() != s.lines.size()) {
        throw std::invalid_argument("simulate_joint_losses: one margin per line required");
    }
    const std::size_t m = s.lines.size();
    Matrix uniforms = sample_joint_uniforms(s, rng);
    Matrix out(s.n_sim, m + 1);
    for (std::size_t r = 0; r < s.n_sim; ++r) {
        double total = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            double x = margins[i].quantile(uniforms(r, i));
            out(r, i) = x;
            total += x;
        }
        out(r, m) = total;
    }
    return out;
}

Matrix simulate_joint_losses(const Scenario& s, Rng& rng) {
    return simulate_joint_losses(s, build_margins(s), rng);
}

}  // namespace ptrisk
