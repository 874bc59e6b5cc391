#include "ptrisk/risk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace ptrisk {

namespace {

std::size_t order_statistic_index(std::size_t n, double alpha) {
    // ceil(n alpha), guarded against the representation error of n*alpha.
    auto k = static_cast<std::size_t>(std::ceil(static_cast<double>(n) * alpha - 1e-9));
    return std::clamp<std::size_t>(k, 1, n);
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

double var_hat(std::span<const double> sample, double alpha) {
    if (sample.empty()) throw std::invalid_argument("var_hat: empty sample");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("var_hat: alpha must lie in (0,1)");
    std::vector<double> copy(sample.begin(), sample.end());
    std::size_t k = order_statistic_index(copy.size(), alpha);
    std::nth_element(copy.begin(), copy.begin() + (k - 1), copy.end());
    return copy[k - 1];
}

double es_hat(std::span<const double> sample, double alpha) {
    if (sample.empty()) throw std::invalid_argument("es_hat: empty sample");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("es_hat: alpha must lie in (0,1)");
    const double v = var_hat(sample, alpha);
    double sum = 0.0;
    for (double l : sample) {
        if (l >= v) sum += l;
    }
    return sum / (static_cast<double>(sample.size()) * (1.0 - alpha));
}

double ms_hat(std::span<const double> sample, double alpha) {
    double level = 0.5 * (1.0 + alpha);
    if (!(level < 1.0)) throw std::domain_error("ms_hat: (1+alpha)/2 must be below 1");
    return var_hat(sample, level);
}

namespace {

ReplicationEstimates estimate_one(const Scenario& s, const std::vector<EmpiricalMargin>& margins,
                                  std::size_t rep_index) {
    Rng rep_rng = Rng(s.seed).substream(k_replication_stream_base + rep_index);
    Matrix losses = simulate_joint_losses(s, margins, rep_rng);
    const std::size_t ids = s.lines.size() + 1;
    ReplicationEstimates est;
    est.var.resize(ids);
    est.es.resize(ids);
    est.ms.resize(ids);
    for (std::size_t id = 0; id < ids; ++id) {
        std::vector<double> column = losses.column(id);
        for (double a : s.levels) {
            est.var[id].push_back(var_hat(column, a));
            est.es[id].push_back(es_hat(column, a));
            est.ms[id].push_back(ms_hat(column, a));
        }
    }
    return est;
}

}  // namespace

std::vector<ReplicationEstimates> replicate_estimates(const Scenario& s, std::size_t R,
                                                      unsigned threads) {
    if (R == 0) throw std::invalid_argument("replicate_estimates: R must be >= 1");
    s.validate();
    const std::vector<EmpiricalMargin> margins = build_margins(s);

    std::vector<ReplicationEstimates> out(R);
    if (threads <= 1 || R == 1) {
        for (std::size_t r = 0; r < R; ++r) out[r] = estimate_one(s, margins, r);
        return out;
    }
    const unsigned n_workers = std::min<unsigned>(threads, static_cast<unsigned>(R));
    std::vector<std::thread> workers;
    workers.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) {
        workers.emplace_back([&, w]() {
            for (std::size_t r = w; r < R; r += n_workers) {
                out[r] = estimate_one(s, margins, r);
            }
        });
    }
    for (auto& t : workers) t.join();
    return out;
}

RiskReport summarize_replications(const Scenario& s,
                                  const std::vector<ReplicationEstimates>& reps) {
    const std::size_t ids = s.lines.size() + 1;
    const std::size_t R = reps.size();
    RiskReport report;
    report.replications = R;
    report.n_sim = s.n_sim;
    report.seed = s.seed;
    for (const BusinessLine& line : s.lines) {
        if (line.severity.tail().xi() >= 1.0) report.infinite_mean_lines.push_back(line.name);
    }
    for (std::size_t id = 0; id < ids; ++id) {
        std::string name = id < s.lines.size() ? s.lines[id].name : "total";
        for (std::size_t li = 0; li < s.levels.size(); ++li) {
            std::vector<double> vs(R), es(R), ms(R);
            for (std::size_t r = 0; r < R; ++r) {
                vs[r] = reps[r].var[id][li];
                es[r] = reps[r].es[id][li];
                ms[r] = reps[r].ms[id][li];
            }
            auto mean = [R](const std::vector<double>& x) {
                double sum = 0.0;
                for (double v : x) sum += v;
                return sum / static_cast<double>(R);
            };
            report.rows.push_back(RiskRow{name, s.levels[li], mean(vs), mean(es), mean(ms),
                                          median_of(vs), median_of(es), median_of(ms)});
        }
    }
    return report;
}

RiskReport replicate_report(const Scenario& s, std::size_t R, unsigned threads) {
    return summarize_replications(s, replicate_estimates(s, R, threads));
}

}  // namespace ptrisk
