// ptrisk: scenario simulation, fitting, diagnostics and copula sampling on
// the command line. See README.md for the config grammar and examples.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ptrisk/config.hpp"
#include "ptrisk/csv.hpp"
#include "ptrisk/estimation.hpp"
#include "ptrisk/gpd_copula.hpp"
#include "ptrisk/piecing_together.hpp"
#include "ptrisk/risk.hpp"

namespace {

using namespace ptrisk;

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw CLI::ValidationError(flag, "'" + item + "' is not a number");
        }
    }
    if (out.empty()) throw CLI::ValidationError(flag, "empty list");
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<double> read_column_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return read_numeric_column(in);
}

// Shared copula flags for the `sample` and `diagnose` subcommands.
struct CopulaFlags {
    std::string family = "independence";
    std::size_t dim = 2;
    double rho = 0.0;
    double nu = 4.0;
    double theta = 1.0;

    void attach(CLI::App* cmd, const char* family_flag = "--family") {
        cmd->add_option(family_flag, family,
                        "copula family: independence|gaussian|t|clayton|frank|gumbel");
        cmd->add_option("--dim", dim, "copula dimension (default 2)");
        cmd->add_option("--rho", rho, "correlation (gaussian/t)");
        cmd->add_option("--nu", nu, "degrees of freedom (t)");
        cmd->add_option("--theta", theta, "generator parameter (clayton/frank/gumbel)");
    }

    CopulaModel build() const {
        if (family == "independence") return CopulaModel::independence(dim);
        if (family == "gaussian") return CopulaModel::gaussian(dim, rho);
        if (family == "t") return CopulaModel::student_t(dim, rho, nu);
        if (family == "clayton") return CopulaModel::clayton(dim, theta);
        if (family == "frank") return CopulaModel::frank(dim, theta);
        if (family == "gumbel") return CopulaModel::gumbel(dim, theta);
        throw std::runtime_error("unknown copula family '" + family + "'");
    }
};

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
    return file;
}

void write_risk_report(std::ostream& os, const RiskReport& report) {
    os << "# generator = " << report.generator << "\n";
    os << "# seed = " << report.seed << "\n";
    os << "# replications = " << report.replications << "\n";
    os << "# n_sim = " << report.n_sim << "\n";
    if (!report.infinite_mean_lines.empty()) {
        os << "# infinite_mean_lines =";
        for (const std::string& name : report.infinite_mean_lines) os << ' ' << name;
        os << "  (gpd_xi >= 1: theoretical expected shortfall does not exist)\n";
    }
    os << "id,level,var_mean,es_mean,ms_mean,var_median,es_median,ms_median\n";
    for (const RiskRow& row : report.rows) {
        os << row.id << ',' << format_double_short(row.level) << ',' << format_double(row.var_mean)
           << ',' << format_double(row.es_mean) << ',' << format_double(row.ms_mean) << ','
           << format_double(row.var_median) << ',' << format_double(row.es_median) << ','
           << format_double(row.ms_median) << '\n';
    }
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir,
                 std::optional<std::uint64_t> seed_override, bool emit_samples,
                 unsigned threads) {
    ConfigDocument doc = ConfigDocument::parse(read_file(config_path), config_path);
    ScenarioConfig cfg = scenario_from_config(doc);
    if (seed_override) cfg.scenario.seed = *seed_override;

    RiskReport report = replicate_report(cfg.scenario, cfg.reps, threads);

    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);
    {
        std::ofstream os(dir / "risk_report.csv", std::ios::binary);
        if (!os) throw std::runtime_error("cannot write risk_report.csv");
        write_risk_report(os, report);
    }
    if (emit_samples) {
        Rng rep0 = Rng(cfg.scenario.seed).substream(k_replication_stream_base);
        Matrix losses = simulate_joint_losses(cfg.scenario, rep0);
        std::vector<std::string> header;
        for (const BusinessLine& line : cfg.scenario.lines) header.push_back(line.name);
        header.push_back("total");
        std::ofstream os(dir / "samples.csv", std::ios::binary);
        if (!os) throw std::runtime_error("cannot write samples.csv");
        write_csv(os, header, losses);
    }
    std::cerr << "wrote " << (dir / "risk_report.csv").string()
              << (emit_samples ? " and samples.csv" : "") << "\n";
    return 0;
}

int cmd_fit(const std::string& kind, const std::string& input, std::optional<double> threshold) {
    std::vector<double> data = read_column_file(input);
    if (kind == "gpd") {
        if (!threshold) throw std::runtime_error("fit gpd requires --threshold");
        std::vector<double> excesses;
        for (double x : data) {
            if (x > *threshold) excesses.push_back(x - *threshold);
        }
        GpdFit fit = fit_gpd_mle(excesses);
        std::cout << "beta = " << format_double(fit.params.beta()) << "\n";
        std::cout << "xi = " << format_double(fit.params.xi()) << "\n";
        return 0;
    }
    if (kind == "lognormal") {
        LognormalFit fit = fit_lognormal_mle(data);
        std::cout << "mu = " << format_double(fit.mu) << "\n";
        std::cout << "sigma = " << format_double(fit.sigma) << "\n";
        if (fit.degenerate) std::cerr << "warning: degenerate fit (zero spread in log data)\n";
        return 0;
    }
    if (kind == "negbin") {
        std::vector<long> counts;
        counts.reserve(data.size());
        for (double x : data) counts.push_back(static_cast<long>(x));
        NegBin fit = fit_negbin_moments(counts);
        std::cout << "alpha = " << format_double(fit.alpha()) << "\n";
        std::cout << "r = " << format_double(fit.r()) << "\n";
        return 0;
    }
    throw std::runtime_error("unknown fit kind '" + kind + "' (expected gpd|lognormal|negbin)");
}

int cmd_diagnose_mean_excess(const std::string& input, const std::string& thresholds_text) {
    std::vector<double> data = read_column_file(input);
    std::vector<double> thresholds = parse_list(thresholds_text, "--thresholds");
    MeanExcessCurve curve = mean_excess(data, thresholds);
    std::cout << "threshold,mean_excess,count\n";
    for (std::size_t i = 0; i < curve.thresholds.size(); ++i) {
        std::cout << format_double_short(curve.thresholds[i]) << ','
                  << format_double(curve.mean_excess[i]) << ',' << curve.counts[i] << '\n';
        if (curve.low_count[i]) {
            std::cerr << "warning: threshold " << curve.thresholds[i] << " has only "
                      << curve.counts[i] << " exceedances\n";
        }
    }
    return 0;
}

int cmd_diagnose_chi(const std::string& input, const CopulaFlags& flags, std::size_t n,
                     const std::string& levels_text, std::size_t col_i, std::size_t col_j,
                     std::uint64_t seed) {
    Matrix samples;
    if (!input.empty()) {
        std::ifstream in(input);
        if (!in) throw std::runtime_error("cannot open '" + input + "'");
        samples = read_csv(in).values;
    } else {
        Rng rng(seed);
        samples = sample_copula(flags.build(), n, rng);
    }
    std::cout << "level,chi\n";
    for (double u : parse_list(levels_text, "--level")) {
        std::cout << format_double_short(u) << ','
                  << format_double(empirical_chi(samples, col_i, col_j, u)) << '\n';
    }
    return 0;
}

int cmd_diagnose_stdf(const CopulaFlags& flags, const std::string& x_text,
                      const std::string& t_text) {
    CopulaModel c = flags.build();
    std::vector<double> x = parse_list(x_text, "--x");
    std::cout << "t,stdf\n";
    for (double t : parse_list(t_text, "--t")) {
        std::cout << format_double_short(t) << ',' << format_double(stdf_estimate(c, x, t)) << '\n';
    }
    return 0;
}

int cmd_sample(bool gpd_mode, bool pt_mode, const CopulaFlags& flags, double gpd_rho,
               const std::string& y_text, std::size_t n, std::uint64_t seed,
               const std::string& out_path) {
    Rng rng(seed);
    Matrix values;
    std::size_t dim = flags.dim;
    if (pt_mode) {
        CopulaModel base = flags.build();
        GpdCopulaSpec gpd{CopulaModel::gaussian(base.dim(), gpd_rho)};
        std::vector<double> y = y_text.empty() ? std::vector<double>(base.dim(), -0.1)
                                               : parse_list(y_text, "--y");
        PtCopulaSpec spec(base, gpd, y);
        values = shift_to_unit_cube(sample_pt_copula(spec, n, rng));
        dim = base.dim();
    } else if (gpd_mode) {
        GpdCopulaSpec spec{CopulaModel::gaussian(dim, gpd_rho)};
        values = sample_gpd_copula(spec, n, rng);
    } else {
        CopulaModel c = flags.build();
        values = sample_copula(c, n, rng);
        dim = c.dim();
    }
    std::vector<std::string> header;
    for (std::size_t i = 0; i < dim; ++i) header.push_back("u" + std::to_string(i + 1));
    std::ofstream file;
    write_csv(open_output(file, out_path), header, values);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Operational-loss simulation with GPD tail splicing"};
    app.require_subcommand(1);

    // simulate
    std::string config_path, out_dir = ".";
    std::optional<std::uint64_t> seed_override;
    bool emit_samples = false;
    unsigned threads = 1;
    CLI::App* simulate = app.add_subcommand("simulate", "run a scenario and write risk_report.csv");
    simulate->add_option("--config", config_path, "scenario config file")->required();
    simulate->add_option("--out", out_dir, "output directory (default .)");
    simulate->add_option("--seed", seed_override, "override the config seed");
    simulate->add_flag("--emit-samples", emit_samples, "also write samples.csv (one replication)");
    simulate->add_option("--threads", threads, "worker threads for replications");

    // fit
    std::string fit_kind, fit_input;
    std::optional<double> fit_threshold;
    CLI::App* fit = app.add_subcommand("fit", "fit parameters from a single-column CSV");
    fit->add_option("kind", fit_kind, "gpd|lognormal|negbin")->required();
    fit->add_option("--input", fit_input, "input CSV")->required();
    fit->add_option("--threshold", fit_threshold, "severity threshold u (gpd: fit x-u for x>u)");

    // diagnose
    CLI::App* diagnose = app.add_subcommand("diagnose", "EVT diagnostics as CSV on stdout");
    diagnose->require_subcommand(1);
    std::string diag_input, diag_thresholds, diag_levels = "0.99", diag_x, diag_t = "0.01";
    std::size_t diag_n = 100000, col_i = 0, col_j = 1;
    std::uint64_t diag_seed = 1;
    CopulaFlags diag_flags;

    CLI::App* mean_excess_cmd = diagnose->add_subcommand("mean-excess", "empirical mean excess curve");
    mean_excess_cmd->add_option("--input", diag_input, "single-column data CSV")->required();
    mean_excess_cmd->add_option("--thresholds", diag_thresholds, "comma-separated thresholds")
        ->required();

    CLI::App* chi_cmd = diagnose->add_subcommand("chi", "upper tail dependence estimate");
    chi_cmd->add_option("--input", diag_input, "sample CSV (alternative to copula flags)");
    diag_flags.attach(chi_cmd);
    chi_cmd->add_option("-n", diag_n, "sample size when sampling a copula");
    chi_cmd->add_option("--level", diag_levels, "comma-separated levels u");
    chi_cmd->add_option("--col-i", col_i, "dependent column (0-based)");
    chi_cmd->add_option("--col-j", col_j, "conditioning column (0-based)");
    chi_cmd->add_option("--seed", diag_seed, "sampling seed");

    CLI::App* stdf_cmd = diagnose->add_subcommand("stdf", "stable tail dependence function");
    diag_flags.attach(stdf_cmd);
    stdf_cmd->add_option("--x", diag_x, "evaluation point, componentwise <= 0")->required();
    stdf_cmd->add_option("--t", diag_t, "comma-separated t values in (0, 0.1]");

    // sample
    CLI::App* sample = app.add_subcommand("sample", "draw copula samples as CSV");
    bool sample_gpd = false, sample_pt = false;
    double gpd_rho = 0.7;
    std::string sample_y, sample_out;
    std::size_t sample_n = 10000;
    std::uint64_t sample_seed = 1;
    CopulaFlags sample_flags;
    sample->add_flag("--gpd", sample_gpd, "sample the GPD copula V on [-1,0]^m");
    sample->add_flag("--pt", sample_pt, "sample the pieced-together copula on [0,1]^m");
    sample_flags.attach(sample, "--copula");
    sample->add_option("--base", sample_flags.family, "base copula family for --pt");
    sample->add_option("--gpd-rho", gpd_rho, "correlation of the Gaussian copula behind S");
    sample->add_option("--y", sample_y, "PT threshold vector (default -0.1 per coordinate)");
    sample->add_option("-n", sample_n, "number of rows");
    sample->add_option("--seed", sample_seed, "sampling seed");
    sample->add_option("--out", sample_out, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            return cmd_simulate(config_path, out_dir, seed_override, emit_samples, threads);
        }
        if (fit->parsed()) return cmd_fit(fit_kind, fit_input, fit_threshold);
        if (diagnose->parsed()) {
            if (mean_excess_cmd->parsed()) {
                return cmd_diagnose_mean_excess(diag_input, diag_thresholds);
            }
            if (chi_cmd->parsed()) {
                return cmd_diagnose_chi(diag_input, diag_flags, diag_n, diag_levels, col_i, col_j,
                                        diag_seed);
            }
            if (stdf_cmd->parsed()) return cmd_diagnose_stdf(diag_flags, diag_x, diag_t);
        }
        if (sample->parsed()) {
            if (sample_gpd && sample_pt) {
                throw std::runtime_error("--gpd and --pt are mutually exclusive");
            }
            return cmd_sample(sample_gpd, sample_pt, sample_flags, gpd_rho, sample_y, sample_n,
                              sample_seed, sample_out);
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
