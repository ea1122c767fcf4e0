#include "anyon/cli_app.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "anyon/gamma_planar.hpp"
#include "anyon/output.hpp"
#include "anyon/thermal.hpp"
#include "anyon/tfim.hpp"
#include "anyon/version.hpp"

namespace anyon {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

double parse_double(const std::string& text) {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("malformed number: " + text);
    return v;
}

}  // namespace

std::vector<double> parse_double_grid(const std::string& text) {
    if (text.find(':') != std::string::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3) {
            throw std::invalid_argument("range must be start:stop:count, got: " + text);
        }
        const double start = parse_double(parts[0]);
        const double stop = parse_double(parts[1]);
        const long count = std::stol(parts[2]);
        if (count < 1) throw std::invalid_argument("range count must be >= 1");
        std::vector<double> grid;
        grid.reserve(count);
        for (long i = 0; i < count; ++i) {
            if (i == count - 1 && count > 1) grid.push_back(stop);
            else grid.push_back(start + (stop - start) * static_cast<double>(i) /
                                            static_cast<double>(std::max(count - 1, 1L)));
        }
        return grid;
    }
    std::vector<double> grid;
    for (const auto& item : split(text, ',')) grid.push_back(parse_double(item));
    if (grid.empty()) throw std::invalid_argument("empty grid: " + text);
    return grid;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (const auto& item : split(text, ',')) out.push_back(std::stoi(item));
    if (out.empty()) throw std::invalid_argument("empty list: " + text);
    return out;
}

std::vector<std::int64_t> parse_int64_list(const std::string& text) {
    std::vector<std::int64_t> out;
    for (const auto& item : split(text, ',')) out.push_back(std::stoll(item));
    if (out.empty()) throw std::invalid_argument("empty list: " + text);
    return out;
}

namespace {

struct CommonOpts {
    std::string out = "-";
    std::string format = "csv";
    bool stamp = false;
    int workers = 1;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--out", opts.out, "output path, '-' for stdout");
    cmd->add_option("--format", opts.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--stamp", opts.stamp, "include a wall-clock timestamp in the metadata");
    cmd->add_option("--workers", opts.workers, "parallel workers (output is identical for any k)")
        ->check(CLI::PositiveNumber);
}

std::string timestamp_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

void emit(const CommonOpts& opts, RunMetadata meta, const Table& table) {
    if (opts.stamp) meta.params.emplace_back("timestamp", timestamp_now());
    std::ofstream file;
    if (opts.out != "-") {
        file.open(opts.out, std::ios::binary);
        if (!file) throw std::invalid_argument("cannot open output path: " + opts.out);
    }
    std::ostream& out = opts.out == "-" ? std::cout : file;
    if (opts.format == "json") write_json(out, meta, table);
    else write_csv(out, meta, table);
}

Cell seed_cell(std::uint64_t seed) { return std::to_string(seed); }

// ---- subcommand handlers -------------------------------------------------

int run_thermal(const CommonOpts& opts, const std::string& beta_text,
                const std::string& sizes_text, double j_s, double j_p) {
    const auto beta_grid = parse_double_grid(beta_text);
    const auto sizes = parse_int64_list(sizes_text);
    for (double beta : beta_grid) {
        if (!(beta > 0.0)) throw std::invalid_argument("thermal: grid beta values must be > 0");
    }
    const auto rows = thermal_curve(beta_grid, sizes, j_s, j_p);

    Table table;
    table.columns = {"T", "beta", "N", "j_s", "j_p", "gamma_bits"};
    for (const auto& r : rows) {
        table.rows.push_back({r.temperature, r.beta, std::int64_t{r.n_total}, r.j_s, r.j_p,
                              r.gamma_bits});
    }
    RunMetadata meta{kVersion, "thermal",
                     {{"beta", beta_text}, {"sizes", sizes_text},
                      {"j_s", format_double(j_s)}, {"j_p", format_double(j_p)}}};
    emit(opts, std::move(meta), table);
    return 0;
}

int run_tfim(const CommonOpts& opts, const std::string& n_text, const std::string& mu_text,
             double w) {
    const auto n_list = parse_int_list(n_text);
    const auto mu_grid = parse_double_grid(mu_text);
    const auto rows = tfim_curve(n_list, mu_grid, w, opts.workers);

    Table table;
    table.columns = {"N", "w", "mu", "gamma_bits", "ground_energy", "residual",
                     "solver_iterations"};
    for (const auto& r : rows) {
        table.rows.push_back({std::int64_t{r.n}, r.w, r.mu, r.gamma_bits, r.ground_energy,
                              r.residual, std::int64_t{r.iterations}});
    }
    RunMetadata meta{kVersion, "tfim",
                     {{"n", n_text}, {"mu", mu_text}, {"w", format_double(w)},
                      {"quasiparticles", "mu=0 domain walls"}}};
    emit(opts, std::move(meta), table);
    return 0;
}

Table planar_table(const std::vector<SweepRow>& rows) {
    Table table;
    table.columns = {"L",    "p_x",  "p_z",  "n_samples", "P_e",      "se_P_e",     "P_m",
                     "se_P_m", "pi_e", "pi_m", "gamma_lb",  "se_gamma_lb", "decoder", "seed"};
    for (const auto& r : rows) {
        const GammaEstimate& e = r.estimate;
        table.rows.push_back({std::int64_t{r.size}, r.p_x, r.p_z, std::int64_t{e.n_samples},
                              e.p_success_e, e.se_p_success_e, e.p_success_m, e.se_p_success_m,
                              e.pi_e, e.pi_m, e.gamma_lb, e.se_gamma_lb, r.decoder,
                              seed_cell(e.seed)});
    }
    return table;
}

int run_planar(const CommonOpts& opts, const std::string& l_text, const std::string& p_text,
               std::int64_t samples, const std::string& decoder_text, std::uint64_t seed,
               std::uint64_t stream_id) {
    const auto sizes = parse_int_list(l_text);
    const auto p_grid = parse_double_grid(p_text);
    if (samples < 1) throw std::invalid_argument("planar: --samples must be >= 1");
    const DecoderKind kind =
        decoder_text == "ml" ? DecoderKind::ml : DecoderKind::matching;
    if (kind == DecoderKind::ml) {
        for (int l : sizes) {
            if (l * l > 16) {
                throw std::invalid_argument("planar: ml decoder enumerates 2^(L^2) patterns and "
                                            "requires L^2 <= 16");
            }
        }
    }
    const auto rows =
        sweep(sizes, p_grid, samples, kind, SeededStream{seed, stream_id}, opts.workers);
    RunMetadata meta{kVersion, "planar",
                     {{"l", l_text}, {"p", p_text}, {"samples", std::to_string(samples)},
                      {"decoder", decoder_text}, {"seed", std::to_string(seed)},
                      {"stream", std::to_string(stream_id)},
                      {"workers", std::to_string(opts.workers)}}};
    emit(opts, std::move(meta), planar_table(rows));
    return 0;
}

int run_oracle(const CommonOpts& opts, const std::string& l_text, const std::string& p_text) {
    const auto sizes = parse_int_list(l_text);
    const auto p_grid = parse_double_grid(p_text);
    Table table;
    table.columns = {"L", "p_x", "p_z", "gamma_bits"};
    for (int l : sizes) {
        if (l * l > 16) {
            throw std::invalid_argument("oracle: exact enumeration requires L^2 <= 16");
        }
        const PlanarLayout layout = build_layout(l);
        for (double p : p_grid) {
            const GammaValue g = gamma_exact_enum(layout, NoiseModel{p, p});
            table.rows.push_back({std::int64_t{l}, p, p, g.value_bits});
        }
    }
    RunMetadata meta{kVersion, "oracle", {{"l", l_text}, {"p", p_text}}};
    emit(opts, std::move(meta), table);
    return 0;
}

// Cross-module consistency checks: decoder bound against the enumeration
// oracle, domain-wall isospectrality, and the parity closed form against
// exhaustive enumeration.
int run_verify(const CommonOpts& opts, std::uint64_t seed) {
    Table table;
    table.columns = {"check", "status", "detail"};
    bool all_pass = true;
    const auto record = [&](const std::string& name, bool pass, const std::string& detail) {
        table.rows.push_back({name, std::string(pass ? "PASS" : "FAIL"), detail});
        all_pass = all_pass && pass;
    };

    {
        const PlanarLayout layout = build_layout(2);
        for (double p : {0.05, 0.15}) {
            const NoiseModel model{p, p};
            const GammaValue oracle = gamma_exact_enum(layout, model);
            const GammaEstimate est = estimate_gamma_mc(layout, model, DecoderKind::ml, 20000,
                                                        SeededStream{seed, 0}, opts.workers);
            const bool pass = est.gamma_lb <= oracle.value_bits + 3.0 * est.se_gamma_lb;
            char detail[128];
            std::snprintf(detail, sizeof(detail), "L=2 p=%.2f: lb=%.4f oracle=%.4f se=%.4f", p,
                          est.gamma_lb, oracle.value_bits, est.se_gamma_lb);
            record("bound-below-oracle", pass, detail);
        }
    }
    {
        for (int n : {2, 4, 5, 6}) {
            double worst = 0.0;
            for (double mu : {0.0, 0.5, 1.0}) {
                const ChainSpec spec{n, 1.0, mu};
                Eigen::VectorXd si =
                    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(build_ising_hamiltonian(spec))
                        .eigenvalues();
                Eigen::VectorXd sp =
                    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(PseudoSpinOperator(spec).dense())
                        .eigenvalues();
                worst = std::max(worst, (si - sp).cwiseAbs().maxCoeff());
            }
            char detail[96];
            std::snprintf(detail, sizeof(detail), "N=%d max spectral deviation %.3g", n, worst);
            record("domain-wall-isospectrality", worst < 1e-9, detail);
        }
    }
    {
        double worst = 0.0;
        for (int n = 1; n <= 12; ++n) {
            for (double p : {0.1, 0.37, 0.5, 0.73}) {
                double even_mass = 0.0;
                for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
                    const int k = std::popcount(mask);
                    if (k % 2 == 0)
                        even_mass += std::pow(p, k) * std::pow(1.0 - p, n - k);
                }
                worst = std::max(worst, std::abs(even_mass - vacuum_parity_probability(p, n)));
            }
        }
        char detail[96];
        std::snprintf(detail, sizeof(detail), "n<=12, max |closed form - enumeration| = %.3g",
                      worst);
        record("vacuum-parity-formula", worst < 1e-12, detail);
    }

    RunMetadata meta{kVersion, "verify", {{"seed", std::to_string(seed)}}};
    emit(opts, std::move(meta), table);
    return all_pass ? 0 : 2;
}

void error_record(const char* type, const std::string& message) {
    nlohmann::json j;
    j["error"]["type"] = type;
    j["error"]["message"] = message;
    std::cerr << j.dump() << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"anyonic topological entropy toolkit"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::uint64_t seed = 1;
    std::uint64_t stream_id = 0;

    auto* thermal_cmd = app.add_subcommand("thermal", "exact Gamma curves for thermal states");
    std::string beta_text = "0.1:5:50";
    std::string sizes_text = "16,64,256,1024";
    double j_s = 1.0, j_p = 1.0;
    thermal_cmd->add_option("--beta", beta_text, "inverse-temperature grid (start:stop:count)");
    thermal_cmd->add_option("--sizes", sizes_text, "total plaquette counts N");
    thermal_cmd->add_option("--js", j_s, "s-plaquette coupling");
    thermal_cmd->add_option("--jp", j_p, "p-plaquette coupling");
    add_common(thermal_cmd, opts);

    auto* tfim_cmd = app.add_subcommand("tfim", "Gamma for the transverse-field Ising chain");
    std::string n_text = "5,10,15";
    std::string mu_text = "0:2:81";
    double w = 1.0;
    tfim_cmd->add_option("--n", n_text, "chain lengths (multiples of 5)");
    tfim_cmd->add_option("--mu", mu_text, "transverse-field grid");
    tfim_cmd->add_option("--w", w, "Ising coupling");
    add_common(tfim_cmd, opts);

    auto* planar_cmd =
        app.add_subcommand("planar", "Monte Carlo Gamma lower bound for the planar code");
    std::string l_text = "3,5,7";
    std::string p_text = "0.01:0.25:13";
    std::int64_t samples = 100000;
    std::string decoder_text = "matching";
    planar_cmd->add_option("--l", l_text, "code sizes L");
    planar_cmd->add_option("--p", p_text, "error-rate grid (p_x = p_z = p)");
    planar_cmd->add_option("--samples", samples, "samples per grid point");
    planar_cmd->add_option("--decoder", decoder_text, "matching or ml")
        ->check(CLI::IsMember({"matching", "ml"}));
    planar_cmd->add_option("--seed", seed, "RNG seed");
    planar_cmd->add_option("--stream", stream_id, "RNG stream id");
    add_common(planar_cmd, opts);

    auto* oracle_cmd = app.add_subcommand("oracle", "exact Gamma by enumeration (small L)");
    std::string ol_text = "2,3";
    std::string op_text = "0.02,0.05,0.1,0.15,0.3";
    oracle_cmd->add_option("--l", ol_text, "code sizes L (L^2 <= 16)");
    oracle_cmd->add_option("--p", op_text, "error-rate grid");
    add_common(oracle_cmd, opts);

    auto* verify_cmd = app.add_subcommand("verify", "run cross-module consistency checks");
    verify_cmd->add_option("--seed", seed, "RNG seed");
    add_common(verify_cmd, opts);

    std::vector<const char*> argv;
    argv.push_back("gammasim");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (thermal_cmd->parsed()) return run_thermal(opts, beta_text, sizes_text, j_s, j_p);
        if (tfim_cmd->parsed()) return run_tfim(opts, n_text, mu_text, w);
        if (planar_cmd->parsed())
            return run_planar(opts, l_text, p_text, samples, decoder_text, seed, stream_id);
        if (oracle_cmd->parsed()) return run_oracle(opts, ol_text, op_text);
        if (verify_cmd->parsed()) return run_verify(opts, seed);
    } catch (const std::invalid_argument& e) {
        error_record("invalid_config", e.what());
        return 1;
    } catch (const std::exception& e) {
        error_record("computation_failure", e.what());
        return 2;
    }
    return 1;
}

}  // namespace anyon
