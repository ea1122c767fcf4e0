#include "anyon/gamma_planar.hpp"

#include <bit>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <thread>

namespace anyon {

namespace {

struct SectorCounts {
    std::int64_t correct_e = 0;
    std::int64_t correct_m = 0;
    std::int64_t vacuum_e = 0;
    std::int64_t vacuum_m = 0;

    SectorCounts& operator+=(const SectorCounts& o) {
        correct_e += o.correct_e;
        correct_m += o.correct_m;
        vacuum_e += o.vacuum_e;
        vacuum_m += o.vacuum_m;
        return *this;
    }
};

double binomial_se(double p, std::int64_t n) { return std::sqrt(p * (1.0 - p) / n); }

// d/dx of the binary Shannon entropy, in bits.
double dshannon(double x) { return std::log2((1.0 - x) / x); }

// First-order error propagation through the bound formula, per sector.
double gamma_variance_term(double p, double pi, double se_p, double se_pi) {
    const double u = p * pi + (1.0 - p) * (1.0 - pi);
    double var = 0.0;
    if (se_p > 0.0) {
        const double dp = dshannon(u) * (2.0 * pi - 1.0) - dshannon(p);
        if (std::isfinite(dp)) var += dp * dp * se_p * se_p;
    }
    if (se_pi > 0.0) {
        const double dpi = dshannon(u) * (2.0 * p - 1.0) - dshannon(pi);
        if (std::isfinite(dpi)) var += dpi * dpi * se_pi * se_pi;
    }
    return var;
}

// Coset masses per sector: mass[synd * 2 + class_parity] summed over all
// 2^n flip patterns with i.i.d. flip probability p.
std::vector<double> sector_mass(const std::vector<std::vector<int>>& qubit_stabs,
                                const BitVec& cut_mask, int n_qubits, int n_stabs, double p) {
    std::vector<std::uint32_t> qsynd(n_qubits, 0);
    for (int q = 0; q < n_qubits; ++q)
        for (int s : qubit_stabs[q]) qsynd[q] |= 1u << s;

    std::vector<double> pw(n_qubits + 1);
    for (int w = 0; w <= n_qubits; ++w)
        pw[w] = std::pow(p, w) * std::pow(1.0 - p, n_qubits - w);

    std::vector<double> mass((std::size_t{1} << n_stabs) * 2, 0.0);
    std::vector<std::uint32_t> synd(std::size_t{1} << n_qubits);
    std::vector<std::uint8_t> parity(std::size_t{1} << n_qubits);
    synd[0] = 0;
    parity[0] = 0;
    mass[0] = pw[0];
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n_qubits); ++mask) {
        const int q = std::countr_zero(mask);
        const std::uint64_t rest = mask & (mask - 1);
        synd[mask] = synd[rest] ^ qsynd[q];
        parity[mask] = parity[rest] ^ static_cast<std::uint8_t>(cut_mask.test(q));
        mass[synd[mask] * 2 + parity[mask]] += pw[std::popcount(mask)];
    }
    return mass;
}

}  // namespace

std::string decoder_name(DecoderKind kind) {
    return kind == DecoderKind::matching ? "matching" : "ml";
}

GammaEstimate estimate_gamma_mc(const PlanarLayout& layout, const NoiseModel& model,
                                DecoderKind decoder, std::int64_t n_samples,
                                SeededStream stream, int workers) {
    validate_noise_model(model);
    if (n_samples < 1) throw std::invalid_argument("estimate_gamma_mc: n_samples must be >= 1");
    if (workers < 1) workers = 1;
    if (workers > n_samples) workers = static_cast<int>(n_samples);

    std::shared_ptr<const ExactMlDecoder> ml;
    if (decoder == DecoderKind::ml) ml = std::make_shared<ExactMlDecoder>(layout, model);

    const auto run_block = [&](std::int64_t begin, std::int64_t end, SectorCounts& counts) {
        MatchingDecoder matcher(layout);
        for (std::int64_t i = begin; i < end; ++i) {
            RandomStream rng(substream(stream, static_cast<std::uint64_t>(i)));
            const ErrorPattern err = sample_error(layout, model, rng);
            const Syndrome syn = syndrome_of(layout, err);
            const LogicalClass truth = logical_class_of(layout, err);
            const LogicalClass guess =
                (decoder == DecoderKind::ml) ? ml->decode(syn) : matcher.decode(syn).guessed_class;
            counts.correct_e += guess.e_parity == truth.e_parity;
            counts.correct_m += guess.m_parity == truth.m_parity;
            counts.vacuum_e += truth.e_parity == 0;
            counts.vacuum_m += truth.m_parity == 0;
        }
    };

    SectorCounts total;
    if (workers == 1) {
        run_block(0, n_samples, total);
    } else {
        std::vector<SectorCounts> partial(workers);
        std::vector<std::thread> pool;
        const std::int64_t chunk = (n_samples + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const std::int64_t begin = w * chunk;
            const std::int64_t end = std::min<std::int64_t>(n_samples, begin + chunk);
            pool.emplace_back([&, w, begin, end] { run_block(begin, end, partial[w]); });
        }
        for (auto& t : pool) t.join();
        for (const auto& c : partial) total += c;  // integer merge, order independent
    }

    GammaEstimate est;
    est.n_samples = n_samples;
    est.seed = stream.seed;
    const double n = static_cast<double>(n_samples);
    est.p_success_e = total.correct_e / n;
    est.p_success_m = total.correct_m / n;
    est.pi_e = total.vacuum_e / n;
    est.pi_m = total.vacuum_m / n;
    est.se_p_success_e = binomial_se(est.p_success_e, n_samples);
    est.se_p_success_m = binomial_se(est.p_success_m, n_samples);
    est.se_pi_e = binomial_se(est.pi_e, n_samples);
    est.se_pi_m = binomial_se(est.pi_m, n_samples);

    const double i_e = mutual_information_bound(est.p_success_e, est.pi_e);
    const double i_m = mutual_information_bound(est.p_success_m, est.pi_m);
    const GammaLowerBound bound = gamma_lower_bound(i_e, i_m, est.pi_e, est.pi_m);
    est.gamma_lb = std::min(bound.value_bits, 2.0);
    est.gamma_lb_raw = bound.raw_bits;
    est.se_gamma_lb = std::sqrt(
        gamma_variance_term(est.p_success_e, est.pi_e, est.se_p_success_e, est.se_pi_e) +
        gamma_variance_term(est.p_success_m, est.pi_m, est.se_p_success_m, est.se_pi_m));
    return est;
}

JointClassDistribution exact_joint_distribution(const PlanarLayout& layout,
                                                const NoiseModel& model) {
    validate_noise_model(model);
    if (layout.qubit_count > 16) {
        throw std::invalid_argument("exact_joint_distribution: enumeration limited to 16 qubits");
    }
    const int n_s = static_cast<int>(layout.s_supports.size());
    const int n_p = static_cast<int>(layout.p_supports.size());
    const auto mass_e =
        sector_mass(layout.qubit_s_stabs, layout.x_cut_mask, layout.qubit_count, n_s, model.p_z);
    const auto mass_m =
        sector_mass(layout.qubit_p_stabs, layout.z_cut_mask, layout.qubit_count, n_p, model.p_x);

    // Sectors are independent under i.i.d. CSS noise: the joint is the
    // product distribution. B-configuration id packs both syndromes.
    JointClassDistribution joint;
    joint.n_classes = 4;
    for (std::uint64_t se = 0; se < (std::uint64_t{1} << n_s); ++se) {
        for (int pe = 0; pe < 2; ++pe) {
            const double we = mass_e[se * 2 + pe];
            if (we < kZeroProb) continue;
            for (std::uint64_t sm = 0; sm < (std::uint64_t{1} << n_p); ++sm) {
                for (int pm = 0; pm < 2; ++pm) {
                    const double wm = mass_m[sm * 2 + pm];
                    if (wm < kZeroProb) continue;
                    const auto cls = static_cast<std::uint32_t>(pe | (pm << 1));
                    joint.add(cls, (se << n_p) | sm, we * wm);
                }
            }
        }
    }
    return joint;
}

GammaValue gamma_exact_enum(const PlanarLayout& layout, const NoiseModel& model) {
    return gamma_from_joint(exact_joint_distribution(layout, model));
}

std::vector<SweepRow> sweep(const std::vector<int>& sizes, const std::vector<double>& p_grid,
                            std::int64_t samples_per_point, DecoderKind decoder,
                            SeededStream stream, int workers) {
    if (sizes.empty() || p_grid.empty()) throw std::invalid_argument("sweep: empty grid");
    std::vector<SweepRow> rows;
    std::uint64_t point = 0;
    for (int size : sizes) {
        const PlanarLayout layout = build_layout(size);
        for (double p : p_grid) {
            const NoiseModel model{p, p};
            SweepRow row;
            row.size = size;
            row.p_x = p;
            row.p_z = p;
            row.decoder = decoder_name(decoder);
            row.estimate = estimate_gamma_mc(layout, model, decoder, samples_per_point,
                                             substream(stream, point), workers);
            row.estimate.seed = stream.seed;
            rows.push_back(std::move(row));
            ++point;
        }
    }
    return rows;
}

}  // namespace anyon
