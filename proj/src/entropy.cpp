#include "anyon/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace anyon {

namespace {

// Contribution of one probability to an entropy sum, in bits.
double plog_term(double p) {
    if (p < kZeroProb) return 0.0;
    return -p * std::log2(p);
}

double clamp_probability(double x, const char* what) {
    if (x < -kSumTol || x > 1.0 + kSumTol) {
        throw std::domain_error(std::string(what) + " outside [0,1]: " + std::to_string(x));
    }
    return std::clamp(x, 0.0, 1.0);
}

}  // namespace

void validate_pmf(const Pmf& pmf) {
    if (pmf.probabilities.empty()) {
        throw std::invalid_argument("pmf: empty distribution");
    }
    if (!pmf.labels.empty() && pmf.labels.size() != pmf.probabilities.size()) {
        throw std::invalid_argument("pmf: label count does not match probability count");
    }
    double total = 0.0;
    for (double p : pmf.probabilities) {
        if (!(p >= -kZeroProb) || p > 1.0 + kSumTol) {
            throw std::invalid_argument("pmf: probability outside [0,1]: " + std::to_string(p));
        }
        total += p;
    }
    if (std::abs(total - 1.0) > kSumTol) {
        throw std::invalid_argument("pmf: total mass " + std::to_string(total) + " != 1");
    }
}

double shannon_binary(double x) {
    x = clamp_probability(x, "shannon_binary argument");
    return plog_term(x) + plog_term(1.0 - x);
}

double entropy_of_pmf(const Pmf& pmf) {
    validate_pmf(pmf);
    double h = 0.0;
    for (double p : pmf.probabilities) h += plog_term(p);
    return h;
}

GammaValue gamma_from_joint(const JointClassDistribution& joint) {
    if (joint.n_classes < 2) {
        throw std::invalid_argument("joint: need at least 2 classes");
    }
    if (joint.entries.empty()) {
        throw std::invalid_argument("joint: no entries");
    }

    // Merge duplicate (class, b) cells in a deterministic order.
    std::vector<JointEntry> cells = joint.entries;
    std::sort(cells.begin(), cells.end(), [](const JointEntry& a, const JointEntry& b) {
        if (a.b_config != b.b_config) return a.b_config < b.b_config;
        return a.class_index < b.class_index;
    });

    double total = 0.0;
    double s_joint = 0.0;
    double s_b = 0.0;
    std::size_t i = 0;
    while (i < cells.size()) {
        const std::uint64_t b = cells[i].b_config;
        double b_mass = 0.0;
        while (i < cells.size() && cells[i].b_config == b) {
            const std::uint32_t cls = cells[i].class_index;
            if (cls >= static_cast<std::uint32_t>(joint.n_classes)) {
                throw std::invalid_argument("joint: class index " + std::to_string(cls) +
                                            " out of range");
            }
            double cell = 0.0;
            while (i < cells.size() && cells[i].b_config == b && cells[i].class_index == cls) {
                if (cells[i].probability < -kZeroProb) {
                    throw std::invalid_argument("joint: negative probability");
                }
                cell += cells[i].probability;
                ++i;
            }
            b_mass += cell;
            s_joint += plog_term(cell);
        }
        total += b_mass;
        s_b += plog_term(b_mass);
    }
    if (std::abs(total - 1.0) > kSumTol) {
        throw std::invalid_argument("joint: total mass " + std::to_string(total) + " != 1");
    }

    const double max_bits = std::log2(static_cast<double>(joint.n_classes));
    const double conditional = s_joint - s_b;  // S(A|B) for a classical joint
    if (conditional < -kGammaSlack || conditional > max_bits + kGammaSlack) {
        throw std::domain_error("joint: conditional entropy " + std::to_string(conditional) +
                                " outside [0, log2(n_classes)]; malformed joint");
    }
    GammaValue g;
    g.max_bits = max_bits;
    g.value_bits = std::clamp(max_bits - conditional, 0.0, max_bits);
    return g;
}

double mutual_information_bound(double p_correct, double pi_vacuum) {
    const double p = clamp_probability(p_correct, "p_correct");
    const double pi = clamp_probability(pi_vacuum, "pi_vacuum");
    const double mixed = p * pi + (1.0 - p) * (1.0 - pi);
    return shannon_binary(mixed) - shannon_binary(p);
}

GammaLowerBound gamma_lower_bound(double i_e, double i_m, double pi_e, double pi_m) {
    if (i_e < -kGammaSlack || i_m < -kGammaSlack) {
        throw std::domain_error("gamma_lower_bound: negative mutual information");
    }
    GammaLowerBound out;
    out.max_bits = 2.0;
    out.raw_bits = 2.0 + i_e + i_m - shannon_binary(pi_e) - shannon_binary(pi_m);
    out.value_bits = std::max(0.0, out.raw_bits);
    return out;
}

}  // namespace anyon
