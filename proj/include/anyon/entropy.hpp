#pragma once

#include <cstdint>
#include <vector>

// Shannon entropies and the anyonic-topological-entropy formulas.
// All entropies in this library are in bits (base-2 logarithms).
// Every function here is pure; inputs are immutable and there is no shared
// state, so concurrent calls need no synchronization.

namespace anyon {

// Probabilities below this are treated as exact zeros in entropy sums.
inline constexpr double kZeroProb = 1e-15;
// Allowed deviation of a distribution's total mass from 1.
inline constexpr double kSumTol = 1e-12;
// Numerical slack for clamping entropy identities.
inline constexpr double kGammaSlack = 1e-9;

// Discrete distribution over opaque configurations. `labels` is optional;
// when empty the label of entry i is implicitly i.
struct Pmf {
    std::vector<double> probabilities;
    std::vector<std::uint64_t> labels;
};

// Throws std::invalid_argument unless all probabilities lie in [0,1] and
// sum to 1 within kSumTol (labels, when present, must match in length).
void validate_pmf(const Pmf& pmf);

struct JointEntry {
    std::uint32_t class_index;
    std::uint64_t b_config;
    double probability;
};

// Joint distribution over (net-occupation class of region A, configuration
// of region B). Entries may repeat; they are merged during validation.
struct JointClassDistribution {
    int n_classes = 0;  // 4 for the planar code, 2 for the 1d chain
    std::vector<JointEntry> entries;

    void add(std::uint32_t class_index, std::uint64_t b_config, double probability) {
        entries.push_back(JointEntry{class_index, b_config, probability});
    }
};

struct GammaValue {
    double value_bits = 0.0;
    double max_bits = 0.0;
};

struct GammaLowerBound {
    double value_bits = 0.0;  // clamped below at zero
    double raw_bits = 0.0;    // unclamped value of the bound formula
    double max_bits = 2.0;
};

// S(x) = -x log2 x - (1-x) log2(1-x), with 0 log 0 = 0.
// x may exceed [0,1] by at most kSumTol (clamped); beyond that throws
// std::domain_error.
double shannon_binary(double x);

// -sum_i p_i log2 p_i over a validated Pmf.
double entropy_of_pmf(const Pmf& pmf);

// Gamma = log2(n_classes) + S_B - S_{AB} where S_B is the entropy of the
// marginal over B-configurations and S_{AB} the entropy of the joint.
// The conditional entropy S_{AB} - S_B must lie in
// [-kGammaSlack, log2(n_classes) + kGammaSlack]; violations (impossible for
// a well-formed classical joint) throw std::domain_error. The result is
// clamped into [0, max].
GammaValue gamma_from_joint(const JointClassDistribution& joint);

// Decoder-based estimate S(P*pi + (1-P)(1-pi)) - S(P) of the mutual
// information between a binary class and the syndrome region. This is a
// lower bound on the true mutual information: a decoder cannot extract
// more information than brute-force inference.
double mutual_information_bound(double p_correct, double pi_vacuum);

// 2 + I_e + I_m - S(pi_e) - S(pi_m) bits, the lower bound on Gamma for the
// two-sector planar code. Clamped below at zero; the raw value is retained.
GammaLowerBound gamma_lower_bound(double i_e, double i_m, double pi_e, double pi_m);

}  // namespace anyon
