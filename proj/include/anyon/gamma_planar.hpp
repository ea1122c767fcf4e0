#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "anyon/decoder.hpp"
#include "anyon/entropy.hpp"
#include "anyon/noise.hpp"
#include "anyon/planar_code.hpp"

// Monte Carlo estimation of the Gamma lower bound for the planar code under
// i.i.d. noise, and the exact-enumeration oracle for small codes.
//
// Region A is the logical class (net anyon moved over each boundary pair,
// four values), region B the full bulk syndrome. P_e (P_m) is the
// probability that the decoder guesses the e-class (m-class) correctly,
// pi_e (pi_m) the probability that the class is the vacuum.

namespace anyon {

enum class DecoderKind { matching, ml };

std::string decoder_name(DecoderKind kind);

struct GammaEstimate {
    double p_success_e = 0.0;
    double p_success_m = 0.0;
    double pi_e = 0.0;
    double pi_m = 0.0;
    double gamma_lb = 0.0;      // clamped to [0, 2] bits
    double gamma_lb_raw = 0.0;  // unclamped bound value
    double se_p_success_e = 0.0;
    double se_p_success_m = 0.0;
    double se_pi_e = 0.0;
    double se_pi_m = 0.0;
    double se_gamma_lb = 0.0;
    std::int64_t n_samples = 0;
    std::uint64_t seed = 0;
};

// Samples errors, decodes, and compares guessed against true classes.
// pi and P are estimated from the same sample stream (correlated
// estimators); standard errors are binomial per estimator, with the
// gamma_lb error propagated to first order and covariances ignored, which
// errs on the conservative side.
//
// Sample i always draws from substream(stream, i), so the result is
// bitwise identical for any worker count.
GammaEstimate estimate_gamma_mc(const PlanarLayout& layout, const NoiseModel& model,
                                DecoderKind decoder, std::int64_t n_samples,
                                SeededStream stream, int workers = 1);

// Exact joint distribution over (logical class, full syndrome), built by
// enumerating all error patterns per sector. Requires qubit_count <= 16.
JointClassDistribution exact_joint_distribution(const PlanarLayout& layout,
                                                const NoiseModel& model);

// Gamma computed exactly from the enumerated joint: the brute-force oracle
// for every Monte Carlo and bound claim. Requires qubit_count <= 16.
GammaValue gamma_exact_enum(const PlanarLayout& layout, const NoiseModel& model);

struct SweepRow {
    int size = 0;
    double p_x = 0.0;
    double p_z = 0.0;
    GammaEstimate estimate;
    std::string decoder;
};

// Full Cartesian sweep over sizes x error rates (p_x = p_z = p). The point
// with index k (size-major order) uses substream(stream, k).
std::vector<SweepRow> sweep(const std::vector<int>& sizes, const std::vector<double>& p_grid,
                            std::int64_t samples_per_point, DecoderKind decoder,
                            SeededStream stream, int workers = 1);

}  // namespace anyon
