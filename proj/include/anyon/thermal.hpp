#pragma once

#include <cstdint>
#include <vector>

#include "anyon/entropy.hpp"

// Closed-form Gamma for thermal planar-code states. Plaquette occupations
// are uncorrelated in a thermal state, so the syndrome region carries no
// information about region A and Gamma = 2 - S(pi_S) - S(pi_P) bits, with
// pi the even-parity probability over the N/4 plaquettes of each type
// inside region A.

namespace anyon {

struct ThermalParams {
    double beta = 0.0;  // inverse temperature, >= 0
    double j_s = 1.0;   // stabilizer couplings (energy units)
    double j_p = 1.0;
    std::int64_t n_total = 0;  // total plaquette count N; >= 4 and divisible by 4
};

void validate_thermal_params(const ThermalParams& params);

// Probability that a plaquette of coupling j holds an anyon:
// 1 / (1 + exp(2 j beta)). Large arguments underflow cleanly to 0.
double occupation_probability(double coupling, double beta);

// Probability of even anyon parity over n independent plaquettes:
// (1 + (1 - 2p)^n) / 2.
double vacuum_parity_probability(double p, std::int64_t n);

GammaValue thermal_gamma(const ThermalParams& params);

struct ThermalRow {
    double temperature = 0.0;
    double beta = 0.0;
    std::int64_t n_total = 0;
    double j_s = 1.0;
    double j_p = 1.0;
    double gamma_bits = 0.0;
};

// Exact curve family, one row per (beta, N) grid point.
std::vector<ThermalRow> thermal_curve(const std::vector<double>& beta_grid,
                                      const std::vector<std::int64_t>& sizes, double j_s,
                                      double j_p);

}  // namespace anyon
