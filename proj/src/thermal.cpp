#include "anyon/thermal.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace anyon {

void validate_thermal_params(const ThermalParams& params) {
    if (!(params.beta >= 0.0)) {
        throw std::invalid_argument("thermal: beta must be >= 0");
    }
    if (params.n_total < 4 || params.n_total % 4 != 0) {
        throw std::invalid_argument("thermal: N must be >= 4 and divisible by 4");
    }
}

double occupation_probability(double coupling, double beta) {
    if (!(beta >= 0.0)) throw std::invalid_argument("occupation_probability: beta must be >= 0");
    // exp overflow gives +inf and the quotient cleanly reaches 0
    return 1.0 / (1.0 + std::exp(2.0 * coupling * beta));
}

double vacuum_parity_probability(double p, std::int64_t n) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("vacuum_parity_probability: p must lie in [0,1]");
    }
    if (n < 1) throw std::invalid_argument("vacuum_parity_probability: n must be >= 1");
    return (1.0 + std::pow(1.0 - 2.0 * p, static_cast<double>(n))) / 2.0;
}

GammaValue thermal_gamma(const ThermalParams& params) {
    validate_thermal_params(params);
    const std::int64_t n_region = params.n_total / 4;  // plaquettes of each type in region A
    const double pi_s =
        vacuum_parity_probability(occupation_probability(params.j_s, params.beta), n_region);
    const double pi_p =
        vacuum_parity_probability(occupation_probability(params.j_p, params.beta), n_region);
    GammaValue g;
    g.max_bits = 2.0;
    g.value_bits = 2.0 - shannon_binary(pi_s) - shannon_binary(pi_p);
    return g;
}

std::vector<ThermalRow> thermal_curve(const std::vector<double>& beta_grid,
                                      const std::vector<std::int64_t>& sizes, double j_s,
                                      double j_p) {
    if (beta_grid.empty() || sizes.empty()) throw std::invalid_argument("thermal_curve: empty grid");
    std::vector<ThermalRow> rows;
    for (double beta : beta_grid) {
        for (std::int64_t n : sizes) {
            ThermalParams params{beta, j_s, j_p, n};
            ThermalRow row;
            row.beta = beta;
            row.temperature = beta > 0.0 ? 1.0 / beta : std::numeric_limits<double>::infinity();
            row.n_total = n;
            row.j_s = j_s;
            row.j_p = j_p;
            row.gamma_bits = thermal_gamma(params).value_bits;
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace anyon
