#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "anyon/entropy.hpp"

// The 1d transverse-field Ising chain in the domain-wall picture.
//
// The chain of N Ising spins maps to N pseudo-spins: pseudo-spin j < N-1 is
// set iff a domain wall sits between Ising spins j and j+1, and pseudo-spin
// N-1 records the orientation of the last Ising spin. In this basis the
// Hamiltonian becomes
//
//   H_P = -w sum_{j<N-1} Z_j
//         + (mu/2) [ X_0 + X_{N-2} X_{N-1} + sum_{j<N-2} X_j X_{j+1} ]
//
// which commutes with X_{N-1}: the orientation spin decouples into x-basis
// sectors of +-1. The ground state is found per sector with a restarted
// Lanczos iteration on the matrix-free sector operator; its squared
// amplitudes are the dephased classical distribution over wall
// configurations (off-diagonal elements are simply never formed). The
// orientation-spin marginal is uniform in either sector.
//
// Gamma uses a single anyon species (the domain wall), so
// Gamma = 1 + S_B - S_{AB} bits with A the middle fifth of the chain and B
// the second and fourth fifths. The orientation spin falls in region C and
// is traced out, which also makes Gamma independent of how the mu = 0
// ground-state degeneracy is resolved.

namespace anyon {

struct ChainSpec {
    int n = 0;       // pseudo-spin count N
    double w = 1.0;  // Ising coupling, > 0
    double mu = 0.0; // transverse field, >= 0
};

// Basic bounds (N >= 2, w > 0, mu >= 0). The Gamma pipeline additionally
// requires N divisible by 5 so the fifths partition exists; make_fifths
// rejects other sizes rather than inventing a rounding rule.
void validate_chain_spec(const ChainSpec& spec);

struct FifthsPartition {
    std::vector<int> a_indices;  // third fifth
    std::vector<int> b_indices;  // second and fourth fifths
    std::vector<int> c_indices;  // first and fifth fifths (holds spin N-1)
};

FifthsPartition make_fifths(int n);

// Matrix-free H_P over the full 2^N pseudo-spin basis: y <- H x via bit
// manipulation on basis indices. No dense matrix is materialized except on
// explicit request for small N.
class PseudoSpinOperator {
  public:
    explicit PseudoSpinOperator(const ChainSpec& spec);

    std::int64_t dimension() const { return std::int64_t{1} << n_; }
    void apply(const std::vector<double>& x, std::vector<double>& y) const;
    Eigen::MatrixXd dense() const;  // N <= 12 only

  private:
    int n_;
    double w_;
    double mu_half_;
    std::vector<std::uint64_t> flip_masks_;
};

// Dense H_I = -w sum X_j X_{j+1} + (mu/2) sum Z_j over the Ising spins,
// for the isospectrality cross-check. N <= 12 only.
Eigen::MatrixXd build_ising_hamiltonian(const ChainSpec& spec);

struct GroundStateDistribution {
    int n = 0;
    std::vector<double> wall_pmf;  // squared amplitudes over 2^(N-1) wall configs
    double energy = 0.0;
    double residual = 0.0;          // ||H x - E x||
    int iterations = 0;             // matrix-vector products spent
    int orientation_sector = +1;    // x-basis sector of the orientation spin

    double pmf_sum() const;
    // Probability of a full pseudo-spin configuration (bit N-1 is the
    // orientation spin, whose marginal is uniform).
    double probability_of(std::uint64_t config) const;
};

// Ground state of H_P, dephased. mu = 0 is handled analytically (the exact
// no-wall distribution); otherwise both orientation sectors are solved to
// residual < 1e-8 and the lower one returned (+1 on ties). Requires N <= 20;
// throws std::runtime_error if the eigensolver fails to converge.
GroundStateDistribution ground_state(const ChainSpec& spec);

// Gamma from an already-computed ground state (single anyon species:
// max = 1 bit).
GammaValue gamma_from_ground(const GroundStateDistribution& gs);

GammaValue gamma_tfim(const ChainSpec& spec);

struct TfimRow {
    int n = 0;
    double w = 1.0;
    double mu = 0.0;
    double gamma_bits = 0.0;
    double ground_energy = 0.0;
    double residual = 0.0;
    int iterations = 0;
};

std::vector<TfimRow> tfim_curve(const std::vector<int>& n_list,
                                const std::vector<double>& mu_grid, double w, int workers = 1);

}  // namespace anyon
