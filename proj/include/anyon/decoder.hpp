#pragma once

#include <cstdint>
#include <vector>

#include "anyon/noise.hpp"
#include "anyon/planar_code.hpp"

// Decoders: given a syndrome, guess the logical class.
//
// MatchingDecoder pairs defects (or defect and absorbing boundary) along
// minimum-weight chains. It is degenerate (coset-blind), hence suboptimal,
// which is exactly why the Gamma estimate built on it is a lower bound.
// ExactMlDecoder sums error-pattern probabilities per logical coset and
// returns the argmax; optimal but exponential, so limited to small codes.

namespace anyon {

struct Correction {
    ErrorPattern pattern;        // syndrome_of(pattern) equals the input syndrome
    LogicalClass guessed_class;  // logical_class_of(pattern)
};

class MatchingDecoder {
  public:
    explicit MatchingDecoder(const PlanarLayout& layout);

    // Matches each sector independently on a complete graph of defects
    // plus one virtual boundary node per defect. Edge weights are lattice
    // chain lengths (Chebyshev distance between face anchors, or distance
    // to the nearest absorbing boundary). Exact minimum-weight matching up
    // to 30 defects (subset DP, then branch-and-bound); greedy plus 2-opt
    // improvement beyond that.
    //
    // Instances keep internal scratch: not safe for concurrent calls. Use
    // one decoder per worker.
    Correction decode(const Syndrome& syndrome);

    // Total matching weight of the last decode, per sector (for tests).
    long last_weight_e() const { return last_weight_e_; }
    long last_weight_m() const { return last_weight_m_; }

  private:
    struct Sector {
        std::vector<FaceCoord> faces;
        bool absorb_left_right;  // e: left/right boundaries absorb; m: top/bottom
    };

    long match_sector(const Sector& sector, const std::vector<int>& defects, BitVec& flips);

    const PlanarLayout& layout_;
    Sector e_sector_;
    Sector m_sector_;
    std::vector<std::uint32_t> dp_;  // reused subset-DP table
    long last_weight_e_ = 0;
    long last_weight_m_ = 0;
};

class ExactMlDecoder {
  public:
    // Enumerates all error patterns per sector (2^qubit_count each), so the
    // layout must have qubit_count <= 16; throws std::invalid_argument
    // otherwise. Coset probabilities are tabulated per syndrome at
    // construction; decoding is a table lookup. Ties break toward class 0.
    ExactMlDecoder(const PlanarLayout& layout, const NoiseModel& model);

    LogicalClass decode(const Syndrome& syndrome) const;

  private:
    std::vector<std::uint8_t> best_e_;  // indexed by e-syndrome bits
    std::vector<std::uint8_t> best_m_;
};

// One-shot conveniences for the class-based decoders above.
Correction decode_matching(const PlanarLayout& layout, const Syndrome& syndrome);
LogicalClass decode_ml_exact(const PlanarLayout& layout, const Syndrome& syndrome,
                             const NoiseModel& model);

}  // namespace anyon
