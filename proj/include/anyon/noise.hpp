#pragma once

#include <cstdint>

#include "anyon/planar_code.hpp"

// I.i.d. single-qubit error sampling with reproducible, counter-based
// randomness. The k-th variate of a stream is a pure function of
// (seed, stream_id, k), so replays are exact and substreams handed to
// parallel workers are independent of scheduling.

namespace anyon {

struct NoiseModel {
    double p_x = 0.0;  // probability of a sigma-x flip per qubit
    double p_z = 0.0;  // probability of a sigma-z flip per qubit
};

// Throws std::invalid_argument unless both probabilities lie in [0,1].
void validate_noise_model(const NoiseModel& model);

struct SeededStream {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

// Non-overlapping substream for a parallel worker or an individual sample.
SeededStream substream(SeededStream base, std::uint64_t index);

// SplitMix64-style counter generator: output k = mix(origin + k * golden).
class RandomStream {
  public:
    explicit RandomStream(SeededStream s);

    std::uint64_t next_u64();
    double next_double();  // uniform in [0, 1), 53-bit resolution

  private:
    std::uint64_t origin_;
    std::uint64_t counter_ = 0;
};

// Each qubit is independently included in x_flips with probability p_x and
// in z_flips with probability p_z (two draws per qubit, x first).
ErrorPattern sample_error(const PlanarLayout& layout, const NoiseModel& model,
                          RandomStream& stream);

}  // namespace anyon
