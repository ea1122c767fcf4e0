#include "anyon/noise.hpp"

#include <stdexcept>

namespace anyon {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// SplitMix64 finalizer (Stafford mix13).
std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}

std::uint64_t stream_origin(SeededStream s) {
    // Decorrelate the seed and stream axes before combining.
    return mix64(mix64(s.seed) + kGolden * mix64(s.stream_id ^ 0xD2B74407B1CE6E93ull));
}

}  // namespace

void validate_noise_model(const NoiseModel& model) {
    if (!(model.p_x >= 0.0 && model.p_x <= 1.0) || !(model.p_z >= 0.0 && model.p_z <= 1.0)) {
        throw std::invalid_argument("noise model probabilities must lie in [0,1]");
    }
}

SeededStream substream(SeededStream base, std::uint64_t index) {
    return SeededStream{base.seed, mix64(base.stream_id * 0x632BE59BD9B4E019ull + kGolden) ^ index};
}

RandomStream::RandomStream(SeededStream s) : origin_(stream_origin(s)) {}

std::uint64_t RandomStream::next_u64() { return mix64(origin_ + kGolden * ++counter_); }

double RandomStream::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

ErrorPattern sample_error(const PlanarLayout& layout, const NoiseModel& model,
                          RandomStream& stream) {
    validate_noise_model(model);
    ErrorPattern err = empty_pattern(layout);
    for (int q = 0; q < layout.qubit_count; ++q) {
        if (stream.next_double() < model.p_x) err.x_flips.set(q);
        if (stream.next_double() < model.p_z) err.z_flips.set(q);
    }
    return err;
}

}  // namespace anyon
