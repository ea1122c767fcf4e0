#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "anyon/entropy.hpp"

using namespace anyon;

namespace {

// Test-side entropy route: explicit maps and plain -p log2 p sums, kept
// independent of the library's accumulation order.
double brute_entropy(const std::map<std::uint64_t, double>& dist) {
    double h = 0.0;
    for (const auto& [key, p] : dist) {
        (void)key;
        if (p > 0.0) h -= p * std::log2(p);
    }
    return h;
}

double brute_gamma(const JointClassDistribution& joint) {
    std::map<std::uint64_t, double> b_marginal;
    std::map<std::uint64_t, double> cells;
    for (const auto& e : joint.entries) {
        b_marginal[e.b_config] += e.probability;
        cells[(e.b_config << 8) | e.class_index] += e.probability;
    }
    return std::log2(double(joint.n_classes)) + brute_entropy(b_marginal) - brute_entropy(cells);
}

JointClassDistribution random_joint(std::mt19937_64& rng, int n_classes, int n_b_configs) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    JointClassDistribution joint;
    joint.n_classes = n_classes;
    std::vector<double> weights;
    for (int c = 0; c < n_classes; ++c)
        for (int b = 0; b < n_b_configs; ++b) weights.push_back(unif(rng));
    double total = 0.0;
    for (double w : weights) total += w;
    std::size_t k = 0;
    for (int c = 0; c < n_classes; ++c)
        for (int b = 0; b < n_b_configs; ++b) joint.add(c, b, weights[k++] / total);
    return joint;
}

}  // namespace

TEST_CASE("shannon_binary closed-form values") {
    CHECK(shannon_binary(0.0) == 0.0);
    CHECK(shannon_binary(1.0) == 0.0);
    CHECK(shannon_binary(0.5) == 1.0);
    // Cross-checked against entropy_of_pmf on {0.25, 0.75} below.
    CHECK(shannon_binary(0.25) == doctest::Approx(0.8112781244591328).epsilon(1e-14));
    CHECK(shannon_binary(0.25) ==
          doctest::Approx(entropy_of_pmf(Pmf{{0.25, 0.75}, {}})).epsilon(1e-14));
}

TEST_CASE("shannon_binary domain handling") {
    CHECK(shannon_binary(-1e-13) == 0.0);       // clamped inside slack
    CHECK(shannon_binary(1.0 + 1e-13) == 0.0);  // clamped inside slack
    CHECK_THROWS_AS(shannon_binary(-0.01), std::domain_error);
    CHECK_THROWS_AS(shannon_binary(1.01), std::domain_error);
}

TEST_CASE("shannon_binary symmetry and concavity") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double x = unif(rng);
        const double y = unif(rng);
        CHECK(shannon_binary(x) == doctest::Approx(shannon_binary(1.0 - x)).epsilon(1e-12));
        CHECK(shannon_binary(0.5 * (x + y)) >=
              0.5 * (shannon_binary(x) + shannon_binary(y)) - 1e-12);
    }
}

TEST_CASE("entropy_of_pmf values and validation") {
    CHECK(entropy_of_pmf(Pmf{{1.0}, {}}) == 0.0);
    CHECK(entropy_of_pmf(Pmf{{0.25, 0.25, 0.25, 0.25}, {}}) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(entropy_of_pmf(Pmf{{0.5, 0.25, 0.25}, {}}) == doctest::Approx(1.5).epsilon(1e-15));

    CHECK_THROWS_AS(entropy_of_pmf(Pmf{{0.5, 0.4}, {}}), std::invalid_argument);
    CHECK_THROWS_AS(entropy_of_pmf(Pmf{{1.5, -0.5}, {}}), std::invalid_argument);
    CHECK_THROWS_AS(entropy_of_pmf(Pmf{{}, {}}), std::invalid_argument);
    CHECK_THROWS_AS(entropy_of_pmf(Pmf{{0.5, 0.5}, {7}}), std::invalid_argument);
}

TEST_CASE("gamma_from_joint: class determined by B gives the maximum") {
    JointClassDistribution joint;
    joint.n_classes = 4;
    // class = b mod 4, eight equally likely B configurations
    for (std::uint64_t b = 0; b < 8; ++b) joint.add(b % 4, b, 0.125);
    const GammaValue g = gamma_from_joint(joint);
    CHECK(g.max_bits == 2.0);
    CHECK(g.value_bits == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("gamma_from_joint: uniform class independent of B gives zero") {
    JointClassDistribution joint;
    joint.n_classes = 4;
    for (std::uint64_t b = 0; b < 4; ++b)
        for (std::uint32_t c = 0; c < 4; ++c) joint.add(c, b, 1.0 / 16.0);
    CHECK(gamma_from_joint(joint).value_bits == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("gamma_from_joint: independent biased class, two classes") {
    JointClassDistribution joint;
    joint.n_classes = 2;
    for (std::uint64_t b = 0; b < 8; ++b) {
        joint.add(0, b, 0.9 / 8.0);
        joint.add(1, b, 0.1 / 8.0);
    }
    const GammaValue g = gamma_from_joint(joint);
    CHECK(g.max_bits == 1.0);
    CHECK(g.value_bits == doctest::Approx(1.0 - shannon_binary(0.9)).epsilon(1e-12));
    CHECK(g.value_bits == doctest::Approx(0.5310044064107188).epsilon(1e-12));
    CHECK(g.value_bits == doctest::Approx(brute_gamma(joint)).epsilon(1e-12));
}

TEST_CASE("gamma_from_joint validation") {
    JointClassDistribution bad_class;
    bad_class.n_classes = 2;
    bad_class.add(2, 0, 1.0);
    CHECK_THROWS_AS(gamma_from_joint(bad_class), std::invalid_argument);

    JointClassDistribution bad_sum;
    bad_sum.n_classes = 2;
    bad_sum.add(0, 0, 0.6);
    bad_sum.add(1, 1, 0.6);
    CHECK_THROWS_AS(gamma_from_joint(bad_sum), std::invalid_argument);

    JointClassDistribution too_few;
    too_few.n_classes = 1;
    too_few.add(0, 0, 1.0);
    CHECK_THROWS_AS(gamma_from_joint(too_few), std::invalid_argument);
}

TEST_CASE("gamma_from_joint stays within [0, log2 n] on random joints") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        const int n_classes = 2 + int(rng() % 3) * 2;  // 2, 4, or 6
        const int n_b = 1 + int(rng() % 16);
        const auto joint = random_joint(rng, n_classes, n_b);
        const GammaValue g = gamma_from_joint(joint);
        CHECK(g.value_bits >= 0.0);
        CHECK(g.value_bits <= g.max_bits + 1e-12);
        CHECK(g.value_bits == doctest::Approx(brute_gamma(joint)).epsilon(1e-11));
    }
}

TEST_CASE("gamma_from_joint matches explicit marginalization on exhaustive joints") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const auto joint = random_joint(rng, 4, 64);
        CHECK(std::abs(gamma_from_joint(joint).value_bits - brute_gamma(joint)) < 1e-12);
    }
}

TEST_CASE("mutual_information_bound values") {
    CHECK(mutual_information_bound(1.0, 0.5) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(mutual_information_bound(0.5, 0.123) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(mutual_information_bound(0.5, 0.9) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(mutual_information_bound(0.9, 0.5) ==
          doctest::Approx(1.0 - shannon_binary(0.9)).epsilon(1e-12));
    CHECK_THROWS_AS(mutual_information_bound(1.2, 0.5), std::domain_error);
}

TEST_CASE("mutual_information_bound never exceeds the class entropy") {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const double p = unif(rng);
        const double pi = unif(rng);
        CHECK(mutual_information_bound(p, pi) <= shannon_binary(pi) + 1e-12);
    }
    // equality at a perfect decoder
    CHECK(mutual_information_bound(1.0, 0.3) == doctest::Approx(shannon_binary(0.3)).epsilon(1e-14));
    CHECK(mutual_information_bound(0.0, 0.3) == doctest::Approx(shannon_binary(0.3)).epsilon(1e-14));
}

TEST_CASE("gamma_lower_bound arithmetic") {
    // saturated: I = S(pi) in both sectors
    const double s3 = shannon_binary(0.3);
    const GammaLowerBound sat = gamma_lower_bound(s3, s3, 0.3, 0.3);
    CHECK(sat.value_bits == doctest::Approx(2.0).epsilon(1e-14));

    const GammaLowerBound zero = gamma_lower_bound(0.0, 0.0, 0.5, 0.5);
    CHECK(zero.value_bits == 0.0);
    CHECK(zero.raw_bits == doctest::Approx(0.0).epsilon(1e-14));

    const double i = 0.5310044064107188;
    const GammaLowerBound mid = gamma_lower_bound(i, i, 0.5, 0.5);
    CHECK(mid.value_bits == doctest::Approx(1.0620088128214376).epsilon(1e-12));
    CHECK(mid.raw_bits == doctest::Approx(mid.value_bits).epsilon(1e-14));

    // numerical noise below zero is clamped, raw retained
    const GammaLowerBound tiny = gamma_lower_bound(1e-12, 0.0, 0.5, 0.5 - 1e-9);
    CHECK(tiny.value_bits >= 0.0);
    CHECK(tiny.raw_bits <= tiny.value_bits + 1e-12);

    CHECK_THROWS_AS(gamma_lower_bound(-0.1, 0.0, 0.5, 0.5), std::domain_error);
}
