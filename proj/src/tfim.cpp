#include "anyon/tfim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace anyon {

namespace {

constexpr double kResidualTol = 1e-8;
constexpr int kMaxRestarts = 500;

std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}

// H_P restricted to one x-basis sector of the orientation spin: an operator
// on the N-1 wall spins where the boundary term X_{N-2} X_{N-1} becomes
// +- (mu/2) X_{N-2}.
struct SectorOperator {
    int n_walls;
    double w;
    std::vector<std::pair<std::uint64_t, double>> flips;
    std::int64_t dim;

    SectorOperator(const ChainSpec& spec, int sector) {
        n_walls = spec.n - 1;
        w = spec.w;
        dim = std::int64_t{1} << n_walls;
        const double c = spec.mu / 2.0;
        flips.emplace_back(std::uint64_t{1}, c);  // X_0
        for (int j = 0; j + 1 < n_walls; ++j)
            flips.emplace_back((std::uint64_t{1} << j) | (std::uint64_t{1} << (j + 1)), c);
        flips.emplace_back(std::uint64_t{1} << (n_walls - 1), sector * c);
    }

    double diagonal(std::uint64_t b) const {
        return -w * (n_walls - 2 * std::popcount(b));
    }

    void apply(const std::vector<double>& x, std::vector<double>& y) const {
        for (std::int64_t b = 0; b < dim; ++b) y[b] = diagonal(b) * x[b];
        for (const auto& [mask, c] : flips) {
            for (std::int64_t b = 0; b < dim; ++b) y[b ^ mask] += c * x[b];
        }
    }
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

void axpy(double c, const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += c * x[i];
}

struct EigenPair {
    double value = 0.0;
    std::vector<double> vector;
    int matvecs = 0;
    double residual = 0.0;
};

// Restarted Lanczos with full reorthogonalization. Each restart runs an
// m-step Krylov sweep from the current best vector, Rayleigh-Ritz reduces
// it, and the explicit residual decides convergence.
EigenPair lanczos_lowest(const SectorOperator& op, double tol) {
    const std::int64_t dim = op.dim;
    const int m = dim < (std::int64_t{1} << 17) ? 40 : 24;

    std::vector<double> v0(dim);
    for (std::int64_t i = 0; i < dim; ++i) {
        v0[i] = 1.0 + (static_cast<double>(mix64(i)) * 0x1.0p-64 - 0.5);
    }
    {
        const double nv = norm(v0);
        for (auto& x : v0) x /= nv;
    }

    EigenPair result;
    std::vector<std::vector<double>> basis;
    std::vector<double> work(dim), next(dim);

    for (int restart = 0; restart < kMaxRestarts; ++restart) {
        basis.clear();
        basis.push_back(v0);
        std::vector<double> alpha, beta;

        op.apply(basis[0], work);
        ++result.matvecs;
        alpha.push_back(dot(basis[0], work));
        axpy(-alpha[0], basis[0], work);

        const int steps = static_cast<int>(std::min<std::int64_t>(m, dim));
        for (int j = 1; j < steps; ++j) {
            // two Gram-Schmidt passes keep the basis orthogonal to rounding
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& v : basis) axpy(-dot(v, work), v, work);
            const double b = norm(work);
            if (b < 1e-12) break;
            for (auto& x : work) x /= b;
            basis.push_back(work);
            beta.push_back(b);
            op.apply(basis[j], next);
            ++result.matvecs;
            alpha.push_back(dot(basis[j], next));
            axpy(-alpha[j], basis[j], next);
            axpy(-beta[j - 1], basis[j - 1], next);
            work.swap(next);
        }

        const int k = static_cast<int>(basis.size());
        Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(k, k);
        for (int i = 0; i < k; ++i) tri(i, i) = alpha[i];
        for (int i = 0; i + 1 < k; ++i) tri(i, i + 1) = tri(i + 1, i) = beta[i];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
        const Eigen::VectorXd y = es.eigenvectors().col(0);

        std::vector<double> x(dim, 0.0);
        for (int i = 0; i < k; ++i) axpy(y(i), basis[i], x);
        const double nx = norm(x);
        for (auto& xi : x) xi /= nx;

        op.apply(x, work);
        ++result.matvecs;
        const double rho = dot(x, work);  // Rayleigh quotient of the assembled vector
        axpy(-rho, x, work);
        const double res = norm(work);
        result.value = rho;
        if (res <= tol) {
            result.vector = std::move(x);
            result.residual = res;
            return result;
        }
        v0 = std::move(x);
    }
    throw std::runtime_error("tfim: eigensolver did not reach residual tolerance within restart cap");
}

}  // namespace

void validate_chain_spec(const ChainSpec& spec) {
    if (spec.n < 2) throw std::invalid_argument("chain: N must be >= 2");
    if (!(spec.w > 0.0)) throw std::invalid_argument("chain: w must be > 0");
    if (!(spec.mu >= 0.0)) throw std::invalid_argument("chain: mu must be >= 0");
}

FifthsPartition make_fifths(int n) {
    if (n < 5 || n % 5 != 0) throw std::invalid_argument("fifths: N must be divisible by 5");
    const int f = n / 5;
    FifthsPartition part;
    for (int i = 0; i < n; ++i) {
        if (i >= 2 * f && i < 3 * f) part.a_indices.push_back(i);
        else if ((i >= f && i < 2 * f) || (i >= 3 * f && i < 4 * f)) part.b_indices.push_back(i);
        else part.c_indices.push_back(i);
    }
    return part;
}

PseudoSpinOperator::PseudoSpinOperator(const ChainSpec& spec) {
    validate_chain_spec(spec);
    n_ = spec.n;
    w_ = spec.w;
    mu_half_ = spec.mu / 2.0;
    flip_masks_.push_back(std::uint64_t{1});  // X_0
    for (int j = 0; j + 2 < n_; ++j)
        flip_masks_.push_back((std::uint64_t{1} << j) | (std::uint64_t{1} << (j + 1)));
    flip_masks_.push_back((std::uint64_t{1} << (n_ - 2)) | (std::uint64_t{1} << (n_ - 1)));
}

void PseudoSpinOperator::apply(const std::vector<double>& x, std::vector<double>& y) const {
    const std::int64_t dim = dimension();
    const std::uint64_t wall_mask = (std::uint64_t{1} << (n_ - 1)) - 1;
    y.assign(dim, 0.0);
    for (std::int64_t b = 0; b < dim; ++b) {
        const int walls = std::popcount(static_cast<std::uint64_t>(b) & wall_mask);
        y[b] = -w_ * ((n_ - 1) - 2 * walls) * x[b];
    }
    for (const std::uint64_t mask : flip_masks_) {
        for (std::int64_t b = 0; b < dim; ++b) y[b ^ mask] += mu_half_ * x[b];
    }
}

Eigen::MatrixXd PseudoSpinOperator::dense() const {
    if (n_ > 12) throw std::invalid_argument("PseudoSpinOperator::dense: N must be <= 12");
    const std::int64_t dim = dimension();
    const std::uint64_t wall_mask = (std::uint64_t{1} << (n_ - 1)) - 1;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (std::int64_t b = 0; b < dim; ++b) {
        const int walls = std::popcount(static_cast<std::uint64_t>(b) & wall_mask);
        h(b, b) = -w_ * ((n_ - 1) - 2 * walls);
        for (const std::uint64_t mask : flip_masks_) h(b ^ mask, b) += mu_half_;
    }
    return h;
}

Eigen::MatrixXd build_ising_hamiltonian(const ChainSpec& spec) {
    validate_chain_spec(spec);
    if (spec.n > 12) throw std::invalid_argument("build_ising_hamiltonian: N must be <= 12");
    const std::int64_t dim = std::int64_t{1} << spec.n;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (std::int64_t b = 0; b < dim; ++b) {
        h(b, b) = spec.mu / 2.0 * (spec.n - 2 * std::popcount(static_cast<std::uint64_t>(b)));
        for (int j = 0; j + 1 < spec.n; ++j) {
            const std::uint64_t mask = (std::uint64_t{1} << j) | (std::uint64_t{1} << (j + 1));
            h(b ^ mask, b) += -spec.w;
        }
    }
    return h;
}

double GroundStateDistribution::pmf_sum() const {
    double s = 0.0;
    for (double p : wall_pmf) s += p;
    return s;
}

double GroundStateDistribution::probability_of(std::uint64_t config) const {
    const std::uint64_t wall_mask = (std::uint64_t{1} << (n - 1)) - 1;
    return wall_pmf[config & wall_mask] / 2.0;
}

GroundStateDistribution ground_state(const ChainSpec& spec) {
    validate_chain_spec(spec);
    if (spec.n > 20) throw std::invalid_argument("ground_state: N must be <= 20");

    GroundStateDistribution gs;
    gs.n = spec.n;
    const std::int64_t wall_dim = std::int64_t{1} << (spec.n - 1);

    if (spec.mu == 0.0) {
        // Diagonal Hamiltonian: the ground space is the wall-free
        // configuration with either orientation.
        gs.wall_pmf.assign(wall_dim, 0.0);
        gs.wall_pmf[0] = 1.0;
        gs.energy = -spec.w * (spec.n - 1);
        gs.residual = 0.0;
        gs.iterations = 0;
        gs.orientation_sector = +1;
        return gs;
    }

    const SectorOperator plus(spec, +1);
    const SectorOperator minus(spec, -1);
    EigenPair best = lanczos_lowest(plus, kResidualTol);
    int sector = +1;
    EigenPair other = lanczos_lowest(minus, kResidualTol);
    const int total_matvecs = best.matvecs + other.matvecs;
    if (other.value < best.value) {
        best = std::move(other);
        sector = -1;
    }

    gs.wall_pmf.resize(wall_dim);
    for (std::int64_t i = 0; i < wall_dim; ++i) gs.wall_pmf[i] = best.vector[i] * best.vector[i];
    gs.energy = best.value;
    gs.residual = best.residual;
    gs.iterations = total_matvecs;
    gs.orientation_sector = sector;
    return gs;
}

GammaValue gamma_from_ground(const GroundStateDistribution& gs) {
    const FifthsPartition part = make_fifths(gs.n);

    std::uint64_t a_mask = 0;
    for (int i : part.a_indices) a_mask |= std::uint64_t{1} << i;

    // Accumulate the joint over (wall parity of A, configuration of B).
    // All of A and B live on wall spins; the orientation spin is in C.
    const std::size_t b_bits = part.b_indices.size();
    std::vector<double> acc((std::size_t{1} << b_bits) * 2, 0.0);
    const std::int64_t wall_dim = std::int64_t{1} << (gs.n - 1);
    for (std::int64_t cfg = 0; cfg < wall_dim; ++cfg) {
        const double p = gs.wall_pmf[cfg];
        if (p < kZeroProb) continue;
        const auto bits = static_cast<std::uint64_t>(cfg);
        std::uint64_t b_id = 0;
        for (std::size_t k = 0; k < b_bits; ++k)
            b_id |= ((bits >> part.b_indices[k]) & 1) << k;
        const int parity = std::popcount(bits & a_mask) & 1;
        acc[b_id * 2 + parity] += p;
    }

    JointClassDistribution joint;
    joint.n_classes = 2;
    for (std::uint64_t b_id = 0; b_id < (std::uint64_t{1} << b_bits); ++b_id) {
        for (int parity = 0; parity < 2; ++parity) {
            const double p = acc[b_id * 2 + parity];
            if (p >= kZeroProb) joint.add(parity, b_id, p);
        }
    }
    return gamma_from_joint(joint);
}

GammaValue gamma_tfim(const ChainSpec& spec) { return gamma_from_ground(ground_state(spec)); }

std::vector<TfimRow> tfim_curve(const std::vector<int>& n_list,
                                const std::vector<double>& mu_grid, double w, int workers) {
    if (n_list.empty() || mu_grid.empty()) throw std::invalid_argument("tfim_curve: empty grid");
    for (int n : n_list) {
        validate_chain_spec(ChainSpec{n, w, 0.0});
        make_fifths(n);  // rejects sizes without a fifths partition
    }

    std::vector<TfimRow> rows(n_list.size() * mu_grid.size());
    const auto compute_point = [&](std::size_t idx) {
        const int n = n_list[idx / mu_grid.size()];
        const double mu = mu_grid[idx % mu_grid.size()];
        const ChainSpec spec{n, w, mu};
        const GroundStateDistribution gs = ground_state(spec);
        TfimRow row;
        row.n = n;
        row.w = w;
        row.mu = mu;
        row.gamma_bits = gamma_from_ground(gs).value_bits;
        row.ground_energy = gs.energy;
        row.residual = gs.residual;
        row.iterations = gs.iterations;
        rows[idx] = row;
    };

    if (workers <= 1) {
        for (std::size_t i = 0; i < rows.size(); ++i) compute_point(i);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (rows.size() + workers - 1) / workers;
        for (int wk = 0; wk < workers; ++wk) {
            const std::size_t begin = wk * chunk;
            const std::size_t end = std::min(rows.size(), begin + chunk);
            if (begin >= end) break;
            pool.emplace_back([&, begin, end] {
                for (std::size_t i = begin; i < end; ++i) compute_point(i);
            });
        }
        for (auto& t : pool) t.join();
    }
    return rows;
}

}  // namespace anyon
