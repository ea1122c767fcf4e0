#include "anyon/decoder.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace anyon {

namespace {

constexpr int kDpDefectLimit = 22;     // subset DP up to here (2^k table)
constexpr int kExactDefectLimit = 30;  // branch-and-bound up to here

// Minimum number of flips connecting two same-coloured faces: one flip
// moves a defect one diagonal step, so the chain length is the Chebyshev
// distance between the anchors.
int face_distance(const FaceCoord& a, const FaceCoord& b) {
    return std::max(std::abs(a.row - b.row), std::abs(a.col - b.col));
}

int boundary_distance(const FaceCoord& f, int size, bool absorb_left_right) {
    if (absorb_left_right) return std::min(f.col + 1, size - 1 - f.col);
    return std::min(f.row + 1, size - 1 - f.row);
}

// Pairing plan produced by the matchers: partner[i] = j >= 0 for a matched
// defect pair, -1 for a boundary match.
using Pairing = std::vector<int>;

long pairing_weight(const Pairing& partner, const std::vector<std::vector<int>>& dist,
                    const std::vector<int>& bdist) {
    long w = 0;
    for (std::size_t i = 0; i < partner.size(); ++i) {
        if (partner[i] == -1) w += bdist[i];
        else if (partner[i] > static_cast<int>(i)) w += dist[i][partner[i]];
    }
    return w;
}

Pairing greedy_two_opt(const std::vector<std::vector<int>>& dist, const std::vector<int>& bdist) {
    const int k = static_cast<int>(bdist.size());
    Pairing partner(k, -2);
    int unmatched = k;
    while (unmatched > 0) {
        long best = std::numeric_limits<long>::max();
        int bi = -1, bj = -1;
        for (int i = 0; i < k; ++i) {
            if (partner[i] != -2) continue;
            if (bdist[i] < best) { best = bdist[i]; bi = i; bj = -1; }
            for (int j = i + 1; j < k; ++j) {
                if (partner[j] != -2) continue;
                if (dist[i][j] < best) { best = dist[i][j]; bi = i; bj = j; }
            }
        }
        if (bj == -1) { partner[bi] = -1; unmatched -= 1; }
        else { partner[bi] = bj; partner[bj] = bi; unmatched -= 2; }
    }

    // Local improvement: re-pair two units (pair or boundary single) and
    // split/join, until no move helps.
    bool improved = true;
    while (improved) {
        improved = false;
        for (int i = 0; i < k; ++i) {
            int j = partner[i];
            if (j >= 0 && j < i) continue;  // visit each pair once
            // split a pair into two boundary matches
            if (j >= 0 && bdist[i] + bdist[j] < dist[i][j]) {
                partner[i] = partner[j] = -1;
                improved = true;
                continue;
            }
            for (int a = i + 1; a < k; ++a) {
                if (a == j) continue;
                int b = partner[a];
                if (b >= 0 && b < a) continue;
                if (b == i) continue;
                long cur, alt1, alt2;
                if (j >= 0 && b >= 0) {
                    cur = dist[i][j] + dist[a][b];
                    alt1 = dist[i][a] + dist[j][b];
                    alt2 = dist[i][b] + dist[j][a];
                    if (alt1 < cur && alt1 <= alt2) {
                        partner[i] = a; partner[a] = i; partner[j] = b; partner[b] = j;
                        improved = true; break;
                    }
                    if (alt2 < cur) {
                        partner[i] = b; partner[b] = i; partner[j] = a; partner[a] = j;
                        improved = true; break;
                    }
                } else if (j >= 0 && b == -1) {
                    cur = dist[i][j] + bdist[a];
                    alt1 = dist[i][a] + bdist[j];
                    alt2 = dist[j][a] + bdist[i];
                    if (alt1 < cur && alt1 <= alt2) {
                        partner[i] = a; partner[a] = i; partner[j] = -1;
                        improved = true; break;
                    }
                    if (alt2 < cur) {
                        partner[j] = a; partner[a] = j; partner[i] = -1;
                        improved = true; break;
                    }
                } else if (j == -1 && b == -1) {
                    // join two boundary singles
                    if (dist[i][a] < bdist[i] + bdist[a]) {
                        partner[i] = a; partner[a] = i;
                        improved = true; break;
                    }
                }
            }
            if (improved) break;
        }
    }
    return partner;
}

struct BranchAndBound {
    const std::vector<std::vector<int>>& dist;
    const std::vector<int>& bdist;
    int k;
    Pairing partner;
    Pairing best_partner;
    long best = std::numeric_limits<long>::max();

    // Admissible bound: every unmatched defect costs at least the cheaper
    // of its boundary distance and half its cheapest pairing edge.
    long lower_bound() const {
        double lb = 0.0;
        for (int i = 0; i < k; ++i) {
            if (partner[i] != -2) continue;
            double c = bdist[i];
            for (int j = 0; j < k; ++j) {
                if (j == i || partner[j] != -2) continue;
                c = std::min(c, dist[i][j] / 2.0);
            }
            lb += c;
        }
        return static_cast<long>(std::ceil(lb - 1e-9));
    }

    void search(long acc) {
        if (acc + lower_bound() >= best) return;
        int i = -1;
        for (int t = 0; t < k; ++t) {
            if (partner[t] == -2) { i = t; break; }
        }
        if (i == -1) {
            best = acc;
            best_partner = partner;
            return;
        }
        // boundary first, then partners in order of edge cost
        std::vector<int> cands;
        for (int j = i + 1; j < k; ++j)
            if (partner[j] == -2) cands.push_back(j);
        std::sort(cands.begin(), cands.end(),
                  [&](int a, int b) { return dist[i][a] < dist[i][b]; });
        partner[i] = -1;
        search(acc + bdist[i]);
        for (int j : cands) {
            partner[i] = j;
            partner[j] = i;
            search(acc + dist[i][j]);
            partner[j] = -2;
        }
        partner[i] = -2;
    }

    Pairing solve() {
        partner.assign(k, -2);
        best_partner = greedy_two_opt(dist, bdist);
        best = pairing_weight(best_partner, dist, bdist) + 1;
        search(0);
        return best_partner;
    }
};

}  // namespace

MatchingDecoder::MatchingDecoder(const PlanarLayout& layout) : layout_(layout) {
    e_sector_ = Sector{layout.s_coords, true};
    m_sector_ = Sector{layout.p_coords, false};
}

long MatchingDecoder::match_sector(const Sector& sector, const std::vector<int>& defects,
                                   BitVec& flips) {
    const int k = static_cast<int>(defects.size());
    if (k == 0) return 0;
    const int size = layout_.size;

    std::vector<std::vector<int>> dist(k, std::vector<int>(k, 0));
    std::vector<int> bdist(k);
    for (int i = 0; i < k; ++i) {
        bdist[i] = boundary_distance(sector.faces[defects[i]], size, sector.absorb_left_right);
        for (int j = i + 1; j < k; ++j) {
            dist[i][j] = dist[j][i] =
                face_distance(sector.faces[defects[i]], sector.faces[defects[j]]);
        }
    }

    Pairing partner;
    if (k <= kDpDefectLimit) {
        // Exact minimum-weight matching by DP over defect subsets.
        const std::uint32_t full = (k == 32) ? ~0u : ((1u << k) - 1);
        if (dp_.size() < full + 1) dp_.resize(full + 1);
        dp_[0] = 0;
        for (std::uint32_t s = 1; s <= full; ++s) {
            const int i = std::countr_zero(s);
            const std::uint32_t rest = s & (s - 1);
            std::uint32_t best = bdist[i] + dp_[rest];
            std::uint32_t r = rest;
            while (r) {
                const int j = std::countr_zero(r);
                r &= r - 1;
                const std::uint32_t cand = dist[i][j] + dp_[rest & ~(1u << j)];
                best = std::min(best, cand);
            }
            dp_[s] = best;
        }
        partner.assign(k, -2);
        std::uint32_t s = full;
        while (s) {
            const int i = std::countr_zero(s);
            const std::uint32_t rest = s & (s - 1);
            if (dp_[s] == bdist[i] + dp_[rest]) {
                partner[i] = -1;
                s = rest;
                continue;
            }
            std::uint32_t r = rest;
            while (r) {
                const int j = std::countr_zero(r);
                r &= r - 1;
                if (dp_[s] == dist[i][j] + dp_[rest & ~(1u << j)]) {
                    partner[i] = j;
                    partner[j] = i;
                    s = rest & ~(1u << j);
                    break;
                }
            }
        }
    } else if (k <= kExactDefectLimit) {
        BranchAndBound bb{dist, bdist, k, {}, {}, 0};
        partner = bb.solve();
    } else {
        partner = greedy_two_opt(dist, bdist);
    }

    // Turn the pairing into flip chains.
    const auto emit_step = [&](int& r, int& c, int dr, int dc) {
        const int qr = r + (dr > 0 ? 1 : 0);
        const int qc = c + (dc > 0 ? 1 : 0);
        flips.toggle(layout_.qubit_index(qr, qc));
        r += dr;
        c += dc;
    };
    for (int i = 0; i < k; ++i) {
        const FaceCoord from = sector.faces[defects[i]];
        if (partner[i] == -1) {
            int r = from.row, c = from.col;
            if (sector.absorb_left_right) {
                const int target = (from.col + 1 <= size - 1 - from.col) ? -1 : size - 1;
                while (c != target) emit_step(r, c, (r + 1 <= size - 1) ? 1 : -1, target > c ? 1 : -1);
            } else {
                const int target = (from.row + 1 <= size - 1 - from.row) ? -1 : size - 1;
                while (r != target) emit_step(r, c, target > r ? 1 : -1, (c + 1 <= size - 1) ? 1 : -1);
            }
        } else if (partner[i] > i) {
            const FaceCoord to = sector.faces[defects[partner[i]]];
            int r = from.row, c = from.col;
            while (r != to.row || c != to.col) {
                const int dr = (r != to.row) ? (to.row > r ? 1 : -1) : ((r + 1 <= size - 1) ? 1 : -1);
                const int dc = (c != to.col) ? (to.col > c ? 1 : -1) : ((c + 1 <= size - 1) ? 1 : -1);
                emit_step(r, c, dr, dc);
            }
        }
    }
    return pairing_weight(partner, dist, bdist);
}

Correction MatchingDecoder::decode(const Syndrome& syndrome) {
    Correction corr{empty_pattern(layout_), LogicalClass{}};
    last_weight_e_ = match_sector(e_sector_, syndrome.e_defects.set_bits(), corr.pattern.z_flips);
    last_weight_m_ = match_sector(m_sector_, syndrome.m_defects.set_bits(), corr.pattern.x_flips);
    corr.guessed_class = logical_class_of(layout_, corr.pattern);
    return corr;
}

ExactMlDecoder::ExactMlDecoder(const PlanarLayout& layout, const NoiseModel& model) {
    validate_noise_model(model);
    const int n = layout.qubit_count;
    if (n > 16) {
        throw std::invalid_argument("ExactMlDecoder: enumeration limited to 16 qubits");
    }

    // Per sector: syndrome and class parity of every pattern via a prefix
    // DP over bit masks, then coset probability sums per syndrome.
    const auto build = [n](const std::vector<std::vector<int>>& qubit_stabs,
                           const BitVec& cut_mask, double p) {
        std::vector<std::uint32_t> qsynd(n, 0);
        for (int q = 0; q < n; ++q)
            for (int s : qubit_stabs[q]) qsynd[q] |= 1u << s;

        int n_stabs = 0;
        for (const auto& stabs : qubit_stabs)
            for (int s : stabs) n_stabs = std::max(n_stabs, s + 1);

        std::vector<double> pw(n + 1);
        for (int w = 0; w <= n; ++w)
            pw[w] = std::pow(p, w) * std::pow(1.0 - p, n - w);

        const std::size_t n_synd = std::size_t{1} << n_stabs;
        std::vector<double> mass(n_synd * 2, 0.0);
        std::vector<std::uint32_t> synd(std::size_t{1} << n);
        std::vector<std::uint8_t> parity(std::size_t{1} << n);
        synd[0] = 0;
        parity[0] = 0;
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
            const int q = std::countr_zero(mask);
            const std::uint64_t rest = mask & (mask - 1);
            synd[mask] = synd[rest] ^ qsynd[q];
            parity[mask] = parity[rest] ^ static_cast<std::uint8_t>(cut_mask.test(q));
            mass[synd[mask] * 2 + parity[mask]] += pw[std::popcount(mask)];
        }
        mass[0] += pw[0];  // the empty pattern

        std::vector<std::uint8_t> best(n_synd);
        for (std::size_t s = 0; s < n_synd; ++s)
            best[s] = mass[s * 2 + 1] > mass[s * 2] ? 1 : 0;
        return best;
    };

    best_e_ = build(layout.qubit_s_stabs, layout.x_cut_mask, model.p_z);
    best_m_ = build(layout.qubit_p_stabs, layout.z_cut_mask, model.p_x);
}

LogicalClass ExactMlDecoder::decode(const Syndrome& syndrome) const {
    LogicalClass cls;
    cls.e_parity = best_e_[syndrome.e_defects.low_word()];
    cls.m_parity = best_m_[syndrome.m_defects.low_word()];
    return cls;
}

Correction decode_matching(const PlanarLayout& layout, const Syndrome& syndrome) {
    MatchingDecoder decoder(layout);
    return decoder.decode(syndrome);
}

LogicalClass decode_ml_exact(const PlanarLayout& layout, const Syndrome& syndrome,
                             const NoiseModel& model) {
    ExactMlDecoder decoder(layout, model);
    return decoder.decode(syndrome);
}

}  // namespace anyon
