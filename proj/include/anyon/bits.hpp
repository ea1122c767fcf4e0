#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace anyon {

// Fixed-size bit vector used for error patterns and syndromes. Sized at
// construction; all binary operations require equal sizes.
class BitVec {
  public:
    BitVec() = default;
    explicit BitVec(int n_bits)
        : n_bits_(n_bits), words_((static_cast<std::size_t>(n_bits) + 63) / 64, 0) {}

    int size() const { return n_bits_; }

    bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(int i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(int i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    void toggle(int i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
    void clear() { std::fill(words_.begin(), words_.end(), 0); }

    bool any() const {
        for (auto w : words_)
            if (w) return true;
        return false;
    }

    int count() const {
        int c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }

    BitVec& operator^=(const BitVec& other) {
        check_same(other);
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= other.words_[k];
        return *this;
    }
    friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }

    bool operator==(const BitVec& other) const {
        return n_bits_ == other.n_bits_ && words_ == other.words_;
    }

    // popcount(a & b) mod 2
    int overlap_parity(const BitVec& other) const {
        check_same(other);
        std::uint64_t acc = 0;
        for (std::size_t k = 0; k < words_.size(); ++k) acc ^= words_[k] & other.words_[k];
        return std::popcount(acc) & 1;
    }

    // Value of the first 64 bits; valid only when size() <= 64.
    std::uint64_t low_word() const {
        if (n_bits_ > 64) throw std::logic_error("BitVec::low_word on vector wider than 64 bits");
        return words_.empty() ? 0 : words_[0];
    }

    std::vector<int> set_bits() const {
        std::vector<int> out;
        for (int i = 0; i < n_bits_; ++i)
            if (test(i)) out.push_back(i);
        return out;
    }

  private:
    void check_same(const BitVec& other) const {
        if (n_bits_ != other.n_bits_) throw std::logic_error("BitVec size mismatch");
    }

    int n_bits_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace anyon
