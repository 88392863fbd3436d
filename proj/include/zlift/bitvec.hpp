#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace zlift {

// Fixed-universe bit set over {0, ..., nbits-1}, packed into 64-bit words.
// All binary ops require equal universe sizes.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::int64_t nbits)
        : words_(static_cast<std::size_t>((nbits + 63) / 64), 0), nbits_(nbits) {
        if (nbits < 0) throw std::invalid_argument("BitVec: negative size");
    }

    static BitVec all_set(std::int64_t nbits) {
        BitVec v(nbits);
        for (auto& w : v.words_) w = ~std::uint64_t{0};
        v.trim();
        return v;
    }

    std::int64_t size() const { return nbits_; }
    std::int64_t word_count() const { return static_cast<std::int64_t>(words_.size()); }

    void set(std::int64_t i) {
        check(i);
        words_[static_cast<std::size_t>(i >> 6)] |= std::uint64_t{1} << (i & 63);
    }

    void reset(std::int64_t i) {
        check(i);
        words_[static_cast<std::size_t>(i >> 6)] &= ~(std::uint64_t{1} << (i & 63));
    }

    bool test(std::int64_t i) const {
        check(i);
        return (words_[static_cast<std::size_t>(i >> 6)] >> (i & 63)) & 1;
    }

    std::int64_t count() const {
        std::int64_t c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }

    bool any() const {
        for (auto w : words_)
            if (w) return true;
        return false;
    }

    BitVec& operator&=(const BitVec& o) {
        require_same(o);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }

    BitVec& operator|=(const BitVec& o) {
        require_same(o);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }

    friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }

    bool operator==(const BitVec& o) const = default;

    // Indices of the lowest k set bits, ascending. Throws if fewer are set.
    std::vector<std::int64_t> lowest_bits(std::int64_t k) const {
        std::vector<std::int64_t> out;
        out.reserve(static_cast<std::size_t>(k));
        for (std::size_t wi = 0; wi < words_.size() && std::int64_t(out.size()) < k; ++wi) {
            std::uint64_t w = words_[wi];
            while (w && std::int64_t(out.size()) < k) {
                int b = std::countr_zero(w);
                out.push_back(static_cast<std::int64_t>(wi) * 64 + b);
                w &= w - 1;
            }
        }
        if (std::int64_t(out.size()) < k)
            throw std::invalid_argument("BitVec::lowest_bits: fewer set bits than requested");
        return out;
    }

    std::vector<std::int64_t> to_indices() const { return lowest_bits(count()); }

private:
    void check(std::int64_t i) const {
        if (i < 0 || i >= nbits_) throw std::out_of_range("BitVec: index out of range");
    }
    void require_same(const BitVec& o) const {
        if (nbits_ != o.nbits_) throw std::invalid_argument("BitVec: size mismatch");
    }
    void trim() {
        int tail = static_cast<int>(nbits_ & 63);
        if (tail != 0 && !words_.empty())
            words_.back() &= (std::uint64_t{1} << tail) - 1;
    }

    std::vector<std::uint64_t> words_;
    std::int64_t nbits_ = 0;
};

}  // namespace zlift
