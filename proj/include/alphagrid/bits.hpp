#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace alphagrid {

// Fixed-width dynamic bitset over 64-bit words. Width is set at construction
// and never changes; all binary operations require equal widths (unchecked in
// release paths, the callers guarantee it).
class Bits {
  public:
    Bits() = default;
    explicit Bits(int width) : width_(width), w_((width + 63) / 64, 0) {}

    static Bits full(int width) {
        Bits b(width);
        for (auto& w : b.w_) w = ~uint64_t{0};
        b.trim();
        return b;
    }

    int width() const { return width_; }
    bool empty_width() const { return width_ == 0; }

    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(int i) { w_[i >> 6] |= uint64_t{1} << (i & 63); }
    void reset(int i) { w_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }

    int count() const {
        int c = 0;
        for (uint64_t w : w_) c += std::popcount(w);
        return c;
    }

    bool any() const {
        for (uint64_t w : w_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    Bits& operator&=(const Bits& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    Bits& operator|=(const Bits& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    // this &= ~o
    Bits& and_not(const Bits& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
        return *this;
    }

    friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
    friend Bits operator|(Bits a, const Bits& b) { return a |= b; }

    Bits complement() const {
        Bits r(width_);
        for (size_t i = 0; i < w_.size(); ++i) r.w_[i] = ~w_[i];
        r.trim();
        return r;
    }

    bool intersects(const Bits& o) const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    // True if every set bit of *this is also set in o.
    bool subset_of(const Bits& o) const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    // First set bit at index >= from, or -1.
    int next(int from = 0) const {
        if (from >= width_) return -1;
        int wi = from >> 6;
        uint64_t cur = w_[wi] & (~uint64_t{0} << (from & 63));
        while (true) {
            if (cur) return (wi << 6) + std::countr_zero(cur);
            if (++wi >= static_cast<int>(w_.size())) return -1;
            cur = w_[wi];
        }
    }

    // Keep only the lowest n set bits.
    Bits lowest(int n) const {
        Bits r(width_);
        for (int i = next(0); i >= 0 && n > 0; i = next(i + 1), --n) r.set(i);
        return r;
    }

    std::vector<int> to_indices() const {
        std::vector<int> v;
        v.reserve(count());
        for (int i = next(0); i >= 0; i = next(i + 1)) v.push_back(i);
        return v;
    }

    static Bits from_indices(int width, const std::vector<int>& idx) {
        Bits b(width);
        for (int i : idx) b.set(i);
        return b;
    }

    bool operator==(const Bits& o) const { return width_ == o.width_ && w_ == o.w_; }
    bool operator!=(const Bits& o) const { return !(*this == o); }

    // Lexicographic order on the ascending index sequences: {0,5} < {0,6} < {1,2}.
    static bool lex_less(const Bits& a, const Bits& b) {
        int ia = a.next(0), ib = b.next(0);
        while (ia >= 0 && ib >= 0) {
            if (ia != ib) return ia < ib;
            ia = a.next(ia + 1);
            ib = b.next(ib + 1);
        }
        return ib >= 0; // shorter (a exhausted) precedes
    }

  private:
    void trim() {
        int rem = width_ & 63;
        if (rem && !w_.empty()) w_.back() &= (~uint64_t{0} >> (64 - rem));
    }

    int width_ = 0;
    std::vector<uint64_t> w_;
};

} // namespace alphagrid
