#ifndef UTIL_BITS_H
#define UTIL_BITS_H

#include <cstdint>
#include <cstddef>
#include <vector>

namespace tplan {

// Fixed-universe bitset with hashing, used for fact sets and fluent flags.
class Bits {
public:
    Bits() = default;
    explicit Bits(int n) { resize(n); }

    void resize(int n) {
        size_ = n;
        words_.assign((n + 63) / 64, 0);
    }

    int size() const { return size_; }

    bool test(int i) const {
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }
    void set(int i, bool v = true) {
        if (v)
            words_[i >> 6] |= std::uint64_t{1} << (i & 63);
        else
            words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }

    bool any() const {
        for (auto w : words_)
            if (w) return true;
        return false;
    }
    int count() const {
        int c = 0;
        for (auto w : words_) c += __builtin_popcountll(w);
        return c;
    }
    bool intersects(const Bits& o) const {
        std::size_t n = std::min(words_.size(), o.words_.size());
        for (std::size_t i = 0; i < n; ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t word = words_[w];
            while (word) {
                int b = __builtin_ctzll(word);
                f(static_cast<int>(w * 64 + b));
                word &= word - 1;
            }
        }
    }

    std::size_t hash() const {
        std::size_t h = 0xcbf29ce484222325ull;
        for (auto w : words_) {
            h ^= w;
            h *= 0x100000001b3ull;
        }
        return h;
    }

    friend bool operator==(const Bits&, const Bits&) = default;

private:
    std::vector<std::uint64_t> words_;
    int size_ = 0;
};

}  // namespace tplan

#endif
