#ifndef CURVELAB_FREE_GROUP_HPP
#define CURVELAB_FREE_GROUP_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "curvelab/error.hpp"
#include "curvelab/word.hpp"

namespace curvelab {

inline Word free_reduce(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (Letter l : w) {
        if (!out.empty() && out.back() == l.inverse())
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

// Free reduction followed by stripping inverse letter pairs from the two ends.
inline Word cyclic_reduce(const Word& w) {
    Word r = free_reduce(w);
    std::size_t lo = 0, hi = r.size();
    while (hi - lo >= 2 && r[lo] == r[hi - 1].inverse()) {
        ++lo;
        --hi;
    }
    return Word(r.begin() + static_cast<std::ptrdiff_t>(lo), r.begin() + static_cast<std::ptrdiff_t>(hi));
}

// Smallest period p dividing |w| with w = (prefix of length p)^(|w|/p).
inline std::size_t primitive_period(const Word& w) {
    const std::size_t n = w.size();
    for (std::size_t p = 1; p < n; ++p) {
        if (n % p) continue;
        bool periodic = true;
        for (std::size_t i = p; i < n && periodic; ++i) periodic = w[i] == w[i - p];
        if (periodic) return p;
    }
    return n;
}

inline Word least_rotation(const Word& w) {
    Word best = w;
    Word cur = w;
    for (std::size_t i = 1; i < w.size(); ++i) {
        std::rotate(cur.begin(), cur.begin() + 1, cur.end());
        if (cur < best) best = cur;
    }
    return best;
}

// Least rotation of a cyclically reduced word or of its inverse.
inline Word canonical_cyclic(const Word& cyclically_reduced) {
    Word a = least_rotation(cyclically_reduced);
    Word b = least_rotation(inverse(cyclically_reduced));
    return std::min(a, b);
}

// Unoriented conjugacy class of a primitive element of a free group, stored
// as its canonical cyclic word.
class CurveClass {
public:
    // Throws on the trivial class and on proper powers.
    static CurveClass from_word(const Word& w) {
        Word r = cyclic_reduce(w);
        if (r.empty()) throw InvalidInput("word represents the trivial class");
        if (primitive_period(r) != r.size()) throw InvalidInput("word is a proper power, not a primitive class");
        CurveClass c;
        c.word_ = canonical_cyclic(r);
        return c;
    }

    const Word& word() const { return word_; }
    std::size_t length() const { return word_.size(); }

    friend bool operator==(const CurveClass&, const CurveClass&) = default;
    friend bool operator<(const CurveClass& a, const CurveClass& b) { return shortlex_less(a.word_, b.word_); }

private:
    Word word_;
};

struct CurveClassHash {
    std::size_t operator()(const CurveClass& c) const noexcept { return WordHash{}(c.word()); }
};

} // namespace curvelab

#endif // CURVELAB_FREE_GROUP_HPP
