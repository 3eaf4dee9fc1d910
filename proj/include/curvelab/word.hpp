#ifndef CURVELAB_WORD_HPP
#define CURVELAB_WORD_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "curvelab/error.hpp"

namespace curvelab {

// A signed generator packed as 2*index + (inverted ? 1 : 0). The packing
// makes the natural integer order the canonical letter order: generators by
// index, a positive letter before its inverse.
class Letter {
public:
    constexpr Letter() = default;
    constexpr Letter(std::size_t generator, bool inverted)
        : code_(static_cast<std::uint32_t>(2 * generator + (inverted ? 1 : 0))) {}

    static constexpr Letter from_code(std::uint32_t code) {
        Letter l;
        l.code_ = code;
        return l;
    }

    constexpr std::size_t generator() const { return code_ >> 1; }
    constexpr bool inverted() const { return (code_ & 1U) != 0; }
    constexpr int sign() const { return inverted() ? -1 : 1; }
    constexpr Letter inverse() const { return from_code(code_ ^ 1U); }
    constexpr std::uint32_t code() const { return code_; }

    constexpr auto operator<=>(const Letter&) const = default;

private:
    std::uint32_t code_ = 0;
};

using Word = std::vector<Letter>;

inline Word inverse(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
    return out;
}

inline Word concat(const Word& u, const Word& v) {
    Word out(u);
    out.insert(out.end(), v.begin(), v.end());
    return out;
}

inline Word power(const Word& w, int k) {
    const Word base = k < 0 ? inverse(w) : w;
    Word out;
    for (int i = 0; i < std::abs(k); ++i) out.insert(out.end(), base.begin(), base.end());
    return out;
}

// Signed count of occurrences of one generator.
inline int exponent_sum(const Word& w, std::size_t generator) {
    int total = 0;
    for (Letter l : w)
        if (l.generator() == generator) total += l.sign();
    return total;
}

// Shortlex order on letter codes.
inline bool shortlex_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

struct WordHash {
    std::size_t operator()(const Word& w) const noexcept {
        // FNV-1a over the letter codes
        std::uint64_t h = 1469598103934665603ULL;
        for (Letter l : w) {
            h ^= l.code();
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

// Generator names and the token syntax "a" / "a^-1" shared by group words
// and curve words.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (!index_.emplace(names_[i], i).second)
                throw InvalidInput("duplicate generator name '" + names_[i] + "'");
        }
    }

    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(std::size_t i) const { return names_.at(i); }

    std::size_t index(std::string_view name) const {
        auto it = index_.find(std::string(name));
        if (it == index_.end()) throw InvalidInput("unknown generator '" + std::string(name) + "'");
        return it->second;
    }
    bool contains(std::string_view name) const { return index_.count(std::string(name)) != 0; }

    Letter letter(std::string_view token) const {
        constexpr std::string_view inv_suffix = "^-1";
        if (token.size() > inv_suffix.size() &&
            token.substr(token.size() - inv_suffix.size()) == inv_suffix) {
            return Letter(index(token.substr(0, token.size() - inv_suffix.size())), true);
        }
        return Letter(index(token), false);
    }

    // Whitespace-separated tokens. "1" alone denotes the identity.
    Word parse(std::string_view text) const {
        Word w;
        std::istringstream in{std::string(text)};
        std::string token;
        while (in >> token) {
            if (token == "1") continue;
            w.push_back(letter(token));
        }
        return w;
    }

    std::string token(Letter l) const {
        return l.inverted() ? name(l.generator()) + "^-1" : name(l.generator());
    }

    std::string format(const Word& w) const {
        if (w.empty()) return "1";
        std::string out;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i) out += ' ';
            out += token(w[i]);
        }
        return out;
    }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::size_t> index_;
};

} // namespace curvelab

#endif // CURVELAB_WORD_HPP
