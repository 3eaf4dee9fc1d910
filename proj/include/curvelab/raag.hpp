#ifndef CURVELAB_RAAG_HPP
#define CURVELAB_RAAG_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "curvelab/error.hpp"
#include "curvelab/graph.hpp"
#include "curvelab/word.hpp"

namespace curvelab {

// The right-angled Artin group A(G) of a graph: one generator per vertex,
// generators commute exactly along edges. Letter generator indices are
// vertex indices of the graph, so the canonical letter order follows the
// declared vertex order.
class Raag {
public:
    explicit Raag(Graph g) : graph_(std::move(g)), alphabet_(graph_.labels()) {}

    const Graph& graph() const { return graph_; }
    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t rank() const { return graph_.size(); }

    Word parse(std::string_view text) const { return alphabet_.parse(text); }
    std::string format(const Word& w) const { return alphabet_.format(w); }

    bool commute(Letter x, Letter y) const {
        return x.generator() != y.generator() && graph_.adjacent(x.generator(), y.generator());
    }

    void validate(const Word& w) const {
        for (Letter l : w)
            if (l.generator() >= rank())
                throw InvalidInput("letter index " + std::to_string(l.generator()) + " outside A(G) of rank " +
                                   std::to_string(rank()));
    }

    // Reduced (hence geodesic) word: appending a letter either cancels
    // against the last earlier letter on the same vertex that it can be
    // shuffled next to, or leaves the word reduced.
    Word reduce(const Word& w) const {
        Word out;
        out.reserve(w.size());
        for (Letter x : w) {
            bool cancelled = false;
            for (std::size_t k = out.size(); k-- > 0;) {
                const Letter y = out[k];
                if (y.generator() == x.generator()) {
                    if (y == x.inverse()) {
                        out.erase(out.begin() + static_cast<std::ptrdiff_t>(k));
                        cancelled = true;
                    }
                    break;
                }
                if (!commute(x, y)) break;
            }
            if (!cancelled) out.push_back(x);
        }
        return out;
    }

    // Lexicographically least word among commutation-equivalent
    // rearrangements of a reduced word: repeatedly emit the smallest letter
    // that commutes with every letter before it.
    Word lex_least(const Word& reduced) const {
        Word rest = reduced;
        Word out;
        out.reserve(rest.size());
        while (!rest.empty()) {
            std::size_t best = rest.size();
            for (std::size_t k = 0; k < rest.size(); ++k) {
                bool movable = true;
                for (std::size_t j = 0; j < k && movable; ++j) movable = commute(rest[j], rest[k]);
                if (movable && (best == rest.size() || rest[k] < rest[best])) best = k;
            }
            out.push_back(rest[best]);
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(best));
        }
        return out;
    }

    Word normal_form(const Word& w) const {
        validate(w);
        return lex_least(reduce(w));
    }

    bool equal(const Word& a, const Word& b) const { return normal_form(a) == normal_form(b); }
    bool is_identity(const Word& w) const { return reduce(w).empty(); }

    std::set<std::string> support(const Word& w) const {
        std::set<std::string> out;
        for (Letter l : normal_form(w)) out.insert(graph_.label(l.generator()));
        return out;
    }

    Word commutator(Letter x, Letter y) const { return {x, y, x.inverse(), y.inverse()}; }

private:
    Graph graph_;
    Alphabet alphabet_;
};

// ---------------------------------------------------------------------------
// Homomorphisms

// Assignment of a target word to each source generator. Usable only once
// check_hom has confirmed that every source relator maps to the identity.
class Hom {
public:
    Hom(Raag source, Raag target, std::vector<Word> images)
        : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
        if (images_.size() != source_.rank())
            throw InvalidInput("hom needs one image per source vertex: got " + std::to_string(images_.size()) +
                               " for " + std::to_string(source_.rank()));
        for (const auto& w : images_) target_.validate(w);
    }

    // Images by label; every source vertex must be mapped.
    static Hom from_labels(const Graph& source, const Graph& target, const std::map<std::string, std::string>& images) {
        Raag src(source), tgt(target);
        std::vector<Word> words;
        for (const auto& v : source.labels()) {
            auto it = images.find(v);
            if (it == images.end()) throw InvalidInput("hom leaves source vertex '" + v + "' unmapped");
            words.push_back(tgt.parse(it->second));
        }
        for (const auto& [v, _] : images)
            if (!source.has_vertex(v)) throw InvalidInput("hom maps unknown source vertex '" + v + "'");
        return Hom(std::move(src), std::move(tgt), std::move(words));
    }

    const Raag& source() const { return source_; }
    const Raag& target() const { return target_; }
    const Word& image(std::size_t v) const { return images_.at(v); }
    bool verified() const { return verified_; }

    // Letterwise substitution, no verification and no normalisation.
    Word substitute(const Word& w) const {
        source_.validate(w);
        Word out;
        for (Letter l : w) {
            const Word& img = images_[l.generator()];
            if (l.inverted()) {
                auto inv = inverse(img);
                out.insert(out.end(), inv.begin(), inv.end());
            } else {
                out.insert(out.end(), img.begin(), img.end());
            }
        }
        return out;
    }

    friend bool check_hom(Hom& h);

private:
    Raag source_;
    Raag target_;
    std::vector<Word> images_;
    bool verified_ = false;
};

// Every edge {u,v} of the source must have [h(u), h(v)] trivial in the
// target. Marks the hom verified on success.
inline bool check_hom(Hom& h) {
    const Graph& g = h.source().graph();
    for (auto [u, v] : g.edges()) {
        const Word rel = h.source().commutator(Letter(u, false), Letter(v, false));
        if (!h.target().is_identity(h.substitute(rel))) {
            h.verified_ = false;
            return false;
        }
    }
    h.verified_ = true;
    return true;
}

inline Word apply_hom(const Hom& h, const Word& w) {
    if (!h.verified()) throw UnverifiedHom("homomorphism applied before check_hom succeeded");
    return h.target().normal_form(h.substitute(w));
}

// Hom G -> G sending the listed vertices to the identity.
inline Hom kill_generators(const Graph& g, const std::set<std::string>& killed) {
    std::map<std::string, std::string> images;
    for (const auto& v : g.labels()) images[v] = killed.count(v) ? "1" : v;
    for (const auto& k : killed)
        if (!g.has_vertex(k)) throw InvalidInput("cannot kill unknown vertex '" + k + "'");
    return Hom::from_labels(g, g, images);
}

inline Hom identity_hom(const Graph& g) { return kill_generators(g, {}); }

// Hom JSON: {"source": <graph or catalog name>, "target": ..., "images": {"q": "e f", ...}}
template <typename GraphResolver>
Hom hom_from_json(const nlohmann::json& j, GraphResolver&& resolve) {
    if (!j.is_object() || !j.contains("source") || !j.contains("target") || !j.contains("images"))
        throw InvalidInput("hom JSON needs \"source\", \"target\" and \"images\"");
    const Graph src = resolve(j.at("source"));
    const Graph tgt = resolve(j.at("target"));
    std::map<std::string, std::string> images;
    for (const auto& [k, v] : j.at("images").items()) {
        if (!v.is_string()) throw InvalidInput("hom JSON: image of '" + k + "' must be a token string");
        images[k] = v.template get<std::string>();
    }
    // unspecified vertices present in the target map to themselves
    for (const auto& v : src.labels())
        if (!images.count(v) && tgt.has_vertex(v)) images[v] = v;
    return Hom::from_labels(src, tgt, images);
}

// ---------------------------------------------------------------------------
// Balls

struct Ball {
    std::vector<Word> elements;              // shortlex-sorted normal forms
    std::vector<std::size_t> sphere_sizes;   // elements of length exactly k
};

// Every element of geodesic length <= radius, grown one letter at a time
// with canonicalisation and deduplication.
inline Ball enumerate_ball(const Raag& a, int radius, std::size_t cap = 10'000'000) {
    if (radius < 0) throw InvalidInput("ball radius must be >= 0");
    std::unordered_set<Word, WordHash> seen;
    std::vector<Word> frontier{Word{}};
    seen.insert(Word{});
    Ball ball;
    ball.sphere_sizes.push_back(1);
    for (int r = 0; r < radius; ++r) {
        std::vector<Word> next;
        for (const auto& w : frontier) {
            for (std::size_t code = 0; code < 2 * a.rank(); ++code) {
                Word ext = w;
                ext.push_back(Letter::from_code(static_cast<std::uint32_t>(code)));
                Word nf = a.lex_least(a.reduce(ext));
                if (nf.size() != static_cast<std::size_t>(r + 1)) continue;
                if (seen.insert(nf).second) {
                    next.push_back(std::move(nf));
                    if (seen.size() > cap)
                        throw ResourceCapExceeded("ball of radius " + std::to_string(radius) + " exceeds " +
                                                  std::to_string(cap) + " elements");
                }
            }
        }
        ball.sphere_sizes.push_back(next.size());
        frontier = std::move(next);
    }
    ball.elements.assign(seen.begin(), seen.end());
    std::sort(ball.elements.begin(), ball.elements.end(), shortlex_less);
    return ball;
}

// Nontrivial ball elements killed by a verified hom. Empty means the hom is
// injective on the ball.
inline std::vector<Word> kernel_ball_check(const Hom& h, int radius, std::size_t cap = 10'000'000) {
    if (!h.verified()) throw UnverifiedHom("kernel check needs a verified homomorphism");
    std::vector<Word> violations;
    const Ball ball = enumerate_ball(h.source(), radius, cap);
    for (const auto& w : ball.elements)
        if (!w.empty() && apply_hom(h, w).empty()) violations.push_back(w);
    return violations;
}

// The map A(Gamma_0) -> A(Gamma_1), q -> ef, identity elsewhere.
inline Hom phi_hom(bool ef_edge = false) {
    return Hom::from_labels(gamma0(), gamma1(ef_edge),
                            {{"a", "a"}, {"b", "b"}, {"c", "c"}, {"d", "d"}, {"g", "g"}, {"h", "h"}, {"q", "e f"}});
}

} // namespace curvelab

#endif // CURVELAB_RAAG_HPP
