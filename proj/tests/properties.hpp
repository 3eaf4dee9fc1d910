#ifndef CURVELAB_TESTS_PROPERTIES_HPP
#define CURVELAB_TESTS_PROPERTIES_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "curvelab/curve_sample.hpp"
#include "curvelab/embedding.hpp"
#include "curvelab/graph.hpp"
#include "curvelab/grid_oracle.hpp"
#include "curvelab/intersection.hpp"
#include "curvelab/raag.hpp"

namespace props {

using namespace curvelab;

struct SuiteResult {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string first_failure;

    bool ok() const { return failures == 0 && cases > 0; }
    void fail(const std::string& what) {
        if (failures++ == 0) first_failure = what;
    }
};

inline Graph random_graph(std::mt19937_64& rng, std::size_t n, double p) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i));
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::bernoulli_distribution coin(p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (coin(rng)) edges.emplace_back(i, j);
    return Graph::from_indices(labels, edges);
}

inline Word random_word(std::mt19937_64& rng, std::size_t rank, std::size_t len) {
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(2 * rank - 1));
    Word w;
    for (std::size_t i = 0; i < len; ++i) w.push_back(Letter::from_code(pick(rng)));
    return w;
}

// Brute force: close a word under deleting x x^-1 and swapping adjacent
// commuting letters, keep the shortlex least word reached.
inline Word brute_force_normal_form(const Graph& g, const Word& w) {
    auto commute = [&](Letter a, Letter b) {
        return a.generator() != b.generator() && g.adjacent(a.generator(), b.generator());
    };
    std::set<Word> seen{w};
    std::vector<Word> stack{w};
    Word best = w;
    while (!stack.empty()) {
        Word u = stack.back();
        stack.pop_back();
        if (u.size() < best.size() || (u.size() == best.size() && u < best)) best = u;
        for (std::size_t i = 0; i + 1 < u.size(); ++i) {
            if (u[i] == u[i + 1].inverse()) {
                Word v = u;
                v.erase(v.begin() + static_cast<std::ptrdiff_t>(i), v.begin() + static_cast<std::ptrdiff_t>(i) + 2);
                if (seen.insert(v).second) stack.push_back(v);
            }
            if (commute(u[i], u[i + 1])) {
                Word v = u;
                std::swap(v[i], v[i + 1]);
                if (seen.insert(v).second) stack.push_back(v);
            }
        }
    }
    return best;
}

inline SuiteResult normal_form_idempotence(std::size_t cases, std::uint64_t seed = 1) {
    SuiteResult r{"normal-form idempotence"};
    std::mt19937_64 rng(seed);
    for (std::size_t c = 0; c < cases; ++c) {
        const Graph g = random_graph(rng, 2 + rng() % 5, 0.5);
        const Raag a(g);
        const Word w = random_word(rng, g.size(), rng() % 13);
        const Word nf = a.normal_form(w);
        ++r.cases;
        if (a.normal_form(nf) != nf) r.fail("nf(nf(w)) != nf(w) for " + a.format(w));
        if (nf.size() > w.size()) r.fail("normal form longer than input for " + a.format(w));
    }
    return r;
}

inline SuiteResult normal_form_oracle(std::size_t cases, std::uint64_t seed = 2) {
    SuiteResult r{"normal form equals brute-force rewriting"};
    std::mt19937_64 rng(seed);
    for (std::size_t c = 0; c < cases; ++c) {
        const Graph g = random_graph(rng, 2 + rng() % 4, 0.5);
        const Raag a(g);
        const Word w = random_word(rng, g.size(), rng() % 8);
        ++r.cases;
        if (a.normal_form(w) != brute_force_normal_form(g, w)) r.fail("mismatch for " + a.format(w));
    }
    return r;
}

inline SuiteResult relator_insertion(std::size_t cases, std::uint64_t seed = 3) {
    SuiteResult r{"relator-insertion invariance"};
    std::mt19937_64 rng(seed);
    for (std::size_t c = 0; c < cases; ++c) {
        const Graph g = random_graph(rng, 2 + rng() % 5, 0.6);
        const Raag a(g);
        Word w = random_word(rng, g.size(), rng() % 11);
        const Word before = a.normal_form(w);
        Word rel;
        const auto edges = g.edges();
        if (!edges.empty() && rng() % 3 != 0) {
            auto [u, v] = edges[rng() % edges.size()];
            rel = a.commutator(Letter(u, rng() % 2 == 1), Letter(v, rng() % 2 == 1));
        } else {
            const Letter x = Letter::from_code(static_cast<std::uint32_t>(rng() % (2 * g.size())));
            rel = {x, x.inverse()};
        }
        if (rng() % 2) std::rotate(rel.begin(), rel.begin() + 1, rel.end());
        const std::size_t at = w.empty() ? 0 : rng() % (w.size() + 1);
        w.insert(w.begin() + static_cast<std::ptrdiff_t>(at), rel.begin(), rel.end());
        ++r.cases;
        if (a.normal_form(w) != before) r.fail("inserting a relator changed " + a.format(w));
    }
    return r;
}

inline std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t out = 1;
    for (std::size_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
    return out;
}

// |B(R)| in Z^n: sum_k 2^k C(n,k) C(R,k).
inline std::size_t free_abelian_ball(std::size_t n, std::size_t radius) {
    std::size_t total = 0;
    for (std::size_t k = 0; k <= std::min(n, radius); ++k) total += (std::size_t{1} << k) * binomial(n, k) * binomial(radius, k);
    return total;
}

// |B(R)| in F_n: 1 + sum_{k=1..R} 2n (2n-1)^(k-1).
inline std::size_t free_group_ball(std::size_t n, std::size_t radius) {
    std::size_t total = 1, sphere = 2 * n;
    for (std::size_t k = 1; k <= radius; ++k) {
        total += sphere;
        sphere *= 2 * n - 1;
    }
    return total;
}

inline SuiteResult ball_counts(std::size_t cases, std::uint64_t seed = 4) {
    SuiteResult r{"ball-count formulas for Z^n and free groups"};
    std::mt19937_64 rng(seed);
    for (std::size_t c = 0; c < cases; ++c) {
        const bool abelian = rng() % 2 == 0;
        const std::size_t n = 1 + rng() % 4;
        const std::size_t radius = rng() % (abelian ? 7 : (n <= 2 ? 6 : 4));
        const Graph k = complete_graph(static_cast<int>(n));
        const Ball ball = enumerate_ball(Raag(abelian ? k : complement(k)), static_cast<int>(radius));
        const auto formula = [&](std::size_t t) { return abelian ? free_abelian_ball(n, t) : free_group_ball(n, t); };
        ++r.cases;
        const std::string tag = std::string(abelian ? "Z^" : "F_") + std::to_string(n) + " radius " + std::to_string(radius);
        if (ball.elements.size() != formula(radius))
            r.fail(tag + ": got " + std::to_string(ball.elements.size()) + ", formula " + std::to_string(formula(radius)));
        for (std::size_t t = 1; t < ball.sphere_sizes.size(); ++t)
            if (ball.sphere_sizes[t] != formula(t) - formula(t - 1)) r.fail(tag + ": sphere " + std::to_string(t) + " off");
    }
    return r;
}

// Sphere sizes from the growth series 1 / sum over cliques s of (-2t/(1+t))^|s|.
inline std::vector<long long> growth_series_spheres(const Graph& g, std::size_t radius) {
    std::vector<long long> cliques(g.size() + 1, 0);
    for (std::uint32_t mask = 0; mask < (1U << g.size()); ++mask) {
        bool ok = true;
        for (std::size_t i = 0; i < g.size() && ok; ++i)
            for (std::size_t j = 0; j < i && ok; ++j)
                if ((mask >> i & 1) && (mask >> j & 1) && !g.adjacent(i, j)) ok = false;
        if (ok) ++cliques[static_cast<std::size_t>(__builtin_popcount(mask))];
    }
    std::size_t top = 0;
    while (top + 1 < cliques.size() && cliques[top + 1] > 0) ++top;
    const std::size_t len = radius + 1;
    auto times_one_plus_t = [&](std::vector<long long> p, std::size_t k) {
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t i = len - 1; i > 0; --i) p[i] += p[i - 1];
        return p;
    };
    std::vector<long long> q(len, 0);
    for (std::size_t k = 0; k <= top; ++k) {
        std::vector<long long> term(len, 0);
        long long c = cliques[k];
        for (std::size_t r = 0; r < k; ++r) c *= -2;
        if (k < len) term[k] = c;
        term = times_one_plus_t(term, top - k);
        for (std::size_t i = 0; i < len; ++i) q[i] += term[i];
    }
    std::vector<long long> num(len, 0);
    num[0] = 1;
    num = times_one_plus_t(num, top);
    std::vector<long long> out(len, 0);
    for (std::size_t i = 0; i < len; ++i) {
        long long v = num[i];
        for (std::size_t j = 1; j <= i; ++j) v -= q[j] * out[i - j];
        out[i] = v;  // q[0] == 1
    }
    return out;
}

inline SuiteResult ball_growth_series(std::size_t cases, std::uint64_t seed = 10) {
    SuiteResult r{"ball sphere sizes equal the clique growth series"};
    std::mt19937_64 rng(seed);
    for (std::size_t c = 0; c < cases; ++c) {
        const Graph g = random_graph(rng, 1 + rng() % 5, 0.5);
        const std::size_t radius = 1 + rng() % (g.size() <= 3 ? 5 : 3);
        const Ball ball = enumerate_ball(Raag(g), static_cast<int>(radius));
        const auto expect = growth_series_spheres(g, radius);
        ++r.cases;
        for (std::size_t t = 0; t <= radius; ++t)
            if (t >= ball.sphere_sizes.size() || static_cast<long long>(ball.sphere_sizes[t]) != expect[t]) {
                r.fail("sphere " + std::to_string(t) + " differs on a graph with " + std::to_string(g.size()) + " vertices");
                break;
            }
    }
    return r;
}

// Random conjugates and inverses of a class word.
inline Word scramble(std::mt19937_64& rng, std::size_t rank, const Word& w) {
    Word u = w;
    std::rotate(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(rng() % u.size()), u.end());
    if (rng() % 2) u = inverse(u);
    const Word h = random_word(rng, rank, rng() % 3);
    return concat(concat(h, u), inverse(h));
}

inline SuiteResult intersection_symmetry(const CurveGraphSample& s, std::size_t cases, std::uint64_t seed = 5) {
    SuiteResult r{"intersection symmetry and conjugation invariance on " + s.model().name()};
    std::mt19937_64 rng(seed);
    const SurfaceModel& m = s.model();
    for (std::size_t c = 0; c < cases; ++c) {
        const std::size_t i = rng() % s.size(), j = rng() % s.size();
        const CurveClass& a = s.classes()[i];
        const CurveClass& b = s.classes()[j];
        const int ab = geometric_intersection(m, a, b), ba = geometric_intersection(m, b, a);
        const CurveClass a2 = CurveClass::from_word(scramble(rng, m.rank(), a.word()));
        const CurveClass b2 = CurveClass::from_word(scramble(rng, m.rank(), b.word()));
        ++r.cases;
        if (ab != ba) r.fail("asymmetric on " + m.format(a.word()) + " , " + m.format(b.word()));
        if (geometric_intersection(m, a2, b2) != ab) r.fail("conjugation changed i on " + m.format(a.word()));
        if (i == j && ab != 0) r.fail("nonzero self-value on " + m.format(a.word()));
    }
    return r;
}

inline SuiteResult automorphism_invariance(const CurveGraphSample& s, const std::vector<FreeAutomorphism>& gens,
                                           std::size_t cases, std::uint64_t seed = 6) {
    SuiteResult r{"automorphism invariance on " + s.model().name()};
    std::mt19937_64 rng(seed);
    const SurfaceModel& m = s.model();
    for (std::size_t c = 0; c < cases; ++c) {
        const std::size_t i = rng() % s.size(), j = rng() % s.size();
        FreeAutomorphism g = gens[rng() % gens.size()];
        if (rng() % 2) g = g.inverted();
        const CurveClass a = CurveClass::from_word(g.apply(s.classes()[i].word()));
        const CurveClass b = CurveClass::from_word(g.apply(s.classes()[j].word()));
        ++r.cases;
        if (!is_simple(m, a) || is_peripheral(m, a) || !is_simple(m, b) || is_peripheral(m, b)) {
            r.fail(g.name + " sends a sample class outside the essential simple classes");
            continue;
        }
        if (geometric_intersection(m, a, b) != s.at(i, j))
            r.fail(g.name + " changed i(" + m.format(s.classes()[i].word()) + ", " + m.format(s.classes()[j].word()) + ")");
    }
    return r;
}

// One case is one row of the matrix, checked against recomputation.
inline SuiteResult matrix_invariants(const CurveGraphSample& s, std::size_t cases, std::uint64_t seed = 7) {
    SuiteResult r{"sample matrix invariants on " + s.model().name()};
    std::mt19937_64 rng(seed);
    const SurfaceModel& m = s.model();
    for (std::size_t c = 0; c < cases; ++c) {
        const std::size_t i = c < s.size() ? c : rng() % s.size();
        ++r.cases;
        if (s.at(i, i) != 0) r.fail("nonzero diagonal");
        if (self_intersection(m, s.classes()[i]) != 0) r.fail("sample holds a non-simple class");
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (j == i) continue;
            if (s.at(i, j) != s.at(j, i)) r.fail("matrix not symmetric");
            if (s.at(i, j) != linked_intersection(m, s.classes()[i], s.classes()[j])) {
                r.fail("entry (" + std::to_string(i) + "," + std::to_string(j) + ") differs from recomputation");
                break;
            }
        }
    }
    return r;
}

// The chord test of the grid model decides simplicity without the ribbon
// structure.
inline SuiteResult simplicity_oracle(std::size_t cases, std::uint64_t seed = 8) {
    SuiteResult r{"simplicity agrees with the planar chord test"};
    std::mt19937_64 rng(seed);
    for (std::size_t c = 0; c < cases; ++c) {
        const int n = 4 + static_cast<int>(rng() % 3);
        const SurfaceModel m = surface_model(0, n);
        Word w = cyclic_reduce(free_reduce(random_word(rng, m.rank(), 2 + rng() % 9)));
        if (w.empty() || primitive_period(w) != w.size()) {
            --c;
            continue;
        }
        const CurveClass cl = CurveClass::from_word(w);
        ++r.cases;
        const bool planar = grid::ray_order(m.rank(), cl.word()).has_value();
        if (planar != is_simple(m, cl)) r.fail("disagreement on " + m.format(cl.word()));
    }
    return r;
}

// Induced embeddings of small random graphs against exhaustive injections.
inline SuiteResult embedding_oracle(std::size_t cases, std::uint64_t seed = 9) {
    SuiteResult r{"induced embedding count equals exhaustive count"};
    std::mt19937_64 rng(seed);
    for (std::size_t c = 0; c < cases; ++c) {
        const Graph p = random_graph(rng, 1 + rng() % 4, 0.5);
        const Graph h = random_graph(rng, p.size() + rng() % 4, 0.5);
        std::size_t brute = 0;
        std::vector<std::size_t> idx(h.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::set<std::vector<std::size_t>> maps;
        do {
            std::vector<std::size_t> img(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(p.size()));
            if (!maps.insert(img).second) continue;
            bool ok = true;
            for (std::size_t i = 0; i < p.size() && ok; ++i)
                for (std::size_t j = 0; j < i && ok; ++j) ok = p.adjacent(i, j) == h.adjacent(img[i], img[j]);
            brute += ok ? 1 : 0;
        } while (std::next_permutation(idx.begin(), idx.end()));
        const auto found = induced_embeddings(p, h, 0);
        ++r.cases;
        if (found.size() != brute) r.fail("count " + std::to_string(found.size()) + " vs " + std::to_string(brute));
        for (const auto& e : found)
            if (!is_induced_embedding(p, h, e)) r.fail("non-induced map returned");
    }
    return r;
}

} // namespace props

#endif // CURVELAB_TESTS_PROPERTIES_HPP
