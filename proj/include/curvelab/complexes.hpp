#ifndef CURVELAB_COMPLEXES_HPP
#define CURVELAB_COMPLEXES_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "curvelab/error.hpp"
#include "curvelab/graph.hpp"

namespace curvelab {

// Pure complex given by its facets. Facets are vertex sets of one common size
// and may repeat, so that two triangles glued along all their edges are two
// facets on the same three vertices. Lower faces are implicit.
class SimplicialComplex {
public:
    using Facet = std::vector<std::size_t>;  // sorted vertex indices

    static SimplicialComplex build(std::vector<std::string> vertices,
                                   const std::vector<std::vector<std::string>>& facets) {
        SimplicialComplex k;
        k.labels_ = std::move(vertices);
        for (std::size_t i = 0; i < k.labels_.size(); ++i)
            if (!k.index_.emplace(k.labels_[i], i).second)
                throw InvalidInput("duplicate vertex label '" + k.labels_[i] + "'");
        k.facet_size_ = facets.empty() ? 0 : facets.front().size();
        for (const auto& f : facets) {
            if (f.size() != k.facet_size_) throw InvalidInput("complex is not pure: facets of sizes " +
                                                              std::to_string(k.facet_size_) + " and " +
                                                              std::to_string(f.size()));
            Facet idx;
            for (const auto& v : f) {
                auto it = k.index_.find(v);
                if (it == k.index_.end()) throw InvalidInput("facet uses undeclared vertex '" + v + "'");
                idx.push_back(it->second);
            }
            std::sort(idx.begin(), idx.end());
            if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
                throw InvalidInput("facet repeats a vertex");
            k.facets_.push_back(idx);
        }
        return k;
    }

    // Vertices in order of first appearance.
    static SimplicialComplex from_facets(const std::vector<std::vector<std::string>>& facets) {
        std::vector<std::string> vs;
        std::set<std::string> seen;
        for (const auto& f : facets)
            for (const auto& v : f)
                if (seen.insert(v).second) vs.push_back(v);
        return build(vs, facets);
    }

    std::size_t vertex_count() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<Facet>& facets() const { return facets_; }
    std::size_t facet_size() const { return facet_size_; }
    int dimension() const { return static_cast<int>(facet_size_) - 1; }

    std::size_t index(const std::string& v) const {
        auto it = index_.find(v);
        if (it == index_.end()) throw InvalidInput("unknown vertex '" + v + "'");
        return it->second;
    }

    std::vector<std::vector<std::string>> facet_labels() const {
        std::vector<std::vector<std::string>> out;
        for (const auto& f : facets_) {
            std::vector<std::string> l;
            for (auto v : f) l.push_back(labels_[v]);
            out.push_back(l);
        }
        return out;
    }

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<Facet> facets_;
    std::size_t facet_size_ = 0;
};

inline std::size_t common_vertices(const SimplicialComplex::Facet& a, const SimplicialComplex::Facet& b) {
    std::size_t n = 0;
    for (std::size_t i = 0, j = 0; i < a.size() && j < b.size();) {
        if (a[i] == b[j]) {
            ++n;
            ++i;
            ++j;
        } else if (a[i] < b[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    return n;
}

enum class ProperReading {
    codim_one,  // at most one common codimension-1 face
    any_face,   // at most one common face of any dimension
};

inline bool is_proper(const SimplicialComplex& k, ProperReading reading = ProperReading::codim_one) {
    const auto& fs = k.facets();
    const std::size_t n = k.facet_size();
    for (std::size_t i = 0; i < fs.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) {
            const std::size_t c = common_vertices(fs[i], fs[j]);
            if (reading == ProperReading::any_face) {
                if (c > 1) return false;
            } else if (n >= 2 && c >= n) {
                // c == n means n shared codim-1 faces; c == n - 1 exactly one
                return false;
            }
        }
    return true;
}

inline SimplicialComplex vertex_link(const SimplicialComplex& k, const std::string& v) {
    const std::size_t vi = k.index(v);
    std::vector<std::vector<std::string>> facets;
    std::vector<std::string> verts;
    std::set<std::size_t> used;
    for (const auto& f : k.facets()) {
        if (!std::binary_search(f.begin(), f.end(), vi)) continue;
        std::vector<std::string> rest;
        for (auto w : f)
            if (w != vi) {
                rest.push_back(k.labels()[w]);
                used.insert(w);
            }
        facets.push_back(rest);
    }
    for (std::size_t w = 0; w < k.vertex_count(); ++w)
        if (used.count(w)) verts.push_back(k.labels()[w]);
    return SimplicialComplex::build(verts, facets);
}

inline Graph one_skeleton(const SimplicialComplex& k) {
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& f : k.facets())
        for (std::size_t i = 0; i < f.size(); ++i)
            for (std::size_t j = i + 1; j < f.size(); ++j) edges.emplace(f[i], f[j]);
    return Graph::from_indices(k.labels(), {edges.begin(), edges.end()});
}

struct PropositionReport {
    std::vector<std::string> violations;  // failed preconditions
    bool thick_stars = false;             // side A
    bool large_links = false;             // side B
    std::size_t min_link_facets = 0;
    bool proper_codim_one = false;
    bool proper_any_face = false;

    bool preconditions_hold() const { return violations.empty(); }
    bool equivalent() const { return thick_stars == large_links; }
};

// Side A: the 1-skeleton has N-thick stars. Side B: every vertex link has at
// least N + 1 facets. Preconditions: facets of size N, proper, every
// codimension-1 face in exactly two facets, and connected vertex links.
inline PropositionReport check_proposition(const SimplicialComplex& k, int n) {
    PropositionReport r;
    if (n < 1) throw InvalidInput("N must be >= 1");
    const auto un = static_cast<std::size_t>(n);
    r.proper_codim_one = is_proper(k, ProperReading::codim_one);
    r.proper_any_face = is_proper(k, ProperReading::any_face);
    if (k.facets().empty()) r.violations.push_back("complex has no facets");
    if (k.facet_size() != un)
        r.violations.push_back("facets have " + std::to_string(k.facet_size()) + " vertices, expected " +
                               std::to_string(n));
    if (!r.proper_codim_one) r.violations.push_back("two facets share more than one codimension-1 face");

    std::map<std::vector<std::size_t>, int> ridges;
    for (const auto& f : k.facets())
        for (std::size_t skip = 0; skip < f.size(); ++skip) {
            std::vector<std::size_t> ridge;
            for (std::size_t i = 0; i < f.size(); ++i)
                if (i != skip) ridge.push_back(f[i]);
            ++ridges[ridge];
        }
    for (const auto& [ridge, count] : ridges)
        if (count != 2) {
            std::string s;
            for (auto v : ridge) s += (s.empty() ? "" : ",") + k.labels()[v];
            r.violations.push_back("face {" + s + "} lies in " + std::to_string(count) + " facets");
        }

    r.large_links = true;
    r.min_link_facets = k.facets().size();
    for (const auto& v : k.labels()) {
        const SimplicialComplex lk = vertex_link(k, v);
        r.min_link_facets = std::min(r.min_link_facets, lk.facets().size());
        if (lk.facets().size() < un + 1) r.large_links = false;
        if (lk.facets().empty()) {
            r.violations.push_back("vertex " + v + " lies in no facet");
        } else if (n >= 3 && !is_connected(one_skeleton(lk))) {
            r.violations.push_back("link of " + v + " is disconnected");
        }
    }
    r.thick_stars = has_thick_stars(one_skeleton(k), n);
    return r;
}

inline nlohmann::json to_json(const SimplicialComplex& k) {
    return {{"vertices", k.labels()}, {"facets", k.facet_labels()}};
}

inline SimplicialComplex complex_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("facets")) throw InvalidInput("complex JSON needs \"facets\"");
    std::vector<std::vector<std::string>> facets;
    for (const auto& f : j.at("facets")) {
        std::vector<std::string> fv;
        for (const auto& v : f) fv.push_back(v.is_string() ? v.get<std::string>() : v.dump());
        facets.push_back(fv);
    }
    if (j.contains("vertices")) return SimplicialComplex::build(j.at("vertices").get<std::vector<std::string>>(), facets);
    return SimplicialComplex::from_facets(facets);
}

// Corpus

namespace detail {
inline std::vector<std::vector<std::string>> named(const std::vector<std::vector<int>>& facets) {
    std::vector<std::vector<std::string>> out;
    for (const auto& f : facets) {
        std::vector<std::string> l;
        for (int v : f) l.push_back("v" + std::to_string(v));
        out.push_back(l);
    }
    return out;
}
inline SimplicialComplex numbered(int vertices, const std::vector<std::vector<int>>& facets) {
    std::vector<std::string> vs;
    for (int i = 0; i < vertices; ++i) vs.push_back("v" + std::to_string(i));
    return SimplicialComplex::build(vs, named(facets));
}
} // namespace detail

// Boundary of the n-simplex: all n-subsets of n + 1 vertices.
inline SimplicialComplex simplex_boundary(int n) {
    std::vector<std::vector<int>> facets;
    for (int skip = 0; skip <= n; ++skip) {
        std::vector<int> f;
        for (int v = 0; v <= n; ++v)
            if (v != skip) f.push_back(v);
        facets.push_back(f);
    }
    return detail::numbered(n + 1, facets);
}

inline SimplicialComplex octahedron() {
    // 0/1: +-x, 2/3: +-y, 4/5: +-z
    std::vector<std::vector<int>> facets;
    for (int x : {0, 1})
        for (int y : {2, 3})
            for (int z : {4, 5}) facets.push_back({x, y, z});
    return detail::numbered(6, facets);
}

inline SimplicialComplex icosahedron() {
    // 0 top, 1..5 upper ring, 6..10 lower ring, 11 bottom
    std::vector<std::vector<int>> facets;
    for (int i = 0; i < 5; ++i) {
        const int u = 1 + i, u1 = 1 + (i + 1) % 5, l = 6 + i, l1 = 6 + (i + 1) % 5;
        facets.push_back({0, u, u1});
        facets.push_back({11, l, l1});
        facets.push_back({u, u1, l});
        facets.push_back({u1, l, l1});
    }
    return detail::numbered(12, facets);
}

// Seven-vertex triangulation of the torus.
inline SimplicialComplex torus7() {
    std::vector<std::vector<int>> facets;
    for (int i = 0; i < 7; ++i) {
        facets.push_back({i, (i + 1) % 7, (i + 3) % 7});
        facets.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    return detail::numbered(7, facets);
}

// Two triangles glued along all three edges.
inline SimplicialComplex folded_square() { return detail::numbered(3, {{0, 1, 2}, {0, 1, 2}}); }

// Two triangles sharing one edge: proper under one reading and not the other.
inline SimplicialComplex two_triangles() { return detail::numbered(4, {{0, 1, 2}, {0, 1, 3}}); }

struct CorpusEntry {
    std::string name;
    SimplicialComplex complex;
    int n;
};

inline std::vector<CorpusEntry> complex_corpus() {
    return {
        {"tetrahedron", simplex_boundary(3), 3},
        {"octahedron", octahedron(), 3},
        {"icosahedron", icosahedron(), 3},
        {"4-simplex-boundary", simplex_boundary(4), 4},
        {"torus7", torus7(), 3},
        {"folded-square", folded_square(), 3},
        {"two-triangles", two_triangles(), 3},
    };
}

} // namespace curvelab

#endif // CURVELAB_COMPLEXES_HPP
