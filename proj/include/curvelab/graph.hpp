#ifndef CURVELAB_GRAPH_HPP
#define CURVELAB_GRAPH_HPP

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>
#include <nlohmann/json.hpp>

#include "curvelab/error.hpp"

namespace curvelab {

using VertexSet = boost::dynamic_bitset<>;
using LabelPair = std::pair<std::string, std::string>;

// Finite simplicial graph on labelled vertices. Immutable once built; the
// declared vertex order is the iteration order of every algorithm.
class Graph {
public:
    Graph() = default;

    // Validating constructor: unique labels, declared endpoints, no loops.
    // Repeated edges collapse.
    static Graph build(std::vector<std::string> vertices, const std::vector<LabelPair>& edges) {
        Graph g;
        g.labels_ = std::move(vertices);
        for (std::size_t i = 0; i < g.labels_.size(); ++i) {
            if (!g.index_.emplace(g.labels_[i], i).second)
                throw InvalidInput("duplicate vertex label '" + g.labels_[i] + "'");
        }
        g.adj_.assign(g.labels_.size(), VertexSet(g.labels_.size()));
        for (const auto& [u, v] : edges) {
            if (u == v) throw InvalidInput("loop edge {" + u + "," + v + "}");
            auto iu = g.index_.find(u);
            auto iv = g.index_.find(v);
            if (iu == g.index_.end()) throw InvalidInput("edge {" + u + "," + v + "} has undeclared endpoint '" + u + "'");
            if (iv == g.index_.end()) throw InvalidInput("edge {" + u + "," + v + "} has undeclared endpoint '" + v + "'");
            g.adj_[iu->second].set(iv->second);
            g.adj_[iv->second].set(iu->second);
        }
        return g;
    }

    // Index-based construction used by internal algorithms; edges are (i, j)
    // index pairs with i != j.
    static Graph from_indices(std::vector<std::string> vertices,
                              const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
        Graph g;
        g.labels_ = std::move(vertices);
        for (std::size_t i = 0; i < g.labels_.size(); ++i) {
            if (!g.index_.emplace(g.labels_[i], i).second)
                throw InvalidInput("duplicate vertex label '" + g.labels_[i] + "'");
        }
        g.adj_.assign(g.labels_.size(), VertexSet(g.labels_.size()));
        for (auto [i, j] : edges) {
            if (i == j) throw InvalidInput("loop edge at '" + g.labels_.at(i) + "'");
            g.adj_.at(i).set(j);
            g.adj_.at(j).set(i);
        }
        return g;
    }

    std::size_t size() const { return labels_.size(); }
    bool empty() const { return labels_.empty(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t i) const { return labels_.at(i); }

    std::optional<std::size_t> find(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    std::size_t index(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end()) throw InvalidInput("unknown vertex '" + label + "'");
        return it->second;
    }
    bool has_vertex(const std::string& label) const { return index_.count(label) != 0; }

    bool adjacent(std::size_t i, std::size_t j) const { return adj_[i].test(j); }
    bool adjacent(const std::string& u, const std::string& v) const { return adjacent(index(u), index(v)); }
    const VertexSet& neighbors(std::size_t i) const { return adj_[i]; }
    std::size_t degree(std::size_t i) const { return adj_[i].count(); }

    std::size_t edge_count() const {
        std::size_t total = 0;
        for (const auto& row : adj_) total += row.count();
        return total / 2;
    }

    // Index pairs (i < j) in row-major order.
    std::vector<std::pair<std::size_t, std::size_t>> edges() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t i = 0; i < size(); ++i)
            for (auto j = adj_[i].find_next(i); j != VertexSet::npos; j = adj_[i].find_next(j))
                out.emplace_back(i, j);
        return out;
    }

    // Endpoint-sorted, list-sorted label pairs.
    std::vector<LabelPair> label_edges() const {
        std::vector<LabelPair> out;
        for (auto [i, j] : edges()) {
            auto a = labels_[i], b = labels_[j];
            if (b < a) std::swap(a, b);
            out.emplace_back(a, b);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    VertexSet all() const {
        VertexSet s(size());
        s.set();
        return s;
    }

    // Same vertex order and same edges.
    friend bool operator==(const Graph& a, const Graph& b) {
        return a.labels_ == b.labels_ && a.adj_ == b.adj_;
    }

    // Same labelled graph, vertex order ignored.
    friend bool same_labelled(const Graph& a, const Graph& b) {
        if (a.size() != b.size()) return false;
        for (const auto& l : a.labels_)
            if (!b.has_vertex(l)) return false;
        return a.label_edges() == b.label_edges();
    }

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<VertexSet> adj_;
};

inline Graph build_graph(std::vector<std::string> vertices, const std::vector<LabelPair>& edges) {
    return Graph::build(std::move(vertices), edges);
}

// ---------------------------------------------------------------------------
// Constructions

inline Graph complement(const Graph& g) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j)
            if (!g.adjacent(i, j)) edges.emplace_back(i, j);
    return Graph::from_indices(g.labels(), edges);
}

inline Graph induced_subgraph(const Graph& g, const std::vector<std::string>& keep) {
    std::vector<std::size_t> idx;
    for (const auto& l : keep) idx.push_back(g.index(l));
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b)
            if (g.adjacent(idx[a], idx[b])) edges.emplace_back(a, b);
    return Graph::from_indices(keep, edges);
}

inline Graph induced_subgraph(const Graph& g, const VertexSet& keep) {
    std::vector<std::string> labels;
    for (auto i = keep.find_first(); i != VertexSet::npos; i = keep.find_next(i)) labels.push_back(g.label(i));
    return induced_subgraph(g, labels);
}

// Disjoint union plus every cross edge. Labels of h that collide with g get
// the first free suffix "#1", "#2", ...
inline Graph join(const Graph& g, const Graph& h) {
    std::vector<std::string> labels = g.labels();
    std::set<std::string> taken(labels.begin(), labels.end());
    for (const auto& l : h.labels()) taken.insert(l);
    for (const auto& l : h.labels()) {
        std::string name = l;
        if (g.has_vertex(l)) {
            for (int k = 1;; ++k) {
                name = l + "#" + std::to_string(k);
                if (!taken.count(name)) break;
            }
            taken.insert(name);
        }
        labels.push_back(name);
    }
    const std::size_t off = g.size();
    auto edges = g.edges();
    for (auto [i, j] : h.edges()) edges.emplace_back(off + i, off + j);
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < h.size(); ++j) edges.emplace_back(i, off + j);
    return Graph::from_indices(std::move(labels), edges);
}

// ---------------------------------------------------------------------------
// Catalog

inline Graph complete_graph(int n, const std::string& prefix = "k") {
    std::vector<std::string> labels;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (int i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i + 1));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return Graph::from_indices(std::move(labels), edges);
}

inline Graph path_graph(int n) {
    std::vector<std::string> labels;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (int i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i + 1));
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Graph::from_indices(std::move(labels), edges);
}

inline Graph cycle4() {
    return Graph::build({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}});
}

// Gamma_0: the 4-cycle abcd, a cone point q over it, and g, h attached to
// three of the four cycle vertices each.
inline Graph gamma0() {
    return Graph::build({"a", "b", "c", "d", "g", "h", "q"},
                        {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"},
                         {"q", "a"}, {"q", "b"}, {"q", "c"}, {"q", "d"},
                         {"g", "a"}, {"g", "b"}, {"g", "c"},
                         {"h", "a"}, {"h", "b"}, {"h", "d"}});
}

// Gamma_1: q of Gamma_0 split into e (also adjacent to g) and f (also
// adjacent to h). Whether e and f are adjacent is a parameter.
inline Graph gamma1(bool ef_edge) {
    std::vector<LabelPair> edges = {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"},
                                    {"e", "a"}, {"e", "b"}, {"e", "c"}, {"e", "d"}, {"e", "g"},
                                    {"f", "a"}, {"f", "b"}, {"f", "c"}, {"f", "d"}, {"f", "h"},
                                    {"g", "a"}, {"g", "b"}, {"g", "c"},
                                    {"h", "a"}, {"h", "b"}, {"h", "d"}};
    if (ef_edge) edges.emplace_back("e", "f");
    return Graph::build({"a", "b", "c", "d", "e", "f", "g", "h"}, edges);
}

// Lambda_n = Gamma_0 * K_{n-4}.
inline Graph lambda_graph(int n) {
    if (n < 4) throw InvalidInput("lambda(n) requires n >= 4, got " + std::to_string(n));
    return join(gamma0(), complete_graph(n - 4));
}

// Resolves catalog names: C4, K<n>, P<n>, gamma0, gamma1, gamma1ef,
// lambda<n>. Returns nullopt for anything else.
inline std::optional<Graph> catalog_graph(const std::string& name) {
    auto number_after = [&](std::size_t prefix_len) -> std::optional<int> {
        if (name.size() <= prefix_len) return std::nullopt;
        for (std::size_t i = prefix_len; i < name.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
        return std::stoi(name.substr(prefix_len));
    };
    if (name == "C4") return cycle4();
    if (name == "gamma0") return gamma0();
    if (name == "gamma1") return gamma1(false);
    if (name == "gamma1ef") return gamma1(true);
    if (name.rfind("lambda", 0) == 0) {
        if (auto n = number_after(6)) return lambda_graph(*n);
        return std::nullopt;
    }
    if (name[0] == 'K') {
        if (auto n = number_after(1)) return complete_graph(*n);
    }
    if (name[0] == 'P') {
        if (auto n = number_after(1)) return path_graph(*n);
    }
    return std::nullopt;
}

inline std::vector<std::string> catalog_names() {
    return {"C4", "K<n>", "P<n>", "gamma0", "gamma1", "gamma1ef", "lambda<n>"};
}

// ---------------------------------------------------------------------------
// Predicates

inline bool is_connected(const Graph& g) {
    if (g.size() <= 1) return true;
    VertexSet seen(g.size());
    std::vector<std::size_t> stack{0};
    seen.set(0);
    while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        const auto& nb = g.neighbors(v);
        for (auto w = nb.find_first(); w != VertexSet::npos; w = nb.find_next(w)) {
            if (!seen.test(w)) {
                seen.set(w);
                stack.push_back(w);
            }
        }
    }
    return seen.all();
}

inline bool is_anti_connected(const Graph& g) { return is_connected(complement(g)); }

namespace detail {

// Bron-Kerbosch with pivoting; cliques reported as sorted index lists.
inline void bron_kerbosch(const Graph& g, std::vector<std::size_t>& r, VertexSet p, VertexSet x,
                          std::vector<std::vector<std::size_t>>& out) {
    if (p.none() && x.none()) {
        out.push_back(r);
        return;
    }
    // pivot: vertex of P u X with most neighbours in P
    std::size_t pivot = VertexSet::npos, best = 0;
    VertexSet px = p | x;
    for (auto u = px.find_first(); u != VertexSet::npos; u = px.find_next(u)) {
        auto c = (p & g.neighbors(u)).count();
        if (pivot == VertexSet::npos || c > best) {
            pivot = u;
            best = c;
        }
    }
    VertexSet candidates = p - g.neighbors(pivot);
    for (auto v = candidates.find_first(); v != VertexSet::npos; v = candidates.find_next(v)) {
        r.push_back(v);
        bron_kerbosch(g, r, p & g.neighbors(v), x & g.neighbors(v), out);
        r.pop_back();
        p.reset(v);
        x.set(v);
    }
}

inline void max_clique_search(const Graph& g, VertexSet p, std::size_t depth, std::size_t& best) {
    if (p.none()) {
        best = std::max(best, depth);
        return;
    }
    while (p.any()) {
        if (depth + p.count() <= best) return;
        auto v = p.find_first();
        max_clique_search(g, p & g.neighbors(v), depth + 1, best);
        p.reset(v);
    }
}

} // namespace detail

// All maximal cliques, each as sorted vertex indices, list sorted.
inline std::vector<std::vector<std::size_t>> clique_list(const Graph& g) {
    std::vector<std::vector<std::size_t>> out;
    if (g.empty()) return out;
    std::vector<std::size_t> r;
    detail::bron_kerbosch(g, r, g.all(), VertexSet(g.size()), out);
    for (auto& c : out) std::sort(c.begin(), c.end());
    std::sort(out.begin(), out.end());
    return out;
}

// Exact maximum clique size by branch and bound.
inline std::size_t clique_number(const Graph& g) {
    std::size_t best = 0;
    detail::max_clique_search(g, g.all(), 0, best);
    return best;
}

namespace detail {

inline void cliques_of_size(const Graph& g, VertexSet p, VertexSet current, std::size_t remaining,
                            std::vector<VertexSet>& out) {
    if (remaining == 0) {
        out.push_back(current);
        return;
    }
    while (p.count() >= remaining) {
        auto v = p.find_first();
        p.reset(v);
        current.set(v);
        cliques_of_size(g, p & g.neighbors(v), current, remaining - 1, out);
        current.reset(v);
    }
}

} // namespace detail

// Every vertex's link holds two vertex-disjoint (N-1)-cliques.
inline bool has_thick_stars(const Graph& g, int n) {
    if (n < 1) throw InvalidInput("thick stars need N >= 1");
    const auto k = static_cast<std::size_t>(n - 1);
    for (std::size_t v = 0; v < g.size(); ++v) {
        if (k == 0) continue;
        std::vector<VertexSet> cliques;
        detail::cliques_of_size(g, g.neighbors(v), VertexSet(g.size()), k, cliques);
        bool found = false;
        for (std::size_t i = 0; i < cliques.size() && !found; ++i)
            for (std::size_t j = i + 1; j < cliques.size() && !found; ++j)
                found = !cliques[i].intersects(cliques[j]);
        if (!found) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// I/O

inline nlohmann::json to_json(const Graph& g) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [a, b] : g.label_edges()) edges.push_back({a, b});
    return {{"vertices", g.labels()}, {"edges", edges}};
}

inline Graph graph_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
        throw InvalidInput("graph JSON needs \"vertices\" and \"edges\"");
    std::vector<std::string> vertices;
    for (const auto& v : j.at("vertices")) {
        if (!v.is_string()) throw InvalidInput("graph JSON: vertex labels must be strings");
        vertices.push_back(v.get<std::string>());
    }
    std::vector<LabelPair> edges;
    std::size_t pos = 0;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
            throw InvalidInput("graph JSON: edge " + std::to_string(pos) + " is not a pair of labels");
        edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
        ++pos;
    }
    return Graph::build(std::move(vertices), edges);
}

inline std::string to_dot(const Graph& g, const std::string& name = "G") {
    std::ostringstream out;
    out << "graph " << name << " {\n";
    for (const auto& l : g.labels()) out << "  \"" << l << "\";\n";
    for (const auto& [a, b] : g.label_edges()) out << "  \"" << a << "\" -- \"" << b << "\";\n";
    out << "}\n";
    return out.str();
}

} // namespace curvelab

#endif // CURVELAB_GRAPH_HPP
