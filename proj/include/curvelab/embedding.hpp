#ifndef CURVELAB_EMBEDDING_HPP
#define CURVELAB_EMBEDDING_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <future>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "curvelab/graph.hpp"

namespace curvelab {

// Injective map pattern vertex index -> host vertex index.
struct Embedding {
    std::vector<std::size_t> image;

    friend bool operator==(const Embedding&, const Embedding&) = default;
    friend auto operator<=>(const Embedding&, const Embedding&) = default;
};

// Independent post-hoc check of the induced condition; shares no code with
// the search below.
inline bool is_induced_embedding(const Graph& pattern, const Graph& host, const Embedding& e) {
    if (e.image.size() != pattern.size()) return false;
    for (std::size_t i = 0; i < e.image.size(); ++i) {
        if (e.image[i] >= host.size()) return false;
        for (std::size_t j = 0; j < i; ++j) {
            if (e.image[i] == e.image[j]) return false;
            if (pattern.adjacent(i, j) != host.adjacent(e.image[i], e.image[j])) return false;
        }
    }
    return true;
}

struct EmbeddingOptions {
    std::size_t limit = 0;        // 0 = all
    unsigned threads = 1;         // root assignments are split across threads
    std::optional<unsigned> shuffle_seed;  // randomized root order; off by default
};

namespace detail {

// Backtracking with forward checking. A pattern vertex with a placed
// neighbour keeps an explicit candidate list, cut down at every placement; a
// branch dies as soon as one list empties. The next vertex placed is the one
// with fewest candidates (ties: declared order). Vertices with no placed
// neighbour stay implicit until chosen.
class InducedSearch {
public:
    InducedSearch(const Graph& pattern, const Graph& host) : p_(pattern), h_(host) {
        root_ = first_vertex();
        init_.assign(p_.size(), VertexSet(h_.size()));
        for (std::size_t u = 0; u < p_.size(); ++u) init_[u] = initial_domain(u);
        adj_.resize(h_.size());
        for (std::size_t v = 0; v < h_.size(); ++v) {
            const auto& nb = h_.neighbors(v);
            for (auto w = nb.find_first(); w != VertexSet::npos; w = nb.find_next(w))
                adj_[v].push_back(static_cast<std::uint32_t>(w));
        }
    }

    std::vector<std::size_t> roots() const {
        std::vector<std::size_t> out;
        if (p_.empty()) return out;
        const auto& d = init_[root_];
        for (auto v = d.find_first(); v != VertexSet::npos; v = d.find_next(v)) out.push_back(v);
        return out;
    }

    // All embeddings sending the first pattern vertex to root, in the order
    // the search meets them, at most limit (0 = all).
    std::vector<Embedding> run_from(std::size_t root, std::size_t limit) const {
        std::vector<Embedding> out;
        State st;
        st.dom.resize(p_.size());
        st.constrained.assign(p_.size(), false);
        st.placed.assign(p_.size(), false);
        st.assigned.assign(p_.size(), 0);
        if (place(root_, root, st)) extend(1, st, limit, out);
        return out;
    }

private:
    struct State {
        std::vector<std::vector<std::uint32_t>> dom;
        std::vector<bool> constrained;
        std::vector<bool> placed;
        std::vector<std::size_t> assigned;
    };

    // Highest degree, then declared order.
    std::size_t first_vertex() const {
        std::size_t best = 0;
        for (std::size_t u = 1; u < p_.size(); ++u)
            if (p_.degree(u) > p_.degree(best)) best = u;
        return best;
    }

    // Degree and co-degree bounds plus domination of the sorted neighbour
    // degree sequence.
    VertexSet initial_domain(std::size_t u) const {
        VertexSet d(h_.size());
        const std::size_t pd = p_.degree(u);
        const std::size_t pco = p_.size() - 1 - pd;
        std::vector<std::size_t> pnd;
        const auto& pn = p_.neighbors(u);
        for (auto w = pn.find_first(); w != VertexSet::npos; w = pn.find_next(w)) pnd.push_back(p_.degree(w));
        std::sort(pnd.rbegin(), pnd.rend());
        std::vector<std::size_t> hdeg(h_.size());
        for (std::size_t v = 0; v < h_.size(); ++v) hdeg[v] = h_.degree(v);
        for (std::size_t v = 0; v < h_.size(); ++v) {
            const std::size_t hd = hdeg[v];
            if (hd < pd || h_.size() - 1 - hd < pco) continue;
            std::vector<std::size_t> hnd;
            const auto& hn = h_.neighbors(v);
            for (auto w = hn.find_first(); w != VertexSet::npos; w = hn.find_next(w)) hnd.push_back(hdeg[w]);
            std::sort(hnd.rbegin(), hnd.rend());
            bool ok = true;
            for (std::size_t k = 0; k < pnd.size() && ok; ++k) ok = hnd[k] >= pnd[k];
            if (ok) d.set(v);
        }
        return d;
    }

    // x is a possible image of w given every placement in st.
    bool consistent(std::size_t w, std::size_t x, const State& st) const {
        if (!init_[w].test(x)) return false;
        for (std::size_t z = 0; z < p_.size(); ++z) {
            if (!st.placed[z]) continue;
            const std::size_t y = st.assigned[z];
            if (y == x || h_.adjacent(y, x) != p_.adjacent(z, w)) return false;
        }
        return true;
    }

    bool place(std::size_t u, std::size_t v, State& st) const {
        st.placed[u] = true;
        st.assigned[u] = v;
        for (std::size_t w = 0; w < p_.size(); ++w) {
            if (st.placed[w]) continue;
            auto& d = st.dom[w];
            if (st.constrained[w]) {
                const bool want = p_.adjacent(u, w);
                std::size_t k = 0;
                for (std::uint32_t x : d)
                    if (x != v && h_.adjacent(v, x) == want) d[k++] = x;
                d.resize(k);
                if (d.empty()) return false;
            } else if (p_.adjacent(u, w)) {
                st.constrained[w] = true;
                for (std::uint32_t x : adj_[v])
                    if (consistent(w, x, st)) d.push_back(x);
                if (d.empty()) return false;
            }
        }
        return true;
    }

    void extend(std::size_t depth, const State& st, std::size_t limit, std::vector<Embedding>& out) const {
        if (limit && out.size() >= limit) return;
        if (depth == p_.size()) {
            out.push_back(Embedding{st.assigned});
            return;
        }
        std::size_t u = p_.size();
        for (std::size_t w = 0; w < p_.size(); ++w) {
            if (st.placed[w] || !st.constrained[w]) continue;
            if (u == p_.size() || st.dom[w].size() < st.dom[u].size()) u = w;
        }
        std::vector<std::uint32_t> cand;
        if (u == p_.size()) {
            for (std::size_t w = 0; w < p_.size(); ++w)
                if (!st.placed[w] && (u == p_.size() || p_.degree(w) > p_.degree(u))) u = w;
            const auto& d = init_[u];
            for (auto x = d.find_first(); x != VertexSet::npos; x = d.find_next(x))
                if (consistent(u, x, st)) cand.push_back(static_cast<std::uint32_t>(x));
        } else {
            cand = st.dom[u];
        }
        for (std::uint32_t v : cand) {
            State next = st;
            if (place(u, v, next)) {
                extend(depth + 1, next, limit, out);
                if (limit && out.size() >= limit) return;
            }
        }
    }

    const Graph& p_;
    const Graph& h_;
    std::size_t root_ = 0;
    std::vector<VertexSet> init_;
    std::vector<std::vector<std::uint32_t>> adj_;
};

} // namespace detail

// Induced embeddings of pattern into host. With one thread and no shuffle
// the output order is the lexicographic order of the search; with several
// threads per-root results are merged back into root order, so the output is
// identical.
inline std::vector<Embedding> induced_embeddings(const Graph& pattern, const Graph& host,
                                                 const EmbeddingOptions& opts = {}) {
    if (pattern.size() > host.size()) return {};
    detail::InducedSearch search(pattern, host);
    if (pattern.empty()) return {Embedding{}};
    auto roots = search.roots();
    if (opts.shuffle_seed) {
        std::mt19937 rng(*opts.shuffle_seed);
        std::shuffle(roots.begin(), roots.end(), rng);
    }
    std::vector<Embedding> out;
    if (opts.threads <= 1 || roots.size() < 2) {
        for (auto r : roots) {
            auto part = search.run_from(r, opts.limit == 0 ? 0 : opts.limit - out.size());
            out.insert(out.end(), part.begin(), part.end());
            if (opts.limit && out.size() >= opts.limit) break;
        }
        return out;
    }
    std::vector<std::vector<Embedding>> parts(roots.size());
    std::vector<std::future<void>> workers;
    const unsigned nthreads = std::min<unsigned>(opts.threads, static_cast<unsigned>(roots.size()));
    for (unsigned t = 0; t < nthreads; ++t) {
        workers.push_back(std::async(std::launch::async, [&, t] {
            for (std::size_t k = t; k < roots.size(); k += nthreads) parts[k] = search.run_from(roots[k], opts.limit);
        }));
    }
    for (auto& w : workers) w.get();
    for (auto& part : parts) {
        for (auto& e : part) {
            if (opts.limit && out.size() >= opts.limit) return out;
            out.push_back(std::move(e));
        }
    }
    return out;
}

inline std::vector<Embedding> induced_embeddings(const Graph& pattern, const Graph& host, std::size_t limit) {
    EmbeddingOptions opts;
    opts.limit = limit;
    return induced_embeddings(pattern, host, opts);
}

inline bool is_isomorphic(const Graph& a, const Graph& b) {
    if (a.size() != b.size() || a.edge_count() != b.edge_count()) return false;
    return !induced_embeddings(a, b, 1).empty();
}

} // namespace curvelab

#endif // CURVELAB_EMBEDDING_HPP
