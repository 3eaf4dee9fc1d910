#ifndef CURVELAB_ETA_HPP
#define CURVELAB_ETA_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "curvelab/embedding.hpp"
#include "curvelab/graph.hpp"

namespace curvelab {

// Registered lower bounds for the minimal surface complexity hosting a graph
// as an induced subgraph of the curve graph. Lookups are up to isomorphism.
class EtaFacts {
public:
    struct Fact {
        std::string id;
        Graph graph;
        int bound;
    };

    // A bound below the clique number carries no information and is rejected.
    void add(std::string id, Graph g, int bound) {
        const auto omega = static_cast<int>(clique_number(g));
        if (bound < omega)
            throw InvalidInput("eta fact '" + id + "': bound " + std::to_string(bound) +
                               " is below the clique number " + std::to_string(omega));
        facts_.push_back({std::move(id), std::move(g), bound});
    }

    std::optional<int> lookup(const Graph& g) const {
        std::optional<int> best;
        for (const auto& f : facts_)
            if (is_isomorphic(f.graph, g)) best = std::max(best.value_or(f.bound), f.bound);
        return best;
    }

    const std::vector<Fact>& facts() const { return facts_; }
    bool empty() const { return facts_.empty(); }

private:
    std::vector<Fact> facts_;
};

struct EtaBound {
    int value = 0;
    std::size_t peeled = 0;     // size m of the complete join factor
    Graph core;                 // graph left after peeling universal vertices
    bool core_anti_connected = false;
    std::optional<int> fact_used;
};

// Peels universal vertices (isolated points of the complement) off g, giving
// g = core * K_m. The join inequality applies to an anti-connected core, so a
// registered fact for the core is used only in that case; otherwise the
// clique number is the bound.
inline EtaBound eta_lower_bound_detail(const Graph& g, const EtaFacts& facts) {
    EtaBound out;
    VertexSet keep(g.size());
    for (std::size_t v = 0; v < g.size(); ++v) {
        if (g.degree(v) + 1 == g.size())
            ++out.peeled;
        else
            keep.set(v);
    }
    out.core = induced_subgraph(g, keep);
    out.core_anti_connected = is_anti_connected(out.core);
    int core_bound = static_cast<int>(clique_number(out.core));
    if (out.core_anti_connected && !out.core.empty()) {
        if (auto f = facts.lookup(out.core)) {
            out.fact_used = f;
            core_bound = std::max(core_bound, *f);
        }
    }
    out.value = core_bound + static_cast<int>(out.peeled);
    return out;
}

inline int eta_lower_bound(const Graph& g, const EtaFacts& facts = {}) {
    return eta_lower_bound_detail(g, facts).value;
}

// The fact established for Gamma_0 at complexity four: eta(Gamma_0) > 4.
inline EtaFacts default_eta_facts() {
    EtaFacts f;
    f.add("gamma0", gamma0(), 5);
    return f;
}

} // namespace curvelab

#endif // CURVELAB_ETA_HPP
