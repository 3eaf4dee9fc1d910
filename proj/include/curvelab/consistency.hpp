#ifndef CURVELAB_CONSISTENCY_HPP
#define CURVELAB_CONSISTENCY_HPP

#include <map>
#include <string>
#include <vector>

#include "curvelab/graph.hpp"

namespace curvelab {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ConsistencyReport {
    std::vector<CheckResult> checks;

    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return !checks.empty();
    }
    std::size_t passed_count() const {
        std::size_t n = 0;
        for (const auto& c : checks) n += c.passed ? 1 : 0;
        return n;
    }
};

namespace detail {

inline std::string missing_labels(const Graph& g, const std::vector<std::string>& need) {
    std::string out;
    for (const auto& l : need)
        if (!g.has_vertex(l)) out += (out.empty() ? "" : ",") + l;
    return out;
}

} // namespace detail

// Cross-checks of the Gamma_0 / Gamma_1 edge lists against the relations they
// must satisfy. Wrong vertex sets produce failed entries, never exceptions.
inline ConsistencyReport consistency_suite(const Graph& g0, const Graph& g1) {
    ConsistencyReport rep;
    auto guard = [&](const std::string& name, const Graph& g, const std::vector<std::string>& need) {
        auto miss = detail::missing_labels(g, need);
        if (miss.empty()) return true;
        rep.checks.push_back({name, false, "missing vertices: " + miss});
        return false;
    };

    // 1. Collapsing e,f of Gamma_1 to q with lk(q) = lk(e) n lk(f) gives Gamma_0.
    {
        const std::string name = "collapse e,f -> q yields gamma0";
        if (guard(name, g1, {"e", "f"}) && guard(name, g0, {"q"})) {
            std::vector<std::string> labels;
            for (const auto& l : g1.labels())
                if (l != "e" && l != "f") labels.push_back(l);
            std::vector<LabelPair> edges;
            for (const auto& [a, b] : g1.label_edges())
                if (a != "e" && a != "f" && b != "e" && b != "f") edges.emplace_back(a, b);
            for (const auto& l : labels)
                if (g1.adjacent("e", l) && g1.adjacent("f", l)) edges.emplace_back("q", l);
            labels.push_back("q");
            const Graph collapsed = Graph::build(labels, edges);
            const bool ok = same_labelled(collapsed, g0);
            rep.checks.push_back({name, ok, ok ? "" : "collapsed graph differs from gamma0"});
        }
    }

    // 2. a<->b, c<->d, e<->f, g<->h is an automorphism of Gamma_1.
    {
        const std::string name = "mirror involution is an automorphism of gamma1";
        const std::map<std::string, std::string> swap = {{"a", "b"}, {"b", "a"}, {"c", "d"}, {"d", "c"},
                                                         {"e", "f"}, {"f", "e"}, {"g", "h"}, {"h", "g"}};
        if (guard(name, g1, {"a", "b", "c", "d", "e", "f", "g", "h"})) {
            bool ok = g1.size() == 8;
            std::string detail = ok ? "" : "gamma1 must have exactly 8 vertices";
            for (std::size_t i = 0; ok && i < g1.size(); ++i) {
                for (std::size_t j = i + 1; ok && j < g1.size(); ++j) {
                    const auto& u = g1.label(i);
                    const auto& v = g1.label(j);
                    if (g1.adjacent(u, v) != g1.adjacent(swap.at(u), swap.at(v))) {
                        ok = false;
                        detail = "pair {" + u + "," + v + "} not preserved";
                    }
                }
            }
            rep.checks.push_back({name, ok, detail});
        }
    }

    // 3. Gamma_0[a,b,c,d,q,h] ~ Gamma_1[a,b,c,d,e,h] via q -> e.
    {
        const std::string name = "gamma0[abcdqh] ~ gamma1[abcdeh] via q->e";
        if (guard(name, g0, {"a", "b", "c", "d", "q", "h"}) && guard(name, g1, {"a", "b", "c", "d", "e", "h"})) {
            const std::vector<std::string> s0 = {"a", "b", "c", "d", "q", "h"};
            const std::vector<std::string> s1 = {"a", "b", "c", "d", "e", "h"};
            bool ok = true;
            std::string detail;
            for (std::size_t i = 0; ok && i < s0.size(); ++i) {
                for (std::size_t j = i + 1; ok && j < s0.size(); ++j) {
                    if (g0.adjacent(s0[i], s0[j]) != g1.adjacent(s1[i], s1[j])) {
                        ok = false;
                        detail = "pair {" + s0[i] + "," + s0[j] + "} disagrees";
                    }
                }
            }
            rep.checks.push_back({name, ok, detail});
        }
    }

    // 4. Inside {a,b,c,e}: e and b see the other three, a and c do not touch.
    {
        const std::string name = "gamma1[abce] = <a,c> x <b> x <e>";
        if (guard(name, g1, {"a", "b", "c", "e"})) {
            bool ok = !g1.adjacent("a", "c");
            for (const auto& hub : {"e", "b"})
                for (const auto& other : {"a", "b", "c", "e"})
                    if (std::string(hub) != other) ok = ok && g1.adjacent(hub, other);
            rep.checks.push_back({name, ok, ok ? "" : "shape differs"});
        }
    }

    // 5. lk(g) within {a,b,c,d,e,f,h} is {a,b,c,e}.
    {
        const std::string name = "lk_gamma1(g) = {a,b,c,e}";
        if (guard(name, g1, {"a", "b", "c", "d", "e", "f", "g", "h"})) {
            std::string got;
            for (const auto& l : {"a", "b", "c", "d", "e", "f", "h"})
                if (g1.adjacent("g", l)) got += l;
            const bool ok = got == "abce";
            rep.checks.push_back({name, ok, ok ? "" : "link is {" + got + "}"});
        }
    }
    return rep;
}

} // namespace curvelab

#endif // CURVELAB_CONSISTENCY_HPP
