#ifndef CURVELAB_DECOMPOSITION_HPP
#define CURVELAB_DECOMPOSITION_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "curvelab/error.hpp"

namespace curvelab {

// Surface piece S_{g,k}; its k ends are either punctures or gluing circles.
struct Piece {
    int genus = 0;
    int ends = 0;

    int complexity() const { return std::max(3 * genus - 3 + ends, 0); }
    int euler() const { return 2 - 2 * genus - ends; }
    std::string name() const { return "S_{" + std::to_string(genus) + "," + std::to_string(ends) + "}"; }

    friend auto operator<=>(const Piece&, const Piece&) = default;
};

inline std::vector<Piece> outer_catalog() { return {{1, 1}, {0, 4}, {1, 2}, {0, 5}}; }
inline Piece annulus() { return {0, 2}; }
inline Piece pants() { return {0, 3}; }

// A component of S0 and how its ends are used.
struct Connector {
    Piece piece;
    int to_first = 0;   // gluing circles on S1
    int to_second = 0;  // gluing circles on S2
    int punctures() const { return piece.ends - to_first - to_second; }
    int glued() const { return to_first + to_second; }
    // free isotopy classes of its glued boundary: an annulus glued on both
    // ends contributes one
    int alpha() const { return piece == annulus() && glued() == 2 ? 1 : glued(); }

    friend auto operator<=>(const Connector&, const Connector&) = default;
};

struct Decomposition {
    Piece first;
    Piece second;
    std::vector<Connector> connectors;  // S0 components, sorted

    int alpha() const {
        int a = 0;
        for (const auto& c : connectors) a += c.alpha();
        return a;
    }
    int glued_on_first() const {
        int n = 0;
        for (const auto& c : connectors) n += c.to_first;
        return n;
    }
    int glued_on_second() const {
        int n = 0;
        for (const auto& c : connectors) n += c.to_second;
        return n;
    }
    int xi0() const {
        int x = 0;
        for (const auto& c : connectors) x += c.piece.complexity();
        return x;
    }
    int total_xi() const { return first.complexity() + second.complexity() + xi0() + alpha(); }
    int punctures() const {
        int p = first.ends - glued_on_first() + second.ends - glued_on_second();
        for (const auto& c : connectors) p += c.punctures();
        return p;
    }
    int euler() const {
        int e = first.euler() + second.euler();
        for (const auto& c : connectors) e += c.piece.euler();
        return e;
    }
    // Genus of the glued surface, from Euler characteristic and punctures.
    std::optional<int> ambient_genus() const {
        const int twice = 2 - punctures() - euler();
        if (twice < 0 || twice % 2) return std::nullopt;
        return twice / 2;
    }

    friend auto operator<=>(const Decomposition&, const Decomposition&) = default;
};

inline Decomposition swapped(const Decomposition& d) {
    Decomposition s{d.second, d.first, d.connectors};
    for (auto& c : s.connectors) std::swap(c.to_first, c.to_second);
    std::sort(s.connectors.begin(), s.connectors.end());
    return s;
}

inline Decomposition canonical(Decomposition d) {
    std::sort(d.connectors.begin(), d.connectors.end());
    return std::min(d, swapped(d));
}

// Structural invariants; empty string when all hold.
inline std::string decomposition_problem(const Decomposition& d) {
    if (d.alpha() < 1) return "alpha must be positive";
    if (d.glued_on_first() > d.first.ends) return "S1 has too few ends";
    if (d.glued_on_second() > d.second.ends) return "S2 has too few ends";
    int circles = 0;
    bool bridge = false;
    for (const auto& c : d.connectors) {
        if (c.glued() < 1) return "component of S0 not glued";
        if (c.punctures() < 0) return "component of S0 has too few ends";
        if (c.piece == annulus() && c.glued() < 2) return "component of S0 is a punctured disk";
        circles += c.glued();
        if (c.to_first > 0 && c.to_second > 0) bridge = true;
    }
    if (circles < 2) return "S0 has fewer than two boundary circles";
    if (!bridge) return "incidence graph is disconnected";
    return {};
}

namespace detail {

inline std::vector<Connector> connector_shapes() {
    std::vector<Connector> out;
    for (const Piece p : {annulus(), pants()})
        for (int a = 0; a <= p.ends; ++a)
            for (int b = 0; a + b <= p.ends; ++b) {
                Connector c{p, a, b};
                if (c.glued() >= 1) out.push_back(c);
            }
    std::sort(out.begin(), out.end());
    return out;
}

inline void choose_connectors(const std::vector<Connector>& shapes, std::size_t from, int budget,
                              std::vector<Connector>& cur, std::vector<std::vector<Connector>>& out) {
    if (budget == 0) {
        if (!cur.empty()) out.push_back(cur);
        return;
    }
    for (std::size_t i = from; i < shapes.size(); ++i) {
        const int cost = shapes[i].alpha() + shapes[i].piece.complexity();
        if (cost > budget) continue;
        cur.push_back(shapes[i]);
        choose_connectors(shapes, i, budget - cost, cur, out);
        cur.pop_back();
    }
}

} // namespace detail

// All decompositions with xi(S1) + xi(S2) + xi(S0) + alpha = total_xi over
// the piece catalog, one per class under swapping S1 and S2, sorted.
inline std::vector<Decomposition> enumerate_decompositions(int total_xi) {
    std::vector<Decomposition> out;
    const auto shapes = detail::connector_shapes();
    for (const Piece& p1 : outer_catalog())
        for (const Piece& p2 : outer_catalog()) {
            const int budget = total_xi - p1.complexity() - p2.complexity();
            if (budget < 1) continue;
            std::vector<std::vector<Connector>> choices;
            std::vector<Connector> cur;
            detail::choose_connectors(shapes, 0, budget, cur, choices);
            for (auto& cs : choices) {
                Decomposition d{p1, p2, cs};
                if (!decomposition_problem(d).empty()) continue;
                if (d.total_xi() != total_xi) continue;
                if (!d.ambient_genus()) continue;
                out.push_back(canonical(d));
            }
        }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline std::string describe(const Decomposition& d) {
    std::ostringstream s;
    s << "S1=" << d.first.name() << " S2=" << d.second.name() << " S0=";
    for (std::size_t i = 0; i < d.connectors.size(); ++i) {
        const auto& c = d.connectors[i];
        if (i) s << " + ";
        s << c.piece.name() << "[" << c.to_first << "," << c.to_second << "]";
    }
    s << " alpha=" << d.alpha();
    if (auto g = d.ambient_genus()) s << " ambient=S_{" << *g << "," << d.punctures() << "}";
    return s.str();
}

// Case labels "i" .. "v"; nullopt when no case pattern applies.
inline std::optional<std::string> classify(const Decomposition& d) {
    const Piece s11{1, 1}, s04{0, 4}, s12{1, 2}, s05{0, 5};
    auto in = [](const Piece& p, std::initializer_list<Piece> set) {
        return std::find(set.begin(), set.end(), p) != set.end();
    };
    for (const Decomposition& e : {d, swapped(d)}) {
        const auto& cs = e.connectors;
        auto bridge_annulus = [](const Connector& c) { return c.piece == annulus() && c.to_first == 1 && c.to_second == 1; };
        if (cs.size() == 1 && bridge_annulus(cs[0]) && in(e.first, {s12, s05}) && in(e.second, {s11, s04}))
            return "i";
        if (cs.size() == 1 && cs[0].piece == pants() && cs[0].to_first == 1 && cs[0].to_second == 1 &&
            in(e.first, {s04, s11}) && in(e.second, {s04, s11}))
            return "ii";
        if (cs.size() == 2 && bridge_annulus(cs[0]) && bridge_annulus(cs[1]) && e.first == s04 && e.second == s04)
            return "iii";
        if (cs.size() == 2 && e.first == s04 && in(e.second, {s04, s11})) {
            for (int k = 0; k < 2; ++k) {
                const auto& a = cs[k];
                const auto& b = cs[1 - k];
                if (!bridge_annulus(a)) continue;
                if (b.piece == annulus() && b.to_first == 2 && b.to_second == 0) return "iv";
                if (b.piece == pants() && b.to_first == 1 && b.to_second == 0) return "v";
            }
        }
    }
    return std::nullopt;
}

struct CaseReport {
    std::map<std::string, std::vector<Decomposition>> cases;
    std::vector<Decomposition> unclassified;
    std::vector<std::string> missing;

    bool exact() const { return unclassified.empty() && missing.empty(); }
};

inline const std::vector<std::string>& case_labels() {
    static const std::vector<std::string> labels{"i", "ii", "iii", "iv", "v"};
    return labels;
}

inline CaseReport match_cases(const std::vector<Decomposition>& ds) {
    CaseReport r;
    for (const auto& d : ds) {
        if (auto c = classify(d))
            r.cases[*c].push_back(d);
        else
            r.unclassified.push_back(d);
    }
    for (const auto& l : case_labels())
        if (!r.cases.count(l)) r.missing.push_back(l);
    return r;
}

inline nlohmann::json to_json(const Decomposition& d) {
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& c : d.connectors)
        cs.push_back({{"piece", c.piece.name()}, {"to_S1", c.to_first}, {"to_S2", c.to_second}, {"punctures", c.punctures()}});
    nlohmann::json j{{"S1", d.first.name()}, {"S2", d.second.name()}, {"S0", cs}, {"alpha", d.alpha()},
                     {"xi", d.total_xi()}, {"euler", d.euler()}, {"punctures", d.punctures()}};
    if (auto g = d.ambient_genus()) j["ambient"] = "S_{" + std::to_string(*g) + "," + std::to_string(d.punctures()) + "}";
    return j;
}

inline nlohmann::json to_json(const CaseReport& r) {
    nlohmann::json cases = nlohmann::json::object();
    for (const auto& [label, ds] : r.cases) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& d : ds) arr.push_back(to_json(d));
        cases[label] = arr;
    }
    nlohmann::json un = nlohmann::json::array();
    for (const auto& d : r.unclassified) un.push_back(to_json(d));
    return {{"cases", cases}, {"unclassified", un}, {"missing", r.missing}, {"exact", r.exact()}};
}

inline std::string table(const CaseReport& r) {
    std::ostringstream s;
    for (const auto& l : case_labels()) {
        auto it = r.cases.find(l);
        if (it == r.cases.end()) {
            s << "(" << l << ")  missing\n";
            continue;
        }
        for (const auto& d : it->second) s << "(" << l << ")  " << describe(d) << "\n";
    }
    for (const auto& d : r.unclassified) s << "(?)  " << describe(d) << "\n";
    return s.str();
}

} // namespace curvelab

#endif // CURVELAB_DECOMPOSITION_HPP
