#ifndef CURVELAB_CURVE_SAMPLE_HPP
#define CURVELAB_CURVE_SAMPLE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <future>
#include <istream>
#include <ostream>
#include <limits>
#include <string>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "curvelab/automorphism.hpp"
#include "curvelab/error.hpp"
#include "curvelab/graph.hpp"
#include "curvelab/intersection.hpp"
#include "curvelab/surface.hpp"

namespace curvelab {

using IntersectionValue = std::uint16_t;

// Packed strict lower triangle of a symmetric matrix with zero diagonal.
class TriangularMatrix {
public:
    TriangularMatrix() = default;
    explicit TriangularMatrix(std::size_t n) : n_(n), data_(n * (n - (n ? 1 : 0)) / 2, 0) {}

    std::size_t size() const { return n_; }
    int at(std::size_t i, std::size_t j) const {
        if (i == j) return 0;
        return data_[index(i, j)];
    }
    void set(std::size_t i, std::size_t j, int v) {
        if (i == j) throw InvalidInput("intersection matrix diagonal must be zero");
        if (v < 0) throw InvalidInput("negative intersection number");
        if (v > std::numeric_limits<IntersectionValue>::max()) throw ResourceCapExceeded("intersection number too large to store");
        data_[index(i, j)] = static_cast<IntersectionValue>(v);
    }
    const std::vector<IntersectionValue>& packed() const { return data_; }

    // Rows of the strict lower triangle laid end to end.
    static TriangularMatrix from_packed(std::size_t n, std::vector<IntersectionValue> data) {
        TriangularMatrix m;
        if (data.size() != n * (n - (n ? 1 : 0)) / 2) throw InvalidInput("packed matrix has wrong length");
        m.n_ = n;
        m.data_ = std::move(data);
        return m;
    }

private:
    std::size_t index(std::size_t i, std::size_t j) const {
        if (i < j) std::swap(i, j);
        return i * (i - 1) / 2 + j;
    }

    std::size_t n_ = 0;
    std::vector<IntersectionValue> data_;
};

// Finite set of essential, non-peripheral simple closed curves together with
// their pairwise geometric intersection numbers. Symmetry and the zero
// diagonal hold by storage.
class CurveGraphSample {
public:
    CurveGraphSample(SurfaceModel model, std::vector<CurveClass> classes, TriangularMatrix matrix)
        : model_(std::move(model)), classes_(std::move(classes)), matrix_(std::move(matrix)) {
        if (matrix_.size() != classes_.size()) throw InvalidInput("intersection matrix has wrong size");
        std::unordered_set<CurveClass, CurveClassHash> distinct(classes_.begin(), classes_.end());
        if (distinct.size() != classes_.size()) throw InvalidInput("repeated curve class in sample");
    }

    const SurfaceModel& model() const { return model_; }
    const std::vector<CurveClass>& classes() const { return classes_; }
    std::size_t size() const { return classes_.size(); }
    int at(std::size_t i, std::size_t j) const { return matrix_.at(i, j); }
    const TriangularMatrix& matrix() const { return matrix_; }

private:
    SurfaceModel model_;
    std::vector<CurveClass> classes_;
    TriangularMatrix matrix_;
};

// Pairwise geometric intersection numbers, rows split over threads. Entries
// depend only on the pair, so the result is schedule independent.
inline TriangularMatrix intersection_matrix(const SurfaceModel& m, const std::vector<CurveClass>& cs,
                                            unsigned threads = 1) {
    const std::size_t n = cs.size();
    TriangularMatrix mat(n);
    std::vector<detail::PreparedLine> lines;
    lines.reserve(n);
    for (const auto& c : cs) lines.emplace_back(m, c.word());
    auto rows = [&](unsigned t, unsigned stride) {
        for (std::size_t i = t; i < n; i += stride)
            for (std::size_t j = 0; j < i; ++j)
                mat.set(i, j, static_cast<int>(detail::linked_pairs(m, lines[i], lines[j])));
    };
    if (threads <= 1) {
        rows(0, 1);
    } else {
        std::vector<std::future<void>> workers;
        for (unsigned t = 0; t < threads; ++t) workers.push_back(std::async(std::launch::async, rows, t, threads));
        for (auto& w : workers) w.get();
    }
    return mat;
}

struct EnumerationOptions {
    int depth = 8;
    std::size_t maxlen = 12;
    std::size_t class_cap = 50'000;
    unsigned threads = 1;
};

struct EnumerationResult {
    CurveGraphSample sample;
    std::size_t discarded_long = 0;     // images longer than maxlen
    std::vector<std::string> faults;    // peripheral or non-simple images
};

// Closure of the seeds under the generators and their inverses up to the
// given composition depth. Classes whose canonical word is longer than
// maxlen are dropped and not expanded further.
inline EnumerationResult enumerate_curves_detail(const SurfaceModel& m, const std::vector<CurveClass>& seeds,
                                                 const std::vector<FreeAutomorphism>& gens,
                                                 const EnumerationOptions& opts = {}) {
    for (const auto& g : gens)
        if (!validate_automorphism(m, g)) throw InvalidInput("generator '" + g.name + "' failed validation on " + m.name());
    for (const auto& s : seeds) {
        if (is_peripheral(m, s)) throw InvalidInput("seed " + m.format(s.word()) + " is peripheral");
        if (!is_simple(m, s)) throw InvalidInput("seed " + m.format(s.word()) + " is not simple");
    }
    std::vector<FreeAutomorphism> moves;
    for (const auto& g : gens) {
        moves.push_back(g);
        moves.push_back(g.inverted());
    }

    std::unordered_set<CurveClass, CurveClassHash> seen;
    std::vector<CurveClass> frontier;
    std::vector<std::string> faults;
    std::size_t discarded = 0;
    for (const auto& s : seeds)
        if (s.length() <= opts.maxlen && seen.insert(s).second) frontier.push_back(s);
        else if (s.length() > opts.maxlen) ++discarded;

    for (int d = 0; d < opts.depth && !frontier.empty(); ++d) {
        std::vector<CurveClass> next;
        for (const auto& c : frontier) {
            for (const auto& g : moves) {
                const CurveClass img = CurveClass::from_word(g.apply(c.word()));
                if (img.length() > opts.maxlen) {
                    ++discarded;
                    continue;
                }
                if (!seen.insert(img).second) continue;
                if (is_peripheral(m, img)) {
                    faults.push_back("peripheral image " + m.format(img.word()));
                    continue;
                }
                if (!is_simple(m, img)) {
                    faults.push_back("non-simple image " + m.format(img.word()));
                    continue;
                }
                next.push_back(img);
                if (seen.size() > opts.class_cap)
                    throw ResourceCapExceeded("curve enumeration exceeded " + std::to_string(opts.class_cap) + " classes");
            }
        }
        frontier = std::move(next);
    }

    std::vector<CurveClass> classes;
    for (const auto& c : seen)
        if (!is_peripheral(m, c) && is_simple(m, c)) classes.push_back(c);
    std::sort(classes.begin(), classes.end());
    auto mat = intersection_matrix(m, classes, opts.threads);
    return {CurveGraphSample(m, std::move(classes), std::move(mat)), discarded, std::move(faults)};
}

inline CurveGraphSample enumerate_curves(const SurfaceModel& m, const std::vector<CurveClass>& seeds,
                                         const std::vector<FreeAutomorphism>& gens, int depth, std::size_t maxlen) {
    EnumerationOptions opts;
    opts.depth = depth;
    opts.maxlen = maxlen;
    return enumerate_curves_detail(m, seeds, gens, opts).sample;
}

// Curves around consecutive runs x_i ... x_j of the planar punctures, for
// every run whose two sides each hold at least two punctures.
inline std::vector<CurveClass> round_curves(const SurfaceModel& m) {
    if (m.genus() != 0) throw InvalidInput("round curves are defined for genus 0 models");
    std::vector<CurveClass> out;
    const auto r = m.rank();
    for (std::size_t len = 2; len <= r && len + 2 <= r + 1; ++len)
        for (std::size_t i = 0; i + len <= r; ++i) {
            Word w;
            for (std::size_t k = i; k < i + len; ++k) w.push_back(Letter(k, false));
            out.push_back(CurveClass::from_word(w));
        }
    return out;
}

// Every essential simple class whose canonical word has at most maxlen
// letters, sorted shortlex.
inline std::vector<CurveClass> simple_classes_up_to(const SurfaceModel& m, std::size_t maxlen) {
    const std::size_t letters = 2 * m.rank();
    std::unordered_set<CurveClass, CurveClassHash> seen;
    std::vector<CurveClass> out;
    Word w;
    auto visit = [&](auto&& self) -> void {
        if (!w.empty() && w.front() != w.back().inverse()) {
            Word r = w;
            if (primitive_period(r) == r.size()) {
                CurveClass c = CurveClass::from_word(r);
                if (c.word() == least_rotation(r) && seen.insert(c).second && !is_peripheral(m, c) && is_simple(m, c))
                    out.push_back(c);
            }
        }
        if (w.size() == maxlen) return;
        for (std::size_t code = 0; code < letters; ++code) {
            const Letter l = Letter::from_code(static_cast<std::uint32_t>(code));
            if (!w.empty() && l == w.back().inverse()) continue;
            w.push_back(l);
            self(self);
            w.pop_back();
        }
    };
    visit(visit);
    std::sort(out.begin(), out.end());
    return out;
}

// Vertices are class indices; edges join disjoint classes.
inline Graph curve_graph(const CurveGraphSample& s) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < s.size(); ++i) labels.push_back(std::to_string(i));
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (s.at(i, j) == 0) edges.emplace_back(i, j);
    return Graph::from_indices(std::move(labels), edges);
}

// Sample files are JSON objects {"model", "classes", "intersections", ...}
// with the strict lower triangle stored row by row. They are written and read
// as streams because a full sample does not fit in memory as a DOM.
inline void write_sample(std::ostream& os, const CurveGraphSample& s,
                         const nlohmann::json& extra = nlohmann::json::object()) {
    nlohmann::json words = nlohmann::json::array();
    for (const auto& c : s.classes()) words.push_back(s.model().format(c.word()));
    os << "{\"model\":" << nlohmann::json{{"genus", s.model().genus()}, {"punctures", s.model().punctures()}}.dump()
       << ",\n\"classes\":" << words.dump();
    for (const auto& [k, v] : extra.items()) os << ",\n" << nlohmann::json(k).dump() << ":" << v.dump();
    os << ",\n\"intersections\":[";
    const auto& packed = s.matrix().packed();
    std::size_t at = 0;
    std::string line;
    for (std::size_t i = 0; i < s.size(); ++i) {
        line.clear();
        line += i ? ",\n[" : "\n[";
        for (std::size_t j = 0; j < i; ++j) {
            if (j) line += ',';
            line += std::to_string(packed[at++]);
        }
        line += ']';
        os << line;
    }
    os << "]}\n";
    if (!os) throw Error("failed to write sample");
}

struct SampleFile {
    CurveGraphSample sample;
    nlohmann::json extra;  // top-level fields other than the sample itself
};

inline SampleFile read_sample_file(std::istream& is) {
    using json = nlohmann::json;
    std::vector<IntersectionValue> packed;
    std::size_t rows = 0, row_length = 0, depth = 0;
    bool in_matrix = false;
    std::string key;
    auto fail = [](const std::string& what) { throw InvalidInput("sample file: " + what); };
    json::parser_callback_t cb = [&](int, json::parse_event_t event, json& parsed) -> bool {
        switch (event) {
        case json::parse_event_t::key:
            if (depth == 1) key = parsed.get<std::string>();
            return true;
        case json::parse_event_t::object_start:
        case json::parse_event_t::array_start:
            ++depth;
            if (depth == 2 && key == "intersections") {
                if (event != json::parse_event_t::array_start) fail("intersections must be an array");
                in_matrix = true;
            } else if (in_matrix && depth == 3) {
                if (event != json::parse_event_t::array_start) fail("intersection rows must be arrays");
                row_length = 0;
            } else if (in_matrix) {
                fail("unexpected nesting in intersections");
            }
            return true;
        case json::parse_event_t::object_end:
        case json::parse_event_t::array_end:
            --depth;
            if (in_matrix && depth == 2) {
                if (row_length != rows) fail("row " + std::to_string(rows) + " has wrong length");
                ++rows;
                return false;
            }
            if (in_matrix && depth == 1) {
                in_matrix = false;
                return false;
            }
            return true;
        case json::parse_event_t::value:
            if (in_matrix) {
                if (depth != 3 || !parsed.is_number_integer()) fail("intersection entries must be integers in rows");
                const auto v = parsed.get<long long>();
                if (v < 0 || v > std::numeric_limits<IntersectionValue>::max()) fail("intersection entry out of range");
                packed.push_back(static_cast<IntersectionValue>(v));
                ++row_length;
                return false;
            }
            return true;
        }
        return true;
    };
    json j;
    try {
        j = json::parse(is, cb);
    } catch (const json::exception& e) {
        fail(e.what());
    }
    if (!j.is_object() || !j.contains("model") || !j.contains("classes")) fail("needs \"model\" and \"classes\"");
    const SurfaceModel m = surface_model(j.at("model").at("genus").get<int>(), j.at("model").at("punctures").get<int>());
    std::vector<CurveClass> classes;
    for (const auto& w : j.at("classes")) classes.push_back(canonical_class(m, m.parse(w.get<std::string>())));
    if (rows != classes.size()) fail("intersection rows do not match class count");
    j.erase("model");
    j.erase("classes");
    j.erase("intersections");
    return {CurveGraphSample(m, std::move(classes), TriangularMatrix::from_packed(rows, std::move(packed))), j};
}

inline CurveGraphSample read_sample(std::istream& is) { return read_sample_file(is).sample; }

} // namespace curvelab

#endif // CURVELAB_CURVE_SAMPLE_HPP
