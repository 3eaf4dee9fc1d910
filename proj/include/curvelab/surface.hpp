#ifndef CURVELAB_SURFACE_HPP
#define CURVELAB_SURFACE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "curvelab/error.hpp"
#include "curvelab/free_group.hpp"
#include "curvelab/word.hpp"

namespace curvelab {

// Punctured surface S_{g,n} (n >= 1) modelled by a one-vertex ribbon graph
// whose fundamental group is free of rank 2g + n - 1.
//
// Generators are a1 b1 ... ag bg x1 ... x_{n-1}. The ribbon structure is the
// cyclic order of the 2r edge germs at the vertex, chosen so that the
// boundary cycles of the thickened graph read
//     x_i^-1 (i < n)   and   [a1,b1]...[ag,bg] x1 ... x_{n-1},
// i.e. each x_i loops once around puncture i and the long product loops
// around the last puncture.
//
// Germs are labelled by the letter of the step that leaves through them, so a
// path arriving by letter l enters through germ l^-1.
class SurfaceModel {
public:
    static SurfaceModel make(int genus, int punctures) {
        if (punctures < 1)
            throw InvalidInput("closed surfaces are not modelled: only punctured S_{g,n} with n >= 1 have free "
                               "fundamental group (use the punctured model)");
        if (genus < 0) throw InvalidInput("genus must be >= 0");
        if (3 * genus - 3 + punctures < 1)
            throw InvalidInput("S_{" + std::to_string(genus) + "," + std::to_string(punctures) +
                               "} has complexity < 1");
        SurfaceModel m;
        m.genus_ = genus;
        m.punctures_ = punctures;
        std::vector<std::string> names;
        for (int i = 1; i <= genus; ++i) {
            names.push_back("a" + std::to_string(i));
            names.push_back("b" + std::to_string(i));
        }
        for (int i = 1; i < punctures; ++i) names.push_back("x" + std::to_string(i));
        m.alphabet_ = Alphabet(names);

        const std::size_t xoff = 2 * static_cast<std::size_t>(genus);
        Word boundary;
        for (int i = 0; i < genus; ++i) {
            Letter a(2 * i, false), b(2 * i + 1, false);
            boundary.insert(boundary.end(), {a, b, a.inverse(), b.inverse()});
        }
        for (int i = 0; i + 1 < punctures; ++i) boundary.push_back(Letter(xoff + i, false));

        std::vector<Word> faces;
        for (int i = 0; i + 1 < punctures; ++i) faces.push_back({Letter(xoff + i, true)});
        faces.push_back(boundary);
        m.build_ribbon(faces);

        for (int i = 0; i + 1 < punctures; ++i) m.peripheral_.push_back({Letter(xoff + i, false)});
        m.peripheral_.push_back(inverse(boundary));
        for (const auto& p : m.peripheral_) m.peripheral_classes_.push_back(CurveClass::from_word(p));
        return m;
    }

    int genus() const { return genus_; }
    int punctures() const { return punctures_; }
    std::size_t rank() const { return alphabet_.size(); }
    int complexity() const { return std::max(3 * genus_ - 3 + punctures_, 0); }
    const Alphabet& alphabet() const { return alphabet_; }
    std::string name() const { return "S_{" + std::to_string(genus_) + "," + std::to_string(punctures_) + "}"; }

    // Puncture loops, the last one being the defining product (inverted).
    const std::vector<Word>& peripheral_words() const { return peripheral_; }
    const std::vector<CurveClass>& peripheral_classes() const { return peripheral_classes_; }

    // Germs in cyclic order around the vertex.
    const std::vector<Letter>& germ_order() const { return order_; }
    Letter successor(Letter germ) const { return succ_[germ.code()]; }

    // Boundary cycles traced from the ribbon structure: leave by l, arrive
    // through l^-1, continue with the successor of that germ.
    std::vector<Word> boundary_cycles() const {
        std::vector<Word> out;
        std::vector<bool> used(2 * rank(), false);
        for (std::uint32_t c = 0; c < 2 * rank(); ++c) {
            if (used[c]) continue;
            Word face;
            Letter l = Letter::from_code(c);
            while (!used[l.code()]) {
                used[l.code()] = true;
                face.push_back(l);
                l = successor(l.inverse());
            }
            out.push_back(face);
        }
        return out;
    }

    // True iff germ x lies strictly inside the arc swept from `out` forward
    // to `in`: the side of a path through the vertex entering at `in` and
    // leaving at `out`.
    bool on_left(Letter in, Letter out, Letter x) const {
        const std::ptrdiff_t po = pos_[out.code()];
        std::ptrdiff_t dx = pos_[x.code()] - po, di = pos_[in.code()] - po;
        if (dx < 0) dx += static_cast<std::ptrdiff_t>(order_.size());
        if (di < 0) di += static_cast<std::ptrdiff_t>(order_.size());
        return dx < di;
    }

    // Two lines meeting in a single vertex, one through corner (in1, out1) and
    // the other through (in2, out2), all four germs distinct: do they cross?
    // Corners are packed as in * 2r + out. Tabulated for small ranks.
    std::size_t corner(Letter in, Letter out) const { return in.code() * order_.size() + out.code(); }
    // Row of the crossing table for corner c1, or nullptr when not tabulated.
    const std::uint8_t* crossing_row(std::size_t c1) const {
        return crossing_.empty() ? nullptr : crossing_.data() + c1 * order_.size() * order_.size();
    }
    bool corners_cross(std::size_t c1, std::size_t c2) const {
        if (!crossing_.empty()) return crossing_[c1 * order_.size() * order_.size() + c2] != 0;
        return crossing_value(c1, c2);
    }

    Word parse(std::string_view text) const { return alphabet_.parse(text); }
    std::string format(const Word& w) const { return alphabet_.format(w); }

    CurveClass curve(std::string_view text) const { return CurveClass::from_word(parse(text)); }

    friend bool operator==(const SurfaceModel& a, const SurfaceModel& b) {
        return a.genus_ == b.genus_ && a.punctures_ == b.punctures_;
    }

private:
    bool crossing_value(std::size_t c1, std::size_t c2) const {
        const auto n = static_cast<std::uint32_t>(order_.size());
        const Letter a1 = Letter::from_code(static_cast<std::uint32_t>(c1 / n));
        const Letter b1 = Letter::from_code(static_cast<std::uint32_t>(c1 % n));
        const Letter a2 = Letter::from_code(static_cast<std::uint32_t>(c2 / n));
        const Letter b2 = Letter::from_code(static_cast<std::uint32_t>(c2 % n));
        if (a1 == b1 || a2 == b2 || a1 == a2 || a1 == b2 || b1 == a2 || b1 == b2) return false;
        return on_left(a1, b1, a2) != on_left(a1, b1, b2);
    }

    void build_crossing_table() {
        const std::size_t nc = order_.size() * order_.size();
        crossing_.clear();
        if (nc * nc > (std::size_t{1} << 24)) return;
        crossing_.resize(nc * nc);
        for (std::size_t c1 = 0; c1 < nc; ++c1)
            for (std::size_t c2 = 0; c2 < nc; ++c2) crossing_[c1 * nc + c2] = crossing_value(c1, c2) ? 1 : 0;
    }

    void build_ribbon(const std::vector<Word>& faces) {
        const std::size_t n = 2 * rank();
        std::vector<int> succ(n, -1);
        for (const auto& f : faces) {
            for (std::size_t i = 0; i < f.size(); ++i) {
                const Letter arrive = f[i].inverse();
                const Letter next = f[(i + 1) % f.size()];
                if (succ[arrive.code()] != -1) throw Error("ribbon construction: germ used twice");
                succ[arrive.code()] = static_cast<int>(next.code());
            }
        }
        succ_.resize(n);
        for (std::size_t c = 0; c < n; ++c) {
            if (succ[c] < 0) throw Error("ribbon construction: germ without successor");
            succ_[c] = Letter::from_code(static_cast<std::uint32_t>(succ[c]));
        }
        order_.clear();
        Letter l = Letter::from_code(0);
        for (std::size_t k = 0; k < n; ++k) {
            order_.push_back(l);
            l = succ_[l.code()];
        }
        if (l.code() != 0) throw Error("ribbon construction: germs do not form a single cycle");
        pos_.assign(n, 0);
        std::vector<bool> seen(n, false);
        for (std::size_t k = 0; k < n; ++k) {
            if (seen[order_[k].code()]) throw Error("ribbon construction: germs do not form a single cycle");
            seen[order_[k].code()] = true;
            pos_[order_[k].code()] = static_cast<std::ptrdiff_t>(k);
        }
        build_crossing_table();
    }

    int genus_ = 0;
    int punctures_ = 0;
    Alphabet alphabet_;
    std::vector<Letter> succ_;
    std::vector<Letter> order_;
    std::vector<std::ptrdiff_t> pos_;
    std::vector<std::uint8_t> crossing_;
    std::vector<Word> peripheral_;
    std::vector<CurveClass> peripheral_classes_;
};

inline SurfaceModel surface_model(int genus, int punctures) { return SurfaceModel::make(genus, punctures); }

inline CurveClass canonical_class(const SurfaceModel& m, const Word& w) {
    for (Letter l : w)
        if (l.generator() >= m.rank()) throw InvalidInput("letter outside the surface generators");
    return CurveClass::from_word(w);
}

inline bool is_peripheral(const SurfaceModel& m, const CurveClass& c) {
    for (const auto& p : m.peripheral_classes())
        if (p == c) return true;
    return false;
}

} // namespace curvelab

#endif // CURVELAB_SURFACE_HPP
