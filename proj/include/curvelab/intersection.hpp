#ifndef CURVELAB_INTERSECTION_HPP
#define CURVELAB_INTERSECTION_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "curvelab/error.hpp"
#include "curvelab/free_group.hpp"
#include "curvelab/surface.hpp"

namespace curvelab {

namespace detail {

// Linked pairs of lifts. Both words are cyclically reduced and primitive; the
// lifts of a class are the bi-infinite periodic lines it spells in the
// universal cover tree, whose ends inherit a cyclic order from the ribbon
// structure. Each orbit of a pair of lifts meeting in the tree is counted
// once, at the first vertex of their maximal common segment, with the second
// line oriented to run along that segment in the same direction as the first
// (a single shared vertex is counted with the second line's own orientation).
// The pair is linked when the second line leaves the common segment on the
// opposite side from the one it came in on. Identical lines are skipped.
// A cyclic word with its inverse and the corner (incoming germ, outgoing
// germ) at each position, prepared once per class.
// A cyclic word with its inverse, the corner (incoming germ, outgoing germ)
// at each position, and the positions of each letter, prepared once per class.
struct PreparedLine {
    Word word;
    Word inv;
    std::vector<std::size_t> corners;
    // positions of letter code c in word: at[c] .. at[c+1] in where; same for inv
    std::vector<std::uint32_t> at, where, at_inv, where_inv;
    // for every corner c, the number of corners of this line crossing c
    std::vector<std::uint32_t> crossings_with;

    PreparedLine(const SurfaceModel& m, const Word& w) : word(w), inv(inverse(w)), corners(w.size()) {
        const std::size_t n = w.size();
        for (std::size_t j = 0; j < n; ++j) corners[j] = m.corner(w[j == 0 ? n - 1 : j - 1].inverse(), w[j]);
        const std::size_t nc = 4 * m.rank() * m.rank();
        if (m.crossing_row(0)) {
            crossings_with.assign(nc, 0);
            for (std::size_t c = 0; c < nc; ++c) {
                const std::uint8_t* row = m.crossing_row(c);
                for (std::size_t j = 0; j < n; ++j) crossings_with[c] += row[corners[j]];
            }
        }
        index(word, 2 * m.rank(), at, where);
        index(inv, 2 * m.rank(), at_inv, where_inv);
    }

private:
    static void index(const Word& w, std::size_t codes, std::vector<std::uint32_t>& at, std::vector<std::uint32_t>& where) {
        at.assign(codes + 1, 0);
        for (Letter l : w) ++at[l.code() + 1];
        for (std::size_t c = 0; c < codes; ++c) at[c + 1] += at[c];
        where.assign(w.size(), 0);
        std::vector<std::uint32_t> fill(at.begin(), at.end() - 1);
        for (std::size_t j = 0; j < w.size(); ++j) where[fill[w[j].code()]++] = static_cast<std::uint32_t>(j);
    }
};

inline long linked_pairs(const SurfaceModel& m, const PreparedLine& pu, const PreparedLine& pw) {
    long count = 0;
    const Word& u = pu.word;
    const std::size_t m1 = u.size();
    const std::size_t m2 = pw.word.size();
    const std::size_t horizon = m1 + m2;
    // single shared vertex, counted once; zero when the outgoing germs agree
    if (!pw.crossings_with.empty()) {
        for (std::size_t i = 0; i < m1; ++i) count += pw.crossings_with[pu.corners[i]];
    } else {
        for (std::size_t i = 0; i < m1; ++i)
            for (std::size_t j = 0; j < m2; ++j) count += m.corners_cross(pu.corners[i], pw.corners[j]) ? 1 : 0;
    }
    for (int orient = 0; orient < 2; ++orient) {
        const Word& v = orient == 0 ? pw.word : pw.inv;
        const auto& at = orient == 0 ? pw.at : pw.at_inv;
        const auto& where = orient == 0 ? pw.where : pw.where_inv;
        for (std::size_t i = 0; i < m1; ++i) {
            const Letter a1 = u[i == 0 ? m1 - 1 : i - 1].inverse();
            const Letter s = u[i];
            for (std::uint32_t p = at[s.code()]; p < at[s.code() + 1]; ++p) {
                const std::size_t j = where[p];
                const Letter a2 = v[j == 0 ? m2 - 1 : j - 1].inverse();
                if (a1 == a2) continue;  // not the start of the common segment
                std::size_t k = 0, ii = i, jj = j;
                while (k < horizon && u[ii] == v[jj]) {
                    ++k;
                    if (++ii == m1) ii = 0;
                    if (++jj == m2) jj = 0;
                }
                if (k >= horizon) continue;  // same line
                const Letter t = u[ii == 0 ? m1 - 1 : ii - 1].inverse();
                if (m.on_left(a1, s, a2) != m.on_left(t, u[ii], v[jj])) ++count;
            }
        }
    }
    return count;
}

inline long linked_pairs(const SurfaceModel& m, const Word& u, const Word& w) {
    return linked_pairs(m, PreparedLine(m, u), PreparedLine(m, w));
}

} // namespace detail

// Minimal number of self-crossings over the free homotopy class.
inline int self_intersection(const SurfaceModel& m, const CurveClass& c) {
    return static_cast<int>(detail::linked_pairs(m, c.word(), c.word()) / 2);
}

inline bool is_simple(const SurfaceModel& m, const CurveClass& c) { return self_intersection(m, c) == 0; }

// Intersection count without the simplicity precondition.
inline int linked_intersection(const SurfaceModel& m, const CurveClass& a, const CurveClass& b) {
    return static_cast<int>(detail::linked_pairs(m, a.word(), b.word()));
}

// Geometric intersection number of two simple closed curves.
inline int geometric_intersection(const SurfaceModel& m, const CurveClass& a, const CurveClass& b) {
    if (!is_simple(m, a)) throw InvalidInput("geometric_intersection: first class is not simple");
    if (!is_simple(m, b)) throw InvalidInput("geometric_intersection: second class is not simple");
    return linked_intersection(m, a, b);
}

} // namespace curvelab

#endif // CURVELAB_INTERSECTION_HPP
