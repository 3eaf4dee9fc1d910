#ifndef CURVELAB_GRID_ORACLE_HPP
#define CURVELAB_GRID_ORACLE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <unordered_set>
#include <vector>

#include "curvelab/error.hpp"
#include "curvelab/free_group.hpp"
#include "curvelab/surface.hpp"

namespace curvelab {

// Brute-force planar check of intersection numbers on S_{0,n}, sharing
// nothing with the ribbon-graph code.
//
// The punctures 1..n-1 sit on a horizontal line in a square; puncture n is
// the point at infinity. A vertical ray runs down from each finite puncture,
// and a closed curve reads x_i when it crosses ray i from left to right.
//
// The first curve A is an embedded cycle on a coarse lattice (even
// coordinates) whose ray crossings spell its word exactly. The second curve B
// is a closed walk on the fine lattice offset by one half, again spelling its
// word exactly, chosen by 0-1 BFS to cross A as little as possible. Fine
// lines pass between any coarse line and a puncture, and between any two
// coarse lines.
//
// Every pair found is a transverse pair of representatives, so the count is
// an upper bound for the intersection number; it reaches it once the square
// is fine enough.
namespace grid {

struct Layout {
    int coarse = 0;               // coarse vertices 0..coarse in each direction
    std::vector<int> px;          // puncture i sits in coarse face (px[i], py)
    int py = 0;
};

inline Layout layout(std::size_t rank, int gridsize) {
    if (gridsize < static_cast<int>(rank) + 1) throw InvalidInput("grid too small for the punctures");
    Layout l;
    l.coarse = gridsize;
    const int step = gridsize / static_cast<int>(rank + 1);
    for (std::size_t i = 0; i < rank; ++i) l.px.push_back(step * static_cast<int>(i + 1));
    l.py = gridsize / 2;
    return l;
}

// Moves: 0 = +x, 1 = -x, 2 = +y, 3 = -y.
constexpr int dx[4] = {1, -1, 0, 0};
constexpr int dy[4] = {0, 0, 1, -1};

// Letter code read by a coarse edge leaving (x, y) in direction d, or -1.
// Physical coordinates are doubled: coarse vertex (x, y) is at (2x, 2y),
// puncture i at (2 px + 1, 2 py + 1).
inline int coarse_letter(const Layout& l, int x, int y, int d) {
    if (d > 1) return -1;
    const int left = d == 0 ? x : x - 1;  // left end of the horizontal edge
    if (y > l.py) return -1;
    for (std::size_t i = 0; i < l.px.size(); ++i)
        if (left == l.px[i]) return static_cast<int>(2 * i + (d == 0 ? 0 : 1));
    return -1;
}

// Fine vertex (X, Y) is at (X + 1/2, Y + 1/2), for 0 <= X, Y < 2 coarse.
inline int fine_letter(const Layout& l, int x, int y, int d) {
    if (d > 1) return -1;
    const int left = d == 0 ? x : x - 1;
    if (y > 2 * l.py) return -1;
    for (std::size_t i = 0; i < l.px.size(); ++i)
        if (left == 2 * l.px[i]) return static_cast<int>(2 * i + (d == 0 ? 0 : 1));
    return -1;
}

struct Cycle {
    std::vector<std::pair<int, int>> vertices;  // closed: last joins first
};

// Walks whose crossings spell `word` exactly, starting right after a crossing
// of word[0]; state (vertex, letters read).
class Automaton {
public:
    Automaton(int side, const std::vector<std::uint32_t>& word, bool fine, const Layout& l)
        : side_(side), word_(word), fine_(fine), l_(l) {}

    int side() const { return side_; }
    std::size_t length() const { return word_.size(); }
    bool inside(int x, int y) const { return x >= 0 && y >= 0 && x < side_ && y < side_; }
    int letter(int x, int y, int d) const { return fine_ ? fine_letter(l_, x, y, d) : coarse_letter(l_, x, y, d); }

    // Letters read after taking the move, or -1 if the move breaks the word.
    int advance(int x, int y, int d, int k) const {
        const int c = letter(x, y, d);
        if (c < 0) return k;
        if (static_cast<std::size_t>(k) >= word_.size() || static_cast<std::uint32_t>(c) != word_[k]) return -1;
        return k + 1;
    }

    // Edges (tail, direction) reading word[0].
    std::vector<std::tuple<int, int, int>> start_edges() const {
        std::vector<std::tuple<int, int, int>> out;
        for (int x = 0; x < side_; ++x)
            for (int y = 0; y < side_; ++y)
                for (int d = 0; d < 2; ++d) {
                    const int nx = x + dx[d], ny = y + dy[d];
                    if (!inside(nx, ny)) continue;
                    if (letter(x, y, d) == static_cast<int>(word_[0])) out.emplace_back(x, y, d);
                }
        return out;
    }

    std::size_t index(int x, int y, int k) const {
        return (static_cast<std::size_t>(k) * side_ + static_cast<std::size_t>(y)) * side_ + static_cast<std::size_t>(x);
    }
    std::size_t states() const { return (word_.size() + 1) * static_cast<std::size_t>(side_) * side_; }

private:
    int side_;
    std::vector<std::uint32_t> word_;
    bool fine_;
    const Layout& l_;
};

inline std::vector<std::uint32_t> codes(const Word& w) {
    std::vector<std::uint32_t> out;
    for (Letter l : w) out.push_back(l.code());
    return out;
}

// Cutting the plane along the rays leaves a disk whose boundary runs up the
// left side of ray 1, down its right side, then ray 2, and so on. A curve
// spelling its word exactly is a chain of arcs in that disk between ray
// crossings; it is embedded iff the crossings can be stacked on each ray so
// that no two arcs interleave on the boundary.
struct RayOrder {
    std::vector<std::vector<std::size_t>> stack;  // per ray, letter positions bottom to top
    std::vector<std::size_t> height;              // per letter position, its place on its ray
    std::vector<std::size_t> nesting;             // per arc, boundary points it encloses
};

namespace detail {

// Boundary position of a crossing side; `left` is the left side of the ray.
inline std::size_t boundary_position(const std::vector<std::size_t>& base, const std::vector<std::size_t>& count,
                                     std::size_t ray, std::size_t h, bool left) {
    return base[ray] + (left ? h : 2 * count[ray] - 1 - h);
}

inline bool interleave(std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    if (a > b) std::swap(a, b);
    const bool ci = a < c && c < b, di = a < d && d < b;
    return ci != di;
}

} // namespace detail

inline std::optional<RayOrder> ray_order(std::size_t rank, const Word& w) {
    const std::size_t n = w.size();
    std::vector<std::vector<std::size_t>> on(rank);
    for (std::size_t k = 0; k < n; ++k) {
        if (w[k].generator() >= rank) throw InvalidInput("letter outside the surface generators");
        on[w[k].generator()].push_back(k);
    }
    std::vector<std::size_t> count(rank), base(rank);
    for (std::size_t i = 0, b = 0; i < rank; ++i) {
        count[i] = on[i].size();
        base[i] = b;
        b += 2 * count[i];
    }
    // Arc k runs from the exit side of letter k to the entry side of letter
    // k + 1. Reading x_i goes left to right.
    RayOrder r;
    r.height.assign(n, 0);
    std::vector<char> placed(rank, 0);
    auto arc_ends = [&](std::size_t k) {
        const std::size_t k1 = (k + 1) % n;
        const Letter a = w[k], b = w[k1];
        const std::size_t p = detail::boundary_position(base, count, a.generator(), r.height[k], a.inverted());
        const std::size_t q = detail::boundary_position(base, count, b.generator(), r.height[k1], !b.inverted());
        return std::make_pair(p, q);
    };
    auto consistent = [&]() {
        std::vector<std::pair<std::size_t, std::size_t>> arcs;
        for (std::size_t k = 0; k < n; ++k)
            if (placed[w[k].generator()] && placed[w[(k + 1) % n].generator()]) arcs.push_back(arc_ends(k));
        for (std::size_t i = 0; i < arcs.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (detail::interleave(arcs[i].first, arcs[i].second, arcs[j].first, arcs[j].second)) return false;
        return true;
    };
    auto place = [&](auto&& self, std::size_t ray) -> bool {
        if (ray == rank) return true;
        std::vector<std::size_t> perm = on[ray];
        do {
            for (std::size_t h = 0; h < perm.size(); ++h) r.height[perm[h]] = h;
            placed[ray] = 1;
            if (consistent() && self(self, ray + 1)) {
                r.stack.push_back(perm);
                return true;
            }
            placed[ray] = 0;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return false;
    };
    if (!place(place, 0)) return std::nullopt;
    std::reverse(r.stack.begin(), r.stack.end());
    for (std::size_t k = 0; k < n; ++k) {
        auto [p, q] = arc_ends(k);
        r.nesting.push_back(p > q ? p - q : q - p);
    }
    return r;
}

// Crossing sequence of a closed lattice cycle and whether it is simple.
inline std::pair<Word, bool> read_cycle(const Layout& l, const Cycle& c) {
    Word out;
    std::set<std::pair<int, int>> seen;
    bool simple = true;
    const auto& v = c.vertices;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!seen.insert(v[i]).second) simple = false;
        auto [x0, y0] = v[i];
        auto [x1, y1] = v[(i + 1) % v.size()];
        int d = -1;
        for (int e = 0; e < 4; ++e)
            if (x0 + dx[e] == x1 && y0 + dy[e] == y1) d = e;
        if (d < 0) return {out, false};
        const int code = coarse_letter(l, x0, y0, d);
        if (code >= 0) out.push_back(Letter::from_code(static_cast<std::uint32_t>(code)));
    }
    return {out, simple};
}

// Draws the arcs on the coarse lattice one at a time by shortest paths that
// pay extra for running next to what is already drawn. Crossings on a ray sit
// three rows apart.
inline std::optional<Cycle> embedded_cycle(const Layout& l, const Word& w) {
    const std::size_t n = w.size();
    const std::size_t rank = l.px.size();
    const auto order = ray_order(rank, w);
    if (!order) return std::nullopt;
    std::size_t tallest = 0;
    for (const auto& s : order->stack) tallest = std::max(tallest, s.size());
    if (static_cast<int>(3 * tallest) > l.py) return std::nullopt;

    const int side = l.coarse + 1;
    auto cell = [&](int x, int y) { return static_cast<std::size_t>(y) * side + x; };
    auto row = [&](std::size_t k) { return 1 + 3 * static_cast<int>(order->height[k]); };
    // vertex on the given side of crossing k
    auto end = [&](std::size_t k, bool left) {
        const int x = l.px[w[k].generator()];
        return std::make_pair(left ? x : x + 1, row(k));
    };
    std::vector<char> used(static_cast<std::size_t>(side) * side, 0);
    for (std::size_t k = 0; k < n; ++k) {
        auto [lx, ly] = end(k, true);
        auto [rx, ry] = end(k, false);
        used[cell(lx, ly)] = used[cell(rx, ry)] = 1;
    }
    auto crosses_ray = [&](int x, int y, int d) { return coarse_letter(l, x, y, d) >= 0; };
    // strands on the two sides of a ray may run next to each other
    auto coarse_letter_between = [&](int ax, int ay, int bx, int by) {
        return ay == by && coarse_letter(l, std::min(ax, bx), ay, 0) >= 0;
    };
    auto near_used = [&](int x, int y, std::pair<int, int> a, std::pair<int, int> b) {
        for (int d = 0; d < 4; ++d) {
            const int nx = x + dx[d], ny = y + dy[d];
            if (nx < 0 || ny < 0 || nx >= side || ny >= side) continue;
            if (std::make_pair(nx, ny) == a || std::make_pair(nx, ny) == b) continue;
            if (used[cell(nx, ny)] && !coarse_letter_between(nx, ny, x, y)) return true;
        }
        return false;
    };

    // Innermost arcs first.
    std::vector<std::size_t> arcs(n);
    for (std::size_t k = 0; k < n; ++k) arcs[k] = k;
    std::stable_sort(arcs.begin(), arcs.end(),
                     [&](std::size_t a, std::size_t b) { return order->nesting[a] < order->nesting[b]; });

    std::vector<std::vector<std::pair<int, int>>> drawn(n);
    std::vector<int> prev(static_cast<std::size_t>(side) * side);
    std::vector<int> cost(prev.size());
    constexpr int crowding_penalty = 16;
    for (std::size_t k : arcs) {
        const std::size_t k1 = (k + 1) % n;
        const auto from = end(k, w[k].inverted());
        const auto to = end(k1, !w[k1].inverted());
        std::fill(prev.begin(), prev.end(), -1);
        std::fill(cost.begin(), cost.end(), std::numeric_limits<int>::max());
        using Item = std::pair<int, std::size_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> q;
        const std::size_t src = cell(from.first, from.second), dst = cell(to.first, to.second);
        cost[src] = 0;
        q.emplace(0, src);
        bool found = false;
        while (!q.empty()) {
            auto [c0, here] = q.top();
            q.pop();
            if (c0 != cost[here]) continue;
            if (here == dst) {
                found = true;
                break;
            }
            const int x = static_cast<int>(here % side), y = static_cast<int>(here / side);
            for (int d = 0; d < 4; ++d) {
                const int nx = x + dx[d], ny = y + dy[d];
                if (nx < 0 || ny < 0 || nx >= side || ny >= side) continue;
                if (crosses_ray(x, y, d)) continue;
                const std::size_t next = cell(nx, ny);
                if (next != dst && used[next]) continue;
                const int step = 1 + (next != dst && near_used(nx, ny, from, to) ? crowding_penalty : 0);
                if (c0 + step < cost[next]) {
                    cost[next] = c0 + step;
                    prev[next] = static_cast<int>(here);
                    q.emplace(cost[next], next);
                }
            }
        }
        if (!found) return std::nullopt;
        std::vector<std::pair<int, int>> path;
        for (std::size_t c = cell(to.first, to.second);; c = static_cast<std::size_t>(prev[c])) {
            path.emplace_back(static_cast<int>(c % side), static_cast<int>(c / side));
            if (c == cell(from.first, from.second)) break;
        }
        std::reverse(path.begin(), path.end());
        for (auto [x, y] : path) used[cell(x, y)] = 1;
        drawn[k] = std::move(path);
    }
    // Arc k starts at the exit vertex of crossing k and ends at the entry
    // vertex of crossing k + 1; the crossing edges join consecutive arcs.
    Cycle c;
    for (std::size_t k = 0; k < n; ++k) c.vertices.insert(c.vertices.end(), drawn[k].begin(), drawn[k].end());
    auto [read, simple] = read_cycle(l, c);
    if (!simple || read.size() != n || least_rotation(read) != least_rotation(w))
        throw Error("grid drawing does not spell its word");
    return c;
}

// Fine edges crossed by the coarse cycle, keyed by (tail, direction) with
// the tail the lower-left end.
inline std::unordered_set<std::uint64_t> crossed_fine_edges(const Cycle& c) {
    std::unordered_set<std::uint64_t> out;
    auto key = [](int x, int y, int horizontal) {
        return (static_cast<std::uint64_t>(x) << 33) | (static_cast<std::uint64_t>(y) << 1) |
               static_cast<std::uint64_t>(horizontal);
    };
    const auto& v = c.vertices;
    for (std::size_t i = 0; i < v.size(); ++i) {
        auto [x0, y0] = v[i];
        auto [x1, y1] = v[(i + 1) % v.size()];
        if (y0 == y1) {
            // coarse horizontal edge at height 2 y0 from 2 min(x) to 2 min(x) + 2:
            // crosses fine vertical edges X in {2x, 2x+1}, Y = 2y - 1
            const int x = std::min(x0, x1);
            out.insert(key(2 * x, 2 * y0 - 1, 0));
            out.insert(key(2 * x + 1, 2 * y0 - 1, 0));
        } else {
            const int y = std::min(y0, y1);
            out.insert(key(2 * x0 - 1, 2 * y, 1));
            out.insert(key(2 * x0 - 1, 2 * y + 1, 1));
        }
    }
    return out;
}

// Fewest crossings with A of a fine closed walk spelling w.
inline std::optional<int> min_crossings(const Layout& l, const Cycle& a_cycle, const Word& w) {
    const auto word = codes(w);
    Automaton a(2 * l.coarse, word, true, l);
    const auto crossed = crossed_fine_edges(a_cycle);
    auto weight = [&](int x, int y, int d) {
        int tx = x, ty = y;
        if (d == 1) tx = x - 1;
        if (d == 3) ty = y - 1;
        const int horizontal = d < 2 ? 1 : 0;
        const std::uint64_t k = (static_cast<std::uint64_t>(tx) << 33) | (static_cast<std::uint64_t>(ty) << 1) |
                                static_cast<std::uint64_t>(horizontal);
        return crossed.count(k) ? 1 : 0;
    };
    const int inf = std::numeric_limits<int>::max();
    const int len = static_cast<int>(word.size());
    std::optional<int> best;
    std::vector<int> dist(a.states());
    for (auto [sx, sy, sd] : a.start_edges()) {
        const int hx = sx + dx[sd], hy = sy + dy[sd];
        const int w0 = weight(sx, sy, sd);
        std::fill(dist.begin(), dist.end(), inf);
        std::deque<std::tuple<int, int, int>> q;
        dist[a.index(hx, hy, 1)] = 0;
        q.emplace_back(hx, hy, 1);
        while (!q.empty()) {
            auto [x, y, k] = q.front();
            q.pop_front();
            const int here = dist[a.index(x, y, k)];
            if (best && here + w0 >= *best) continue;
            for (int d = 0; d < 4; ++d) {
                const int nx = x + dx[d], ny = y + dy[d];
                if (!a.inside(nx, ny)) continue;
                const int nk = a.advance(x, y, d, k);
                if (nk < 0) continue;
                const int c = weight(x, y, d);
                auto& slot = dist[a.index(nx, ny, nk)];
                if (here + c < slot) {
                    slot = here + c;
                    if (c == 0)
                        q.emplace_front(nx, ny, nk);
                    else
                        q.emplace_back(nx, ny, nk);
                }
            }
        }
        const int got = dist[a.index(sx, sy, len)];
        if (got != inf && (!best || got + w0 < *best)) best = got + w0;
    }
    return best;
}

} // namespace grid

struct OracleValue {
    std::optional<int> value;  // nullopt: inconclusive at this size
    bool conclusive() const { return value.has_value(); }
};

struct StabilizedOracle {
    std::optional<int> value;                               // set once two successive sizes agree
    std::vector<std::pair<int, std::optional<int>>> trace;  // (gridsize, value)
};

// Grid oracle on S_{0,n} with embedded realizations kept per class and size.
class GridOracle {
public:
    explicit GridOracle(const SurfaceModel& m) : m_(m) {
        if (m.genus() != 0) throw InvalidInput("the grid oracle handles genus 0 models only");
    }

    int size_for_scale(int scale) const { return scale * static_cast<int>(m_.rank() + 1); }

    const std::optional<grid::Cycle>& realization(const CurveClass& c, int gridsize) {
        auto key = std::make_pair(c.word(), gridsize);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        auto cyc = grid::embedded_cycle(grid::layout(m_.rank(), gridsize), c.word());
        return cache_.emplace(std::move(key), std::move(cyc)).first->second;
    }

    bool embeds(const CurveClass& c, int gridsize) { return realization(c, gridsize).has_value(); }

    // Least crossing count found at one size; c1 is drawn embedded.
    OracleValue at(const CurveClass& c1, const CurveClass& c2, int gridsize) {
        const auto& a = realization(c1, gridsize);
        if (!a) return {};
        return {grid::min_crossings(grid::layout(m_.rank(), gridsize), *a, c2.word())};
    }

    // Scales first..last until two successive sizes agree. Both classes take
    // a turn as the embedded one and the smaller count is kept.
    StabilizedOracle stabilized(const CurveClass& c1, const CurveClass& c2, int first_scale = 2, int last_scale = 10) {
        StabilizedOracle out;
        std::optional<int> prev;
        for (int s = first_scale; s <= last_scale; ++s) {
            const int size = size_for_scale(s);
            OracleValue v = at(c1, c2, size);
            const OracleValue w = at(c2, c1, size);
            if (w.value && (!v.value || *w.value < *v.value)) v = w;
            out.trace.emplace_back(size, v.value);
            if (v.value && prev && *v.value == *prev) {
                out.value = v.value;
                return out;
            }
            prev = v.value;
        }
        return out;
    }

private:
    SurfaceModel m_;
    std::map<std::pair<Word, int>, std::optional<grid::Cycle>> cache_;
};

inline OracleValue grid_oracle_intersection(const SurfaceModel& m, const CurveClass& c1, const CurveClass& c2,
                                            int gridsize) {
    return GridOracle(m).at(c1, c2, gridsize);
}

inline StabilizedOracle grid_oracle_stabilized(const SurfaceModel& m, const CurveClass& c1, const CurveClass& c2,
                                               int first_scale = 2, int last_scale = 10) {
    return GridOracle(m).stabilized(c1, c2, first_scale, last_scale);
}

inline bool grid_embeds(const SurfaceModel& m, const CurveClass& c, int gridsize) {
    return GridOracle(m).embeds(c, gridsize);
}

} // namespace curvelab

#endif // CURVELAB_GRID_ORACLE_HPP
