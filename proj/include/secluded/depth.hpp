#pragma once

#include <functional>
#include <vector>

#include "geometry.hpp"

namespace secluded {

/// A container box S and finitely many axis-aligned boxes inside it.
struct BoxFamily {
    AxisBox container;
    std::vector<AxisBox> members;

    void validate() const {
        if (container.volume().sgn() <= 0)
            throw std::invalid_argument("BoxFamily: container volume must be > 0");
        for (const auto& m : members) {
            if (m.dim() != container.dim())
                throw DimensionMismatch("BoxFamily: member dimension mismatch");
            for (int i = 0; i < m.dim(); ++i) {
                if (m.iv[i].empty()) continue;
                if (m.iv[i].lo < container.iv[i].lo || m.iv[i].hi > container.iv[i].hi)
                    throw std::invalid_argument("BoxFamily: member not inside container");
            }
        }
    }
};

/// One cell of the arrangement with the (constant) number of members covering its interior.
struct DepthCell {
    AxisBox cell;
    size_t depth = 0;
};

/// Partition of the container into grid cells by coordinate compression; within each cell
/// the depth is constant. Cells are ordered lexicographically by low corner. The cell
/// chain per axis is half-open with the container's own end closures at the two extremes,
/// so the cells tile the container exactly.
inline std::vector<DepthCell> depth_decomposition(const BoxFamily& fam) {
    fam.validate();
    const int d = fam.container.dim();
    std::vector<std::vector<Rational>> cuts(d);
    for (int i = 0; i < d; ++i) {
        cuts[i].push_back(fam.container.iv[i].lo);
        cuts[i].push_back(fam.container.iv[i].hi);
        for (const auto& m : fam.members) {
            if (m.empty()) continue;
            if (m.iv[i].lo > fam.container.iv[i].lo) cuts[i].push_back(m.iv[i].lo);
            if (m.iv[i].hi < fam.container.iv[i].hi) cuts[i].push_back(m.iv[i].hi);
        }
        std::sort(cuts[i].begin(), cuts[i].end());
        cuts[i].erase(std::unique(cuts[i].begin(), cuts[i].end()), cuts[i].end());
    }

    std::vector<DepthCell> cells;
    std::vector<size_t> pos(d, 0);
    const auto cell_count = [&] {
        size_t total = 1;
        for (int i = 0; i < d; ++i) total *= cuts[i].size() - 1;
        return total;
    }();
    cells.reserve(cell_count);
    std::vector<Interval> cur(d);
    std::function<void(int)> walk = [&](int axis) {
        if (axis == d) {
            DepthCell c;
            c.cell = AxisBox(cur);
            for (const auto& m : fam.members) {
                if (m.empty()) continue;
                bool covers = true;
                for (int i = 0; i < d; ++i)
                    if (m.iv[i].lo > cur[i].lo || m.iv[i].hi < cur[i].hi) {
                        covers = false;
                        break;
                    }
                if (covers) ++c.depth;
            }
            cells.push_back(std::move(c));
            return;
        }
        for (size_t j = 0; j + 1 < cuts[axis].size(); ++j) {
            Interval iv;
            iv.lo = cuts[axis][j];
            iv.hi = cuts[axis][j + 1];
            iv.lo_end = (j == 0) ? fam.container.iv[axis].lo_end : End::closed;
            iv.hi_end = (j + 2 == cuts[axis].size()) ? fam.container.iv[axis].hi_end : End::open;
            cur[axis] = iv;
            walk(axis + 1);
        }
    };
    walk(0);
    return cells;
}

struct MultiplicityIdentity {
    Rational sum_of_volumes;
    Rational depth_integral;
    bool equal = false;
};

/// Exact identity: sum of member volumes equals the integral of the depth function.
/// A failing check is a bug, not a data condition.
inline MultiplicityIdentity multiplicity_identity_check(const BoxFamily& fam) {
    MultiplicityIdentity r;
    r.sum_of_volumes = Rational(0);
    for (const auto& m : fam.members) r.sum_of_volumes += m.volume();
    r.depth_integral = Rational(0);
    for (const auto& c : depth_decomposition(fam))
        r.depth_integral += Rational(static_cast<long>(c.depth)) * c.cell.volume();
    r.equal = r.sum_of_volumes == r.depth_integral;
    return r;
}

struct PigeonholeWitness {
    Point point;
    size_t depth = 0;
    Integer guarantee;  // ceil(sum of volumes / container volume)
};

/// Point of maximum depth: the midpoint of the lexicographically least cell of maximum
/// depth. Its depth is always >= ceil(sum vol / vol(S)).
inline PigeonholeWitness pigeonhole_witness(const BoxFamily& fam) {
    auto cells = depth_decomposition(fam);
    const DepthCell* best = nullptr;
    for (const auto& c : cells) {
        if (c.cell.volume().sgn() == 0) continue;  // no interior point to take
        if (!best || c.depth > best->depth) best = &c;
    }
    PigeonholeWitness w;
    Rational sum(0);
    for (const auto& m : fam.members) sum += m.volume();
    w.guarantee = (sum / fam.container.volume()).ceil();
    if (!best) return w;
    w.depth = best->depth;
    for (const auto& iv : best->cell.iv)
        w.point.coords.push_back((iv.lo + iv.hi) / Rational(2));
    return w;
}

/// Number of family members containing the point (closures respected).
inline size_t depth_at(const BoxFamily& fam, const Point& p) {
    size_t n = 0;
    for (const auto& m : fam.members)
        if (!m.empty() && m.contains(p)) ++n;
    return n;
}

}  // namespace secluded
