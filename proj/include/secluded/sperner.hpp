#pragma once

#include <functional>
#include <map>
#include <set>
#include <vector>

#include "geometry.hpp"
#include "json_io.hpp"

namespace secluded {

/// Exact piecewise-constant coloring of [0,1]^d on a per-axis grid. Cell (i_1..i_d)
/// colors [i/r, (i+1)/r) per axis, with the top cell closed at 1. Cells are stored
/// row-major with axis 1 outermost (last axis varies fastest).
struct GridColoring {
    int d = 1;
    std::vector<int> resolution;
    std::vector<int> cells;
    std::set<int> palette;

    size_t cell_count() const {
        size_t n = 1;
        for (int r : resolution) n *= static_cast<size_t>(r);
        return n;
    }

    size_t flat_index(const std::vector<int>& idx) const {
        size_t f = 0;
        for (int i = 0; i < d; ++i) f = f * static_cast<size_t>(resolution[i]) + static_cast<size_t>(idx[i]);
        return f;
    }

    int color_at_cell(const std::vector<int>& idx) const { return cells[flat_index(idx)]; }

    AxisBox cell_box(const std::vector<int>& idx) const {
        AxisBox b;
        for (int i = 0; i < d; ++i) {
            Rational lo(idx[i], resolution[i]);
            Rational hi(idx[i] + 1, resolution[i]);
            End hi_end = (idx[i] + 1 == resolution[i]) ? End::closed : End::open;
            b.iv.push_back({std::move(lo), std::move(hi), End::closed, hi_end});
        }
        return b;
    }

    void validate_shape() const {
        if (d < 1 || static_cast<int>(resolution.size()) != d)
            throw std::invalid_argument("GridColoring: resolution must list d entries");
        for (int r : resolution)
            if (r < 1) throw std::invalid_argument("GridColoring: resolution entries must be >= 1");
        if (cells.size() != cell_count())
            throw std::invalid_argument("GridColoring: cell array size mismatch");
        std::set<int> seen(cells.begin(), cells.end());
        if (palette != seen)
            throw std::invalid_argument("GridColoring: palette must be exactly the colors used");
    }
};

struct FaceViolation {
    int color = 0;
    int axis = 0;  // color touches both x_axis = 0 and x_axis = 1
};

struct FaceValidation {
    bool valid = true;
    std::vector<FaceViolation> violations;
};

/// A color touches face x_i = 0 iff it colors some cell with index 0 on axis i, and face
/// x_i = 1 iff it colors some cell with the top index (whose closed end contains 1).
inline FaceValidation validate_no_opposite_faces(const GridColoring& c) {
    c.validate_shape();
    std::map<int, std::vector<std::pair<bool, bool>>> touch;  // color -> per-axis (low, high)
    for (int col : c.palette) touch[col].assign(static_cast<size_t>(c.d), {false, false});
    std::vector<int> idx(static_cast<size_t>(c.d), 0);
    std::function<void(int)> walk = [&](int axis) {
        if (axis == c.d) {
            auto& t = touch[c.color_at_cell(idx)];
            for (int i = 0; i < c.d; ++i) {
                if (idx[i] == 0) t[static_cast<size_t>(i)].first = true;
                if (idx[i] + 1 == c.resolution[i]) t[static_cast<size_t>(i)].second = true;
            }
            return;
        }
        for (idx[axis] = 0; idx[axis] < c.resolution[axis]; ++idx[axis]) walk(axis + 1);
        idx[axis] = 0;
    };
    walk(0);
    FaceValidation v;
    for (const auto& [col, t] : touch)
        for (int i = 0; i < c.d; ++i)
            if (t[static_cast<size_t>(i)].first && t[static_cast<size_t>(i)].second) {
                v.valid = false;
                v.violations.push_back({col, i});
            }
    return v;
}

struct InvalidColoring : std::invalid_argument {
    InvalidColoring(const FaceViolation& v)
        : std::invalid_argument("coloring invalid: color " + std::to_string(v.color) +
                                " touches opposite faces on axis " + std::to_string(v.axis)),
          violation(v) {}
    FaceViolation violation;
};

/// Distinct colors whose cell set meets the open l_inf eps-ball at p (p in [0,1]^d).
inline std::set<int> colors_in_ball(const GridColoring& c, const Point& p, const Rational& eps) {
    if (p.dim() != c.d) throw DimensionMismatch("colors_in_ball: dimension mismatch");
    for (int i = 0; i < c.d; ++i)
        if (p[i] < Rational(0) || p[i] > Rational(1))
            throw std::invalid_argument("colors_in_ball: point outside [0,1]^d");
    // Cell [lo, hi] (any closure) meets the open interval (a, b) iff lo < b and hi > a.
    std::vector<std::pair<int, int>> range(static_cast<size_t>(c.d));
    for (int i = 0; i < c.d; ++i) {
        const long r = c.resolution[i];
        const Rational a = p[i] - eps, b = p[i] + eps;
        long lo_idx = 0, hi_idx = -1;
        // indices j with j/r < b and (j+1)/r > a
        Rational rb = b * Rational(r);  // j < rb
        Rational ra = a * Rational(r);  // j > ra - 1
        Integer jmax = rb.is_integer() ? rb.floor() - Integer(1) : rb.floor();
        Integer jmin = (ra - Rational(1)).floor() + Integer(1);
        long j0 = std::max(0L, jmin.fits_long() ? jmin.to_long() : 0L);
        long j1 = std::min(r - 1, jmax.fits_long() ? jmax.to_long() : r - 1);
        lo_idx = j0;
        hi_idx = j1;
        if (lo_idx > hi_idx) return {};
        range[static_cast<size_t>(i)] = {static_cast<int>(lo_idx), static_cast<int>(hi_idx)};
    }
    std::set<int> found;
    std::vector<int> idx(static_cast<size_t>(c.d));
    std::function<void(int)> walk = [&](int axis) {
        if (axis == c.d) {
            found.insert(c.color_at_cell(idx));
            return;
        }
        for (int j = range[static_cast<size_t>(axis)].first;
             j <= range[static_cast<size_t>(axis)].second; ++j) {
            idx[static_cast<size_t>(axis)] = j;
            walk(axis + 1);
        }
    };
    walk(0);
    return found;
}

/// Evaluation primitive for the theorem's conclusion.
inline size_t color_count(const GridColoring& c, const Point& p, const Rational& eps) {
    return colors_in_ball(c, p, eps).size();
}

struct RichPointReport {
    Point point;
    Rational epsilon;
    std::set<int> colors_found;
    size_t count = 0;
    Integer bound;  // ceil((1 + (2/3) eps)^d)
    bool theorem_ok = false;
};

/// Maximizes the number of colors met by the open eps-ball over [0,1]^d. Candidates:
/// the color regions in p-space are unions of open boxes (cell_lo - eps, cell_hi + eps),
/// so the count is constant on arrangement cells and no isolated critical value beats an
/// adjacent open interval; midpoints of the arrangement intervals (clipped to [0,1])
/// cover every cell. Requires a coloring that passed face validation.
inline RichPointReport find_rich_point(const GridColoring& c, const Rational& eps) {
    if (eps.sgn() <= 0 || eps > Rational(1, 2))
        throw std::invalid_argument("find_rich_point: eps must be in (0, 1/2]");
    auto v = validate_no_opposite_faces(c);
    if (!v.valid) throw InvalidColoring(v.violations.front());

    std::vector<std::vector<Rational>> cand(static_cast<size_t>(c.d));
    for (int i = 0; i < c.d; ++i) {
        std::vector<Rational> cuts{Rational(0), Rational(1)};
        for (int j = 0; j <= c.resolution[i]; ++j) {
            Rational b(j, c.resolution[i]);
            for (const Rational& shifted : {b - eps, b + eps})
                if (shifted > Rational(0) && shifted < Rational(1)) cuts.push_back(shifted);
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        for (size_t j = 0; j + 1 < cuts.size(); ++j)
            cand[static_cast<size_t>(i)].push_back((cuts[j] + cuts[j + 1]) / Rational(2));
    }

    RichPointReport rep;
    rep.epsilon = eps;
    Rational third = Rational(2, 3) * eps + Rational(1);
    rep.bound = Rational::pow(third, static_cast<unsigned long>(c.d)).ceil();

    std::vector<Rational> cur(static_cast<size_t>(c.d), Rational(0));
    std::function<void(int)> walk = [&](int axis) {
        if (axis == c.d) {
            Point p{cur};
            auto cols = colors_in_ball(c, p, eps);
            if (cols.size() > rep.count) {
                rep.count = cols.size();
                rep.colors_found = std::move(cols);
                rep.point = p;
            }
            return;
        }
        for (const Rational& x : cand[static_cast<size_t>(axis)]) {
            cur[static_cast<size_t>(axis)] = x;
            walk(axis + 1);
        }
    };
    walk(0);
    rep.theorem_ok = Integer(static_cast<long>(rep.count)) >= rep.bound;
    return rep;
}

inline Json to_json(const GridColoring& c) {
    Json j;
    j["d"] = c.d;
    j["resolution"] = c.resolution;
    j["cells"] = c.cells;
    j["palette"] = std::vector<int>(c.palette.begin(), c.palette.end());
    return j;
}

inline GridColoring coloring_from_json(const Json& j) {
    GridColoring c;
    c.d = j.at("d").get<int>();
    c.resolution = j.at("resolution").get<std::vector<int>>();
    c.cells = j.at("cells").get<std::vector<int>>();
    if (j.contains("palette")) {
        auto p = j.at("palette").get<std::vector<int>>();
        c.palette = std::set<int>(p.begin(), p.end());
    } else {
        c.palette = std::set<int>(c.cells.begin(), c.cells.end());
    }
    c.validate_shape();
    return c;
}

}  // namespace secluded
