#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "rational.hpp"

namespace secluded {

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Point of R^d with exact rational coordinates; dimension fixed at creation.
struct Point {
    std::vector<Rational> coords;

    Point() = default;
    explicit Point(std::vector<Rational> c) : coords(std::move(c)) {}

    int dim() const { return static_cast<int>(coords.size()); }
    const Rational& operator[](size_t i) const { return coords[i]; }
    Rational& operator[](size_t i) { return coords[i]; }

    friend bool operator==(const Point& a, const Point& b) { return a.coords == b.coords; }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
};

/// Lexicographic order; the deterministic tie-break used throughout.
inline bool lex_less(const Point& a, const Point& b) {
    return std::lexicographical_compare(a.coords.begin(), a.coords.end(), b.coords.begin(),
                                        b.coords.end());
}

inline Rational linf_distance(const Point& a, const Point& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("linf_distance: dimension mismatch");
    Rational m(0);
    for (int i = 0; i < a.dim(); ++i) m = max(m, (a[i] - b[i]).abs());
    return m;
}

enum class End { closed, open };

/// One coordinate interval with explicit endpoint closure.
struct Interval {
    Rational lo, hi;
    End lo_end = End::closed;
    End hi_end = End::open;

    bool empty() const {
        if (lo < hi) return false;
        if (lo > hi) return true;
        return !(lo_end == End::closed && hi_end == End::closed);
    }
    Rational length() const { return lo < hi ? hi - lo : Rational(0); }

    bool contains(const Rational& x) const {
        if (x < lo || x > hi) return false;
        if (x == lo && lo_end == End::open) return false;
        if (x == hi && hi_end == End::open) return false;
        return true;
    }

    static Interval closed(Rational a, Rational b) { return {std::move(a), std::move(b), End::closed, End::closed}; }
    static Interval half_open(Rational a, Rational b) { return {std::move(a), std::move(b), End::closed, End::open}; }
    static Interval open(Rational a, Rational b) { return {std::move(a), std::move(b), End::open, End::open}; }
};

inline Interval intersect(const Interval& a, const Interval& b) {
    Interval r;
    if (a.lo > b.lo) {
        r.lo = a.lo;
        r.lo_end = a.lo_end;
    } else if (b.lo > a.lo) {
        r.lo = b.lo;
        r.lo_end = b.lo_end;
    } else {
        r.lo = a.lo;
        r.lo_end = (a.lo_end == End::open || b.lo_end == End::open) ? End::open : End::closed;
    }
    if (a.hi < b.hi) {
        r.hi = a.hi;
        r.hi_end = a.hi_end;
    } else if (b.hi < a.hi) {
        r.hi = b.hi;
        r.hi_end = b.hi_end;
    } else {
        r.hi = a.hi;
        r.hi_end = (a.hi_end == End::open || b.hi_end == End::open) ? End::open : End::closed;
    }
    return r;
}

/// Axis-aligned box: product of per-coordinate intervals.
struct AxisBox {
    std::vector<Interval> iv;

    AxisBox() = default;
    explicit AxisBox(std::vector<Interval> v) : iv(std::move(v)) {}

    int dim() const { return static_cast<int>(iv.size()); }
    bool empty() const {
        for (const auto& i : iv)
            if (i.empty()) return true;
        return iv.empty();
    }

    /// Product of side lengths; 0 for an empty box. Closure flags do not affect volume.
    Rational volume() const {
        if (empty()) return Rational(0);
        Rational v(1);
        for (const auto& i : iv) v *= i.length();
        return v;
    }

    bool contains(const Point& p) const {
        if (p.dim() != dim()) throw DimensionMismatch("AxisBox::contains: dimension mismatch");
        for (int i = 0; i < dim(); ++i)
            if (!iv[i].contains(p[i])) return false;
        return true;
    }

    Point low() const {
        Point p;
        for (const auto& i : iv) p.coords.push_back(i.lo);
        return p;
    }
    Point high() const {
        Point p;
        for (const auto& i : iv) p.coords.push_back(i.hi);
        return p;
    }

    /// Half-open unit-style cube a + prod [0, s_i).
    static AxisBox half_open(const Point& corner, const std::vector<Rational>& sides) {
        AxisBox b;
        for (size_t i = 0; i < corner.coords.size(); ++i)
            b.iv.push_back(Interval::half_open(corner.coords[i], corner.coords[i] + sides[i]));
        return b;
    }
};

inline AxisBox intersect(const AxisBox& a, const AxisBox& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("intersect: dimension mismatch");
    AxisBox r;
    for (int i = 0; i < a.dim(); ++i) r.iv.push_back(intersect(a.iv[i], b.iv[i]));
    return r;
}

inline bool boxes_intersect(const AxisBox& a, const AxisBox& b) { return !intersect(a, b).empty(); }

enum class BallKind { closed, open };

/// l_infinity ball; as a set it is the box [center - r, center + r] with matching closure.
struct InfBall {
    Point center;
    Rational radius;
    BallKind kind = BallKind::closed;

    AxisBox as_box() const {
        AxisBox b;
        End e = (kind == BallKind::closed) ? End::closed : End::open;
        for (const auto& c : center.coords) b.iv.push_back({c - radius, c + radius, e, e});
        return b;
    }
};

/// Minkowski sum box + ball(0, eps): inflates every side by eps, closure per ball kind on the
/// inflated ends combined with the box's own flags (closed + closed stays closed, else open).
/// An open ball of radius zero is the empty set, so the sum is empty.
inline AxisBox minkowski_inflate(const AxisBox& b, const Rational& eps, BallKind kind) {
    AxisBox r;
    if (kind == BallKind::open && eps.sgn() == 0) {
        for (const auto& i : b.iv) r.iv.push_back({i.lo, i.lo, End::open, End::open});
        return r;
    }
    for (const auto& i : b.iv) {
        End lo_e = (i.lo_end == End::closed && kind == BallKind::closed) ? End::closed : End::open;
        End hi_e = (i.hi_end == End::closed && kind == BallKind::closed) ? End::closed : End::open;
        r.iv.push_back({i.lo - eps, i.hi + eps, lo_e, hi_e});
    }
    return r;
}

/// Does a half-open cube [a, a+s) meet the ball? Exact per-coordinate test:
/// closed ball: a_i <= p_i + eps and a_i + s_i > p_i - eps; open ball makes the
/// first comparison strict (and requires eps > 0).
inline bool box_intersects_ball(const AxisBox& cube, const InfBall& ball) {
    if (cube.dim() != ball.center.dim())
        throw DimensionMismatch("box_intersects_ball: dimension mismatch");
    if (ball.kind == BallKind::open && ball.radius.sgn() == 0) return false;
    for (int i = 0; i < cube.dim(); ++i) {
        const Rational hi = ball.center[i] + ball.radius;
        const Rational lo = ball.center[i] - ball.radius;
        if (ball.kind == BallKind::closed) {
            if (!(cube.iv[i].lo <= hi)) return false;
        } else {
            if (!(cube.iv[i].lo < hi)) return false;
        }
        if (!(cube.iv[i].hi > lo)) return false;
    }
    return true;
}

}  // namespace secluded
