#pragma once

#include <functional>
#include <map>

#include "neighborhood.hpp"

namespace secluded {

enum class Representative { corner, center };

/// Deterministic rounding scheme induced by a partition: round(x) is the representative
/// of the scaled member containing x, so x and round(x) always share a member.
struct RoundingScheme {
    PartitionSpec spec;
    Rational scale{1};
    Representative representative = Representative::center;

    PartitionSpec induced_partition() const {
        return scale == Rational(1) ? spec : secluded::scale(spec, scale);
    }
};

inline Point round_point(const RoundingScheme& s, const Point& x) {
    if (x.dim() != s.spec.dim()) throw DimensionMismatch("round_point: dimension mismatch");
    Point y = x;
    for (auto& c : y.coords) c = c / s.scale;
    MemberId id = member_of(s.spec, y);
    Point rep = s.representative == Representative::center ? center_of(s.spec, id)
                                                           : corner_of(s.spec, id);
    for (auto& c : rep.coords) c *= s.scale;
    return rep;
}

/// The universal rounding scheme: the audited layered (d+1, 1/(2d))-secluded partition
/// scaled by 2 d eps0, with center representatives. Guarantees, for x_hat within eps0 of
/// x: ||A(x_hat) - x||_inf <= (d+1) eps0 <= 2 d eps0, and at most d+1 distinct outputs
/// over the closed eps0-ball at any x.
inline RoundingScheme universal_scheme(int d, const Rational& eps0) {
    if (d < 1) throw std::invalid_argument("universal_scheme: d must be >= 1");
    if (eps0.sgn() <= 0) throw std::invalid_argument("universal_scheme: eps0 must be > 0");
    return {PartitionSpec::layered(d), Rational(2 * d) * eps0, Representative::center};
}

inline Point universal_round(int d, const Rational& eps0, const Point& x_hat) {
    return round_point(universal_scheme(d, eps0), x_hat);
}

/// Distinct outputs of the universal scheme over the closed eps0-ball at x, computed
/// exactly by neighborhood enumeration on the unscaled partition at radius 1/(2d).
struct OutputSetReport {
    Point anchor;
    Rational eps0;
    std::vector<Point> outputs;  // sorted lexicographically
    size_t k_observed = 0;
};

inline OutputSetReport output_set(int d, const Rational& eps0, const Point& x) {
    RoundingScheme s = universal_scheme(d, eps0);
    OutputSetReport rep;
    rep.anchor = x;
    rep.eps0 = eps0;
    Point q = x;
    for (auto& c : q.coords) c = c / s.scale;
    NeighborhoodReport n = enumerate_neighborhood(s.spec, q, eps0 / s.scale, BallKind::closed);
    for (const auto& id : n.members) {
        Point rep_pt = center_of(s.spec, id);
        for (auto& c : rep_pt.coords) c *= s.scale;
        rep.outputs.push_back(std::move(rep_pt));
    }
    std::sort(rep.outputs.begin(), rep.outputs.end(), lex_less);
    rep.k_observed = rep.outputs.size();
    return rep;
}

/// Randomized-oracle collapse harness: runs round(oracle(rng)) `trials` times with
/// per-trial derived seeds and reports the distinct-output histogram. Order-independent
/// (multiset semantics); identical seed gives identical output.
struct CollapseStats {
    size_t trials = 0;
    std::uint64_t seed = 0;
    size_t distinct = 0;
    std::vector<std::pair<Point, size_t>> histogram;  // sorted by point, lexicographic
};

inline CollapseStats replicate_collapse(const RoundingScheme& scheme,
                                        const std::function<Point(SplitMix&)>& oracle,
                                        size_t trials, std::uint64_t seed) {
    std::map<std::string, std::pair<Point, size_t>> buckets;
    for (size_t t = 0; t < trials; ++t) {
        SplitMix rng(SplitMix::derive(seed, t));
        Point sample = oracle(rng);
        if (sample.dim() != scheme.spec.dim())
            throw DimensionMismatch("replicate_collapse: oracle output dimension mismatch");
        Point out = round_point(scheme, sample);
        std::string key;
        for (const auto& c : out.coords) key += c.str() + ",";
        auto it = buckets.find(key);
        if (it == buckets.end())
            buckets.emplace(std::move(key), std::make_pair(std::move(out), size_t{1}));
        else
            ++it->second.second;
    }
    CollapseStats st;
    st.trials = trials;
    st.seed = seed;
    st.distinct = buckets.size();
    for (auto& [k, v] : buckets) st.histogram.push_back(std::move(v));
    std::sort(st.histogram.begin(), st.histogram.end(),
              [](const auto& a, const auto& b) { return lex_less(a.first, b.first); });
    return st;
}

/// Adversarial transversal for the no-free-lunch bound: a ball of radius eps0/2 meeting
/// at least ceil((1 + eps0/(2 eps))^d) members of the scheme's induced partition (member
/// diameter 2 eps = scale), with one point per member inside the closed ball.
struct TransversalReport {
    Point center;
    Rational radius;                // eps0 / 2
    std::vector<Point> points;      // points[i] lies in members[i] and in the closed ball
    std::vector<MemberId> members;  // pairwise distinct
    Integer bound;                  // ceil((1 + eps0 / (2 eps))^d)
    bool bound_met = false;
};

inline TransversalReport adversarial_transversal(const RoundingScheme& scheme,
                                                 const Rational& eps0,
                                                 const AuditOptions& opts = {}) {
    if (eps0.sgn() <= 0) throw std::invalid_argument("adversarial_transversal: eps0 must be > 0");
    PartitionSpec induced = scheme.induced_partition();
    const int d = induced.dim();
    const Rational radius = eps0 / Rational(2);

    WitnessResult w = lower_bound_witness(induced, radius, opts);
    TransversalReport rep;
    rep.center = w.witness;
    rep.radius = radius;
    // Member diameter is uniform (= scale) for the schemes built here; the bound is the
    // per-axis product form, which reduces to ceil((1 + eps0/(2 eps))^d) when sides agree.
    rep.bound = w.bound;

    NeighborhoodReport n = enumerate_neighborhood(induced, w.witness, radius, BallKind::closed);
    auto sides = induced.sides();
    for (const auto& id : n.members) {
        Point corner = corner_of(induced, id);
        Point pt;
        for (int i = 0; i < d; ++i) {
            // Midpoint of cube [a, a+s) intersected with the closed ball interval.
            Rational lo = max(corner[static_cast<size_t>(i)],
                              w.witness[static_cast<size_t>(i)] - radius);
            Rational hi = min(corner[static_cast<size_t>(i)] + sides[static_cast<size_t>(i)],
                              w.witness[static_cast<size_t>(i)] + radius);
            pt.coords.push_back((lo + hi) / Rational(2));
        }
        rep.points.push_back(std::move(pt));
        rep.members.push_back(id);
    }
    rep.bound_met = Integer(static_cast<long>(rep.points.size())) >= rep.bound;
    return rep;
}

}  // namespace secluded
