#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <thread>

#include "partition.hpp"
#include "rng.hpp"

namespace secluded {

/// Members of a partition intersecting an l_infinity ball, with exact count.
struct NeighborhoodReport {
    Point point;
    Rational radius;
    BallKind kind = BallKind::closed;
    std::vector<MemberId> members;  // sorted by corner, lexicographically
    size_t count = 0;
};

namespace detail {

/// Integer layers n such that [n, n+1) meets the interval with the given upper end;
/// the lower end is never strict against a right-open cube. Returns {nmin, nmax}
/// (empty when nmin > nmax).
inline std::pair<Integer, Integer> layer_range(const Rational& lo, const Rational& hi,
                                               bool hi_strict) {
    Integer nmin = (lo - Rational(1)).floor() + Integer(1);  // n + 1 > lo
    Integer nmax = hi_strict ? (hi.is_integer() ? hi.floor() - Integer(1) : hi.floor())
                             : hi.floor();                   // n <= hi (or n < hi)
    return {std::move(nmin), std::move(nmax)};
}

/// One coordinate of an axis-aligned query window. `hi_strict` marks an open upper end;
/// the lower end's openness never changes which half-open cubes are hit.
struct WindowAxis {
    Rational lo, hi;
    bool hi_strict = false;
};

template <typename Emit>
void layered_window_rec(int d, const std::vector<Rational>& shifts,
                        std::vector<WindowAxis>& win, std::vector<Integer>& prefix,
                        const Emit& emit) {
    auto [nmin, nmax] = layer_range(win[d - 1].lo, win[d - 1].hi, win[d - 1].hi_strict);
    for (Integer n = nmin; n <= nmax; ++n) {
        prefix.push_back(n);
        if (d == 1) {
            emit(prefix);
        } else {
            const Rational delta = Rational(n) * shifts[d - 2];
            for (int i = 0; i < d - 1; ++i) {
                win[i].lo -= delta;
                win[i].hi -= delta;
            }
            layered_window_rec(d - 1, shifts, win, prefix, emit);
            for (int i = 0; i < d - 1; ++i) {
                win[i].lo += delta;
                win[i].hi += delta;
            }
        }
        prefix.pop_back();
    }
}

/// Enumerates id segments of members whose cube meets the window (local coordinates).
inline void enumerate_window_rec(const PartitionSpec& spec, std::vector<WindowAxis> win,
                                 std::vector<std::vector<Integer>>& out) {
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, GridSpec>) {
                std::vector<std::pair<Integer, Integer>> ranges;
                for (int i = 0; i < s.d; ++i)
                    ranges.push_back(layer_range(win[i].lo, win[i].hi, win[i].hi_strict));
                std::vector<Integer> cur;
                std::function<void(int)> walk = [&](int axis) {
                    if (axis == s.d) {
                        out.push_back(cur);
                        return;
                    }
                    for (Integer n = ranges[axis].first; n <= ranges[axis].second; ++n) {
                        cur.push_back(n);
                        walk(axis + 1);
                        cur.pop_back();
                    }
                };
                walk(0);
            } else if constexpr (std::is_same_v<T, LayeredSpec>) {
                std::vector<Integer> prefix;
                layered_window_rec(s.d, s.shifts, win, prefix,
                                   [&](const std::vector<Integer>& p) { out.push_back(p); });
            } else if constexpr (std::is_same_v<T, ProductSpec>) {
                std::vector<std::vector<std::vector<Integer>>> parts;
                size_t base = 0;
                for (const auto& f : s.factors) {
                    const size_t fd = static_cast<size_t>(f.dim());
                    std::vector<WindowAxis> sub(win.begin() + base, win.begin() + base + fd);
                    parts.emplace_back();
                    enumerate_window_rec(f, std::move(sub), parts.back());
                    base += fd;
                }
                std::vector<Integer> cur;
                std::function<void(size_t)> walk = [&](size_t fi) {
                    if (fi == parts.size()) {
                        out.push_back(cur);
                        return;
                    }
                    for (const auto& seg : parts[fi]) {
                        const size_t mark = cur.size();
                        cur.insert(cur.end(), seg.begin(), seg.end());
                        walk(fi + 1);
                        cur.resize(mark);
                    }
                };
                walk(0);
            } else if constexpr (std::is_same_v<T, ScaledSpec>) {
                for (auto& w : win) {
                    w.lo = w.lo / s.factor;
                    w.hi = w.hi / s.factor;
                }
                enumerate_window_rec(*s.inner, std::move(win), out);
            }
        },
        spec.variant());
}

inline size_t count_window_rec(const PartitionSpec& spec, std::vector<WindowAxis> win) {
    return std::visit(
        [&](const auto& s) -> size_t {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, GridSpec>) {
                size_t total = 1;
                for (int i = 0; i < s.d; ++i) {
                    auto [nmin, nmax] = layer_range(win[i].lo, win[i].hi, win[i].hi_strict);
                    if (nmax < nmin) return 0;
                    total *= static_cast<size_t>((nmax - nmin).to_long() + 1);
                }
                return total;
            } else if constexpr (std::is_same_v<T, LayeredSpec>) {
                size_t total = 0;
                std::vector<Integer> prefix;
                layered_window_rec(s.d, s.shifts, win, prefix,
                                   [&](const std::vector<Integer>&) { ++total; });
                return total;
            } else if constexpr (std::is_same_v<T, ProductSpec>) {
                size_t total = 1;
                size_t base = 0;
                for (const auto& f : s.factors) {
                    const size_t fd = static_cast<size_t>(f.dim());
                    std::vector<WindowAxis> sub(win.begin() + base, win.begin() + base + fd);
                    total *= count_window_rec(f, std::move(sub));
                    if (total == 0) return 0;
                    base += fd;
                }
                return total;
            } else if constexpr (std::is_same_v<T, ScaledSpec>) {
                for (auto& w : win) {
                    w.lo = w.lo / s.factor;
                    w.hi = w.hi / s.factor;
                }
                return count_window_rec(*s.inner, std::move(win));
            }
        },
        spec.variant());
}

inline std::vector<WindowAxis> ball_window(const Point& p, const Rational& eps, BallKind kind) {
    std::vector<WindowAxis> win;
    for (const auto& c : p.coords) win.push_back({c - eps, c + eps, kind == BallKind::open});
    return win;
}

}  // namespace detail

/// Exactly the members whose cube intersects the ball, by layer-recursive window
/// enumeration (never an unbounded scan).
inline NeighborhoodReport enumerate_neighborhood(const PartitionSpec& spec, const Point& p,
                                                 const Rational& eps,
                                                 BallKind kind = BallKind::closed) {
    if (p.dim() != spec.dim()) throw DimensionMismatch("enumerate_neighborhood: dimension mismatch");
    if (eps.sgn() < 0) throw std::invalid_argument("enumerate_neighborhood: eps must be >= 0");
    NeighborhoodReport rep;
    rep.point = p;
    rep.radius = eps;
    rep.kind = kind;
    if (kind == BallKind::open && eps.sgn() == 0) return rep;  // empty ball
    std::vector<std::vector<Integer>> raw;
    detail::enumerate_window_rec(spec, detail::ball_window(p, eps, kind), raw);
    rep.members.reserve(raw.size());
    for (auto& seg : raw) rep.members.push_back(MemberId{std::move(seg)});
    std::sort(rep.members.begin(), rep.members.end(), [&](const MemberId& a, const MemberId& b) {
        return lex_less(corner_of(spec, a), corner_of(spec, b));
    });
    rep.count = rep.members.size();
    return rep;
}

inline size_t count_neighborhood(const PartitionSpec& spec, const Point& p, const Rational& eps,
                                 BallKind kind = BallKind::closed) {
    if (p.dim() != spec.dim()) throw DimensionMismatch("count_neighborhood: dimension mismatch");
    if (kind == BallKind::open && eps.sgn() == 0) return 0;
    return detail::count_window_rec(spec, detail::ball_window(p, eps, kind));
}

/// Members whose cube intersects the closed box window (per-axis [lo, hi]).
inline std::vector<MemberId> members_in_window(const PartitionSpec& spec, const Point& lo,
                                               const Point& hi) {
    std::vector<detail::WindowAxis> win;
    for (int i = 0; i < spec.dim(); ++i) win.push_back({lo[i], hi[i], false});
    std::vector<std::vector<Integer>> raw;
    detail::enumerate_window_rec(spec, std::move(win), raw);
    std::vector<MemberId> out;
    out.reserve(raw.size());
    for (auto& seg : raw) out.push_back(MemberId{std::move(seg)});
    return out;
}

enum class AuditStrategy { exact, randomized };

struct AuditOptions {
    AuditStrategy strategy = AuditStrategy::exact;
    BallKind kind = BallKind::closed;
    std::uint64_t budget = 20000;  // randomized: max count evaluations
    std::uint64_t seed = 0;
    int threads = 1;
    int max_exact_block_dim = 4;  // exact candidate product grows ~ (2d^2)^d per block
};

struct AuditResult {
    Integer max_count;
    Point witness;
    AuditStrategy strategy = AuditStrategy::exact;
    std::uint64_t candidates_examined = 0;
    bool exhaustive = true;  // false: randomized lower bound only
    Rational epsilon;
    BallKind kind = BallKind::closed;
};

namespace detail {

/// Irreducible coordinate block of a spec: a (possibly scaled) layered partition.
/// Grid axes become 1-dimensional blocks.
struct Block {
    int offset = 0;
    int d = 1;
    std::vector<Rational> shifts;
    Rational scale{1};
};

inline void flatten_blocks(const PartitionSpec& spec, int offset, const Rational& scale,
                           std::vector<Block>& out) {
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, GridSpec>) {
                for (int i = 0; i < s.d; ++i) out.push_back({offset + i, 1, {}, scale});
            } else if constexpr (std::is_same_v<T, LayeredSpec>) {
                out.push_back({offset, s.d, s.shifts, scale});
            } else if constexpr (std::is_same_v<T, ProductSpec>) {
                int base = offset;
                for (const auto& f : s.factors) {
                    flatten_blocks(f, base, scale, out);
                    base += f.dim();
                }
            } else if constexpr (std::is_same_v<T, ScaledSpec>) {
                flatten_blocks(*s.inner, offset, scale * s.factor, out);
            }
        },
        spec.variant());
}

struct BlockAudit {
    size_t max_count = 0;
    std::vector<Rational> witness;  // unit (unscaled) block coordinates
    std::uint64_t examined = 0;
    Rational nudge{0};  // delta such that the open ball at witness + delta*1 is maximal
};

/// Exact max of p -> #{members : cube meets closed ball(p, eps)} over one unit layered
/// block. The count is a sum of indicators of boxes prod_i [c_i-eps, c_i+1+eps) in
/// p-space, so it attains its maximum at a point whose every coordinate is a left
/// endpoint c_i - eps; candidates come from member corners in the search region
/// [-R, R]^d. Branch-and-bound: a value is descended only while the boxes matching the
/// prefix can still beat the subtree best; top-level subtrees are independent
/// (share-nothing), so the result is identical for any thread count.
inline BlockAudit audit_block_exact(const Block& blk, const Rational& eps, int region_d,
                                    int threads) {
    const int m = blk.d;
    const PartitionSpec unit =
        m == 1 ? PartitionSpec::grid(1) : PartitionSpec::layered(m, blk.shifts);
    const Rational R(region_d);
    // Candidate coordinates lie in [-R - eps, R - eps]; any box containing one has its
    // corner in (v - 1 - eps, v + eps], so this window covers every relevant member.
    Point wlo, whi;
    for (int i = 0; i < m; ++i) {
        wlo.coords.push_back(-R - Rational(2) - eps - eps);
        whi.coords.push_back(R + Rational(1));
    }
    std::vector<MemberId> members = members_in_window(unit, wlo, whi);

    std::vector<std::vector<Rational>> lo(m), hi(m);  // per-axis box ends, index-aligned
    std::vector<std::vector<Rational>> cand(m);
    for (const auto& id : members) {
        Point c = corner_of(unit, id);
        bool in_region = true;
        for (int i = 0; i < m; ++i)
            if (c[i] < -R || c[i] > R) in_region = false;
        for (int i = 0; i < m; ++i) {
            lo[i].push_back(c[i] - eps);
            hi[i].push_back(c[i] + Rational(1) + eps);
            if (in_region) cand[i].push_back(c[i] - eps);
        }
    }
    for (auto& v : cand) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }

    struct Sub {
        size_t best = 0;
        std::vector<Rational> point;
        std::uint64_t examined = 0;
    };
    auto run_subtree = [&](const Rational& v0) {
        Sub sub;
        std::vector<size_t> active;
        active.reserve(members.size());
        for (size_t b = 0; b < members.size(); ++b)
            if (lo[0][b] <= v0 && v0 < hi[0][b]) active.push_back(b);
        std::vector<Rational> prefix{v0};
        std::function<void(int, const std::vector<size_t>&)> rec =
            [&](int axis, const std::vector<size_t>& act) {
                if (axis == m) {
                    ++sub.examined;
                    if (act.size() > sub.best) {
                        sub.best = act.size();
                        sub.point = prefix;
                    }
                    return;
                }
                for (const Rational& v : cand[axis]) {
                    std::vector<size_t> next;
                    next.reserve(act.size());
                    for (size_t b : act)
                        if (lo[axis][b] <= v && v < hi[axis][b]) next.push_back(b);
                    if (next.size() > sub.best) {
                        prefix.push_back(v);
                        rec(axis + 1, next);
                        prefix.pop_back();
                    }
                }
            };
        if (m == 1) {
            ++sub.examined;
            sub.best = active.size();
            sub.point = prefix;
        } else {
            rec(1, active);
        }
        return sub;
    };

    std::vector<Sub> subs(cand[0].size());
    if (threads <= 1 || cand[0].size() <= 1) {
        for (size_t i = 0; i < cand[0].size(); ++i) subs[i] = run_subtree(cand[0][i]);
    } else {
        std::atomic<size_t> next{0};
        auto worker = [&] {
            for (size_t i = next.fetch_add(1); i < cand[0].size(); i = next.fetch_add(1))
                subs[i] = run_subtree(cand[0][i]);
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    BlockAudit out;
    for (const auto& sub : subs) {
        out.examined += sub.examined;
        if (sub.best > out.max_count) {  // first maximizer in candidate order is lex-least
            out.max_count = sub.best;
            out.witness = sub.point;
        }
    }
    // Half the smallest gap from a witness coordinate to any box boundary above it; the
    // open-ball count at witness + nudge equals the closed-ball count at witness.
    if (out.max_count > 0) {
        std::optional<Rational> gap;
        for (int i = 0; i < m; ++i) {
            auto scan = [&](const std::vector<Rational>& arr) {
                for (const Rational& b : arr)
                    if (b > out.witness[static_cast<size_t>(i)]) {
                        Rational g = b - out.witness[static_cast<size_t>(i)];
                        if (!gap || g < *gap) gap = g;
                    }
            };
            scan(lo[i]);
            scan(hi[i]);
        }
        out.nudge = gap ? *gap / Rational(2) : Rational(1, 2);
    }
    return out;
}

inline BlockAudit audit_block(const Block& blk, const Rational& eps, int region_d, int threads) {
    // A scaled block is audited as its unit version at eps/scale (exact equivalence).
    return audit_block_exact(blk, eps / blk.scale, region_d, threads);
}

}  // namespace detail

/// Exact or randomized seclusion audit: the max neighborhood count (the least k for which
/// the spec is (k, eps)-secluded within the searched region). Exact mode decomposes into
/// irreducible blocks (the l_inf neighborhood of a product is the product of factor
/// neighborhoods), sweeps the left-endpoint candidates per block over [-d, d]^d, and
/// multiplies. The witness is the lexicographically least candidate maximizer; for open
/// balls it is nudged into the maximal open cell.
inline AuditResult audit_seclusion(const PartitionSpec& spec, const Rational& eps,
                                   const AuditOptions& opts = {}) {
    if (eps.sgn() <= 0) throw std::invalid_argument("audit_seclusion: eps must be > 0");
    const int d = spec.dim();
    AuditResult res;
    res.epsilon = eps;
    res.kind = opts.kind;
    res.strategy = opts.strategy;

    if (opts.strategy == AuditStrategy::exact) {
        std::vector<detail::Block> blocks;
        detail::flatten_blocks(spec, 0, Rational(1), blocks);
        for (const auto& b : blocks)
            if (b.d > opts.max_exact_block_dim)
                throw std::invalid_argument(
                    "audit_seclusion: exact mode limited to irreducible blocks of dimension <= " +
                    std::to_string(opts.max_exact_block_dim) +
                    " (use the randomized strategy or raise max_exact_block_dim)");
        res.max_count = Integer(1);
        res.witness.coords.assign(static_cast<size_t>(d), Rational(0));
        for (const auto& blk : blocks) {
            detail::BlockAudit ba = detail::audit_block(blk, eps, d, opts.threads);
            res.max_count = res.max_count * Integer(static_cast<long>(ba.max_count));
            res.candidates_examined += ba.examined;
            for (int i = 0; i < blk.d; ++i) {
                Rational w = ba.witness[static_cast<size_t>(i)];
                if (opts.kind == BallKind::open) w += ba.nudge;
                res.witness[static_cast<size_t>(blk.offset + i)] = w * blk.scale;
            }
        }
        res.exhaustive = true;
        return res;
    }

    // Randomized: sampled starts plus coordinate-wise critical-value hill climbing;
    // reports a lower bound on the true max (never exhaustive).
    SplitMix rng(opts.seed);
    Rational side_max(1);
    for (const auto& s : spec.sides()) side_max = max(side_max, s);
    const Rational R = Rational(d) * side_max;
    const long Rnum = R.ceil().to_long();
    size_t best = 0;
    Point best_point;
    std::uint64_t examined = 0;
    auto evaluate = [&](const Point& q) {
        ++examined;
        return count_neighborhood(spec, q, eps, opts.kind);
    };
    const Rational travel = (Rational(1) + eps) * side_max + eps + Rational(1);
    while (examined < opts.budget) {
        Point p;
        for (int i = 0; i < d; ++i)
            p.coords.emplace_back(rng.next_range(-64 * Rnum, 64 * Rnum), 64);
        size_t cur = evaluate(p);
        bool improved = true;
        while (improved && examined < opts.budget) {
            improved = false;
            for (int axis = 0; axis < d && examined < opts.budget; ++axis) {
                Point wlo = p, whi = p;
                for (int j = 0; j < d; ++j) {
                    Rational pad = (j == axis) ? travel : eps;
                    wlo[static_cast<size_t>(j)] -= pad;
                    whi[static_cast<size_t>(j)] += pad;
                }
                std::vector<Rational> vals;
                for (const auto& id : members_in_window(spec, wlo, whi))
                    vals.push_back(corner_of(spec, id)[static_cast<size_t>(axis)] - eps);
                std::sort(vals.begin(), vals.end());
                vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
                Point q = p;
                for (const Rational& v : vals) {
                    if (examined >= opts.budget) break;
                    q[static_cast<size_t>(axis)] = v;
                    size_t c = evaluate(q);
                    if (c > cur) {
                        cur = c;
                        p = q;
                        improved = true;
                    }
                }
            }
        }
        if (cur > best || (cur == best && (best_point.dim() == 0 || lex_less(p, best_point)))) {
            best = cur;
            best_point = p;
        }
    }
    res.max_count = Integer(static_cast<long>(best));
    res.witness = best_point;
    res.candidates_examined = examined;
    res.exhaustive = false;
    return res;
}

struct WitnessResult {
    Point witness;
    size_t count = 0;       // open-ball neighborhood count at the witness
    Integer bound;          // ceil((1 + 2 eps)^d) for unit cubes (per-axis product form)
    bool theorem_ok = false;
    bool exhaustive = true;
    std::uint64_t candidates_examined = 0;
};

/// Point whose open eps-ball meets at least ceil((1+2eps)^d) members (unit-cube specs;
/// scaled axes contribute (1 + 2 eps / side) factors). Exact mode failing the bound is a
/// theorem violation, reported via theorem_ok = false.
inline WitnessResult lower_bound_witness(const PartitionSpec& spec, const Rational& eps,
                                         AuditOptions opts = {}) {
    opts.kind = BallKind::open;
    AuditResult audit = audit_seclusion(spec, eps, opts);
    WitnessResult w;
    w.witness = audit.witness;
    w.exhaustive = audit.exhaustive;
    w.candidates_examined = audit.candidates_examined;
    Rational prod(1);
    for (const auto& s : spec.sides()) prod *= Rational(1) + Rational(2) * eps / s;
    w.bound = prod.ceil();
    w.count = count_neighborhood(spec, w.witness, eps, BallKind::open);
    w.theorem_ok = Integer(static_cast<long>(w.count)) >= w.bound;
    return w;
}

}  // namespace secluded
