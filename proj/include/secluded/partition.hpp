#pragma once

#include <functional>
#include <memory>
#include <variant>
#include <vector>

#include "geometry.hpp"

namespace secluded {

class PartitionSpec;

/// Standard grid of half-open unit cubes with integer corners.
struct GridSpec {
    int d = 1;
};

/// Layered recursive unit-cube partition. Peeling coordinate k (top first) selects the
/// integer layer n_k and translates all remaining coordinates by n_k * shifts[k-2]
/// (shifts has one entry per recursion level; level j is applied when peeling
/// coordinate j+1, so shifts.size() == d-1).
struct LayeredSpec {
    int d = 1;
    std::vector<Rational> shifts;
};

/// Product partition over consecutive coordinate blocks.
struct ProductSpec {
    std::vector<PartitionSpec> factors;
};

/// Every member cube of `inner` scaled by `factor` about the origin.
struct ScaledSpec {
    std::shared_ptr<const PartitionSpec> inner;
    Rational factor;
};

/// The level-j shift of the layered construction that the seclusion audit certifies as
/// (d+1, 1/(2d))-secluded: (d-j)/d, i.e. the descending schedule [(d-1)/d, ..., 1/d].
/// The constant-1/d schedule fails its audit for d >= 3 (max count 5 at d=3, 8 at d=4).
inline std::vector<Rational> layered_default_shifts(int d) {
    std::vector<Rational> s;
    for (int j = 1; j < d; ++j) s.emplace_back(d - j, d);
    return s;
}

/// Declarative description of a unit-cube partition of R^d (possibly scaled).
class PartitionSpec {
  public:
    using Variant = std::variant<GridSpec, LayeredSpec, ProductSpec, ScaledSpec>;

    PartitionSpec() : v_(GridSpec{1}) {}
    explicit PartitionSpec(Variant v) : v_(std::move(v)) { validate(); }

    static PartitionSpec grid(int d) { return PartitionSpec(GridSpec{d}); }
    static PartitionSpec layered(int d, std::vector<Rational> shifts) {
        return PartitionSpec(LayeredSpec{d, std::move(shifts)});
    }
    /// Layered with the audited default schedule.
    static PartitionSpec layered(int d) { return layered(d, layered_default_shifts(d)); }
    static PartitionSpec product(std::vector<PartitionSpec> factors) {
        return PartitionSpec(ProductSpec{std::move(factors)});
    }
    static PartitionSpec scaled(PartitionSpec inner, Rational factor) {
        return PartitionSpec(
            ScaledSpec{std::make_shared<const PartitionSpec>(std::move(inner)), std::move(factor)});
    }

    const Variant& variant() const { return v_; }

    int dim() const {
        return std::visit(
            [](const auto& s) -> int {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, GridSpec>) return s.d;
                if constexpr (std::is_same_v<T, LayeredSpec>) return s.d;
                if constexpr (std::is_same_v<T, ProductSpec>) {
                    int n = 0;
                    for (const auto& f : s.factors) n += f.dim();
                    return n;
                }
                if constexpr (std::is_same_v<T, ScaledSpec>) return s.inner->dim();
            },
            v_);
    }

    /// Per-axis cube side lengths (1 for unit-cube variants, scaled otherwise).
    std::vector<Rational> sides() const {
        std::vector<Rational> out;
        collect_sides(out, Rational(1));
        return out;
    }

    bool is_unit_cube() const {
        for (const auto& s : sides())
            if (s != Rational(1)) return false;
        return true;
    }

  private:
    void validate() const {
        std::visit(
            [](const auto& s) {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, GridSpec>) {
                    if (s.d < 1) throw std::invalid_argument("grid: d must be >= 1");
                }
                if constexpr (std::is_same_v<T, LayeredSpec>) {
                    if (s.d < 1) throw std::invalid_argument("layered: d must be >= 1");
                    if (static_cast<int>(s.shifts.size()) != s.d - 1)
                        throw std::invalid_argument("layered: shifts list must have length d-1");
                }
                if constexpr (std::is_same_v<T, ProductSpec>) {
                    if (s.factors.empty()) throw std::invalid_argument("product: empty factor list");
                }
                if constexpr (std::is_same_v<T, ScaledSpec>) {
                    if (s.factor.sgn() <= 0) throw std::invalid_argument("scaled: factor must be > 0");
                }
            },
            v_);
    }

    void collect_sides(std::vector<Rational>& out, const Rational& mult) const {
        std::visit(
            [&](const auto& s) {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, GridSpec>) {
                    for (int i = 0; i < s.d; ++i) out.push_back(mult);
                } else if constexpr (std::is_same_v<T, LayeredSpec>) {
                    for (int i = 0; i < s.d; ++i) out.push_back(mult);
                } else if constexpr (std::is_same_v<T, ProductSpec>) {
                    for (const auto& f : s.factors) f.collect_sides(out, mult);
                } else if constexpr (std::is_same_v<T, ScaledSpec>) {
                    s.inner->collect_sides(out, mult * s.factor);
                }
            },
            v_);
    }

    Variant v_;
};

/// Canonical index of a partition member. Grid: per-coordinate cell indices. Layered:
/// layer indices outermost-first (indices[0] is the top coordinate's layer). Product:
/// concatenation of factor ids. Two ids are equal iff their cubes are equal.
struct MemberId {
    std::vector<Integer> indices;

    friend bool operator==(const MemberId& a, const MemberId& b) { return a.indices == b.indices; }
    friend bool operator!=(const MemberId& a, const MemberId& b) { return !(a == b); }
    friend bool operator<(const MemberId& a, const MemberId& b) {
        return std::lexicographical_compare(a.indices.begin(), a.indices.end(), b.indices.begin(),
                                            b.indices.end());
    }
};

/// Claimed seclusion parameters: degree k and tolerance epsilon.
struct SecludedClaim {
    Integer k;
    Rational epsilon;
};

namespace detail {

inline void member_of_rec(const PartitionSpec& spec, const Point& x, size_t coord_base,
                          const Rational& scale, std::vector<Integer>& out) {
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, GridSpec>) {
                for (int i = 0; i < s.d; ++i) out.push_back((x[coord_base + i] / scale).floor());
            } else if constexpr (std::is_same_v<T, LayeredSpec>) {
                Rational acc(0);
                std::vector<Integer> layers;
                for (int k = s.d; k >= 1; --k) {
                    Integer n = (x[coord_base + k - 1] / scale - acc).floor();
                    if (k >= 2) acc += Rational(n) * s.shifts[k - 2];
                    layers.push_back(std::move(n));
                }
                for (auto& n : layers) out.push_back(std::move(n));
            } else if constexpr (std::is_same_v<T, ProductSpec>) {
                size_t base = coord_base;
                for (const auto& f : s.factors) {
                    member_of_rec(f, x, base, scale, out);
                    base += static_cast<size_t>(f.dim());
                }
            } else if constexpr (std::is_same_v<T, ScaledSpec>) {
                member_of_rec(*s.inner, x, coord_base, scale * s.factor, out);
            }
        },
        spec.variant());
}

inline void corner_of_rec(const PartitionSpec& spec, const std::vector<Integer>& idx,
                          size_t& idx_pos, const Rational& scale, std::vector<Rational>& out) {
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, GridSpec>) {
                for (int i = 0; i < s.d; ++i) out.push_back(Rational(idx[idx_pos++]) * scale);
            } else if constexpr (std::is_same_v<T, LayeredSpec>) {
                // indices outermost-first: idx[0]=n_d ... idx[d-1]=n_1;
                // corner_i = n_i + sum_{k>i} n_k * shifts[k-2].
                std::vector<Rational> corner(s.d, Rational(0));
                Rational acc(0);
                for (int k = s.d; k >= 1; --k) {
                    Rational n(idx[idx_pos++]);
                    corner[k - 1] = (n + acc) * scale;
                    if (k >= 2) acc += n * s.shifts[k - 2];
                }
                for (auto& c : corner) out.push_back(std::move(c));
            } else if constexpr (std::is_same_v<T, ProductSpec>) {
                for (const auto& f : s.factors) corner_of_rec(f, idx, idx_pos, scale, out);
            } else if constexpr (std::is_same_v<T, ScaledSpec>) {
                corner_of_rec(*s.inner, idx, idx_pos, scale * s.factor, out);
            }
        },
        spec.variant());
}

}  // namespace detail

/// Member containing x (half-open convention); total on R^d.
inline MemberId member_of(const PartitionSpec& spec, const Point& x) {
    if (x.dim() != spec.dim()) throw DimensionMismatch("member_of: dimension mismatch");
    MemberId id;
    detail::member_of_rec(spec, x, 0, Rational(1), id.indices);
    return id;
}

/// Low corner of the member's half-open cube.
inline Point corner_of(const PartitionSpec& spec, const MemberId& id) {
    if (static_cast<int>(id.indices.size()) != spec.dim())
        throw std::invalid_argument("corner_of: id length does not match spec dimension");
    Point p;
    size_t pos = 0;
    detail::corner_of_rec(spec, id.indices, pos, Rational(1), p.coords);
    return p;
}

inline Point center_of(const PartitionSpec& spec, const MemberId& id) {
    Point p = corner_of(spec, id);
    auto sides = spec.sides();
    for (size_t i = 0; i < p.coords.size(); ++i) p.coords[i] += sides[i] / Rational(2);
    return p;
}

/// The member's cube as a half-open AxisBox.
inline AxisBox cube_of(const PartitionSpec& spec, const MemberId& id) {
    return AxisBox::half_open(corner_of(spec, id), spec.sides());
}

inline bool contains(const PartitionSpec& spec, const MemberId& id, const Point& x) {
    return cube_of(spec, id).contains(x);
}

inline PartitionSpec product(std::vector<PartitionSpec> factors) {
    return PartitionSpec::product(std::move(factors));
}

/// Member cubes become s * (original cubes); a (k, eps) claim becomes (k, s*eps).
inline PartitionSpec scale(const PartitionSpec& spec, const Rational& s) {
    if (s.sgn() <= 0) throw std::invalid_argument("scale: factor must be > 0");
    if (const auto* sc = std::get_if<ScaledSpec>(&spec.variant()))
        return PartitionSpec::scaled(*sc->inner, sc->factor * s);
    return PartitionSpec::scaled(spec, s);
}

/// Gluing construction: product of ceil(d/f(d)) layered blocks of dimension f(d), the tail
/// padded with blocks of dimension f(d)-1 so the total is exactly d. Claimed parameters
/// k = (f(d)+1)^ceil(d/f(d)), eps = 1/(2 f(d)).
inline std::pair<PartitionSpec, SecludedClaim> build_profile(
    const std::function<long(int)>& f, int d) {
    if (d < 1) throw std::invalid_argument("build_profile: d must be >= 1");
    long fd = f(d);
    if (fd < 1) throw std::invalid_argument("build_profile: f(d) must be >= 1");
    long blocks = (d + fd - 1) / fd;  // ceil(d/f(d))
    std::vector<PartitionSpec> factors;
    if (fd >= d) {
        factors.push_back(PartitionSpec::layered(d));
    } else {
        long small = blocks * fd - d;  // blocks of dimension f(d)-1
        long big = blocks - small;
        for (long i = 0; i < big; ++i) factors.push_back(PartitionSpec::layered(static_cast<int>(fd)));
        for (long i = 0; i < small; ++i)
            factors.push_back(PartitionSpec::layered(static_cast<int>(fd - 1)));
    }
    SecludedClaim claim{Integer::pow(Integer(fd + 1), static_cast<unsigned long>(blocks)),
                        Rational(1, 2 * fd)};
    PartitionSpec spec =
        factors.size() == 1 ? std::move(factors.front()) : PartitionSpec::product(std::move(factors));
    return {std::move(spec), std::move(claim)};
}

}  // namespace secluded
