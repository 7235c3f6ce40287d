// Rounds the outputs of a noisy oracle through the universal scheme and prints how many
// distinct values survive (at most d+1).

#include <iostream>

#include <secluded/rounding.hpp>

using namespace secluded;

int main() {
    const int d = 2;
    const Rational eps0(1, 100);
    RoundingScheme scheme = universal_scheme(d, eps0);

    Point target{{Rational(3, 10), Rational(7, 10)}};
    auto oracle = [&](SplitMix& rng) {
        Point p = target;
        for (auto& c : p.coords) {
            // uniform rational offset in [-eps0, eps0]
            long t = rng.next_range(-1000, 1000);
            c += Rational(t, 1000) * eps0;
        }
        return p;
    };

    CollapseStats st = replicate_collapse(scheme, oracle, 5000, 42);
    std::cout << "trials=" << st.trials << "  distinct outputs=" << st.distinct
              << "  (bound " << d + 1 << ")\n";
    for (const auto& [pt, cnt] : st.histogram) {
        std::cout << "  (";
        for (int i = 0; i < d; ++i) std::cout << (i ? ", " : "") << pt[static_cast<size_t>(i)].str();
        std::cout << ") x" << cnt << "\n";
    }
    return 0;
}
