// Audits the layered partition in dimensions 1..4 at eps = 1/(2d) and prints the
// measured degree next to the claimed d+1.

#include <iostream>

#include <secluded/neighborhood.hpp>

using namespace secluded;

int main() {
    for (int d = 1; d <= 4; ++d) {
        PartitionSpec spec = PartitionSpec::layered(d);
        Rational eps(1, 2 * d);
        AuditResult r = audit_seclusion(spec, eps);
        std::cout << "d=" << d << "  eps=1/" << 2 * d << "  max_count=" << r.max_count.str()
                  << "  (claim " << d + 1 << ")  witness=(";
        for (int i = 0; i < d; ++i)
            std::cout << (i ? ", " : "") << r.witness[static_cast<size_t>(i)].str();
        std::cout << ")\n";
    }
    return 0;
}
