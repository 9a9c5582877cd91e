#ifndef RADFRICTION_QUADRULES_HPP
#define RADFRICTION_QUADRULES_HPP

#include <vector>

namespace radfriction {

struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre rule on [-1, 1]. Nodes come out symmetric about 0.
QuadRule gauss_legendre(int n);

// Gauss-Hermite rule for the weight exp(-x^2) on (-inf, inf).
QuadRule gauss_hermite(int n);

// Running compensated (Kahan) sum.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

} // namespace radfriction

#endif
