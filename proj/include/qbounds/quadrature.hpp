#pragma once

#include <functional>
#include <vector>

namespace qbounds {

// Gauss-Hermite rule for weight exp(-x^2): exact for polynomials of degree <= 2n-1.
struct GaussHermiteRule {
    std::vector<double> nodes;   // ascending
    std::vector<double> weights;

    explicit GaussHermiteRule(int n);
    int size() const { return static_cast<int>(nodes.size()); }

    // sum_i w_i f(x_i + shift), i.e. the integral of f(x) exp(-(x - shift)^2).
    template <class F> auto integrate(F &&f, double shift = 0.0) const {
        using R = decltype(f(0.0));
        R acc{};
        for (std::size_t i = 0; i < nodes.size(); ++i)
            acc += weights[i] * f(nodes[i] + shift);
        return acc;
    }
};

} // namespace qbounds
