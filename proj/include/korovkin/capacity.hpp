#pragma once

#include <cstdint>
#include <vector>

#include "korovkin/grid.hpp"
#include "korovkin/report.hpp"

namespace korovkin {

enum class DistortionKind { Identity, Sqrt, Power, Table };

// Nondecreasing distortion gamma with gamma(0) = 0. Table kind interpolates
// linearly between knots and extrapolates with the last slope.
struct Distortion {
    DistortionKind kind = DistortionKind::Identity;
    double alpha = 1.0;                 // Power exponent
    std::vector<double> knots;          // Table; knots[0] may be > 0
    std::vector<double> knot_values;    // nondecreasing, knot_values at 0 measure is 0

    static Distortion identity();
    static Distortion sqrt();
    static Distortion power(double alpha);
    static Distortion table(std::vector<double> knots, std::vector<double> values);

    double operator()(double t) const;  // throws std::domain_error on t < 0
    void validate() const;
};

// Distorted Lebesgue capacity mu(A) = gamma(L(A)), evaluated on the scalar
// Lebesgue measure of A (finite unions of grid cells).
struct Capacity {
    Distortion gamma;

    Capacity() = default;
    explicit Capacity(Distortion g) : gamma(std::move(g)) {}

    double operator()(double lebesgue_measure) const { return gamma(lebesgue_measure); }
    bool is_identity() const { return gamma.kind == DistortionKind::Identity; }
};

// Randomized check of mu(A u B) + mu(A n B) <= mu(A) + mu(B) over cell-union
// pairs drawn from the grid. Reports the worst margin and a witness pair.
PropertyReport submodularity_probe(const Capacity& cap, const Grid& grid, int trials,
                                   std::uint64_t seed, double tol = 1e-10);

}  // namespace korovkin
