#pragma once

#include <span>
#include <vector>

#include "korovkin/capacity.hpp"

namespace korovkin {

// Piecewise-constant integrand on cells of equal width.
struct CellBlock {
    std::vector<double> values;
    double cell_width = 0.0;

    CellBlock() = default;
    CellBlock(std::vector<double> v, double w);
    double total_measure() const { return cell_width * static_cast<double>(values.size()); }
};

// Asymmetric discrete Choquet integral: sort values descending (stable by
// cell index), cumulative measures S_i, return sum v_(i) * (gamma(S_i) -
// gamma(S_{i-1})). Monotone, positively homogeneous, comonotone-additive and
// translative for all real shifts. The weighted overload allows unequal cell
// widths (clipped window overlaps); it equals the uniform sum on the least
// common refinement because the sum is invariant under splitting a cell into
// equal-valued parts.
double choquet_integral(std::span<const double> values, std::span<const double> widths,
                        const Capacity& cap);
double choquet_integral(const CellBlock& block, const Capacity& cap);

double choquet_average(std::span<const double> values, std::span<const double> widths,
                       const Capacity& cap);
double choquet_average(const CellBlock& block, const Capacity& cap);

// Iterated (Fubini-style) 2D integral: inner Choquet integral along t2 for
// each row, then outer Choquet integral of the row results along t1.
double choquet_integral_2d(const std::vector<std::vector<double>>& rows, double width1,
                           double width2, const Capacity& cap);

}  // namespace korovkin
