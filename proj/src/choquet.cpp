#include "korovkin/choquet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace korovkin {

CellBlock::CellBlock(std::vector<double> v, double w) : values(std::move(v)), cell_width(w) {
    if (values.empty()) throw std::invalid_argument("CellBlock: empty block");
    if (!(cell_width > 0)) throw std::invalid_argument("CellBlock: cell_width must be > 0");
    for (double x : values) {
        if (!std::isfinite(x)) throw std::invalid_argument("CellBlock: non-finite value");
    }
}

double choquet_integral(std::span<const double> values, std::span<const double> widths,
                        const Capacity& cap) {
    if (values.empty()) throw std::invalid_argument("choquet_integral: empty block");
    if (values.size() != widths.size())
        throw std::invalid_argument("choquet_integral: values/widths length mismatch");

    // stable order keeps ties bit-deterministic; the telescoping sum is
    // tie-invariant analytically
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return values[i] > values[j]; });

    double acc = 0;
    double cum = 0;
    double gamma_prev = 0;
    for (std::size_t i : order) {
        cum += widths[i];
        double gamma_cum = cap(cum);
        acc += values[i] * (gamma_cum - gamma_prev);
        gamma_prev = gamma_cum;
    }
    return acc;
}

double choquet_integral(const CellBlock& block, const Capacity& cap) {
    std::vector<double> widths(block.values.size(), block.cell_width);
    return choquet_integral(block.values, widths, cap);
}

double choquet_average(std::span<const double> values, std::span<const double> widths,
                       const Capacity& cap) {
    double total = 0;
    for (double w : widths) total += w;
    double denom = cap(total);
    if (!(denom > 0)) throw std::domain_error("choquet_average: degenerate capacity on window");
    return choquet_integral(values, widths, cap) / denom;
}

double choquet_average(const CellBlock& block, const Capacity& cap) {
    std::vector<double> widths(block.values.size(), block.cell_width);
    return choquet_average(block.values, widths, cap);
}

double choquet_integral_2d(const std::vector<std::vector<double>>& rows, double width1,
                           double width2, const Capacity& cap) {
    if (rows.empty() || rows.front().empty())
        throw std::invalid_argument("choquet_integral_2d: empty matrix");
    const std::size_t cols = rows.front().size();
    std::vector<double> inner(rows.size());
    std::vector<double> w2(cols, width2);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw std::invalid_argument("choquet_integral_2d: ragged matrix");
        inner[i] = choquet_integral(rows[i], w2, cap);
    }
    std::vector<double> w1(rows.size(), width1);
    return choquet_integral(inner, w1, cap);
}

}  // namespace korovkin
