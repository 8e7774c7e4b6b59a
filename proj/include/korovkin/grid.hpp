#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace korovkin {

// Uniform cell partition of [a, b]. Cell i is [a + i*h, a + (i+1)*h],
// h = (b-a)/m; samples live at cell midpoints.
struct Grid {
    double a = 0.0;
    double b = 1.0;
    std::size_t m = 1;

    Grid() = default;
    Grid(double a_, double b_, std::size_t m_) : a(a_), b(b_), m(m_) {
        if (!(a < b)) throw std::invalid_argument("Grid: requires a < b");
        if (m < 1) throw std::invalid_argument("Grid: requires m >= 1");
    }

    double width() const { return (b - a) / static_cast<double>(m); }
    double left(std::size_t i) const { return a + static_cast<double>(i) * width(); }
    double right(std::size_t i) const { return a + static_cast<double>(i + 1) * width(); }
    double midpoint(std::size_t i) const { return a + (static_cast<double>(i) + 0.5) * width(); }

    bool operator==(const Grid& o) const { return a == o.a && b == o.b && m == o.m; }
};

// Product of two 1D grids; values are stored row-major, index i1*m2 + i2.
struct Grid2 {
    Grid x1, x2;
    std::size_t cells() const { return x1.m * x2.m; }
    bool operator==(const Grid2& o) const { return x1 == o.x1 && x2 == o.x2; }
};

// Piecewise-constant sample of a function: one value per cell (taken at the
// cell midpoint) plus a mask. mask[i] == true means the cell is eligible for
// pointwise comparison: the underlying function is continuous on the closed
// cell and the operator producing it did not flag it as a boundary artifact.
struct GridFunction {
    Grid grid;
    std::vector<double> values;
    std::vector<char> mask;

    GridFunction() = default;
    GridFunction(Grid g, std::vector<double> v);
    GridFunction(Grid g, std::vector<double> v, std::vector<char> msk);

    std::size_t size() const { return values.size(); }
};

struct GridFunction2 {
    Grid2 grid;
    std::vector<double> values;
    std::vector<char> mask;

    GridFunction2() = default;
    GridFunction2(Grid2 g, std::vector<double> v);
    GridFunction2(Grid2 g, std::vector<double> v, std::vector<char> msk);

    double& at(std::size_t i1, std::size_t i2) { return values[i1 * grid.x2.m + i2]; }
    double at(std::size_t i1, std::size_t i2) const { return values[i1 * grid.x2.m + i2]; }
};

enum class FunctionKind {
    Constant,
    Projection,
    NegProjection,
    SumOfSquares,
    Monomial,
    Step,
    Cosine,
    Sine,
    NegCosine,
    NegSine,
    Table,
};

// Analytic description of a test function; `sample` turns it into a
// GridFunction. Step jumps must be strictly increasing.
struct FunctionSpec {
    FunctionKind kind = FunctionKind::Constant;
    double c = 1.0;                      // Constant
    int axis = 1;                        // Projection / NegProjection (1-based)
    int degree = 0;                      // Monomial
    std::vector<double> jumps;           // Step; levels.size() == jumps.size() + 1
    std::vector<double> levels;
    std::vector<double> table;           // Table: one value per cell

    static FunctionSpec constant(double value);
    static FunctionSpec projection(int axis);
    static FunctionSpec neg_projection(int axis);
    static FunctionSpec sum_of_squares();
    static FunctionSpec monomial(int degree);
    static FunctionSpec step(std::vector<double> jumps, std::vector<double> levels);
    static FunctionSpec cosine();
    static FunctionSpec sine();
    static FunctionSpec neg_cosine();
    static FunctionSpec neg_sine();
    static FunctionSpec table_values(std::vector<double> values);

    double eval(double x) const;              // 1D evaluation
    double eval(double x1, double x2) const;  // 2D evaluation
    // true when a declared jump lies in the closed interval [lo, hi]
    bool discontinuous_on(double lo, double hi) const;
    void validate() const;
};

GridFunction sample(const FunctionSpec& spec, const Grid& grid);
GridFunction2 sample2(const FunctionSpec& spec, const Grid2& grid);

enum class DomainKind { Cube1, Cube2, PositiveCone1, PositiveCone2, Circle };

// Korovkin test sets: cube(N) -> {1, +/-pr_1..N, sum pr_k^2} (2N+2 functions),
// positive_cone(N) -> {1, -pr_1..N, sum pr_k^2} (N+2), circle -> {1, cos,
// -cos, sin, -sin}.
std::vector<FunctionSpec> test_set(DomainKind kind);

double sup_norm(const GridFunction& f);
double lp_norm(const GridFunction& f, double p);
double sup_norm(const GridFunction2& f);
double lp_norm(const GridFunction2& f, double p);

// Cellwise lattice / vector operations. Binary ops require identical grids.
GridFunction cellwise_min(const GridFunction& f, const GridFunction& g);
GridFunction cellwise_max(const GridFunction& f, const GridFunction& g);
GridFunction cellwise_abs(const GridFunction& f);
GridFunction plus(const GridFunction& f, const GridFunction& g);
GridFunction minus(const GridFunction& f, const GridFunction& g);
GridFunction scale(const GridFunction& f, double alpha);
GridFunction translate(const GridFunction& f, double alpha);  // f + alpha*1

}  // namespace korovkin
