#include "korovkin/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace korovkin {

namespace {

void check_finite(const std::vector<double>& v, const char* who) {
    for (double x : v) {
        if (!std::isfinite(x)) throw std::invalid_argument(std::string(who) + ": non-finite value");
    }
}

}  // namespace

GridFunction::GridFunction(Grid g, std::vector<double> v)
    : grid(g), values(std::move(v)), mask(values.size(), 1) {
    if (values.size() != grid.m) throw std::invalid_argument("GridFunction: values.length != m");
    check_finite(values, "GridFunction");
}

GridFunction::GridFunction(Grid g, std::vector<double> v, std::vector<char> msk)
    : grid(g), values(std::move(v)), mask(std::move(msk)) {
    if (values.size() != grid.m) throw std::invalid_argument("GridFunction: values.length != m");
    if (mask.size() != values.size())
        throw std::invalid_argument("GridFunction: mask.length != values.length");
    check_finite(values, "GridFunction");
}

GridFunction2::GridFunction2(Grid2 g, std::vector<double> v)
    : grid(g), values(std::move(v)), mask(values.size(), 1) {
    if (values.size() != grid.cells())
        throw std::invalid_argument("GridFunction2: values.length != m1*m2");
    check_finite(values, "GridFunction2");
}

GridFunction2::GridFunction2(Grid2 g, std::vector<double> v, std::vector<char> msk)
    : grid(g), values(std::move(v)), mask(std::move(msk)) {
    if (values.size() != grid.cells())
        throw std::invalid_argument("GridFunction2: values.length != m1*m2");
    if (mask.size() != values.size())
        throw std::invalid_argument("GridFunction2: mask.length != values.length");
    check_finite(values, "GridFunction2");
}

FunctionSpec FunctionSpec::constant(double value) {
    FunctionSpec s;
    s.kind = FunctionKind::Constant;
    s.c = value;
    return s;
}

FunctionSpec FunctionSpec::projection(int axis) {
    FunctionSpec s;
    s.kind = FunctionKind::Projection;
    s.axis = axis;
    return s;
}

FunctionSpec FunctionSpec::neg_projection(int axis) {
    FunctionSpec s;
    s.kind = FunctionKind::NegProjection;
    s.axis = axis;
    return s;
}

FunctionSpec FunctionSpec::sum_of_squares() {
    FunctionSpec s;
    s.kind = FunctionKind::SumOfSquares;
    return s;
}

FunctionSpec FunctionSpec::monomial(int degree) {
    FunctionSpec s;
    s.kind = FunctionKind::Monomial;
    s.degree = degree;
    return s;
}

FunctionSpec FunctionSpec::step(std::vector<double> jumps, std::vector<double> levels) {
    FunctionSpec s;
    s.kind = FunctionKind::Step;
    s.jumps = std::move(jumps);
    s.levels = std::move(levels);
    return s;
}

FunctionSpec FunctionSpec::cosine() {
    FunctionSpec s;
    s.kind = FunctionKind::Cosine;
    return s;
}

FunctionSpec FunctionSpec::sine() {
    FunctionSpec s;
    s.kind = FunctionKind::Sine;
    return s;
}

FunctionSpec FunctionSpec::neg_cosine() {
    FunctionSpec s;
    s.kind = FunctionKind::NegCosine;
    return s;
}

FunctionSpec FunctionSpec::neg_sine() {
    FunctionSpec s;
    s.kind = FunctionKind::NegSine;
    return s;
}

FunctionSpec FunctionSpec::table_values(std::vector<double> values) {
    FunctionSpec s;
    s.kind = FunctionKind::Table;
    s.table = std::move(values);
    return s;
}

void FunctionSpec::validate() const {
    switch (kind) {
        case FunctionKind::Projection:
        case FunctionKind::NegProjection:
            if (axis != 1 && axis != 2)
                throw std::invalid_argument("FunctionSpec: projection axis must be 1 or 2");
            break;
        case FunctionKind::Monomial:
            if (degree < 0) throw std::invalid_argument("FunctionSpec: monomial degree must be >= 0");
            break;
        case FunctionKind::Step: {
            if (levels.size() != jumps.size() + 1)
                throw std::invalid_argument("FunctionSpec: step needs levels.size() == jumps.size()+1");
            if (jumps.empty()) throw std::invalid_argument("FunctionSpec: step needs >= 1 jump");
            if (!std::is_sorted(jumps.begin(), jumps.end()) ||
                std::adjacent_find(jumps.begin(), jumps.end()) != jumps.end())
                throw std::invalid_argument("FunctionSpec: step jumps must be strictly increasing");
            break;
        }
        default:
            break;
    }
}

double FunctionSpec::eval(double x) const {
    switch (kind) {
        case FunctionKind::Constant: return c;
        case FunctionKind::Projection: return x;
        case FunctionKind::NegProjection: return -x;
        case FunctionKind::SumOfSquares: return x * x;
        case FunctionKind::Monomial: return std::pow(x, degree);
        case FunctionKind::Step: {
            // right-continuous: a point at a jump takes the right level
            std::size_t j = std::upper_bound(jumps.begin(), jumps.end(), x) - jumps.begin();
            // points exactly at a jump belong to the right piece
            if (j > 0 && jumps[j - 1] == x) {
                // upper_bound already moved past; nothing to adjust
            }
            return levels[j];
        }
        case FunctionKind::Cosine: return std::cos(x);
        case FunctionKind::Sine: return std::sin(x);
        case FunctionKind::NegCosine: return -std::cos(x);
        case FunctionKind::NegSine: return -std::sin(x);
        case FunctionKind::Table:
            throw std::invalid_argument("FunctionSpec: table has no pointwise form; use sample()");
    }
    throw std::logic_error("FunctionSpec: unknown kind");
}

double FunctionSpec::eval(double x1, double x2) const {
    switch (kind) {
        case FunctionKind::Projection: return axis == 1 ? x1 : x2;
        case FunctionKind::NegProjection: return axis == 1 ? -x1 : -x2;
        case FunctionKind::SumOfSquares: return x1 * x1 + x2 * x2;
        default: return eval(x1);
    }
}

bool FunctionSpec::discontinuous_on(double lo, double hi) const {
    if (kind != FunctionKind::Step) return false;
    for (double j : jumps) {
        if (lo <= j && j <= hi) return true;
    }
    return false;
}

GridFunction sample(const FunctionSpec& spec, const Grid& grid) {
    spec.validate();
    if (spec.kind == FunctionKind::Step) {
        for (double j : spec.jumps) {
            if (j <= grid.a || j >= grid.b)
                throw std::invalid_argument("sample: step jumps must be interior to the domain");
        }
    }
    std::vector<double> values(grid.m);
    std::vector<char> mask(grid.m, 1);
    if (spec.kind == FunctionKind::Table) {
        if (spec.table.size() != grid.m)
            throw std::invalid_argument("sample: table length does not match grid");
        values = spec.table;
    } else {
        for (std::size_t i = 0; i < grid.m; ++i) {
            values[i] = spec.eval(grid.midpoint(i));
            if (spec.discontinuous_on(grid.left(i), grid.right(i))) mask[i] = 0;
        }
    }
    return GridFunction(grid, std::move(values), std::move(mask));
}

GridFunction2 sample2(const FunctionSpec& spec, const Grid2& grid) {
    spec.validate();
    if (spec.kind == FunctionKind::Table)
        throw std::invalid_argument("sample2: table specs are 1D only");
    std::vector<double> values(grid.cells());
    std::vector<char> mask(grid.cells(), 1);
    for (std::size_t i1 = 0; i1 < grid.x1.m; ++i1) {
        for (std::size_t i2 = 0; i2 < grid.x2.m; ++i2) {
            values[i1 * grid.x2.m + i2] = spec.eval(grid.x1.midpoint(i1), grid.x2.midpoint(i2));
        }
    }
    return GridFunction2(grid, std::move(values), std::move(mask));
}

std::vector<FunctionSpec> test_set(DomainKind kind) {
    std::vector<FunctionSpec> out;
    switch (kind) {
        case DomainKind::Cube1:
            out = {FunctionSpec::constant(1), FunctionSpec::projection(1),
                   FunctionSpec::neg_projection(1), FunctionSpec::sum_of_squares()};
            break;
        case DomainKind::Cube2:
            out = {FunctionSpec::constant(1),
                   FunctionSpec::projection(1), FunctionSpec::neg_projection(1),
                   FunctionSpec::projection(2), FunctionSpec::neg_projection(2),
                   FunctionSpec::sum_of_squares()};
            break;
        case DomainKind::PositiveCone1:
            out = {FunctionSpec::constant(1), FunctionSpec::neg_projection(1),
                   FunctionSpec::sum_of_squares()};
            break;
        case DomainKind::PositiveCone2:
            out = {FunctionSpec::constant(1), FunctionSpec::neg_projection(1),
                   FunctionSpec::neg_projection(2), FunctionSpec::sum_of_squares()};
            break;
        case DomainKind::Circle:
            out = {FunctionSpec::constant(1), FunctionSpec::cosine(), FunctionSpec::neg_cosine(),
                   FunctionSpec::sine(), FunctionSpec::neg_sine()};
            break;
    }
    return out;
}

double sup_norm(const GridFunction& f) {
    double s = 0;
    for (double v : f.values) s = std::max(s, std::abs(v));
    return s;
}

double lp_norm(const GridFunction& f, double p) {
    if (p < 1) throw std::invalid_argument("lp_norm: requires p >= 1");
    double h = f.grid.width();
    double acc = 0;
    for (double v : f.values) acc += std::pow(std::abs(v), p) * h;
    return std::pow(acc, 1.0 / p);
}

double sup_norm(const GridFunction2& f) {
    double s = 0;
    for (double v : f.values) s = std::max(s, std::abs(v));
    return s;
}

double lp_norm(const GridFunction2& f, double p) {
    if (p < 1) throw std::invalid_argument("lp_norm: requires p >= 1");
    double h = f.grid.x1.width() * f.grid.x2.width();
    double acc = 0;
    for (double v : f.values) acc += std::pow(std::abs(v), p) * h;
    return std::pow(acc, 1.0 / p);
}

namespace {

void require_same_grid(const GridFunction& f, const GridFunction& g) {
    if (!(f.grid == g.grid)) throw std::invalid_argument("lattice: incompatible grids");
}

std::vector<char> mask_and(const GridFunction& f, const GridFunction& g) {
    std::vector<char> m(f.mask.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = f.mask[i] && g.mask[i];
    return m;
}

}  // namespace

GridFunction cellwise_min(const GridFunction& f, const GridFunction& g) {
    require_same_grid(f, g);
    std::vector<double> v(f.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::min(f.values[i], g.values[i]);
    return GridFunction(f.grid, std::move(v), mask_and(f, g));
}

GridFunction cellwise_max(const GridFunction& f, const GridFunction& g) {
    require_same_grid(f, g);
    std::vector<double> v(f.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::max(f.values[i], g.values[i]);
    return GridFunction(f.grid, std::move(v), mask_and(f, g));
}

GridFunction cellwise_abs(const GridFunction& f) {
    std::vector<double> v(f.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::abs(f.values[i]);
    return GridFunction(f.grid, std::move(v), f.mask);
}

GridFunction plus(const GridFunction& f, const GridFunction& g) {
    require_same_grid(f, g);
    std::vector<double> v(f.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.values[i] + g.values[i];
    return GridFunction(f.grid, std::move(v), mask_and(f, g));
}

GridFunction minus(const GridFunction& f, const GridFunction& g) {
    require_same_grid(f, g);
    std::vector<double> v(f.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.values[i] - g.values[i];
    return GridFunction(f.grid, std::move(v), mask_and(f, g));
}

GridFunction scale(const GridFunction& f, double alpha) {
    std::vector<double> v(f.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = alpha * f.values[i];
    return GridFunction(f.grid, std::move(v), f.mask);
}

GridFunction translate(const GridFunction& f, double alpha) {
    std::vector<double> v(f.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.values[i] + alpha;
    return GridFunction(f.grid, std::move(v), f.mask);
}

}  // namespace korovkin
