#include "korovkin/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace korovkin {

namespace {

// Cells of g overlapping [lo, hi] (clipped to the domain), with overlap
// widths. Slivers below 1e-12*h are dropped so aligned window boundaries do
// not leave roundoff fragments.
void overlap_block(const GridFunction& f, double lo, double hi, std::vector<double>& values,
                   std::vector<double>& widths) {
    values.clear();
    widths.clear();
    const Grid& g = f.grid;
    lo = std::max(lo, g.a);
    hi = std::min(hi, g.b);
    if (!(hi > lo)) return;
    const double h = g.width();
    const double sliver = 1e-12 * h;
    auto first = static_cast<std::size_t>(
        std::clamp(std::floor((lo - g.a) / h), 0.0, static_cast<double>(g.m - 1)));
    for (std::size_t i = first; i < g.m; ++i) {
        double L = g.left(i);
        if (L >= hi) break;
        double w = std::min(hi, g.right(i)) - std::max(lo, L);
        if (w > sliver) {
            values.push_back(f.values[i]);
            widths.push_back(w);
        }
    }
}

// Antiderivative of the piecewise-constant interpolant (zero-extended),
// measured from the left domain endpoint.
class InterpolantIntegral {
  public:
    explicit InterpolantIntegral(const GridFunction& f) : grid_(f.grid), prefix_(f.size() + 1, 0.0) {
        const double h = grid_.width();
        for (std::size_t i = 0; i < f.size(); ++i) prefix_[i + 1] = prefix_[i] + f.values[i] * h;
    }

    double antiderivative(double t) const {
        if (t <= grid_.a) return 0.0;
        if (t >= grid_.b) return prefix_.back();
        const double h = grid_.width();
        auto i = static_cast<std::size_t>(
            std::clamp(std::floor((t - grid_.a) / h), 0.0, static_cast<double>(grid_.m - 1)));
        double cell_value = (prefix_[i + 1] - prefix_[i]) / h;
        return prefix_[i] + cell_value * (t - grid_.left(i));
    }

    // integral over [lo, hi] with zero extension outside the domain
    double over(double lo, double hi) const { return antiderivative(hi) - antiderivative(lo); }

  private:
    Grid grid_;
    std::vector<double> prefix_;
};

void require_unit_interval(const Grid& g, const char* who) {
    if (std::abs(g.a) > 1e-12 || std::abs(g.b - 1.0) > 1e-12)
        throw std::invalid_argument(std::string(who) + ": grid must cover [0,1]");
}

}  // namespace

BernsteinBasis::BernsteinBasis(int n) : n_(n), log_binom_(static_cast<std::size_t>(n) + 1) {
    if (n < 1) throw std::invalid_argument("BernsteinBasis: n >= 1");
    const double lg_n1 = std::lgamma(static_cast<double>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        log_binom_[k] = lg_n1 - std::lgamma(static_cast<double>(k) + 1) -
                        std::lgamma(static_cast<double>(n - k) + 1);
    }
}

void BernsteinBasis::eval(double x, std::span<double> out) const {
    if (x < 0.0 || x > 1.0) throw std::domain_error("BernsteinBasis: x outside [0,1]");
    if (out.size() != static_cast<std::size_t>(n_) + 1)
        throw std::invalid_argument("BernsteinBasis: bad output span");
    std::fill(out.begin(), out.end(), 0.0);
    if (x == 0.0) {
        out[0] = 1.0;
        return;
    }
    if (x == 1.0) {
        out[n_] = 1.0;
        return;
    }
    const double lx = std::log(x);
    const double l1mx = std::log1p(-x);
    for (int k = 0; k <= n_; ++k) {
        out[k] = std::exp(log_binom_[k] + k * lx + (n_ - k) * l1mx);
    }
}

std::vector<double> BernsteinBasis::operator()(double x) const {
    std::vector<double> out(static_cast<std::size_t>(n_) + 1);
    eval(x, out);
    return out;
}

std::vector<double> bernstein_basis(int n, double x) { return BernsteinBasis(n)(x); }

BernsteinKantorovich::BernsteinKantorovich(const GridFunction& f, int n, Capacity cap)
    : basis_(n), grid_(f.grid), mask_(f.mask) {
    require_unit_interval(f.grid, "BernsteinKantorovich");
    window_avg_.resize(static_cast<std::size_t>(n) + 1);
    std::vector<double> vals, widths;
    const double w = 1.0 / (n + 1.0);
    for (int k = 0; k <= n; ++k) {
        overlap_block(f, k * w, (k + 1) * w, vals, widths);
        window_avg_[k] = choquet_average(vals, widths, cap);
    }
}

double BernsteinKantorovich::at(double x) const {
    std::vector<double> p(window_avg_.size());
    basis_.eval(x, p);
    // Kahan summation, ascending k: bit-deterministic and accurate enough for
    // the 1e-12 partition-of-unity checks at large n
    double acc = 0, comp = 0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        double term = p[k] * window_avg_[k] - comp;
        double next = acc + term;
        comp = (next - acc) - term;
        acc = next;
    }
    return acc;
}

GridFunction BernsteinKantorovich::apply() const {
    std::vector<double> out(grid_.m);
    for (std::size_t i = 0; i < grid_.m; ++i) out[i] = at(grid_.midpoint(i));
    return GridFunction(grid_, std::move(out), mask_);
}

GridFunction apply_bkc1(const GridFunction& f, int n, const Capacity& cap) {
    return BernsteinKantorovich(f, n, cap).apply();
}

GridFunction apply_bk1(const GridFunction& f, int n) { return apply_bkc1(f, n, Capacity{}); }

GridFunction2 apply_bkc2(const GridFunction2& f, int n, const Capacity& cap, bool allow_large) {
    require_unit_interval(f.grid.x1, "apply_bkc2");
    require_unit_interval(f.grid.x2, "apply_bkc2");
    if (n < 1) throw std::invalid_argument("apply_bkc2: n >= 1");
    if (n > 128 && !allow_large)
        throw std::invalid_argument("apply_bkc2: n > 128 refused (O(n^2 m^2)); set the override");

    const std::size_t m1 = f.grid.x1.m, m2 = f.grid.x2.m;
    const double w = 1.0 / (n + 1.0);
    const double denom = cap(w) * cap(w);
    if (!(denom > 0)) throw std::domain_error("apply_bkc2: degenerate capacity on window");

    // window averages A[k1][k2] from the iterated Choquet integral
    const std::size_t nw = static_cast<std::size_t>(n) + 1;
    std::vector<double> window(nw * nw);
    std::vector<double> inner_vals, inner_widths, vals, widths;
    GridFunction row(f.grid.x2, std::vector<double>(m2, 0.0));
    for (std::size_t k1 = 0; k1 < nw; ++k1) {
        const double lo1 = k1 * w, hi1 = (k1 + 1) * w;
        const double h1 = f.grid.x1.width();
        const double sliver1 = 1e-12 * h1;
        auto first = static_cast<std::size_t>(
            std::clamp(std::floor((std::max(lo1, f.grid.x1.a) - f.grid.x1.a) / h1), 0.0,
                       static_cast<double>(m1 - 1)));
        for (std::size_t k2 = 0; k2 < nw; ++k2) {
            const double lo2 = k2 * w, hi2 = (k2 + 1) * w;
            inner_vals.clear();
            inner_widths.clear();
            for (std::size_t i1 = first; i1 < m1; ++i1) {
                double L = f.grid.x1.left(i1);
                if (L >= hi1) break;
                double w1 = std::min(hi1, f.grid.x1.right(i1)) - std::max(lo1, L);
                if (w1 <= sliver1) continue;
                for (std::size_t i2 = 0; i2 < m2; ++i2) row.values[i2] = f.at(i1, i2);
                overlap_block(row, lo2, hi2, vals, widths);
                inner_vals.push_back(choquet_integral(vals, widths, cap));
                inner_widths.push_back(w1);
            }
            window[k1 * nw + k2] = choquet_integral(inner_vals, inner_widths, cap) / denom;
        }
    }

    // contract with the tensor Bernstein basis, k ascending
    BernsteinBasis basis(n);
    std::vector<double> p1(nw), p2(nw);
    std::vector<double> basis2(m2 * nw);
    for (std::size_t i2 = 0; i2 < m2; ++i2) {
        basis.eval(f.grid.x2.midpoint(i2), p2);
        std::copy(p2.begin(), p2.end(), basis2.begin() + i2 * nw);
    }
    std::vector<double> out(m1 * m2, 0.0);
    std::vector<double> tmp(nw);
    for (std::size_t i1 = 0; i1 < m1; ++i1) {
        basis.eval(f.grid.x1.midpoint(i1), p1);
        std::fill(tmp.begin(), tmp.end(), 0.0);
        for (std::size_t k1 = 0; k1 < nw; ++k1) {
            for (std::size_t k2 = 0; k2 < nw; ++k2) tmp[k2] += p1[k1] * window[k1 * nw + k2];
        }
        for (std::size_t i2 = 0; i2 < m2; ++i2) {
            double acc = 0;
            for (std::size_t k2 = 0; k2 < nw; ++k2) acc += tmp[k2] * basis2[i2 * nw + k2];
            out[i1 * m2 + i2] = acc;
        }
    }
    return GridFunction2(f.grid, std::move(out), f.mask);
}

SzaszMirakjanKantorovich::SzaszMirakjanKantorovich(const GridFunction& f, SzaszOptions opt)
    : opt_(std::move(opt)), grid_(f.grid), mask_(f.mask) {
    if (std::abs(grid_.a) > 1e-12)
        throw std::invalid_argument("SzaszMirakjanKantorovich: grid must start at 0");
    if (opt_.n < 1) throw std::invalid_argument("SzaszMirakjanKantorovich: n >= 1");
    if (!(opt_.tail_tol > 0 && opt_.tail_tol < 1))
        throw std::invalid_argument("SzaszMirakjanKantorovich: tail_tol in (0,1)");

    const double x_max = grid_.b;
    const double wlen = 1.0 / opt_.n;
    num_windows_ = static_cast<std::size_t>(std::ceil(x_max * opt_.n - 1e-12));
    window_term_.resize(num_windows_);
    std::vector<double> vals, widths;
    for (std::size_t k = 0; k < num_windows_; ++k) {
        double lo = k * wlen, hi = std::min((k + 1) * wlen, x_max);
        overlap_block(f, lo, hi, vals, widths);
        if (opt_.classical) {
            double acc = 0;
            for (std::size_t i = 0; i < vals.size(); ++i) acc += vals[i] * widths[i];
            window_term_[k] = acc;
        } else {
            window_term_[k] = choquet_average(vals, widths, opt_.cap);
        }
    }
}

double SzaszMirakjanKantorovich::at(double x) const {
    if (x < 0) throw std::domain_error("SzaszMirakjanKantorovich: x < 0");
    const double lambda = opt_.n * static_cast<double>(x);
    double acc = 0, cum = 0;
    if (lambda == 0) {
        acc = num_windows_ > 0 ? window_term_[0] : 0.0;
    } else {
        const double llam = std::log(lambda);
        for (std::size_t k = 0; k < num_windows_; ++k) {
            double w = std::exp(-lambda + static_cast<double>(k) * llam -
                                std::lgamma(static_cast<double>(k) + 1));
            acc += w * window_term_[k];
            cum += w;
            if (1.0 - cum < opt_.tail_tol) break;
        }
    }
    return opt_.classical ? (opt_.n + 1.0) * acc : acc;
}

double SzaszMirakjanKantorovich::covered_mass(double x) const {
    if (x < 0) throw std::domain_error("SzaszMirakjanKantorovich: x < 0");
    const double lambda = opt_.n * static_cast<double>(x);
    if (lambda == 0) return 1.0;
    const double llam = std::log(lambda);
    double cum = 0;
    for (std::size_t k = 0; k < num_windows_; ++k) {
        cum += std::exp(-lambda + static_cast<double>(k) * llam -
                        std::lgamma(static_cast<double>(k) + 1));
        if (1.0 - cum < opt_.tail_tol) break;
    }
    return cum;
}

GridFunction SzaszMirakjanKantorovich::apply() const {
    std::vector<double> out(grid_.m);
    std::vector<char> mask(grid_.m);
    for (std::size_t i = 0; i < grid_.m; ++i) {
        double x = grid_.midpoint(i);
        out[i] = at(x);
        mask[i] = mask_[i] && (1.0 - covered_mass(x) <= 1e-11);
    }
    return GridFunction(grid_, std::move(out), std::move(mask));
}

GridFunction apply_szasz(const GridFunction& f, const SzaszOptions& opt) {
    return SzaszMirakjanKantorovich(f, opt).apply();
}

GridFunction apply_slide(const GridFunction& f, double r, double R, bool truncated) {
    if (!(r < 0 && 0 < R)) throw std::invalid_argument("apply_slide: requires r < 0 < R");
    InterpolantIntegral integral(f);
    const Grid& g = f.grid;
    const double width = R - r;
    const double tol = 1e-12 * (g.b - g.a);
    std::vector<double> out(g.m);
    std::vector<char> mask(g.m);
    for (std::size_t i = 0; i < g.m; ++i) {
        double x = g.midpoint(i);
        double v = integral.over(x - R, x - r) / width;
        out[i] = truncated ? std::max(v, 0.0) : v;
        bool interior = (x - R >= g.a - tol) && (x - r <= g.b + tol);
        mask[i] = f.mask[i] && interior;
    }
    return GridFunction(g, std::move(out), std::move(mask));
}

GridFunction apply_maximal(const GridFunction& f, std::vector<double> radii) {
    const Grid& g = f.grid;
    if (radii.empty()) {
        // dyadic default {h, 2h, 4h, ..., b-a}
        for (double rad = g.width(); rad < g.b - g.a; rad *= 2) radii.push_back(rad);
        radii.push_back(g.b - g.a);
    }
    for (double rad : radii) {
        if (!(rad > 0)) throw std::invalid_argument("apply_maximal: radii must be positive");
    }
    InterpolantIntegral integral(f);
    std::vector<double> out(g.m);
    for (std::size_t i = 0; i < g.m; ++i) {
        double x = g.midpoint(i);
        double best = -1e300;
        for (double rad : radii) {
            double lo = std::max(g.a, x - rad), hi = std::min(g.b, x + rad);
            best = std::max(best, integral.over(lo, hi) / (hi - lo));
        }
        out[i] = best;
    }
    return GridFunction(g, std::move(out), f.mask);
}

GridFunction apply_perturb_sq(const GridFunction& f, int n) {
    if (n < 1) throw std::invalid_argument("apply_perturb_sq: n >= 1");
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        out[i] = f.values[i] + f.values[i] * f.values[i] / n;
    return GridFunction(f.grid, std::move(out), f.mask);
}

GridFunction apply_cesaro(const std::function<GridFunction(const GridFunction&, int)>& family,
                          const GridFunction& f, int n) {
    if (n < 1) throw std::invalid_argument("apply_cesaro: n >= 1");
    std::vector<double> acc(f.size(), 0.0);
    std::vector<char> mask(f.size(), 1);
    for (int k = 1; k <= n; ++k) {
        GridFunction term = family(f, k);
        for (std::size_t i = 0; i < acc.size(); ++i) {
            acc[i] += term.values[i];
            mask[i] = mask[i] && term.mask[i];
        }
    }
    for (double& v : acc) v /= n;
    return GridFunction(f.grid, std::move(acc), std::move(mask));
}

void OperatorSpec::validate() const {
    if (n < 1) throw std::invalid_argument("OperatorSpec: n >= 1");
    if (!(tail_tol > 0 && tail_tol < 1)) throw std::invalid_argument("OperatorSpec: tail_tol in (0,1)");
    if (family == Family::Slide || family == Family::SlideTrunc) {
        if (!(r < 0 && 0 < R)) throw std::invalid_argument("OperatorSpec: slide needs r < 0 < R");
        if (!std::isfinite(r) || !std::isfinite(R))
            throw std::invalid_argument("OperatorSpec: slide window must be finite");
    }
    for (double rad : radii) {
        if (!(rad > 0)) throw std::invalid_argument("OperatorSpec: radii must be positive");
    }
    if (family == Family::Cesaro && !cesaro_inner)
        throw std::invalid_argument("OperatorSpec: cesaro needs an inner family");
}

GridOperator make_operator(const OperatorSpec& spec) { return make_scan_operator(spec, spec.n); }

GridOperator make_scan_operator(const OperatorSpec& spec, int n) {
    spec.validate();
    using Family = OperatorSpec::Family;
    switch (spec.family) {
        case Family::Bk1:
            return [n](const GridFunction& f) { return apply_bk1(f, n); };
        case Family::Bkc1:
            return [n, cap = spec.cap](const GridFunction& f) { return apply_bkc1(f, n, cap); };
        case Family::Bkc2:
            throw std::invalid_argument("make_operator: bkc2 acts on 2D functions; use apply_bkc2");
        case Family::Szasz: {
            SzaszOptions opt;
            opt.n = n;
            opt.cap = spec.cap;
            opt.tail_tol = spec.tail_tol;
            opt.classical = spec.cap.is_identity();
            return [opt](const GridFunction& f) { return apply_szasz(f, opt); };
        }
        case Family::Slide:
            return [r = spec.r / n, R = spec.R / n](const GridFunction& f) {
                return apply_slide(f, r, R, false);
            };
        case Family::SlideTrunc:
            return [r = spec.r / n, R = spec.R / n](const GridFunction& f) {
                return apply_slide(f, r, R, true);
            };
        case Family::PerturbSq:
            return [n](const GridFunction& f) { return apply_perturb_sq(f, n); };
        case Family::Maximal:
            return [radii = spec.radii](const GridFunction& f) { return apply_maximal(f, radii); };
        case Family::Cesaro: {
            OperatorSpec inner = spec;
            inner.family = *spec.cesaro_inner;
            inner.cesaro_inner.reset();
            auto term = [inner](const GridFunction& f, int k) {
                return make_scan_operator(inner, k)(f);
            };
            return [term, n](const GridFunction& f) { return apply_cesaro(term, f, n); };
        }
    }
    throw std::logic_error("make_operator: unknown family");
}

}  // namespace korovkin
