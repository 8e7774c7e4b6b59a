#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "korovkin/choquet.hpp"
#include "korovkin/grid.hpp"

namespace korovkin {

// Bernstein basis p_{n,0..n}(x), computed in log space (log-gamma binomials).
// Endpoints are exact: x=0 -> e_0, x=1 -> e_n.
class BernsteinBasis {
  public:
    explicit BernsteinBasis(int n);
    int n() const { return n_; }
    void eval(double x, std::span<double> out) const;  // out.size() == n+1
    std::vector<double> operator()(double x) const;

  private:
    int n_;
    std::vector<double> log_binom_;  // log C(n,k)
};

std::vector<double> bernstein_basis(int n, double x);

// Bernstein-Kantorovich operator with window averages taken as Choquet
// averages against a distorted Lebesgue capacity over [k/(n+1), (k+1)/(n+1)].
// Identity capacity recovers the classical (n+1)-integral form exactly.
class BernsteinKantorovich {
  public:
    BernsteinKantorovich(const GridFunction& f, int n, Capacity cap);
    double at(double x) const;  // evaluate anywhere in [0,1]
    GridFunction apply() const; // at all midpoints of the input grid
    const std::vector<double>& window_averages() const { return window_avg_; }

  private:
    BernsteinBasis basis_;
    Grid grid_;
    std::vector<char> mask_;
    std::vector<double> window_avg_;
};

GridFunction apply_bkc1(const GridFunction& f, int n, const Capacity& cap);
GridFunction apply_bk1(const GridFunction& f, int n);  // identity capacity

// Tensor (iterated) 2D version. Refuses n > 128 at default settings: the
// window pass is O(n^2 m^2).
GridFunction2 apply_bkc2(const GridFunction2& f, int n, const Capacity& cap,
                         bool allow_large = false);

// Szasz-Mirakjan-Kantorovich operator on [0, X_max] (X_max = grid right
// endpoint). Classical form: (n+1) * sum_k w_k(x) * int_{k/n}^{(k+1)/n} f,
// Poisson weights w_k(x) = e^{-nx}(nx)^k/k! accumulated in log space, series
// truncated when the remaining tail mass < tail_tol. The Choquet form
// replaces the window integral by a Choquet average and drops the (n+1)
// prefactor. Windows are clipped at X_max; output cells whose Poisson mass
// escapes past X_max by more than 1e-11 are masked out.
struct SzaszOptions {
    int n = 1;
    Capacity cap;
    double tail_tol = 1e-12;
    bool classical = true;
};

class SzaszMirakjanKantorovich {
  public:
    SzaszMirakjanKantorovich(const GridFunction& f, SzaszOptions opt);
    double at(double x) const;
    double covered_mass(double x) const;  // Poisson mass landing in [0, X_max]
    GridFunction apply() const;

  private:
    SzaszOptions opt_;
    Grid grid_;
    std::vector<char> mask_;
    std::vector<double> window_term_;  // classical: window integrals; choquet: window averages
    std::size_t num_windows_ = 0;
};

GridFunction apply_szasz(const GridFunction& f, const SzaszOptions& opt);

// Sliding average T f(x) = (1/(R-r)) int_r^R f(x-y) dy = average of f over
// [x-R, x-r], with f extended by zero outside its domain. The truncated
// variant applies max(., 0). Output cells whose window leaves the domain are
// masked out (boundary artifacts).
GridFunction apply_slide(const GridFunction& f, double r, double R, bool truncated);

// Windowed proxy for the Hardy-Littlewood maximal operator: max over a finite
// radii list of the window average over [x-r, x+r] clipped to the domain
// (normalized by the clipped length). Pass |f| for the classical M. Empty
// radii selects the dyadic default {h, 2h, 4h, ..., b-a}.
GridFunction apply_maximal(const GridFunction& f, std::vector<double> radii = {});

// Counterexample operator S_n(f) = f + f^2/n (neither sublinear nor
// translatable nor monotone, yet converging to the identity).
GridFunction apply_perturb_sq(const GridFunction& f, int n);

// Cesaro mean (1/n) sum_{k=1..n} T_k(f) of an operator family.
GridFunction apply_cesaro(const std::function<GridFunction(const GridFunction&, int)>& family,
                          const GridFunction& f, int n);

// Tagged description of one operator family instance; the CLI text forms in
// FORMATS.md map onto this.
struct OperatorSpec {
    enum class Family { Bk1, Bkc1, Bkc2, Szasz, Slide, SlideTrunc, PerturbSq, Maximal, Cesaro };

    Family family = Family::Bk1;
    int n = 1;
    Capacity cap;
    double tail_tol = 1e-12;
    double x_max = 4.0;
    double r = -0.1;   // slide window [r, R], r < 0 < R
    double R = 0.1;
    std::vector<double> radii;             // maximal; empty -> dyadic default
    std::optional<Family> cesaro_inner;    // cesaro(inner)
    bool allow_large_2d = false;

    void validate() const;
};

using GridOperator = std::function<GridFunction(const GridFunction&)>;

// Operator at the spec's own parameters.
GridOperator make_operator(const OperatorSpec& spec);

// Operator at sequence index n for convergence scans: bk/bkc/szasz/perturb
// take n directly; slide families shrink the base window to [r/n, R/n].
GridOperator make_scan_operator(const OperatorSpec& spec, int n);

}  // namespace korovkin
