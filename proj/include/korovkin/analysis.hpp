#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "korovkin/operators.hpp"
#include "korovkin/report.hpp"

namespace korovkin {

// Seeded generator of trial functions: a few canonical cases first
// (constants, the projection, a mid-domain step), then random piecewise
// polynomials (degree <= 4 on <= 4 pieces) and step functions with
// coefficients in [-2, 2]. positive_cone restricts output to f >= 0.
class TrialFunctionGen {
  public:
    TrialFunctionGen(Grid grid, std::uint64_t seed, bool positive_cone = false);

    // stream = 0, 1, ... lets one trial draw several independent functions
    GridFunction function(int trial, int stream);
    double alpha(int trial) const;  // from {0, 0.5, 1, 2, 10}; canonical trials fixed
    std::string describe(int trial, int stream) const;
    // per-trial sub-seed by counter, so trial order never affects results
    std::mt19937_64 stream_rng(int trial, int stream) const;

  private:
    GridFunction random_function(std::mt19937_64& rng) const;

    Grid grid_;
    std::uint64_t seed_;
    bool positive_cone_;
};

struct CheckOptions {
    int trials = 200;
    std::uint64_t seed = 1;
    double tol = 1e-9;
    bool positive_cone = false;  // restrict generators to f >= 0, alpha >= 0
};

// Axiom checks of one operator. Margins are signed violations; the report
// passes iff the worst margin stays below tol.
PropertyReport check_sublinearity(const GridOperator& op, const Grid& grid,
                                  const CheckOptions& opt);
PropertyReport check_translatability(const GridOperator& op, const Grid& grid,
                                     const CheckOptions& opt);
PropertyReport check_monotonicity(const GridOperator& op, const Grid& grid,
                                  const CheckOptions& opt);
PropertyReport check_comonotone_additivity(const GridOperator& op, const Grid& grid,
                                           const CheckOptions& opt);
PropertyReport check_order_lipschitz(const GridOperator& op, const Grid& grid,
                                     const CheckOptions& opt);

struct NormReport {
    double norm_estimate = 0.0;     // ||T(1)||_sup for monotone sublinear T
    double randomized_lower = 0.0;  // sup ||T(f)|| over trial f with ||f|| <= 1
    PropertyReport krein;           // ||T(f)-T(g)|| <= norm * ||f-g||
    PropertyReport factor2;         // ||T(f)-T(g)|| <= 2 * norm * ||f-g||
};

NormReport operator_norm(const GridOperator& op, const Grid& grid,
                         bool unital_monotone_sublinear, int trials, std::uint64_t seed);

enum class ConvergenceMode { Pointwise, InMeasure, Lp };

struct ConvergenceRow {
    int n = 0;
    double error = 0.0;
};

// Per-(family, function, mode) error table. Pointwise: max |T_n f - f| over
// comparison-eligible cells (continuity mask and operator interior flags).
// InMeasure: Lebesgue measure of {cells : |T_n f - f| >= eps}. Lp: ||T_n f -
// f||_p by midpoint quadrature.
struct ConvergenceReport {
    std::string family;
    std::string function_id;
    ConvergenceMode mode = ConvergenceMode::Pointwise;
    double eps = 0.05;
    double p = 1.0;
    std::vector<ConvergenceRow> rows;
};

struct ScanConfig {
    std::vector<int> ns;
    ConvergenceMode mode = ConvergenceMode::Pointwise;
    double eps = 0.05;
    double p = 1.0;
};

ConvergenceReport convergence_scan(const OperatorSpec& family, const FunctionSpec& f,
                                   const Grid& grid, const ScanConfig& config);

enum class Verdict { Vacuous, Confirmed, CounterexampleCandidate };

std::string to_string(Verdict v);

// Empirical Korovkin verdict. Stage 1 scans every function of
// test_set(domain); stage 2 scans the general suite. A scan "converges" iff
// error(max n) <= max(0.5 * error(min n), 1e-9). Confirmed: stage 1 and 2
// converge. Counterexample-candidate: stage 1 converges but some suite
// function does not, or only the nonnegative test functions converge and a
// sign-changing suite function fails (translatability counterexample).
// Vacuous otherwise. The verdict is an empirical consistency report, never a
// proof.
struct HarnessResult {
    Verdict verdict = Verdict::Vacuous;
    std::string witness;
    bool stage1_pass = false;          // full test set
    bool stage1_nonneg_pass = false;   // nonnegative test functions only
    bool stage2_pass = false;
    std::vector<ConvergenceReport> stage1;
    std::vector<ConvergenceReport> stage2;
};

HarnessResult korovkin_harness(const OperatorSpec& family, DomainKind domain, const Grid& grid,
                               const ScanConfig& config,
                               const std::vector<FunctionSpec>& general_suite);

bool scan_converged(const ConvergenceReport& report);

}  // namespace korovkin
