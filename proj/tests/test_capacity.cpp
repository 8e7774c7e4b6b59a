#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "korovkin/capacity.hpp"

using namespace korovkin;

namespace {

// exhaustive submodularity margin over all subset pairs of an m-cell grid:
// mu(A u B) + mu(A n B) - mu(A) - mu(B), A/B as bitmasks
double exhaustive_worst_margin(const Capacity& cap, std::size_t m, double h) {
    double worst = -1e300;
    const unsigned limit = 1u << m;
    for (unsigned a = 0; a < limit; ++a) {
        for (unsigned b = 0; b < limit; ++b) {
            double mu_a = cap(h * __builtin_popcount(a));
            double mu_b = cap(h * __builtin_popcount(b));
            double mu_u = cap(h * __builtin_popcount(a | b));
            double mu_i = cap(h * __builtin_popcount(a & b));
            worst = std::max(worst, mu_u + mu_i - mu_a - mu_b);
        }
    }
    return worst;
}

}  // namespace

TEST_CASE("distortion evaluation") {
    Capacity id{Distortion::identity()};
    Capacity sq{Distortion::sqrt()};
    CHECK(sq(1.0) == 1.0);
    CHECK(sq(0.25) == 0.5);
    CHECK(id(0.37) == 0.37);
    CHECK(id(0.0) == 0.0);
    CHECK(sq(0.0) == 0.0);
    CHECK_THROWS_AS(sq(-0.1), std::domain_error);
}

TEST_CASE("power distortion") {
    Capacity p{Distortion::power(2.0)};
    CHECK(p(0.5) == doctest::Approx(0.25));
    CHECK(p(0.0) == 0.0);
    CHECK_THROWS_AS(Distortion::power(0.0), std::invalid_argument);
    CHECK_THROWS_AS(Distortion::power(-1.0), std::invalid_argument);
}

TEST_CASE("table distortion interpolates and extrapolates with the last slope") {
    Capacity t{Distortion::table({0.0, 0.5, 1.0}, {0.0, 0.8, 1.0})};
    CHECK(t(0.0) == 0.0);
    CHECK(t(0.25) == doctest::Approx(0.4));
    CHECK(t(0.5) == doctest::Approx(0.8));
    CHECK(t(0.75) == doctest::Approx(0.9));
    CHECK(t(2.0) == doctest::Approx(1.0 + 0.4 * 1.0));  // last slope (1-0.8)/(1-0.5)
    CHECK_THROWS_AS(Distortion::table({0.0, 1.0}, {0.1, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(Distortion::table({0.0, 1.0}, {0.0, -1.0}), std::invalid_argument);
}

TEST_CASE("monotonicity over a scan of pairs") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 5.0);
    for (const Capacity& cap :
         {Capacity{Distortion::identity()}, Capacity{Distortion::sqrt()},
          Capacity{Distortion::power(2.0)},
          Capacity{Distortion::table({0.0, 0.5, 1.0}, {0.0, 0.8, 1.0})}}) {
        for (int i = 0; i < 1000; ++i) {
            double s = u(rng), t = u(rng);
            if (s > t) std::swap(s, t);
            CHECK(cap(s) <= cap(t) + 1e-15);
        }
    }
}

TEST_CASE("submodularity probe: sqrt passes, matching the exhaustive oracle") {
    Capacity sq{Distortion::sqrt()};
    PropertyReport r = submodularity_probe(sq, Grid(0, 1, 16), 200, 11);
    CHECK(r.pass);
    CHECK(exhaustive_worst_margin(sq, 8, 0.125) <= 1e-10);
}

TEST_CASE("submodularity probe: identity is modular") {
    Capacity id{Distortion::identity()};
    PropertyReport r = submodularity_probe(id, Grid(0, 1, 16), 200, 11);
    CHECK(r.pass);
    CHECK(std::abs(r.worst_margin) <= 1e-12);
}

TEST_CASE("submodularity probe: power(2) fails") {
    Capacity p2{Distortion::power(2.0)};
    PropertyReport r = submodularity_probe(p2, Grid(0, 1, 16), 200, 11);
    CHECK_FALSE(r.pass);
    CHECK_FALSE(r.witness.empty());
    // documented witness: disjoint quarters A=[0,0.25], B=[0.25,0.5]
    double viol = p2(0.5) - 2.0 * p2(0.25);
    CHECK(viol == doctest::Approx(0.125));
    CHECK(exhaustive_worst_margin(p2, 8, 0.125) > 1e-10);
}

TEST_CASE("probe is deterministic in the seed") {
    Capacity sq{Distortion::sqrt()};
    PropertyReport a = submodularity_probe(sq, Grid(0, 1, 32), 100, 3);
    PropertyReport b = submodularity_probe(sq, Grid(0, 1, 32), 100, 3);
    CHECK(a.worst_margin == b.worst_margin);
    CHECK(a.witness == b.witness);
}
