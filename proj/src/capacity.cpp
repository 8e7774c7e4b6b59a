#include "korovkin/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace korovkin {

Distortion Distortion::identity() { return Distortion{}; }

Distortion Distortion::sqrt() {
    Distortion d;
    d.kind = DistortionKind::Sqrt;
    return d;
}

Distortion Distortion::power(double alpha) {
    Distortion d;
    d.kind = DistortionKind::Power;
    d.alpha = alpha;
    d.validate();
    return d;
}

Distortion Distortion::table(std::vector<double> knots, std::vector<double> values) {
    Distortion d;
    d.kind = DistortionKind::Table;
    d.knots = std::move(knots);
    d.knot_values = std::move(values);
    d.validate();
    return d;
}

void Distortion::validate() const {
    switch (kind) {
        case DistortionKind::Power:
            if (!(alpha > 0)) throw std::invalid_argument("Distortion: power exponent must be > 0");
            break;
        case DistortionKind::Table: {
            if (knots.size() != knot_values.size() || knots.size() < 2)
                throw std::invalid_argument("Distortion: table needs >= 2 matching knots");
            if (knots.front() < 0)
                throw std::invalid_argument("Distortion: table knots must be >= 0");
            for (std::size_t i = 1; i < knots.size(); ++i) {
                if (!(knots[i] > knots[i - 1]))
                    throw std::invalid_argument("Distortion: table knots must increase");
                if (knot_values[i] < knot_values[i - 1])
                    throw std::invalid_argument("Distortion: table values must be nondecreasing");
            }
            if (knots.front() == 0 && knot_values.front() != 0)
                throw std::invalid_argument("Distortion: table must map 0 to 0");
            break;
        }
        default:
            break;
    }
}

double Distortion::operator()(double t) const {
    if (t < 0) throw std::domain_error("Distortion: negative measure");
    switch (kind) {
        case DistortionKind::Identity: return t;
        case DistortionKind::Sqrt: return std::sqrt(t);
        case DistortionKind::Power: return std::pow(t, alpha);
        case DistortionKind::Table: {
            if (t == 0) return 0;
            // linear interpolation between knots, last-slope extrapolation
            auto it = std::lower_bound(knots.begin(), knots.end(), t);
            std::size_t hi = it - knots.begin();
            if (hi == 0) {
                double slope = knot_values.front() / knots.front();  // knots.front() > 0 here
                return slope * t;
            }
            if (hi == knots.size()) hi = knots.size() - 1;
            std::size_t lo = hi - 1;
            double slope = (knot_values[hi] - knot_values[lo]) / (knots[hi] - knots[lo]);
            return knot_values[lo] + slope * (t - knots[lo]);
        }
    }
    throw std::logic_error("Distortion: unknown kind");
}

PropertyReport submodularity_probe(const Capacity& cap, const Grid& grid, int trials,
                                   std::uint64_t seed, double tol) {
    if (trials < 1) throw std::invalid_argument("submodularity_probe: trials >= 1");
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.5);
    const double h = grid.width();

    double worst = -1e300;
    std::string witness;
    for (int t = 0; t < trials; ++t) {
        std::size_t na = 0, nb = 0, nu = 0, ni = 0;
        std::string wa, wb;
        for (std::size_t i = 0; i < grid.m; ++i) {
            bool in_a = coin(rng), in_b = coin(rng);
            na += in_a;
            nb += in_b;
            nu += in_a || in_b;
            ni += in_a && in_b;
            if (in_a) wa += std::to_string(i) + " ";
            if (in_b) wb += std::to_string(i) + " ";
        }
        double margin = cap(static_cast<double>(nu) * h) + cap(static_cast<double>(ni) * h) -
                        cap(static_cast<double>(na) * h) - cap(static_cast<double>(nb) * h);
        if (margin > worst) {
            worst = margin;
            std::ostringstream os;
            os << "trial " << t << ": A={cells " << wa << "} B={cells " << wb << "} margin "
               << margin;
            witness = os.str();
        }
    }
    return make_report("submodularity", trials, worst, tol, witness);
}

}  // namespace korovkin
