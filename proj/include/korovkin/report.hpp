#pragma once

#include <string>

namespace korovkin {

// Verdict of one numeric axiom check. worst_margin is the largest observed
// violation of the inequality under test; pass iff worst_margin <= tol.
// witness describes the inputs achieving worst_margin when the check fails.
struct PropertyReport {
    std::string property;
    int trials = 0;
    double worst_margin = 0.0;
    double tol = 0.0;
    bool pass = true;
    std::string witness;
};

inline PropertyReport make_report(std::string property, int trials, double worst_margin,
                                  double tol, std::string witness) {
    PropertyReport r;
    r.property = std::move(property);
    r.trials = trials;
    r.worst_margin = worst_margin;
    r.tol = tol;
    r.pass = worst_margin <= tol;
    if (r.pass) {
        r.witness.clear();
    } else {
        r.witness = std::move(witness);
    }
    return r;
}

}  // namespace korovkin
