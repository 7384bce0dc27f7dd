#ifndef SHIFTEQ_DECIDE_HPP
#define SHIFTEQ_DECIDE_HPP

#include <string>

#include "shifteq/witness.hpp"

namespace shifteq {

struct DecideOptions {
    SearchBounds bounds;
};

struct DecideOutcome {
    SEVerdict verdict;
    std::string route;  // "split", "quadratic", "oracle", "finite", "trivial"
    double decide_ms = 0.0;
};

// Full decision pipeline for two square integer matrices:
//   1. strip the nilpotent parts (shift equivalences by construction),
//   2. compare rational invariants (characteristic polynomial, cokernel
//      groups at 1 ± t) for cheap refutation certificates,
//   3. dispatch on the shape of the common characteristic polynomial:
//      split quadratics to the triangular classifier, irreducible quadratics
//      to the ideal-class machinery, everything else to the invariant battery
//      plus bounded witness search (Unknown when inconclusive).
// Equivalent verdicts compose witnesses back through the strip when the
// downstream decision produced one.
DecideOutcome decide_matrices(const IntMatrix& T1, const IntMatrix& T2,
                              const DecideOptions& opts = DecideOptions{});

}  // namespace shifteq

#endif
