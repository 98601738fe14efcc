#pragma once

#include "cgs/errors.hpp"

namespace cgs {

/// Mohar's diameter bound: lambda2 >= 4 / (n * D_max).
inline double mohar_bound(int n, int diameter) {
    return 4.0 / (static_cast<double>(n) * diameter);
}

/**
 * Lu's edge-count refinement: lambda2 >= 2n / (2 + (n-1)*n*D_max - 2*|E|*D_max).
 * The denominator is >= 2 for any simple graph; a non-positive value means the
 * raw inputs cannot come from one.
 */
inline double lu_bound(int n, int edge_count, int diameter) {
    const double den = 2.0 + (static_cast<double>(n) - 1.0) * n * diameter -
                       2.0 * static_cast<double>(edge_count) * diameter;
    if (den <= 0.0) throw NonPositiveDenominatorError();
    return 2.0 * n / den;
}

} // namespace cgs
