#pragma once

#include <cmath>
#include <utility>

#include "ccl/errors.hpp"

namespace ccl {

// Bisection for the switch point of a monotone predicate: pred(lo) is true,
// pred(hi) is false. Returns the midpoint of the final bracket.
template <class Pred>
double bisect_predicate(Pred&& pred, double lo, double hi, double tol = 1e-12,
                        int max_iter = 400) {
    if (!pred(lo) || pred(hi))
        throw InvariantViolation("bisection: predicate does not bracket a switch point");
    for (int it = 0; it < max_iter && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (pred(mid))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Root of a function with f(lo) and f(hi) of opposite sign, bisected to
// floating-point resolution. NaN values are not allowed.
template <class F>
double bisect_root(F&& f, double lo, double hi, int max_iter = 2000) {
    double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0))
        throw InvariantViolation("bisection: root not bracketed");
    for (int it = 0; it < max_iter; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace ccl
