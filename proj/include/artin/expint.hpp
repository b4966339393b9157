#pragma once

// Exponential integral E1(x) = \int_x^\infty e^{-u}/u du for x > 0.
//
// Two regimes, switching at x = 1:
//   x <= 1: E1(x) = -gamma - log x + sum_{k>=1} (-1)^{k+1} x^k / (k * k!)
//   x >  1: continued fraction
//           E1(x) = e^{-x} / (x + 1 - 1/(x + 3 - 4/(x + 5 - 9/(...))))
//           evaluated with the modified Lentz algorithm.
//
// Absolute accuracy is comfortably below 1e-14 on (0, 700]; beyond that the
// value underflows to 0 anyway.

#include <cmath>
#include <limits>

#include "common.hpp"

namespace artin {

inline double expint_e1(double x) {
    if (!(x > 0.0)) throw domain_error("expint_e1: argument must be positive");
    if (x > 700.0) return 0.0;  // e^{-700} ~ 1e-304, below any tolerance we use
    if (x <= 1.0) {
        double sum = 0.0;
        double term = 1.0;
        for (int k = 1; k <= 40; ++k) {
            term *= x / k;                       // x^k / k!
            double contrib = term / k;           // x^k / (k * k!)
            sum += (k % 2 == 1) ? contrib : -contrib;
            if (contrib < 1e-18) break;
        }
        return -euler_gamma - std::log(x) + sum;
    }
    // Modified Lentz on the continued fraction b0 + a1/(b1 + a2/(b2 + ...))
    // with b_k = x + 2k + 1 and a_k = -k^2.
    const double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int k = 1; k <= 200; ++k) {
        double a = -static_cast<double>(k) * k;
        b += 2.0;
        d = a * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + a / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x);
}

}  // namespace artin
