// SPDX-License-Identifier: MIT
#include "lab/profile.hpp"

#include <cmath>

namespace lab {

double AsymptoticProfile::eval(const Vec& x) const {
    double v = 0.5 * quad_form(A, x) + dot(b, x) + c.value_or(0.0);
    if (d != 0.0) v += 0.5 * d * std::log(quad_form(L, x));
    return v;
}

Vec AsymptoticProfile::gradient(const Vec& x) const {
    Vec g = A * x + b;
    if (d != 0.0) {
        const Vec lx = L * x;
        g += (d / dot(x, lx)) * lx;
    }
    return g;
}

}  // namespace lab
