#pragma once

#include <span>

#include "bsca/types.hpp"

namespace bsca {

struct BoundInputs {
    int num_caches = 1;    // J
    int capacity = 1;      // C = max_j C_j
    int degree = 1;        // deg
    double max_weight = 1; // w^(1)
    double horizon = 0;    // T
    int library_size = 1;  // N
};

/// Worst-case regret guarantee of the online policy with the optimal fixed
/// step: w^(1) sqrt(2 deg J C T).
double regret_upper_bound(const BoundInputs& in);

/// Guarantee under the diminishing step eta_t = 1/sqrt(t):
/// diameter_sq sqrt(T)/2 + (sqrt(T) - 1/2) K^2.
double regret_upper_bound_diminishing(double diameter_sq, double grad_bound, double horizon);

/// Single-cache lower bound for uniform weights: w sqrt(gamma/pi) sqrt(CT)
/// with gamma = C/N. Requires C < N/2, otherwise throws
/// std::invalid_argument("bound inapplicable ...").
double regret_lower_bound_uniform(double weight, int library_size, int capacity, double horizon);

/// Weighted single-cache lower bound
///   max over pairings of sum_k sqrt(w^{a_k} + w^{b_k}) / sqrt(2 pi sum_n 1/w^n) * sqrt(T),
/// where the top 2C weights are selected and paired largest-with-smallest
/// (this attains the maximum; verified exhaustively for small libraries in
/// the test suite). Requires C < N/2 and w > 0.
double regret_lower_bound_weighted(std::span<const double> weights, int capacity, double horizon);

}  // namespace bsca
