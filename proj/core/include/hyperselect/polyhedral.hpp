#pragma once

#include <Eigen/Dense>

#include "hyperselect/normed.hpp"

namespace hyperselect {

// Exact optimization over polyhedral norms by vertex enumeration. B is d x k with full
// column rank; kind is L1 or Linf. Exhaustive over row subsets, so intended for d <= 12.

// sup { |a . c| : ||B c||_kind <= 1 }.
double max_abs_over_section(const Eigen::MatrixXd& b, const Eigen::VectorXd& a, NormKind kind);

// min_c ||x - B c||_kind.
double min_residual(const Eigen::MatrixXd& b, const Eigen::VectorXd& x, NormKind kind);

// Calls f with every k-subset of {0..n-1} in lexicographic order.
template <class F>
void for_each_subset(int n, int k, F&& f) {
    if (k < 0 || k > n) return;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        f(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace hyperselect
