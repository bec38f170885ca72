#pragma once

#include <optional>
#include <vector>

#include "hyperselect/hyperspace.hpp"
#include "hyperselect/sampled_set.hpp"

namespace hyperselect {

// sup over F of |omega(x)|. Exact on SubspaceBall and DiscFamily descriptors, otherwise
// the maximum over samples. `dual_norm` is the norm of the space F lives in; samples
// must lie in its unit ball.
double support_function(const SampledSet& f, const Vector& x, const NormSpec& dual_norm);

// Exact support of the unit ball of W at x, i.e. the norm of <., x> restricted to W.
double subspace_support(const Subspace& w, const Vector& x);

// Functionals vanishing on a primal subspace, in the dual ambient norm.
Subspace annihilator(const Subspace& v);
// Vectors on which every functional of a dual subspace vanishes.
Subspace preannihilator(const Subspace& w);

struct QuotientDistance {
    double primal = 0.0;  // inf over v in V of ||x - v||
    double dual = 0.0;    // support of the unit ball of the annihilator at x
};

// Evaluates d(x, V) both ways; throws DualityMismatch when they differ by more than tol.
QuotientDistance quotient_distance(const Vector& x, const Subspace& v, const NormSpec& spec,
                                   double tol = 1e-6);

struct SupportProfile {
    std::vector<Vector> probes;
    std::vector<double> values;
    NormSpec dual_norm;
};

SupportProfile support_profile(const SampledSet& f, const std::vector<Vector>& probes,
                               const NormSpec& dual_norm);

// Grid points of mesh `mesh` in the dual unit ball satisfying every recorded bound. Both
// constraints are widened by the largest change a half-cell step can cause, so every point
// of the described set keeps a grid neighbour. Real fields only.
SampledSet reconstruct_ball(const SupportProfile& profile, double mesh);

struct SubspaceBallCheck {
    bool ok = true;
    std::optional<double> witness_scale;
    std::optional<Vector> witness_point;  // the rescaled point p / s
    double violation = 0.0;               // its distance to B
};

// For each scale s in order: every sample of norm <= s, rescaled by 1/s, must lie within
// tol of B. Requires B to pass shape_report at `shape_tol`.
SubspaceBallCheck is_subspace_ball(const SampledSet& b, const std::vector<double>& scales,
                                   double tol, const NormSpec& dual_norm, double shape_tol);

// sum_k w_k |rho_A(x_k) - rho_B(x_k)|, weights 2^-(k+1) by default.
double weighted_support_gap(const SampledSet& a, const SampledSet& b,
                            const std::vector<Vector>& probes, const NormSpec& dual_norm,
                            std::vector<double> weights = {});

// Per subspace in the sequence: max over probes of |rho_{V_i}(x) - rho_V(x)|.
std::vector<double> convergence_gap(const std::vector<Subspace>& seq, const Subspace& limit,
                                    const std::vector<Vector>& probes);

}  // namespace hyperselect
