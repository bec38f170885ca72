#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hyperselect/sampled_set.hpp"

namespace hyperselect {

// Unital *-subalgebra of M_n stored by a Hilbert-Schmidt orthonormal basis.
class MatrixAlgebra {
public:
    MatrixAlgebra(std::size_t n, std::vector<Matrix> hs_basis);

    std::size_t n() const noexcept { return n_; }
    std::size_t dim() const noexcept { return basis_.size(); }
    const std::vector<Matrix>& basis() const noexcept { return basis_; }
    bool unital() const noexcept { return unital_; }

    Matrix project(const Matrix& x) const;
    double residual(const Matrix& x) const;  // ||x - P(x)||_HS
    // Self-adjoint real basis of the algebra, HS-orthonormal.
    std::vector<Matrix> self_adjoint_basis() const;
    // The unit ball as an exact subspace descriptor over vec(M_n) with the operator norm.
    Subspace as_subspace() const;

private:
    std::size_t n_;
    std::vector<Matrix> basis_;
    Matrix stacked_;  // n^2 x dim, column j = vec(basis_[j])
    bool unital_ = false;
};

// Smallest unital *-subalgebra containing the generators.
MatrixAlgebra generate_algebra(const std::vector<Matrix>& generators, std::size_t n,
                               std::size_t cap = 12);

// Identity, unitaries exp(i pi k h / 4) along a self-adjoint basis (a quarter of the
// budget), then alternating polar parts and rescaled Gaussian elements of A; `count`
// elements in total.
std::vector<Matrix> unit_ball_sample(const MatrixAlgebra& a, std::size_t count, std::uint64_t seed);

// sup over the unit ball of A of |Tr(a x)|, as the trace norm of P_A(x).
double marechal_support(const MatrixAlgebra& a, const Matrix& x);

// Brute-force lower bound for the same supremum: best sample, then a compass ascent
// a -> a exp(i t h_j) over a self-adjoint basis started from the best few samples.
double sampled_support(const MatrixAlgebra& a, const Matrix& x, const std::vector<Matrix>& sample,
                       bool polish = true);

// HS basis of M_n followed by seeded random matrices, each of trace norm 1.
std::vector<Matrix> marechal_probes(std::size_t n, std::size_t count, std::uint64_t seed);

// sum_k w_k |support(A, x_k) - support(B, x_k)|, weights 2^-(k+1) by default.
double marechal_pseudometric(const MatrixAlgebra& a, const MatrixAlgebra& b,
                             const std::vector<Matrix>& probes, std::vector<double> weights = {});

struct AlgebraLaws {
    bool adjoint_closed = false;
    bool has_unit = false;
    bool mult_closed = false;
    double adjoint_defect = 0.0;
    double unit_defect = 0.0;
    double mult_defect = 0.0;
};

// Samples are vec(n x n) matrices. Membership uses the exact descriptor when present,
// otherwise operator-norm distance to the samples.
AlgebraLaws algebra_laws_report(const SampledSet& b, double tol);

struct ModulusPoint {
    double eps = 0.0;
    double delta = 0.0;
};

// delta(eps) = min d(x, y) over sampled unit-ball pairs with d(x*, y*) > eps, where d is the
// probe metric `metric` (2 when no pair violates). Zero and the basis elements scaled to
// operator norm 1 join the sample.
std::vector<ModulusPoint> adjoint_modulus(const MatrixAlgebra& a, const std::vector<double>& eps,
                                          std::size_t sample_count, std::uint64_t seed,
                                          const NormSpec& metric);

// S_n subsets of {0..m-1}, bit k of masks[n] set when k is in S_n.
struct SubsetSeq {
    std::size_t m = 0;
    std::vector<std::uint64_t> masks;

    SubsetSeq(std::size_t m, std::vector<std::uint64_t> masks);
    bool contains(std::size_t n, std::size_t k) const { return (masks[n] >> k) & 1u; }
    std::size_t count(std::size_t n) const;
};

struct FSAlgebra {
    MatrixAlgebra algebra;
    Matrix pi;  // sum_n e_nn (x) p_{S_n}
};

// (sum over n of B(l2({n} x S_n))) + C(1 - pi_S) inside M_{m^2}, index (n, k) -> n m + k.
FSAlgebra build_fS(const SubsetSeq& s, std::size_t cap = 64);

// omega = sum over terms of omega_{e_i (x) xi, e_j (x) eta}, omega_{a,b}(x) = <x a, b>.
struct FunctionalTerm {
    std::size_t i = 0;
    std::size_t j = 0;
    Vector xi;
    Vector eta;
};

struct FunctionalSpec {
    std::size_t m = 0;
    std::vector<FunctionalTerm> terms;

    // W with omega(x) = Tr(W x) on M_{m^2}.
    Matrix matrix() const;
    Scalar apply(const Matrix& x) const;
};

struct FunctionalNorm {
    double value = 0.0;
    bool form_mismatch = false;  // value is then the sampled oracle
};

// sum_i ||p_{S_i} xi_i|| ||p_{S_i} eta_i|| + |omega(1 - pi_S)| when each block index carries at
// most one diagonal term; cross terms i != j vanish on f(S).
FunctionalNorm functional_norm_on_fS(const FunctionalSpec& w, const SubsetSeq& s,
                                     std::size_t oracle_samples = 2000, std::uint64_t seed = 1);

struct IsometryBound {
    double lhs = 0.0;  // ||(x - u) xi||^2
    double rhs = 0.0;  // 2 Re <(u - x) xi, u xi>
};

// Requires u isometric and ||x|| <= 1; the adjoint form applies both to x*, u* and
// requires u unitary.
IsometryBound isometry_ball_bound(const Matrix& u, const Matrix& x, const Vector& xi,
                                  bool adjoint = false);

// Helpers shared with tests and scenarios.
Matrix random_unitary(std::size_t n, std::uint64_t seed);
Matrix random_contraction(std::size_t n, std::uint64_t seed);
Matrix matrix_unit(std::size_t n, std::size_t k, std::size_t l);
Matrix expi_hermitian(const Matrix& h, double t = 1.0);

}  // namespace hyperselect
