#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hyperselect/errors.hpp"

namespace hyperselect {

using Scalar = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

// Scalar field of a space. Real spaces store complex coordinates with zero imaginary part.
enum class ScalarField { Real, Complex };

enum class NormKind {
    L1,
    L2,
    Linf,
    OperatorNorm,
    TraceNorm,
    ProbeWeak,        // sum_m w_m |<x xi_{k_m}, xi_{l_m}>|
    ProbeStrong,      // sum_n w_n ||x xi_n||
    ProbeStrongStar,  // sum_n w_n (||x xi_n|| + ||x^* xi_n||) / 2
};

const char* to_string(NormKind kind);
NormKind norm_kind_from_string(const std::string& name);

struct ProbePair {
    std::size_t k;
    std::size_t l;
};

// Index m (0-based) of the Cantor enumeration of N x N, as used by the weak probe norm.
ProbePair cantor_unpair(std::size_t m);

// Ordered unit vectors standing in for a dense sequence in the unit ball of C^dim,
// together with the surjection m -> (k_m, l_m) used by the weak probe norm.
class ProbeSequence {
public:
    // Standard basis first, then normalized integer (Gaussian-integer for complex fields)
    // vectors enumerated shell by shell. A nonzero seed applies a fixed random unitary to
    // the non-basis tail, which keeps every prefix stable when the length grows.
    static ProbeSequence standard(std::size_t dim, std::size_t length, std::uint64_t seed = 0,
                                  ScalarField field = ScalarField::Complex);

    ProbeSequence(std::vector<Vector> vectors, std::vector<ProbePair> pairs);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return vectors_.size(); }
    const std::vector<Vector>& vectors() const noexcept { return vectors_; }
    const std::vector<ProbePair>& pairs() const noexcept { return pairs_; }

private:
    std::size_t dim_ = 0;
    std::vector<Vector> vectors_;
    std::vector<ProbePair> pairs_;
};

// A norm from the supported family. Probe norms act on n x n matrices; vectors passed to
// them are read column-major. An optional chart maps coordinate vectors into the ambient
// space first, so a norm can be pulled back to coordinates on a subspace.
struct NormSpec {
    NormKind kind = NormKind::L2;
    std::shared_ptr<const ProbeSequence> probes;
    std::vector<double> weights;  // empty: 2^-m, m = 1, 2, ...
    std::shared_ptr<const Matrix> chart;

    static NormSpec l1() { return {NormKind::L1, nullptr, {}, nullptr}; }
    static NormSpec l2() { return {NormKind::L2, nullptr, {}, nullptr}; }
    static NormSpec linf() { return {NormKind::Linf, nullptr, {}, nullptr}; }
    static NormSpec operator_norm() { return {NormKind::OperatorNorm, nullptr, {}, nullptr}; }
    static NormSpec trace_norm() { return {NormKind::TraceNorm, nullptr, {}, nullptr}; }
    static NormSpec probe(NormKind kind, ProbeSequence probes, std::vector<double> weights = {});
    static NormSpec of(NormKind kind) { return {kind, nullptr, {}, nullptr}; }

    NormSpec with_chart(Matrix chart) const;

    bool is_probe() const noexcept;
    bool is_matrix_norm() const noexcept;
    // Weight of the m-th term (0-based).
    double weight(std::size_t m) const;
    // Number of terms the probe sum runs over.
    std::size_t term_count() const;
};

// Norm on the dual of (C^d, kind) for kind in {L1, L2, Linf}.
NormKind dual_kind(NormKind kind);
NormSpec dual_of(const NormSpec& spec);

double eval_norm(const Vector& v, const NormSpec& spec);
double eval_norm(const Matrix& m, const NormSpec& spec);

// sup over the predual unit ball of |omega(x)| with the bilinear pairing sum_i omega_i x_i.
double eval_dual_norm(const Vector& omega, const NormSpec& spec);

// eval_norm(a - b), without temporaries for the coordinate norms.
double distance(const Vector& a, const Vector& b, const NormSpec& spec);

// Probe metric on the operator-norm unit ball; rejects inputs outside it.
double probe_metric(const Matrix& a, const Matrix& b, const NormSpec& spec);

double operator_norm(const Matrix& m);
double trace_norm(const Matrix& m);

// Reads a length n^2 vector as an n x n matrix (column-major).
Matrix as_matrix(const Vector& v);
Vector vec(const Matrix& m);

// Bilinear pairing sum_i omega_i x_i.
Scalar pair(const Vector& omega, const Vector& x);

bool is_real(const Vector& v, double tol = 1e-12);

}  // namespace hyperselect
