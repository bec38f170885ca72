#include "hyperselect/normed.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace hyperselect {

const char* to_string(NormKind kind) {
    switch (kind) {
        case NormKind::L1: return "L1";
        case NormKind::L2: return "L2";
        case NormKind::Linf: return "Linf";
        case NormKind::OperatorNorm: return "OperatorNorm";
        case NormKind::TraceNorm: return "TraceNorm";
        case NormKind::ProbeWeak: return "ProbeWeak";
        case NormKind::ProbeStrong: return "ProbeStrong";
        case NormKind::ProbeStrongStar: return "ProbeStrongStar";
    }
    return "?";
}

NormKind norm_kind_from_string(const std::string& name) {
    for (auto k : {NormKind::L1, NormKind::L2, NormKind::Linf, NormKind::OperatorNorm,
                   NormKind::TraceNorm, NormKind::ProbeWeak, NormKind::ProbeStrong,
                   NormKind::ProbeStrongStar}) {
        if (name == to_string(k)) return k;
    }
    throw UnsupportedNorm("unknown norm kind '" + name + "'");
}

ProbePair cantor_unpair(std::size_t m) {
    auto s = static_cast<std::size_t>((std::sqrt(8.0 * static_cast<double>(m) + 1.0) - 1.0) / 2.0);
    while (s * (s + 1) / 2 > m) --s;
    while ((s + 1) * (s + 2) / 2 <= m) ++s;
    std::size_t l = m - s * (s + 1) / 2;
    return {s - l, l};
}

namespace {

// Odometer over {-r..r}^d restricted to the shell max|c_i| = r, gcd 1, first nonzero
// coordinate positive, and not a coordinate axis.
class ShellEnumerator {
public:
    explicit ShellEnumerator(std::size_t d) : d_(d) { start_shell(1); }

    std::vector<long> next() {
        for (;;) {
            if (!advance()) start_shell(r_ + 1);
            if (accept()) return c_;
        }
    }

private:
    void start_shell(long r) {
        r_ = r;
        c_.assign(d_, -r);
        fresh_ = true;
    }

    bool advance() {
        if (fresh_) {
            fresh_ = false;
            return true;
        }
        for (std::size_t i = d_; i-- > 0;) {
            if (c_[i] < r_) {
                ++c_[i];
                return true;
            }
            c_[i] = -r_;
        }
        return false;
    }

    bool accept() const {
        long g = 0, mx = 0, nonzero = 0, first = 0;
        for (long v : c_) {
            if (v != 0) {
                if (nonzero == 0) first = v;
                ++nonzero;
            }
            g = std::gcd(g, std::labs(v));
            mx = std::max(mx, std::labs(v));
        }
        return mx == r_ && g == 1 && first > 0 && nonzero > 1;
    }

    std::size_t d_;
    long r_ = 1;
    std::vector<long> c_;
    bool fresh_ = true;
};

Matrix seeded_unitary(std::size_t n, std::uint64_t seed, ScalarField field) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix z(n, n);
    for (Eigen::Index j = 0; j < z.cols(); ++j)
        for (Eigen::Index i = 0; i < z.rows(); ++i) {
            double re = g(rng);
            double im = field == ScalarField::Complex ? g(rng) : 0.0;
            z(i, j) = {re, im};
        }
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    return q;
}

}  // namespace

ProbeSequence ProbeSequence::standard(std::size_t dim, std::size_t length, std::uint64_t seed,
                                      ScalarField field) {
    if (dim == 0) throw DimensionMismatch("probe dimension must be positive");
    std::vector<Vector> vs;
    vs.reserve(length);
    for (std::size_t i = 0; i < dim && vs.size() < length; ++i) vs.push_back(Vector::Unit(dim, i));
    const std::size_t d = field == ScalarField::Complex ? 2 * dim : dim;
    if (vs.size() < length && d > 1) {
        ShellEnumerator shells(d);
        std::optional<Matrix> u;
        if (seed != 0) u = seeded_unitary(dim, seed, field);
        while (vs.size() < length) {
            auto c = shells.next();
            Vector v(dim);
            for (std::size_t i = 0; i < dim; ++i) {
                double im = field == ScalarField::Complex ? double(c[dim + i]) : 0.0;
                v[i] = {double(c[i]), im};
            }
            v.normalize();
            if (u) v = *u * v;
            vs.push_back(std::move(v));
        }
    }
    std::vector<ProbePair> pairs;
    const std::size_t n = vs.size();
    pairs.reserve(n * (n + 1) / 2);
    for (std::size_t m = 0; m < n * (n + 1) / 2; ++m) pairs.push_back(cantor_unpair(m));
    return ProbeSequence(std::move(vs), std::move(pairs));
}

ProbeSequence::ProbeSequence(std::vector<Vector> vectors, std::vector<ProbePair> pairs)
    : vectors_(std::move(vectors)), pairs_(std::move(pairs)) {
    if (vectors_.empty()) throw MissingProbes("probe sequence is empty");
    dim_ = static_cast<std::size_t>(vectors_.front().size());
    for (const auto& v : vectors_) {
        if (static_cast<std::size_t>(v.size()) != dim_)
            throw DimensionMismatch("probe vectors differ in dimension");
        if (std::abs(v.norm() - 1.0) > 1e-12)
            throw PreconditionError("probe vector is not a unit vector");
    }
    for (const auto& p : pairs_) {
        if (p.k >= vectors_.size() || p.l >= vectors_.size())
            throw PreconditionError("probe pair index out of range");
    }
}

NormSpec NormSpec::probe(NormKind kind, ProbeSequence probes, std::vector<double> weights) {
    NormSpec s{kind, std::make_shared<const ProbeSequence>(std::move(probes)), std::move(weights),
               nullptr};
    if (!s.is_probe()) throw UnsupportedNorm("not a probe norm kind");
    if (!s.weights.empty()) {
        if (s.weights.size() < s.term_count())
            throw PreconditionError("fewer weights than probe terms");
        double sum = 0.0;
        for (double w : s.weights) {
            if (!(w > 0.0)) throw PreconditionError("probe weights must be positive");
            sum += w;
        }
        if (sum > 2.0 + 1e-12) throw PreconditionError("probe weights sum above 2");
    }
    return s;
}

NormSpec NormSpec::with_chart(Matrix c) const {
    NormSpec s = *this;
    s.chart = std::make_shared<const Matrix>(std::move(c));
    return s;
}

bool NormSpec::is_probe() const noexcept {
    return kind == NormKind::ProbeWeak || kind == NormKind::ProbeStrong ||
           kind == NormKind::ProbeStrongStar;
}

bool NormSpec::is_matrix_norm() const noexcept {
    return is_probe() || kind == NormKind::OperatorNorm || kind == NormKind::TraceNorm;
}

double NormSpec::weight(std::size_t m) const {
    if (!weights.empty()) return weights.at(m);
    return std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(m + 1, 2000)));
}

std::size_t NormSpec::term_count() const {
    if (!probes) return 0;
    return kind == NormKind::ProbeWeak ? probes->pairs().size() : probes->size();
}

NormKind dual_kind(NormKind kind) {
    switch (kind) {
        case NormKind::L1: return NormKind::Linf;
        case NormKind::L2: return NormKind::L2;
        case NormKind::Linf: return NormKind::L1;
        case NormKind::OperatorNorm: return NormKind::TraceNorm;
        case NormKind::TraceNorm: return NormKind::OperatorNorm;
        default: throw UnsupportedNorm(std::string("no dual for ") + to_string(kind));
    }
}

NormSpec dual_of(const NormSpec& spec) {
    if (spec.chart) throw UnsupportedNorm("dual of a charted norm");
    return NormSpec::of(dual_kind(spec.kind));
}

Matrix as_matrix(const Vector& v) {
    auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
    if (n * n != v.size()) throw DimensionMismatch("vector length is not a square");
    return Eigen::Map<const Matrix>(v.data(), n, n);
}

Vector vec(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

double operator_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    // Largest eigenvalue of m^H m; accurate to rounding for the top singular value.
    Eigen::SelfAdjointEigenSolver<Matrix> es(m.adjoint() * m, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double trace_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues().sum();
}

namespace {

double probe_norm(const Matrix& x, const NormSpec& spec) {
    if (!spec.probes) throw MissingProbes(std::string(to_string(spec.kind)) + " needs probes");
    if (x.rows() != x.cols()) throw DimensionMismatch("probe norms need square matrices");
    const auto& ps = *spec.probes;
    if (static_cast<std::size_t>(x.cols()) != ps.dim())
        throw DimensionMismatch("probe dimension differs from matrix size");
    const auto& xi = ps.vectors();
    double sum = 0.0;
    switch (spec.kind) {
        case NormKind::ProbeWeak: {
            std::vector<Vector> images;
            images.reserve(xi.size());
            for (const auto& v : xi) images.push_back(x * v);
            const auto& pairs = ps.pairs();
            for (std::size_t m = 0; m < pairs.size(); ++m)
                sum += spec.weight(m) * std::abs(xi[pairs[m].l].dot(images[pairs[m].k]));
            break;
        }
        case NormKind::ProbeStrong:
            for (std::size_t n = 0; n < xi.size(); ++n) sum += spec.weight(n) * (x * xi[n]).norm();
            break;
        case NormKind::ProbeStrongStar: {
            Matrix xs = x.adjoint();
            for (std::size_t n = 0; n < xi.size(); ++n)
                sum += spec.weight(n) * 0.5 * ((x * xi[n]).norm() + (xs * xi[n]).norm());
            break;
        }
        default: break;
    }
    return sum;
}

double coordinate_norm(const Vector& v, NormKind kind) {
    switch (kind) {
        case NormKind::L1: return v.cwiseAbs().sum();
        case NormKind::L2: return v.norm();
        case NormKind::Linf: return v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
        default: return 0.0;
    }
}

}  // namespace

double eval_norm(const Matrix& m, const NormSpec& spec) {
    switch (spec.kind) {
        case NormKind::L1:
        case NormKind::L2:
        case NormKind::Linf: return coordinate_norm(vec(m), spec.kind);
        case NormKind::OperatorNorm:
            if (m.rows() != m.cols()) throw DimensionMismatch("operator norm needs a square matrix");
            return operator_norm(m);
        case NormKind::TraceNorm:
            if (m.rows() != m.cols()) throw DimensionMismatch("trace norm needs a square matrix");
            return trace_norm(m);
        default: return probe_norm(m, spec);
    }
}

double eval_norm(const Vector& v, const NormSpec& spec) {
    if (spec.chart) {
        if (spec.chart->cols() != v.size()) throw DimensionMismatch("chart does not fit vector");
        Vector amb = *spec.chart * v;
        NormSpec plain = spec;
        plain.chart.reset();
        return eval_norm(amb, plain);
    }
    if (v.size() == 0) throw DimensionMismatch("empty vector");
    if (!spec.is_matrix_norm()) return coordinate_norm(v, spec.kind);
    return eval_norm(as_matrix(v), spec);
}

double eval_dual_norm(const Vector& omega, const NormSpec& spec) {
    if (spec.chart) throw UnsupportedNorm("dual of a charted norm");
    switch (spec.kind) {
        case NormKind::L1:
        case NormKind::L2:
        case NormKind::Linf: return coordinate_norm(omega, dual_kind(spec.kind));
        default: throw UnsupportedNorm(std::string("dual norm of ") + to_string(spec.kind));
    }
}

double distance(const Vector& a, const Vector& b, const NormSpec& spec) {
    if (a.size() != b.size()) throw DimensionMismatch("distance between different dimensions");
    if (spec.chart || spec.is_matrix_norm()) return eval_norm(Vector(a - b), spec);
    const Eigen::Index n = a.size();
    double acc = 0.0;
    switch (spec.kind) {
        case NormKind::L1:
            for (Eigen::Index i = 0; i < n; ++i) acc += std::abs(a[i] - b[i]);
            return acc;
        case NormKind::L2:
            for (Eigen::Index i = 0; i < n; ++i) acc += std::norm(a[i] - b[i]);
            return std::sqrt(acc);
        default:
            for (Eigen::Index i = 0; i < n; ++i) acc = std::max(acc, std::abs(a[i] - b[i]));
            return acc;
    }
}

double probe_metric(const Matrix& a, const Matrix& b, const NormSpec& spec) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("probe metric between different shapes");
    if (operator_norm(a) > 1.0 + 1e-9 || operator_norm(b) > 1.0 + 1e-9)
        throw PreconditionError("probe metric is only defined on the operator-norm unit ball");
    return eval_norm(Matrix(a - b), spec);
}

Scalar pair(const Vector& omega, const Vector& x) {
    if (omega.size() != x.size()) throw DimensionMismatch("pairing of different dimensions");
    return (omega.array() * x.array()).sum();
}

bool is_real(const Vector& v, double tol) {
    return v.size() == 0 || v.imag().cwiseAbs().maxCoeff() <= tol;
}

}  // namespace hyperselect
