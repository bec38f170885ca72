#include "hyperselect/operator_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "hyperselect/errors.hpp"

namespace hyperselect {

namespace {

constexpr double kBasisTol = 1e-9;
constexpr double kDropTol = 1e-10;
const Scalar kI(0.0, 1.0);

Scalar hs(const Matrix& a, const Matrix& b) { return a.conjugate().cwiseProduct(b).sum(); }

// Tr(a b) without forming the product.
Scalar trace_prod(const Matrix& a, const Matrix& b) { return a.cwiseProduct(b.transpose()).sum(); }

Matrix ginibre(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix m(n, n);
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            const double re = g(rng);
            m(r, c) = Scalar(re, g(rng));
        }
    return m;
}

// Appends x to an HS-orthonormal list if it adds a new direction.
bool absorb(std::vector<Matrix>& basis, Matrix x) {
    const double scale = std::max(1.0, x.norm());
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& b : basis) x -= hs(b, x) * b;
    const double r = x.norm();
    if (r <= kDropTol * scale) return false;
    basis.push_back(x / r);
    return true;
}

// g (g^H g)^{-1/2}; g is Gaussian, hence invertible almost surely.
Matrix polar_part(const Matrix& g) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(g.adjoint() * g);
    const Eigen::VectorXd inv = es.eigenvalues().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
    return g * es.eigenvectors() * inv.cast<Scalar>().asDiagonal() * es.eigenvectors().adjoint();
}

std::size_t side_of(std::size_t dim) {
    const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(dim))));
    if (n * n != dim) throw DimensionMismatch("sample length is not a square");
    return n;
}

}  // namespace

Matrix matrix_unit(std::size_t n, std::size_t k, std::size_t l) {
    Matrix e = Matrix::Zero(n, n);
    e(k, l) = 1.0;
    return e;
}

Matrix expi_hermitian(const Matrix& h, double t) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    Vector ph = (kI * t * es.eigenvalues().cast<Scalar>()).array().exp().matrix();
    return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix random_unitary(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Eigen::HouseholderQR<Matrix> qr(ginibre(n, rng));
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < q.cols(); ++i) {
        const double a = std::abs(r(i, i));
        if (a > 0) q.col(i) *= r(i, i) / a;
    }
    return q;
}

Matrix random_contraction(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Matrix g = ginibre(n, rng);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return g * (u(rng) / operator_norm(g));
}

MatrixAlgebra::MatrixAlgebra(std::size_t n, std::vector<Matrix> hs_basis)
    : n_(n), basis_(std::move(hs_basis)) {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (static_cast<std::size_t>(basis_[i].rows()) != n ||
            static_cast<std::size_t>(basis_[i].cols()) != n)
            throw DimensionMismatch("basis matrix has the wrong size");
        for (std::size_t j = 0; j <= i; ++j) {
            const Scalar g = hs(basis_[j], basis_[i]);
            if (std::abs(g - (i == j ? 1.0 : 0.0)) > kBasisTol)
                throw PreconditionError("basis is not Hilbert-Schmidt orthonormal");
        }
    }
    stacked_.resize(static_cast<Eigen::Index>(n * n), static_cast<Eigen::Index>(basis_.size()));
    for (std::size_t j = 0; j < basis_.size(); ++j) stacked_.col(j) = vec(basis_[j]);
    unital_ = n > 0 && residual(Matrix::Identity(n, n)) <= kBasisTol;
}

Matrix MatrixAlgebra::project(const Matrix& x) const {
    if (static_cast<std::size_t>(x.rows()) != n_ || static_cast<std::size_t>(x.cols()) != n_)
        throw DimensionMismatch("matrix size differs from the algebra");
    const Eigen::Map<const Vector> v(x.data(), x.size());
    Vector p = stacked_ * (stacked_.adjoint() * v);
    return Eigen::Map<const Matrix>(p.data(), x.rows(), x.cols());
}

double MatrixAlgebra::residual(const Matrix& x) const { return (x - project(x)).norm(); }

std::vector<Matrix> MatrixAlgebra::self_adjoint_basis() const {
    std::vector<Matrix> out;
    for (const auto& b : basis_) {
        for (Matrix h : {Matrix(0.5 * (b + b.adjoint())), Matrix(-0.5 * kI * (b - b.adjoint()))}) {
            const double scale = std::max(1.0, h.norm());
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& k : out) h -= hs(k, h).real() * k;
            const double r = h.norm();
            if (r > kDropTol * scale) out.push_back(h / r);
        }
        if (out.size() == basis_.size()) break;
    }
    return out;
}

Subspace MatrixAlgebra::as_subspace() const {
    std::vector<Vector> gens;
    gens.reserve(basis_.size());
    for (const auto& b : basis_) gens.push_back(vec(b));
    return Subspace::span(gens, n_ * n_, NormSpec::operator_norm(), Side::Primal,
                          ScalarField::Complex);
}

MatrixAlgebra generate_algebra(const std::vector<Matrix>& generators, std::size_t n,
                               std::size_t cap) {
    if (n == 0 || n > cap)
        throw CapExceeded("matrix size " + std::to_string(n) + " exceeds cap " +
                          std::to_string(cap));
    std::vector<Matrix> basis;
    absorb(basis, Matrix::Identity(n, n));
    for (const auto& g : generators) {
        if (static_cast<std::size_t>(g.rows()) != n || static_cast<std::size_t>(g.cols()) != n)
            throw DimensionMismatch("generator has the wrong size");
        absorb(basis, g);
    }
    const std::size_t full = n * n;
    std::size_t before = 0;
    while (basis.size() != before && basis.size() < full) {
        before = basis.size();
        for (std::size_t i = 0; i < before && basis.size() < full; ++i)
            absorb(basis, basis[i].adjoint());
        const std::size_t now = basis.size();
        for (std::size_t i = 0; i < now && basis.size() < full; ++i)
            for (std::size_t j = 0; j < now && basis.size() < full; ++j)
                absorb(basis, basis[i] * basis[j]);
    }
    return MatrixAlgebra(n, std::move(basis));
}

std::vector<Matrix> unit_ball_sample(const MatrixAlgebra& a, std::size_t count, std::uint64_t seed) {
    const std::size_t n = a.n();
    std::vector<Matrix> out;
    const std::size_t total = std::max<std::size_t>(count, 1);
    out.reserve(total);
    auto push = [&](Matrix m) {
        if (out.size() < total) out.push_back(std::move(m));
    };
    if (a.unital()) push(Matrix::Identity(n, n));

    // Fixed net: exp(i pi k h / 4) along each self-adjoint basis direction.
    const auto sa = a.self_adjoint_basis();
    const std::size_t net_budget = total / 4;
    std::size_t used = 0;
    for (const auto& h : sa) {
        const double s = operator_norm(h);
        if (s <= 0) continue;
        Eigen::SelfAdjointEigenSolver<Matrix> es(h / s);
        for (int k = 1; k < 8 && used < net_budget; ++k, ++used) {
            Vector ph = (kI * (M_PI * k / 4.0) * es.eigenvalues().cast<Scalar>())
                            .array()
                            .exp()
                            .matrix();
            push(es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint());
        }
        if (used >= net_budget) break;
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    bool unitary_turn = true;
    while (out.size() < total) {
        Matrix g = a.project(ginibre(n, rng));
        const double s = operator_norm(g);
        if (s <= 0) continue;
        if (unitary_turn && a.unital()) {
            // Polar part of a Gaussian element of A; re-projected to clear rounding.
            Matrix u = a.project(polar_part(g));
            const double su = operator_norm(u);
            push(su > 1.0 ? Matrix(u / su) : u);
        } else {
            push(g * (unif(rng) / s));
        }
        unitary_turn = !unitary_turn;
    }
    return out;
}

double marechal_support(const MatrixAlgebra& a, const Matrix& x) {
    return trace_norm(a.project(x));
}

double sampled_support(const MatrixAlgebra& a, const Matrix& x, const std::vector<Matrix>& sample,
                       bool polish) {
    auto value = [&](const Matrix& s) { return std::abs(trace_prod(s, x)); };
    std::vector<std::pair<double, std::size_t>> scored;
    scored.reserve(sample.size());
    for (std::size_t i = 0; i < sample.size(); ++i) scored.emplace_back(value(sample[i]), i);
    if (scored.empty()) return 0.0;
    std::stable_sort(scored.begin(), scored.end(),
                     [](const auto& l, const auto& r) { return l.first > r.first; });
    double best = scored.front().first;
    if (!polish) return best;

    // Ascent along a -> a exp(i t H), H the projected gradient direction in A_sa.
    const std::size_t starts = std::min<std::size_t>(3, scored.size());
    for (std::size_t s = 0; s < starts; ++s) {
        Matrix cur = sample[scored[s].second];
        Scalar tr = trace_prod(cur, x);
        double f = std::abs(tr);
        for (int it = 0; it < 400; ++it) {
            const Scalar phase = f > 0 ? std::conj(tr) / f : Scalar(1.0);
            const Matrix z = phase * kI * (x * cur);
            const Matrix h = a.project(0.5 * (z + z.adjoint()));
            const double hn = operator_norm(h);
            if (hn < 1e-13) break;
            Eigen::SelfAdjointEigenSolver<Matrix> es(h / hn);
            const Matrix av = cur * es.eigenvectors();
            const Matrix vx = es.eigenvectors().adjoint() * x;
            bool moved = false;
            for (double t = 1.0; t > 1e-9; t *= 0.5) {
                Vector ph = (kI * t * es.eigenvalues().cast<Scalar>()).array().exp().matrix();
                const Matrix cand = av * ph.asDiagonal() * es.eigenvectors().adjoint();
                const Scalar ctr = (av * ph.asDiagonal() * vx).trace();
                if (std::abs(ctr) > f * (1.0 + 1e-14)) {
                    cur = cand;
                    tr = ctr;
                    f = std::abs(ctr);
                    moved = true;
                    break;
                }
            }
            if (!moved) break;
        }
        best = std::max(best, f);
    }
    return best;
}

std::vector<Matrix> marechal_probes(std::size_t n, std::size_t count, std::uint64_t seed) {
    std::vector<Matrix> out;
    for (std::size_t l = 0; l < n && out.size() < count; ++l)
        for (std::size_t k = 0; k < n && out.size() < count; ++k) out.push_back(matrix_unit(n, k, l));
    std::mt19937_64 rng(seed);
    while (out.size() < count) {
        Matrix g = ginibre(n, rng);
        out.push_back(g / trace_norm(g));
    }
    return out;
}

double marechal_pseudometric(const MatrixAlgebra& a, const MatrixAlgebra& b,
                             const std::vector<Matrix>& probes, std::vector<double> weights) {
    if (a.n() != b.n()) throw DimensionMismatch("algebras live in different matrix sizes");
    if (weights.empty())
        for (std::size_t k = 0; k < probes.size(); ++k) weights.push_back(std::ldexp(1.0, -int(k) - 1));
    if (weights.size() != probes.size())
        throw PreconditionError("one weight per probe is required");
    double sum = 0.0;
    for (std::size_t k = 0; k < probes.size(); ++k)
        sum += weights[k] * std::abs(marechal_support(a, probes[k]) - marechal_support(b, probes[k]));
    return sum;
}

AlgebraLaws algebra_laws_report(const SampledSet& b, double tol) {
    const std::size_t n = side_of(b.dim());
    std::vector<Matrix> pts;
    pts.reserve(b.size());
    for (const auto& p : b.points()) pts.push_back(as_matrix(p));

    auto dist = [&](const Matrix& y) {
        const Vector v = vec(y);
        if (b.exact() && exact_contains(*b.exact(), v, tol)) return 0.0;
        double d = std::numeric_limits<double>::infinity();
        for (const auto& p : pts) d = std::min(d, operator_norm(y - p));
        return d;
    };

    AlgebraLaws r;
    for (const auto& p : pts) r.adjoint_defect = std::max(r.adjoint_defect, dist(p.adjoint()));
    r.unit_defect = dist(Matrix::Identity(n, n));

    const std::size_t m = pts.size();
    if (m <= 64) {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                r.mult_defect = std::max(r.mult_defect, dist(pts[i] * pts[j]));
    } else {
        std::mt19937_64 rng(0x1a75);
        std::uniform_int_distribution<std::size_t> pick(0, m - 1);
        for (std::size_t i = 0; i < m; ++i) r.mult_defect = std::max(r.mult_defect, dist(pts[i] * pts[i]));
        for (int t = 0; t < 4096; ++t) {
            const std::size_t i = pick(rng), j = pick(rng);
            r.mult_defect = std::max(r.mult_defect, dist(pts[i] * pts[j]));
        }
    }
    r.adjoint_closed = r.adjoint_defect <= tol;
    r.has_unit = r.unit_defect <= tol;
    r.mult_closed = r.mult_defect <= tol;
    return r;
}

std::vector<ModulusPoint> adjoint_modulus(const MatrixAlgebra& a, const std::vector<double>& eps,
                                          std::size_t sample_count, std::uint64_t seed,
                                          const NormSpec& metric) {
    if (metric.kind != NormKind::ProbeStrong || !metric.probes)
        throw UnsupportedNorm("adjoint modulus needs a strong probe metric");
    if (metric.probes->dim() != a.n()) throw DimensionMismatch("probe length differs from n");

    auto sample = unit_ball_sample(a, sample_count, seed);
    sample.push_back(Matrix::Zero(a.n(), a.n()));
    for (const auto& b : a.basis()) sample.push_back(b / operator_norm(b));
    const auto& xs = metric.probes->vectors();
    const std::size_t L = xs.size();
    Matrix xi(a.n(), L);
    for (std::size_t l = 0; l < L; ++l) xi.col(l) = xs[l];
    std::vector<double> w(L);
    for (std::size_t l = 0; l < L; ++l) w[l] = metric.weight(l);

    std::vector<Matrix> img, img_star;
    for (const auto& s : sample) {
        img.push_back(s * xi);
        img_star.push_back(s.adjoint() * xi);
    }
    auto rho = [&](const Matrix& p, const Matrix& q) {
        double d = 0.0;
        for (std::size_t l = 0; l < L; ++l) d += w[l] * (p.col(l) - q.col(l)).norm();
        return d;
    };

    std::vector<std::pair<double, double>> pairs;  // (d, d*)
    const std::size_t m = sample.size();
    auto add = [&](std::size_t i, std::size_t j) {
        pairs.emplace_back(rho(img[i], img[j]), rho(img_star[i], img_star[j]));
    };
    if (m <= 600) {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) add(i, j);
    } else {
        std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
        std::uniform_int_distribution<std::size_t> pick(0, m - 1);
        for (std::size_t i = 0; i + 1 < m; ++i) add(i, m - 1);
        for (int t = 0; t < 200000; ++t) {
            const std::size_t i = pick(rng), j = pick(rng);
            if (i != j) add(i, j);
        }
    }

    std::vector<ModulusPoint> out;
    for (double e : eps) {
        double delta = 2.0;
        for (const auto& [d, ds] : pairs)
            if (ds > e) delta = std::min(delta, d);
        out.push_back({e, delta});
    }
    return out;
}

SubsetSeq::SubsetSeq(std::size_t m_, std::vector<std::uint64_t> masks_)
    : m(m_), masks(std::move(masks_)) {
    if (m == 0 || m > 64) throw PreconditionError("truncation depth must lie in 1..64");
    if (masks.size() != m) throw DimensionMismatch("one subset per row is required");
    const std::uint64_t allowed = m == 64 ? ~0ULL : ((1ULL << m) - 1);
    for (auto s : masks)
        if (s & ~allowed) throw PreconditionError("subset index outside 0..m-1");
}

std::size_t SubsetSeq::count(std::size_t n) const {
    return static_cast<std::size_t>(__builtin_popcountll(masks[n]));
}

FSAlgebra build_fS(const SubsetSeq& s, std::size_t cap) {
    const std::size_t m = s.m, dim = m * m;
    if (dim > cap)
        throw CapExceeded("ambient size " + std::to_string(dim) + " exceeds cap " + std::to_string(cap));
    Matrix pi = Matrix::Zero(dim, dim);
    std::vector<Matrix> basis;
    for (std::size_t n = 0; n < m; ++n)
        for (std::size_t k = 0; k < m; ++k) {
            if (!s.contains(n, k)) continue;
            pi(n * m + k, n * m + k) = 1.0;
            for (std::size_t l = 0; l < m; ++l)
                if (s.contains(n, l)) basis.push_back(matrix_unit(dim, n * m + k, n * m + l));
        }
    Matrix rest = Matrix::Identity(dim, dim) - pi;
    const double r = rest.norm();
    if (r > 0) basis.push_back(rest / r);
    return {MatrixAlgebra(dim, std::move(basis)), std::move(pi)};
}

Matrix FunctionalSpec::matrix() const {
    const std::size_t dim = m * m;
    Matrix w = Matrix::Zero(dim, dim);
    for (const auto& t : terms) {
        if (t.i >= m || t.j >= m) throw PreconditionError("functional index outside 0..m-1");
        if (static_cast<std::size_t>(t.xi.size()) != m || static_cast<std::size_t>(t.eta.size()) != m)
            throw DimensionMismatch("functional vectors must have length m");
        // omega_{a,b}(x) = b^H x a = Tr(a b^H x)
        w.block(t.i * m, t.j * m, m, m) += t.xi * t.eta.adjoint();
    }
    return w;
}

Scalar FunctionalSpec::apply(const Matrix& x) const { return (matrix() * x).trace(); }

FunctionalNorm functional_norm_on_fS(const FunctionalSpec& w, const SubsetSeq& s,
                                     std::size_t oracle_samples, std::uint64_t seed) {
    if (w.m != s.m) throw DimensionMismatch("functional and subset sequence disagree on m");
    const std::size_t m = w.m;
    std::vector<int> seen(m, 0);
    bool mismatch = false;
    for (const auto& t : w.terms) {
        if (t.i >= m || t.j >= m) throw PreconditionError("functional index outside 0..m-1");
        if (static_cast<std::size_t>(t.xi.size()) != m || static_cast<std::size_t>(t.eta.size()) != m)
            throw DimensionMismatch("functional vectors must have length m");
        if (t.i == t.j && seen[t.i]++ > 0) mismatch = true;
    }
    if (mismatch) {
        const auto fs = build_fS(s, std::max<std::size_t>(64, m * m));
        const auto sample = unit_ball_sample(fs.algebra, oracle_samples, seed);
        return {sampled_support(fs.algebra, w.matrix(), sample), true};
    }

    double blocks = 0.0;
    Scalar rest = 0.0;
    for (const auto& t : w.terms) {
        if (t.i != t.j) continue;
        Vector pxi = Vector::Zero(m), peta = Vector::Zero(m);
        for (std::size_t k = 0; k < m; ++k)
            if (s.contains(t.i, k)) {
                pxi(k) = t.xi(k);
                peta(k) = t.eta(k);
            }
        blocks += pxi.norm() * peta.norm();
        rest += (t.eta.adjoint() * (t.xi - pxi)).value();
    }
    return {blocks + std::abs(rest), false};
}

IsometryBound isometry_ball_bound(const Matrix& u, const Matrix& x, const Vector& xi, bool adjoint) {
    const auto n = u.rows();
    if (u.cols() != n || x.rows() != n || x.cols() != n || xi.size() != n)
        throw DimensionMismatch("isometry bound operands disagree in size");
    const Matrix id = Matrix::Identity(n, n);
    if ((u.adjoint() * u - id).norm() > 1e-9) throw PreconditionError("u is not an isometry");
    if (adjoint && (u * u.adjoint() - id).norm() > 1e-9)
        throw PreconditionError("adjoint form needs a unitary u");
    if (operator_norm(x) > 1.0 + 1e-9) throw PreconditionError("x lies outside the unit ball");
    const Matrix uu = adjoint ? Matrix(u.adjoint()) : u;
    const Matrix xx = adjoint ? Matrix(x.adjoint()) : x;
    const Vector uxi = uu * xi;
    const Vector diff = (uu - xx) * xi;
    return {diff.squaredNorm(), 2.0 * uxi.dot(diff).real()};
}

}  // namespace hyperselect
