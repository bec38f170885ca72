#include "hyperselect/polyhedral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hyperselect {

namespace {

double norm_of(const Eigen::VectorXd& v, NormKind kind) {
    return kind == NormKind::L1 ? v.lpNorm<1>() : v.lpNorm<Eigen::Infinity>();
}

void require_polyhedral(NormKind kind) {
    if (kind != NormKind::L1 && kind != NormKind::Linf)
        throw UnsupportedNorm("vertex enumeration needs L1 or Linf");
}

// Solves the square system m z = r when m is well conditioned.
bool solve_square(const Eigen::MatrixXd& m, const Eigen::VectorXd& r, Eigen::VectorXd& z) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    lu.setThreshold(1e-10);
    if (lu.rank() < m.rows()) return false;
    z = lu.solve(r);
    return z.allFinite();
}

}  // namespace

double max_abs_over_section(const Eigen::MatrixXd& b, const Eigen::VectorXd& a, NormKind kind) {
    require_polyhedral(kind);
    const int d = static_cast<int>(b.rows());
    const int k = static_cast<int>(b.cols());
    if (a.size() != k) throw DimensionMismatch("functional and section differ in dimension");
    if (k == 0) return 0.0;
    double best = 0.0;
    if (kind == NormKind::Linf) {
        // Vertices: k independent active rows (B c)_i = s_i.
        for_each_subset(d, k, [&](const std::vector<int>& rows) {
            Eigen::MatrixXd m(k, k);
            for (int i = 0; i < k; ++i) m.row(i) = b.row(rows[i]);
            Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
            lu.setThreshold(1e-10);
            if (lu.rank() < k) return;
            for (int mask = 0; mask < (1 << k); ++mask) {
                Eigen::VectorXd s(k);
                for (int i = 0; i < k; ++i) s[i] = (mask >> i) & 1 ? -1.0 : 1.0;
                Eigen::VectorXd c = lu.solve(s);
                double n = norm_of(b * c, kind);
                if (n > 1.0 + 1e-9) continue;
                best = std::max(best, std::abs(a.dot(c)));
            }
        });
    } else {
        // Vertices: k-1 independent zero rows; the remaining line meets the unit sphere.
        auto consider = [&](const Eigen::VectorXd& dir) {
            double n = norm_of(b * dir, kind);
            if (n <= 1e-12) return;
            best = std::max(best, std::abs(a.dot(dir)) / n);
        };
        if (k == 1) {
            consider(Eigen::VectorXd::Ones(1));
        } else {
            for_each_subset(d, k - 1, [&](const std::vector<int>& rows) {
                Eigen::MatrixXd m(k - 1, k);
                for (int i = 0; i < k - 1; ++i) m.row(i) = b.row(rows[i]);
                Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
                lu.setThreshold(1e-10);
                if (lu.rank() < k - 1) return;
                Eigen::MatrixXd ker = lu.kernel();
                if (ker.cols() != 1) return;
                consider(ker.col(0));
            });
        }
    }
    return best;
}

double min_residual(const Eigen::MatrixXd& b, const Eigen::VectorXd& x, NormKind kind) {
    require_polyhedral(kind);
    const int d = static_cast<int>(b.rows());
    const int k = static_cast<int>(b.cols());
    if (x.size() != d) throw DimensionMismatch("point and subspace differ in dimension");
    if (k == 0) return norm_of(x, kind);
    double best = std::numeric_limits<double>::infinity();
    if (kind == NormKind::L1) {
        // Least absolute deviations: some optimum interpolates k independent rows.
        for_each_subset(d, k, [&](const std::vector<int>& rows) {
            Eigen::MatrixXd m(k, k);
            Eigen::VectorXd r(k);
            for (int i = 0; i < k; ++i) {
                m.row(i) = b.row(rows[i]);
                r[i] = x[rows[i]];
            }
            Eigen::VectorXd c;
            if (!solve_square(m, r, c)) return;
            best = std::min(best, norm_of(x - b * c, kind));
        });
    } else {
        // Chebyshev fit: some optimum has k+1 residuals of equal magnitude t.
        if (k >= d) return 0.0;
        for_each_subset(d, k + 1, [&](const std::vector<int>& rows) {
            for (int mask = 0; mask < (1 << k); ++mask) {
                Eigen::MatrixXd m(k + 1, k + 1);
                Eigen::VectorXd r(k + 1);
                for (int i = 0; i <= k; ++i) {
                    m.row(i).head(k) = b.row(rows[i]);
                    double s = i < k && ((mask >> i) & 1) ? -1.0 : 1.0;
                    m(i, k) = s;
                    r[i] = x[rows[i]];
                }
                Eigen::VectorXd z;
                if (!solve_square(m, r, z)) continue;
                best = std::min(best, norm_of(x - b * z.head(k), kind));
            }
        });
        if (!std::isfinite(best)) {
            Eigen::VectorXd c = b.colPivHouseholderQr().solve(x);
            best = norm_of(x - b * c, kind);
        }
    }
    return best;
}

}  // namespace hyperselect
