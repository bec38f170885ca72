#include "hyperselect/sampled_set.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace hyperselect {

Subspace Subspace::span(const std::vector<Vector>& generators, std::size_t ambient_dim,
                        NormSpec ambient, Side side, ScalarField field) {
    Subspace s;
    s.ambient_dim_ = ambient_dim;
    s.ambient_ = std::move(ambient);
    s.side_ = side;
    s.field_ = field;
    for (const auto& g : generators) {
        if (static_cast<std::size_t>(g.size()) != ambient_dim)
            throw DimensionMismatch("generator outside the ambient dimension");
        Vector v = g;
        if (field == ScalarField::Real) {
            if (!is_real(v, 1e-9)) throw PreconditionError("complex generator for a real subspace");
            v = v.real().cast<Scalar>();
        }
        const double scale = std::max(1.0, v.norm());
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : s.basis_) v -= b * b.dot(v);
        double n = v.norm();
        if (n <= 1e-10 * scale) continue;
        s.basis_.push_back(v / n);
    }
    return s;
}

Subspace Subspace::whole(std::size_t ambient_dim, NormSpec ambient, Side side, ScalarField field) {
    std::vector<Vector> e;
    for (std::size_t i = 0; i < ambient_dim; ++i) e.push_back(Vector::Unit(ambient_dim, i));
    return span(e, ambient_dim, std::move(ambient), side, field);
}

Matrix Subspace::basis_matrix() const {
    Matrix b(ambient_dim_, basis_.size());
    for (std::size_t j = 0; j < basis_.size(); ++j) b.col(j) = basis_[j];
    return b;
}

Vector Subspace::coordinates(const Vector& v) const {
    if (static_cast<std::size_t>(v.size()) != ambient_dim_)
        throw DimensionMismatch("vector outside the ambient dimension");
    Vector c(basis_.size());
    for (std::size_t j = 0; j < basis_.size(); ++j) c[j] = basis_[j].dot(v);
    return c;
}

Vector Subspace::point(const Vector& coords) const {
    Vector y = Vector::Zero(ambient_dim_);
    for (std::size_t j = 0; j < basis_.size(); ++j) y += coords[j] * basis_[j];
    return y;
}

Vector Subspace::project(const Vector& v) const { return point(coordinates(v)); }

double Subspace::residual(const Vector& v) const { return (v - project(v)).norm(); }

double principal_angle(const Subspace& a, const Subspace& b) {
    if (a.dim() != b.dim()) return std::numbers::pi / 2;
    if (a.dim() == 0) return 0.0;
    Matrix ba = a.basis_matrix();
    Matrix bb = b.basis_matrix();
    Matrix r = bb - ba * (ba.adjoint() * bb);
    return std::asin(std::min(1.0, operator_norm(r)));
}

SampledSet::SampledSet(std::vector<Vector> points, SetFlags flags, ScalarField field,
                       std::optional<ExactSet> exact)
    : points_(std::move(points)), flags_(flags), field_(field), exact_(std::move(exact)) {
    if (points_.empty()) throw PreconditionError("sampled sets must be nonempty");
    const auto d = points_.front().size();
    if (d == 0) throw DimensionMismatch("zero-dimensional points");
    for (const auto& p : points_)
        if (p.size() != d) throw DimensionMismatch("sample points differ in dimension");
    if (exact_) {
        if (exact_dim(*exact_) != static_cast<std::size_t>(d))
            throw DimensionMismatch("exact descriptor dimension differs from samples");
        for (const auto& p : points_)
            if (!exact_contains(*exact_, p, 1e-9))
                throw PreconditionError("sample point lies outside the exact descriptor");
    }
}

std::size_t exact_dim(const ExactSet& set) {
    if (const auto* b = std::get_if<SubspaceBall>(&set)) return b->subspace.ambient_dim();
    return static_cast<std::size_t>(std::get<DiscFamily>(set).direction.size());
}

bool exact_contains(const ExactSet& set, const Vector& y, double tol) {
    if (static_cast<std::size_t>(y.size()) != exact_dim(set)) return false;
    if (const auto* b = std::get_if<SubspaceBall>(&set)) {
        const auto& v = b->subspace;
        if (v.field() == ScalarField::Real && !is_real(y, tol)) return false;
        if (v.residual(y) > tol * std::max(1.0, y.norm())) return false;
        return eval_norm(y, v.ambient()) <= 1.0 + tol;
    }
    const auto& d = std::get<DiscFamily>(set);
    const double dn = d.direction.squaredNorm();
    if (dn == 0.0) return y.norm() <= tol;
    Scalar lambda = d.direction.dot(y) / dn;
    if (d.field == ScalarField::Real && std::abs(lambda.imag()) > tol) return false;
    if ((y - lambda * d.direction).norm() > tol * std::max(1.0, y.norm())) return false;
    return std::abs(lambda) <= d.radius + tol;
}

namespace {

// Real parametrization of an exact set: a point map plus the inverse used for starts.
struct Chart {
    std::size_t params = 0;
    std::function<Vector(const Eigen::VectorXd&)> map;
    std::function<Eigen::VectorXd(const Vector&)> inverse;
};

Chart make_chart(const ExactSet& set) {
    Chart c;
    if (const auto* b = std::get_if<SubspaceBall>(&set)) {
        const Subspace* v = &b->subspace;
        const bool cx = v->field() == ScalarField::Complex;
        const std::size_t k = v->dim();
        c.params = cx ? 2 * k : k;
        c.map = [v, cx, k](const Eigen::VectorXd& p) {
            Vector coords(k);
            for (std::size_t j = 0; j < k; ++j) coords[j] = {p[j], cx ? p[k + j] : 0.0};
            Vector y = v->point(coords);
            double n = eval_norm(y, v->ambient());
            if (n > 1.0) y /= n;
            return y;
        };
        c.inverse = [v, cx, k](const Vector& y) {
            Vector coords = v->coordinates(y);
            Eigen::VectorXd p(cx ? 2 * k : k);
            for (std::size_t j = 0; j < k; ++j) {
                p[j] = coords[j].real();
                if (cx) p[k + j] = coords[j].imag();
            }
            return p;
        };
        return c;
    }
    const DiscFamily* d = &std::get<DiscFamily>(set);
    const bool cx = d->field == ScalarField::Complex;
    c.params = cx ? 2 : 1;
    c.map = [d, cx](const Eigen::VectorXd& p) {
        Scalar lambda{p[0], cx ? p[1] : 0.0};
        double a = std::abs(lambda);
        if (a > d->radius) lambda *= d->radius / a;
        return Vector(lambda * d->direction);
    };
    c.inverse = [d, cx](const Vector& y) {
        double dn = d->direction.squaredNorm();
        Scalar lambda = dn > 0 ? d->direction.dot(y) / dn : Scalar{};
        Eigen::VectorXd p(cx ? 2 : 1);
        p[0] = lambda.real();
        if (cx) p[1] = lambda.imag();
        return p;
    };
    return c;
}

double pattern_search(const std::function<double(const Eigen::VectorXd&)>& f,
                      Eigen::VectorXd best, double step) {
    const auto n = best.size();
    if (n == 0) return f(best);
    std::vector<Eigen::VectorXd> dirs;
    for (Eigen::Index i = 0; i < n; ++i) {
        dirs.push_back(Eigen::VectorXd::Unit(n, i));
        dirs.push_back(-Eigen::VectorXd::Unit(n, i));
    }
    if (n <= 6) {
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = i + 1; j < n; ++j)
                for (double si : {1.0, -1.0})
                    for (double sj : {1.0, -1.0}) {
                        Eigen::VectorXd d = Eigen::VectorXd::Zero(n);
                        d[i] = si;
                        d[j] = sj;
                        dirs.push_back(d / std::sqrt(2.0));
                    }
    }
    double fbest = f(best);
    std::size_t evals = 0;
    while (step > 1e-7 && evals < 200000) {
        bool improved = false;
        for (const auto& d : dirs) {
            Eigen::VectorXd cand = best + step * d;
            double fc = f(cand);
            ++evals;
            if (fc < fbest - 1e-15) {
                fbest = fc;
                best = std::move(cand);
                improved = true;
            }
        }
        if (!improved) step *= 0.5;
    }
    return fbest;
}

}  // namespace

double exact_distance(const Vector& x, const ExactSet& set, const NormSpec& spec,
                      const Vector* start) {
    if (static_cast<std::size_t>(x.size()) != exact_dim(set))
        throw DimensionMismatch("point and exact set differ in dimension");
    if (exact_contains(set, x, 1e-12)) return 0.0;
    const bool euclid = spec.kind == NormKind::L2 && !spec.chart;
    if (const auto* b = std::get_if<SubspaceBall>(&set)) {
        const auto& v = b->subspace;
        if (v.dim() == 0) return eval_norm(x, spec);
        if (euclid && v.ambient().kind == NormKind::L2 && !v.ambient().chart &&
            !(v.field() == ScalarField::Real && !is_real(x))) {
            Vector p = v.project(x);
            double off = (x - p).norm();
            double pn = p.norm();
            return pn <= 1.0 ? off : std::hypot(off, pn - 1.0);
        }
    } else {
        const auto& d = std::get<DiscFamily>(set);
        const double dn = d.direction.squaredNorm();
        if (dn == 0.0) return eval_norm(x, spec);
        if (euclid) {
            Scalar lambda = d.direction.dot(x) / dn;
            if (d.field == ScalarField::Real) lambda = lambda.real();
            if (std::abs(lambda) > d.radius) lambda *= d.radius / std::abs(lambda);
            return distance(x, Vector(lambda * d.direction), spec);
        }
    }
    Chart chart = make_chart(set);
    auto f = [&](const Eigen::VectorXd& p) { return distance(x, chart.map(p), spec); };
    std::vector<Eigen::VectorXd> starts{Eigen::VectorXd::Zero(chart.params), chart.inverse(x)};
    if (start) starts.push_back(chart.inverse(*start));
    Eigen::VectorXd best = starts.front();
    double fb = f(best);
    for (const auto& s : starts) {
        double fs = f(s);
        if (fs < fb) {
            fb = fs;
            best = s;
        }
    }
    double scale = std::max(0.25, 0.25 * best.cwiseAbs().maxCoeff());
    return std::min(fb, pattern_search(f, best, scale));
}

std::pair<double, std::size_t> nearest_sample(const Vector& x, const SampledSet& s,
                                              const NormSpec& spec) {
    if (static_cast<std::size_t>(x.size()) != s.dim())
        throw DimensionMismatch("point and set differ in dimension");
    double best = std::numeric_limits<double>::infinity();
    std::size_t idx = 0;
    const auto& pts = s.points();
    const Eigen::Index n = x.size();
    if (!spec.chart && (spec.kind == NormKind::L2 || spec.kind == NormKind::Linf)) {
        // Squared moduli with early exit once a candidate cannot win.
        const bool sum = spec.kind == NormKind::L2;
        double best_sq = best;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const Vector& p = pts[i];
            double acc = 0.0;
            for (Eigen::Index j = 0; j < n && acc < best_sq; ++j) {
                const double q = std::norm(x[j] - p[j]);
                acc = sum ? acc + q : std::max(acc, q);
            }
            if (acc < best_sq) {
                best_sq = acc;
                idx = i;
            }
        }
        return {distance(x, pts[idx], spec), idx};
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double d = distance(x, pts[i], spec);
        if (d < best) {
            best = d;
            idx = i;
        }
    }
    return {best, idx};
}

double min_distance_oracle(const Vector& x, const SampledSet& s, const NormSpec& spec) {
    auto [best, idx] = nearest_sample(x, s, spec);
    if (s.exact() && best > 0.0)
        best = std::min(best, exact_distance(x, *s.exact(), spec, &s.points()[idx]));
    return best;
}

SampledSet sample_subspace_ball(const Subspace& v, double mesh) {
    if (!(mesh > 0.0)) throw PreconditionError("mesh must be positive");
    const std::size_t k = v.dim();
    std::vector<Vector> pts;
    if (k == 0) {
        pts.push_back(Vector::Zero(v.ambient_dim()));
        return SampledSet(std::move(pts), {true, true}, v.field(), SubspaceBall{v});
    }
    const bool cx = v.field() == ScalarField::Complex;
    // Coordinates of the ball lie in the Euclidean ball of radius sup ||y||_2 / ||y||.
    double reach = 0.0;
    for (const auto& b : v.basis()) reach = std::max(reach, 1.0 / eval_norm(b, v.ambient()));
    reach = std::max(reach, std::sqrt(double(v.ambient_dim())));
    const std::size_t p = cx ? 2 * k : k;
    const long steps = static_cast<long>(std::ceil(reach / mesh));
    double total = std::pow(double(2 * steps + 1), double(p));
    if (total > 2e6) throw CapExceeded("subspace ball grid too large for the requested mesh");
    std::vector<long> idx(p, -steps);
    for (;;) {
        Vector coords(k);
        for (std::size_t j = 0; j < k; ++j)
            coords[j] = {double(idx[j]) * mesh, cx ? double(idx[k + j]) * mesh : 0.0};
        Vector y = v.point(coords);
        double n = eval_norm(y, v.ambient());
        if (n <= 1.0) {
            pts.push_back(std::move(y));
        } else if (y.norm() * (n - 1.0) / n <= mesh * std::sqrt(double(p))) {
            pts.push_back(y / n);
        }
        std::size_t j = 0;
        while (j < p && idx[j] == steps) idx[j++] = -steps;
        if (j == p) break;
        ++idx[j];
    }
    return SampledSet(std::move(pts), {true, true}, v.field(), SubspaceBall{v});
}

SampledSet sample_disc(const DiscFamily& disc, std::size_t rings, std::size_t phases) {
    std::vector<Vector> pts;
    const auto n = disc.direction.size();
    pts.push_back(Vector::Zero(n));
    if (rings == 0) rings = 1;
    for (std::size_t r = 1; r <= rings; ++r) {
        double rad = disc.radius * double(r) / double(rings);
        if (disc.field == ScalarField::Real) {
            pts.push_back(rad * disc.direction);
            pts.push_back(-rad * disc.direction);
            continue;
        }
        for (std::size_t a = 0; a < phases; ++a) {
            double th = 2.0 * std::numbers::pi * double(a) / double(phases);
            pts.push_back(std::polar(rad, th) * disc.direction);
        }
    }
    return SampledSet(std::move(pts), {true, true}, disc.field, disc);
}

}  // namespace hyperselect
