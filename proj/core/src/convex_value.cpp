#include "hyperselect/convex_value.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hyperselect {

namespace {

double cross(const Eigen::Vector2d& a, const Eigen::Vector2d& b) { return a.x() * b.y() - a.y() * b.x(); }

// sup ||y||_2 / norm(y): bounds chart distances by norm distances.
double euclid_over_norm(const NormSpec& norm, std::size_t d) {
    switch (norm.kind) {
        case NormKind::L1:
        case NormKind::L2: return 1.0;
        case NormKind::Linf: return std::sqrt(double(d));
        default: throw UnsupportedNorm("convex values use L1, L2 or Linf");
    }
}

std::vector<Eigen::Vector2d> monotone_hull(std::vector<Eigen::Vector2d> pts, double eps) {
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
    });
    if (pts.size() < 3) return pts;
    std::vector<Eigen::Vector2d> h(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(h[k - 1] - h[k - 2], p - h[k - 2]) <= eps) --k;
        h[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= eps) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

// Exact minimizer over t in [0, 1] of norm(p + t q) for L1 / Linf: the objective is
// piecewise linear with breakpoints where a coordinate vanishes or two magnitudes tie.
double segment_breakpoint_min(const RealVector& p, const RealVector& q, const NormSpec& norm,
                              double* arg) {
    std::vector<double> ts{0.0, 1.0};
    const auto d = p.size();
    auto add = [&](double num, double den) {
        if (den != 0.0) {
            const double t = -num / den;
            if (t > 0.0 && t < 1.0) ts.push_back(t);
        }
    };
    for (Eigen::Index i = 0; i < d; ++i) add(p(i), q(i));
    if (norm.kind == NormKind::Linf)
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = i + 1; j < d; ++j) {
                add(p(i) - p(j), q(i) - q(j));
                add(p(i) + p(j), q(i) + q(j));
            }
    double best = std::numeric_limits<double>::infinity(), bt = 0.0;
    for (double t : ts) {
        const RealVector y = p + t * q;
        const double v = norm.kind == NormKind::Linf ? y.cwiseAbs().maxCoeff() : y.cwiseAbs().sum();
        if (v < best) {
            best = v;
            bt = t;
        }
    }
    if (arg) *arg = bt;
    return best;
}

}  // namespace

double golden_min(const std::function<double(double)>& f, double a, double b, int iters,
                  double* arg) {
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - r * (b - a), d = a + r * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < iters && b - a > 0.0; ++i) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    double best = fc <= fd ? c : d;
    double fb = std::min(fc, fd);
    for (double t : {a, b}) {
        double ft = f(t);
        if (ft < fb) {
            fb = ft;
            best = t;
        }
    }
    if (arg) *arg = best;
    return fb;
}

ConvexValue::ConvexValue(std::vector<RealVector> generators) : generators_(std::move(generators)) {
    if (generators_.empty()) throw PreconditionError("convex values need a generator");
    const auto d = generators_.front().size();
    double scale = 1.0;
    for (const auto& g : generators_) {
        if (g.size() != d) throw DimensionMismatch("generators differ in dimension");
        if (!g.allFinite()) throw PreconditionError("generators must be finite");
        scale = std::max(scale, g.cwiseAbs().maxCoeff());
    }
    origin_ = generators_.front();
    const auto n = static_cast<Eigen::Index>(generators_.size());
    Eigen::MatrixXd m(d, std::max<Eigen::Index>(n - 1, 1));
    m.setZero();
    for (Eigen::Index i = 1; i < n; ++i) m.col(i - 1) = generators_[i] - origin_;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > 1e-10 * scale) ++rank;
    if (rank > 2) throw UnsupportedNorm("convex values of affine dimension above 2");
    chart_ = svd.matrixU().leftCols(rank);
    for (Eigen::Index j = 0; j < rank; ++j) {
        Eigen::Index piv;
        chart_.col(j).cwiseAbs().maxCoeff(&piv);
        if (chart_(piv, j) < 0) chart_.col(j) *= -1.0;
    }
    if (rank == 1) {
        lo_ = std::numeric_limits<double>::infinity();
        hi_ = -lo_;
        for (const auto& g : generators_) {
            double t = to_local(g)[0];
            lo_ = std::min(lo_, t);
            hi_ = std::max(hi_, t);
        }
    } else if (rank == 2) {
        std::vector<P2> local;
        for (const auto& g : generators_) local.push_back(to_local(g));
        polygon_ = monotone_hull(std::move(local), 1e-14 * scale * scale);
        if (polygon_.size() < 3) throw PreconditionError("degenerate planar hull");
    }
}

std::vector<RealVector> ConvexValue::vertices() const {
    switch (affine_dim()) {
        case 0: return {origin_};
        case 1: return {to_ambient(Eigen::VectorXd::Constant(1, lo_)),
                        to_ambient(Eigen::VectorXd::Constant(1, hi_))};
        default: {
            std::vector<RealVector> out;
            for (const auto& p : polygon_) out.push_back(to_ambient(p));
            return out;
        }
    }
}

bool ConvexValue::inside(const P2& q) const {
    const std::size_t n = polygon_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const P2& a = polygon_[i];
        const P2& b = polygon_[(i + 1) % n];
        if (cross(b - a, q - a) < -1e-12 * std::max(1.0, (b - a).norm())) return false;
    }
    return true;
}

std::pair<double, double> ConvexValue::slice(double u) const {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    const std::size_t n = polygon_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const P2& a = polygon_[i];
        const P2& b = polygon_[(i + 1) % n];
        double x0 = std::min(a.x(), b.x()), x1 = std::max(a.x(), b.x());
        if (u < x0 || u > x1) continue;
        if (x1 - x0 <= 0.0) {
            lo = std::min({lo, a.y(), b.y()});
            hi = std::max({hi, a.y(), b.y()});
            continue;
        }
        double t = (u - a.x()) / (b.x() - a.x());
        double y = a.y() + t * (b.y() - a.y());
        lo = std::min(lo, y);
        hi = std::max(hi, y);
    }
    return {lo, hi};
}

RealVector ConvexValue::nearest(const RealVector& v, const NormSpec& norm) const {
    if (static_cast<std::size_t>(v.size()) != ambient_dim())
        throw DimensionMismatch("point and convex value differ in dimension");
    euclid_over_norm(norm, ambient_dim());
    const bool euclid = norm.kind == NormKind::L2;
    auto phi = [&](const Eigen::VectorXd& local) { return real_distance(to_ambient(local), v, norm); };
    switch (affine_dim()) {
        case 0: return origin_;
        case 1: {
            double t;
            if (euclid) {
                t = std::clamp(to_local(v)[0], lo_, hi_);
            } else if (!norm.chart) {
                const RealVector a = to_ambient(Eigen::VectorXd::Constant(1, lo_));
                const RealVector b = to_ambient(Eigen::VectorXd::Constant(1, hi_));
                double s;
                segment_breakpoint_min(a - v, b - a, norm, &s);
                t = lo_ + s * (hi_ - lo_);
            } else {
                golden_min([&](double s) { return phi(Eigen::VectorXd::Constant(1, s)); }, lo_, hi_,
                           80, &t);
            }
            return to_ambient(Eigen::VectorXd::Constant(1, t));
        }
        default: break;
    }
    if (euclid) {
        P2 q = to_local(v);
        if (inside(q)) return to_ambient(q);
        P2 best = polygon_.front();
        double bd = std::numeric_limits<double>::infinity();
        const std::size_t n = polygon_.size();
        for (std::size_t i = 0; i < n; ++i) {
            const P2& a = polygon_[i];
            const P2& b = polygon_[(i + 1) % n];
            P2 e = b - a;
            double t = std::clamp((q - a).dot(e) / e.squaredNorm(), 0.0, 1.0);
            P2 p = a + t * e;
            double dd = (p - q).squaredNorm();
            if (dd < bd) {
                bd = dd;
                best = p;
            }
        }
        return to_ambient(best);
    }
    if (ambient_dim() == 2 && !norm.chart) {
        // A convex objective with its unconstrained minimum outside attains the
        // constrained one on the boundary.
        const P2 q = to_local(v);
        if (inside(q)) return to_ambient(q);
        RealVector best = to_ambient(polygon_.front());
        double bd = std::numeric_limits<double>::infinity();
        const std::size_t n = polygon_.size();
        for (std::size_t i = 0; i < n; ++i) {
            const RealVector a = to_ambient(polygon_[i]);
            const RealVector b = to_ambient(polygon_[(i + 1) % n]);
            double t;
            const double dd = segment_breakpoint_min(a - v, b - a, norm, &t);
            if (dd < bd) {
                bd = dd;
                best = a + t * (b - a);
            }
        }
        return best;
    }
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    for (const auto& p : polygon_) {
        xmin = std::min(xmin, p.x());
        xmax = std::max(xmax, p.x());
    }
    auto inner = [&](double u, double* yarg) {
        auto [lo, hi] = slice(u);
        if (lo > hi) lo = hi = 0.5 * (lo + hi);
        return golden_min([&](double y) { return phi(P2(u, y)); }, lo, hi, 60, yarg);
    };
    double u;
    golden_min([&](double s) { return inner(s, nullptr); }, xmin, xmax, 60, &u);
    double y;
    inner(u, &y);
    return to_ambient(P2(u, y));
}

double ConvexValue::distance(const RealVector& v, const NormSpec& norm) const {
    return real_distance(nearest(v, norm), v, norm);
}

ConvexValue ConvexValue::clip_ball(const RealVector& center, double radius,
                                   const NormSpec& norm) const {
    if (static_cast<std::size_t>(center.size()) != ambient_dim())
        throw DimensionMismatch("ball center and convex value differ in dimension");
    if (!(radius >= 0.0)) throw PreconditionError("radius must be nonnegative");
    const double slack = 1e-12 * std::max(1.0, radius);
    auto phi = [&](double t) {
        return real_distance(to_ambient(Eigen::VectorXd::Constant(1, t)), center, norm);
    };
    switch (affine_dim()) {
        case 0:
            if (real_distance(origin_, center, norm) > radius + slack)
                throw EmptyIntersection("point value misses the ball");
            return *this;
        case 1: {
            double tstar;
            double fmin = golden_min(phi, lo_, hi_, 100, &tstar);
            if (fmin > radius + slack) throw EmptyIntersection("segment value misses the ball");
            auto edge = [&](double outer) {
                if (phi(outer) <= radius) return outer;
                double in = tstar, out = outer;
                for (int i = 0; i < 200 && in != out; ++i) {
                    double mid = 0.5 * (in + out);
                    if (mid == in || mid == out) break;
                    (phi(mid) <= radius ? in : out) = mid;
                }
                return in;
            };
            double a = edge(lo_), b = edge(hi_);
            return ConvexValue({to_ambient(Eigen::VectorXd::Constant(1, a)),
                                to_ambient(Eigen::VectorXd::Constant(1, b))});
        }
        default: break;
    }
    std::vector<P2> clip;
    if (ambient_dim() != 2) {
        // Euclidean balls cut the affine plane in a disc about the projected center.
        if (norm.kind != NormKind::L2 || norm.chart)
            throw UnsupportedNorm("ball clipping of planar values outside R^2 needs L2");
        const Eigen::VectorXd c = to_local(center);
        const double h = (center - to_ambient(c)).norm();
        if (h > radius + slack) throw EmptyIntersection("planar value misses the ball");
        const double r = std::sqrt(std::max(0.0, radius * radius - h * h));
        for (int i = 0; i < 256; ++i) {
            double th = 2.0 * std::numbers::pi * i / 256.0;
            clip.push_back(P2(c(0) + r * std::cos(th), c(1) + r * std::sin(th)));
        }
    }
    if (clip.empty()) {
        switch (norm.kind) {
            case NormKind::L1:
                for (auto [x, y] : std::initializer_list<std::pair<double, double>>{{1, 0}, {0, 1}, {-1, 0}, {0, -1}})
                    clip.push_back(to_local(center + radius * RealVector(Eigen::Vector2d(x, y))));
                break;
            case NormKind::Linf:
                for (auto [x, y] : std::initializer_list<std::pair<double, double>>{{1, -1}, {1, 1}, {-1, 1}, {-1, -1}})
                    clip.push_back(to_local(center + radius * RealVector(Eigen::Vector2d(x, y))));
                break;
            case NormKind::L2:
                for (int i = 0; i < 256; ++i) {
                    double th = 2.0 * std::numbers::pi * i / 256.0;
                    clip.push_back(
                        to_local(center + radius * RealVector(Eigen::Vector2d(std::cos(th), std::sin(th)))));
                }
                break;
            default: throw UnsupportedNorm("convex values use L1, L2 or Linf");
        }
    }
    double area = 0.0;
    for (std::size_t i = 0; i < clip.size(); ++i) area += cross(clip[i], clip[(i + 1) % clip.size()]);
    if (area < 0) std::reverse(clip.begin(), clip.end());

    std::vector<P2> poly = polygon_;
    for (std::size_t i = 0; i < clip.size() && !poly.empty(); ++i) {
        const P2& a = clip[i];
        const P2& b = clip[(i + 1) % clip.size()];
        auto in = [&](const P2& p) { return cross(b - a, p - a) >= -1e-15; };
        std::vector<P2> next;
        for (std::size_t j = 0; j < poly.size(); ++j) {
            const P2& p = poly[j];
            const P2& q = poly[(j + 1) % poly.size()];
            bool ip = in(p), iq = in(q);
            if (ip) next.push_back(p);
            if (ip != iq) {
                double dp = cross(b - a, p - a), dq = cross(b - a, q - a);
                next.push_back(p + (q - p) * (dp / (dp - dq)));
            }
        }
        poly = std::move(next);
    }
    if (poly.empty()) throw EmptyIntersection("planar value misses the ball");
    std::vector<RealVector> gens;
    for (const auto& p : poly) gens.push_back(to_ambient(p));
    return ConvexValue(std::move(gens));
}

std::vector<RealVector> ConvexValue::sample_impl(const RealVector* center, double radius,
                                                 double mesh, const NormSpec& norm) const {
    if (!(mesh > 0.0)) throw PreconditionError("mesh must be positive");
    std::vector<RealVector> out;
    auto keep = [&](RealVector y) {
        if (!center || real_distance(y, *center, norm) < radius) out.push_back(std::move(y));
    };
    const double reach = center ? radius * euclid_over_norm(norm, ambient_dim())
                                : std::numeric_limits<double>::infinity();
    Eigen::VectorXd qc;
    if (center) qc = to_local(*center);
    switch (affine_dim()) {
        case 0: keep(origin_); break;
        case 1: {
            double a = lo_, b = hi_;
            if (center) {
                a = std::max(a, qc[0] - reach);
                b = std::min(b, qc[0] + reach);
            }
            keep(to_ambient(Eigen::VectorXd::Constant(1, lo_)));
            keep(to_ambient(Eigen::VectorXd::Constant(1, hi_)));
            if (a <= b) {
                if ((b - a) / mesh > 4e6) throw CapExceeded("too many samples for the mesh");
                for (double k = std::ceil(a / mesh); k * mesh <= b; k += 1.0)
                    keep(to_ambient(Eigen::VectorXd::Constant(1, k * mesh)));
            }
            break;
        }
        default: {
            double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
            for (const auto& p : polygon_) {
                x0 = std::min(x0, p.x());
                x1 = std::max(x1, p.x());
                y0 = std::min(y0, p.y());
                y1 = std::max(y1, p.y());
            }
            if (center) {
                x0 = std::max(x0, qc[0] - reach);
                x1 = std::min(x1, qc[0] + reach);
                y0 = std::max(y0, qc[1] - reach);
                y1 = std::min(y1, qc[1] + reach);
            }
            for (const auto& p : polygon_) keep(to_ambient(p));
            const std::size_t n = polygon_.size();
            for (std::size_t i = 0; i < n; ++i) {
                const P2& a = polygon_[i];
                const P2& b = polygon_[(i + 1) % n];
                double len = (b - a).norm();
                auto steps = static_cast<long>(std::floor(len / mesh));
                if (steps > 4000000) throw CapExceeded("too many samples for the mesh");
                for (long s = 1; s <= steps; ++s) {
                    P2 p = a + (b - a) * (double(s) * mesh / len);
                    if (p.x() >= x0 && p.x() <= x1 && p.y() >= y0 && p.y() <= y1) keep(to_ambient(p));
                }
            }
            if (x0 <= x1 && y0 <= y1) {
                double cells = ((x1 - x0) / mesh + 1) * ((y1 - y0) / mesh + 1);
                if (cells > 4e6) throw CapExceeded("too many samples for the mesh");
                for (double i = std::ceil(x0 / mesh); i * mesh <= x1; i += 1.0)
                    for (double j = std::ceil(y0 / mesh); j * mesh <= y1; j += 1.0) {
                        P2 q(i * mesh, j * mesh);
                        if (inside(q)) keep(to_ambient(q));
                    }
            }
            break;
        }
    }
    if (center) keep(nearest(*center, norm));
    return out;
}

std::vector<RealVector> ConvexValue::sample_near(const RealVector& center, double radius,
                                                 double mesh, const NormSpec& norm) const {
    if (static_cast<std::size_t>(center.size()) != ambient_dim())
        throw DimensionMismatch("center and convex value differ in dimension");
    return sample_impl(&center, radius, mesh, norm);
}

std::vector<RealVector> ConvexValue::sample(double mesh) const {
    return sample_impl(nullptr, 0.0, mesh, NormSpec::l2());
}

}  // namespace hyperselect
