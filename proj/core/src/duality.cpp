#include "hyperselect/duality.hpp"

#include <algorithm>
#include <cmath>

#include "hyperselect/polyhedral.hpp"

namespace hyperselect {

namespace {

bool polyhedral(NormKind k) { return k == NormKind::L1 || k == NormKind::Linf; }

void require_coordinate_norm(const NormSpec& spec) {
    if (spec.chart || !(polyhedral(spec.kind) || spec.kind == NormKind::L2))
        throw UnsupportedNorm("expected an L1, L2 or Linf norm");
}

// Hermitian complement of the span of `basis`, built by extending with unit vectors.
std::vector<Vector> complement(const std::vector<Vector>& basis, std::size_t d) {
    std::vector<Vector> all = basis;
    std::vector<Vector> out;
    for (std::size_t i = 0; i < d && all.size() < d; ++i) {
        Vector v = Vector::Unit(d, i);
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : all) v -= b * b.dot(v);
        double n = v.norm();
        if (n < 1e-8) continue;
        v /= n;
        all.push_back(v);
        out.push_back(v);
    }
    return out;
}

Subspace pairing_complement(const Subspace& s, Side side, NormSpec norm) {
    // omega annihilates span(B) under the bilinear pairing iff conj(omega) is Hermitian
    // orthogonal to it.
    std::vector<Vector> comp = complement(s.basis(), s.ambient_dim());
    for (auto& v : comp) v = v.conjugate();
    return Subspace::span(comp, s.ambient_dim(), std::move(norm), side, s.field());
}

}  // namespace

double subspace_support(const Subspace& w, const Vector& x) {
    if (static_cast<std::size_t>(x.size()) != w.ambient_dim())
        throw DimensionMismatch("probe and subspace differ in dimension");
    if (w.dim() == 0) return 0.0;
    const Matrix b = w.basis_matrix();
    const Vector a = b.transpose() * x;
    const NormSpec& n = w.ambient();
    if (n.kind == NormKind::L2 && !n.chart) return a.norm();
    if (w.dim() == 1) return std::abs(a[0]) / eval_norm(w.basis()[0], n);
    if (polyhedral(n.kind) && !n.chart && w.field() == ScalarField::Real && is_real(x))
        return max_abs_over_section(b.real(), a.real(), n.kind);
    throw UnsupportedNorm("exact support needs L2, a line, or a real polyhedral norm");
}

double support_function(const SampledSet& f, const Vector& x, const NormSpec& dual_norm) {
    if (static_cast<std::size_t>(x.size()) != f.dim())
        throw DimensionMismatch("probe and set differ in dimension");
    for (const auto& p : f.points())
        if (eval_norm(p, dual_norm) > 1.0 + 1e-9)
            throw PreconditionError("support function needs a set inside the dual unit ball");
    if (f.exact()) {
        if (const auto* b = std::get_if<SubspaceBall>(&*f.exact()))
            return subspace_support(b->subspace, x);
        const auto& d = std::get<DiscFamily>(*f.exact());
        return d.radius * std::abs(pair(d.direction, x));
    }
    double best = 0.0;
    for (const auto& p : f.points()) best = std::max(best, std::abs(pair(p, x)));
    return best;
}

Subspace annihilator(const Subspace& v) {
    if (v.side() != Side::Primal) throw PreconditionError("annihilator takes a primal subspace");
    return pairing_complement(v, Side::Dual, dual_of(v.ambient()));
}

Subspace preannihilator(const Subspace& w) {
    if (w.side() != Side::Dual) throw PreconditionError("preannihilator takes a dual subspace");
    return pairing_complement(w, Side::Primal, dual_of(w.ambient()));
}

QuotientDistance quotient_distance(const Vector& x, const Subspace& v, const NormSpec& spec,
                                   double tol) {
    require_coordinate_norm(spec);
    if (static_cast<std::size_t>(x.size()) != v.ambient_dim())
        throw DimensionMismatch("point and subspace differ in dimension");
    Subspace vs = Subspace::span(v.basis(), v.ambient_dim(), spec, Side::Primal, v.field());
    QuotientDistance q;
    if (spec.kind == NormKind::L2) {
        q.primal = (x - vs.project(x)).norm();
    } else {
        if (vs.field() != ScalarField::Real || !is_real(x))
            throw UnsupportedNorm("polyhedral quotient distance over a real field only");
        q.primal = min_residual(vs.basis_matrix().real(), x.real(), spec.kind);
    }
    q.dual = subspace_support(annihilator(vs), x);
    if (std::abs(q.primal - q.dual) > tol) throw DualityMismatch(q.primal, q.dual);
    return q;
}

SupportProfile support_profile(const SampledSet& f, const std::vector<Vector>& probes,
                               const NormSpec& dual_norm) {
    if (probes.empty()) throw PreconditionError("support profile needs probes");
    SupportProfile p{probes, {}, dual_norm};
    for (const auto& x : probes) p.values.push_back(support_function(f, x, dual_norm));
    return p;
}

SampledSet reconstruct_ball(const SupportProfile& profile, double mesh) {
    if (profile.probes.empty()) throw PreconditionError("empty support profile");
    if (!(mesh > 0.0)) throw PreconditionError("mesh must be positive");
    require_coordinate_norm(profile.dual_norm);
    const auto d = static_cast<std::size_t>(profile.probes.front().size());
    const double half = 0.5 * mesh;
    const double norm_slack = half * eval_norm(Vector(Vector::Ones(d)), profile.dual_norm);
    std::vector<double> bounds;
    for (std::size_t i = 0; i < profile.probes.size(); ++i) {
        if (!is_real(profile.probes[i])) throw UnsupportedNorm("reconstruction over reals only");
        bounds.push_back(profile.values[i] + half * profile.probes[i].cwiseAbs().sum() + 1e-12);
    }
    const long n = static_cast<long>(std::floor((1.0 + norm_slack) / mesh + 1e-9));
    if (std::pow(double(2 * n + 1), double(d)) > 5e6)
        throw CapExceeded("reconstruction grid too large for the requested mesh");
    Eigen::MatrixXd probes(profile.probes.size(), d);
    for (std::size_t i = 0; i < profile.probes.size(); ++i)
        probes.row(i) = profile.probes[i].real().transpose();
    std::vector<Vector> pts;
    std::vector<long> idx(d, -n);
    Eigen::VectorXd w(d);
    for (;;) {
        for (std::size_t j = 0; j < d; ++j) w[j] = double(idx[j]) * mesh;
        Vector wc = w.cast<Scalar>();
        if (eval_norm(wc, profile.dual_norm) <= 1.0 + norm_slack + 1e-12) {
            Eigen::VectorXd vals = (probes * w).cwiseAbs();
            bool keep = true;
            for (std::size_t i = 0; i < bounds.size() && keep; ++i) keep = vals[i] <= bounds[i];
            if (keep) pts.push_back(std::move(wc));
        }
        std::size_t j = 0;
        while (j < d && idx[j] == n) idx[j++] = -n;
        if (j == d) break;
        ++idx[j];
    }
    return SampledSet(std::move(pts), {true, true}, ScalarField::Real);
}

SubspaceBallCheck is_subspace_ball(const SampledSet& b, const std::vector<double>& scales,
                                   double tol, const NormSpec& dual_norm, double shape_tol) {
    auto shape = shape_report(b, shape_tol, dual_norm);
    if (!shape.balanced || !shape.convex)
        throw PreconditionError("subspace-ball test needs a balanced convex set");
    SubspaceBallCheck out;
    for (double s : scales) {
        if (!(s > 0.0 && s < 1.0)) throw PreconditionError("scales must lie in (0, 1)");
        double worst = -1.0;
        Vector worst_point;
        for (const auto& p : b.points()) {
            if (eval_norm(p, dual_norm) > s + 1e-12) continue;
            Vector q = p / s;
            double v = min_distance_oracle(q, b, dual_norm);
            // Ties within search accuracy keep the earliest sample.
            if (v > worst + 1e-6) {
                worst = v;
                worst_point = std::move(q);
            }
        }
        out.violation = std::max(out.violation, worst);
        if (worst > tol) {
            out.ok = false;
            out.witness_scale = s;
            out.witness_point = std::move(worst_point);
            out.violation = worst;
            return out;
        }
    }
    return out;
}

std::vector<double> convergence_gap(const std::vector<Subspace>& seq, const Subspace& limit,
                                    const std::vector<Vector>& probes) {
    if (limit.side() != Side::Dual) throw PreconditionError("convergence gap on dual subspaces");
    std::vector<double> ref;
    for (const auto& x : probes) ref.push_back(subspace_support(limit, x));
    std::vector<double> out;
    for (const auto& v : seq) {
        if (v.side() != Side::Dual || v.ambient_dim() != limit.ambient_dim())
            throw PreconditionError("sequence subspaces must share the dual ambient space");
        double g = 0.0;
        for (std::size_t i = 0; i < probes.size(); ++i)
            g = std::max(g, std::abs(subspace_support(v, probes[i]) - ref[i]));
        out.push_back(g);
    }
    return out;
}

double weighted_support_gap(const SampledSet& a, const SampledSet& b,
                            const std::vector<Vector>& probes, const NormSpec& dual_norm,
                            std::vector<double> weights) {
    if (weights.empty())
        for (std::size_t k = 0; k < probes.size(); ++k) weights.push_back(std::ldexp(1.0, -int(k) - 1));
    if (weights.size() != probes.size()) throw PreconditionError("one weight per probe is required");
    double gap = 0.0;
    for (std::size_t k = 0; k < probes.size(); ++k)
        gap += weights[k] * std::abs(support_function(a, probes[k], dual_norm) -
                                     support_function(b, probes[k], dual_norm));
    return gap;
}

}  // namespace hyperselect
