#include "hyperselect/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

namespace hyperselect {

bool TargetBox::contains(const RealVector& v, double tol) const {
    return v.size() == lo.size() && (v.array() >= lo.array() - tol).all() &&
           (v.array() <= hi.array() + tol).all();
}

SetValuedMap::SetValuedMap(DiscreteDomain domain, std::vector<ConvexValue> values, NormSpec norm,
                           TargetBox target)
    : domain_(std::move(domain)), values_(std::move(values)), norm_(std::move(norm)),
      target_(std::move(target)) {
    if (values_.size() != domain_.size()) throw DimensionMismatch("one value per domain point");
    if (target_.lo.size() != target_.hi.size() || target_.lo.size() == 0)
        throw DimensionMismatch("target box bounds differ in dimension");
    if ((target_.lo.array() > target_.hi.array()).any()) throw PreconditionError("empty target box");
    real_distance(target_.lo, target_.lo, norm_);
    for (const auto& v : values_) {
        if (v.ambient_dim() != target_dim()) throw DimensionMismatch("value outside target dimension");
        for (const auto& g : v.generators())
            if (!target_.contains(g, 1e-9)) throw PreconditionError("generator outside the target");
    }
}

namespace {

// sup norm(y) / ||y||_2.
double norm_over_euclid(const NormSpec& norm, std::size_t d) {
    return norm.kind == NormKind::L1 ? std::sqrt(double(d)) : 1.0;
}

struct RoundOutput {
    Selection f;
    Selection w;
    std::size_t cover = 0;
    std::size_t support = 0;
    std::vector<std::vector<std::pair<std::uint32_t, double>>> coefficients;
};

struct Element {
    RealVector v;
    std::vector<std::uint32_t> members;
    std::vector<RealVector> witness;  // parallel to members
};

RoundOutput combine(const DiscreteDomain& x, const std::vector<Element>& els) {
    std::vector<std::vector<std::uint32_t>> members;
    members.reserve(els.size());
    for (const auto& e : els) members.push_back(e.members);
    OpenCover cover(std::move(members));
    PartitionOfUnity pou = build_partition_of_unity(x, cover);
    RoundOutput out;
    out.cover = els.size();
    out.support = pou.max_support();
    const auto d = els.front().v.size();
    out.f.assign(x.size(), RealVector::Zero(d));
    out.w.assign(x.size(), RealVector::Zero(d));
    out.coefficients.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (auto [n, rho] : pou.at(i)) {
            const auto& e = els[n];
            auto it = std::lower_bound(e.members.begin(), e.members.end(), std::uint32_t(i));
            out.f[i] += rho * e.v;
            out.w[i] += rho * e.witness[std::size_t(it - e.members.begin())];
            out.coefficients[i].emplace_back(n, rho);
        }
    }
    return out;
}

// Approximate selection of x -> conv(samples[x]) at scale eps on the lattice of spacing
// s, whose covering radius s/2 * norm(1,...,1) stays below eps/2.
RoundOutput lattice_round(const SetValuedMap& f, const std::vector<std::vector<RealVector>>& samples,
                          double eps) {
    const auto& norm = f.norm();
    const std::size_t d = f.target_dim();
    const double s = 0.999 * eps / real_distance(RealVector::Ones(d), RealVector::Zero(d), norm);
    std::map<std::vector<long>, Element> table;
    std::vector<long> lo(d), hi(d), idx(d);
    RealVector u(d);
    for (std::size_t x = 0; x < samples.size(); ++x) {
        for (const auto& y : samples[x]) {
            for (std::size_t k = 0; k < d; ++k) {
                lo[k] = static_cast<long>(std::ceil((y[k] - eps) / s));
                hi[k] = static_cast<long>(std::floor((y[k] + eps) / s));
            }
            idx = lo;
            for (;;) {
                for (std::size_t k = 0; k < d; ++k) u[k] = double(idx[k]) * s;
                RealVector v = f.target().clamp(u);
                if (real_distance(v, y, norm) < eps) {
                    auto& e = table[idx];
                    if (e.members.empty()) e.v = v;
                    if (e.members.empty() || e.members.back() != x) {
                        e.members.push_back(static_cast<std::uint32_t>(x));
                        e.witness.push_back(y);
                    }
                }
                std::size_t k = 0;
                while (k < d && idx[k] == hi[k]) {
                    idx[k] = lo[k];
                    ++k;
                }
                if (k == d) break;
                ++idx[k];
            }
        }
    }
    std::vector<Element> els;
    els.reserve(table.size());
    for (auto& [key, e] : table) els.push_back(std::move(e));
    if (els.empty()) throw NetTooCoarse(0);
    return combine(f.domain(), els);
}

}  // namespace

ApproxSelection approx_selection(const SetValuedMap& f, double eps, const std::vector<RealVector>& net) {
    if (!(eps > 0.0)) throw PreconditionError("eps must be positive");
    if (net.empty()) throw NetTooCoarse(0);
    std::vector<Element> els;
    for (const auto& v : net) {
        if (static_cast<std::size_t>(v.size()) != f.target_dim())
            throw DimensionMismatch("net point outside the target dimension");
        Element e;
        e.v = v;
        for (std::size_t x = 0; x < f.domain().size(); ++x) {
            RealVector y = f.value(x).nearest(v, f.norm());
            if (real_distance(y, v, f.norm()) < eps) {
                e.members.push_back(static_cast<std::uint32_t>(x));
                e.witness.push_back(std::move(y));
            }
        }
        els.push_back(std::move(e));
    }
    std::vector<char> hit(f.domain().size(), 0);
    for (const auto& e : els)
        for (auto x : e.members) hit[x] = 1;
    for (std::size_t x = 0; x < hit.size(); ++x)
        if (!hit[x]) throw NetTooCoarse(x);
    // Elements that cover nothing carry no weight; drop them but keep net numbering.
    std::vector<std::uint32_t> keep;
    std::vector<Element> used;
    for (std::size_t n = 0; n < els.size(); ++n)
        if (!els[n].members.empty()) {
            keep.push_back(static_cast<std::uint32_t>(n));
            used.push_back(els[n]);
        }
    RoundOutput r = combine(f.domain(), used);
    ApproxSelection out;
    out.values = std::move(r.f);
    out.witness = std::move(r.w);
    out.cover_size = used.size();
    out.max_support = r.support;
    out.coefficients = std::move(r.coefficients);
    for (auto& c : out.coefficients)
        for (auto& [n, rho] : c) n = keep[n];
    return out;
}

double max_defect(const SetValuedMap& f, const Selection& s) {
    double worst = 0.0;
    for (std::size_t x = 0; x < s.size(); ++x)
        worst = std::max(worst, f.value(x).distance(s[x], f.norm()));
    return worst;
}

double selection_modulus(const SetValuedMap& f, const Selection& s) {
    double worst = 0.0;
    for (auto [a, b] : f.domain().adjacent_pairs())
        worst = std::max(worst, real_distance(s[a], s[b], f.norm()));
    return worst;
}

MichaelResult michael_selection(const SetValuedMap& f, double tol) {
    if (!(tol > 0.0)) throw PreconditionError("tolerance must be positive");
    const auto& norm = f.norm();
    const std::size_t npts = f.domain().size();
    const double kappa = norm_over_euclid(norm, f.target_dim());
    MichaelResult res;

    double eps = 0.25;
    std::vector<std::vector<RealVector>> samples(npts);
    for (std::size_t x = 0; x < npts; ++x) samples[x] = f.value(x).sample(eps / (2.0 * kappa));
    RoundOutput cur = lattice_round(f, samples, eps);
    res.initial_defect = max_defect(f, cur.f);
    res.max_cover = cur.cover;
    res.max_support = cur.support;

    const int cap = static_cast<int>(std::ceil(std::log2(1.0 / tol))) + 2;
    for (int k = 0; std::ldexp(1.0, -k) >= tol; ++k) {
        if (k > cap) throw IterationStall(0, k);
        const double radius = std::ldexp(1.0, -k - 1);
        eps = std::ldexp(1.0, -k - 3);
        double mesh = eps / kappa;
        for (int attempt = 0;; ++attempt) {
            std::size_t empty = npts;
            for (std::size_t x = 0; x < npts && empty == npts; ++x) {
                samples[x] = f.value(x).sample_near(cur.f[x], radius, mesh, norm);
                if (real_distance(cur.w[x], cur.f[x], norm) < radius) samples[x].push_back(cur.w[x]);
                if (samples[x].empty()) empty = x;
            }
            if (empty == npts) break;
            if (attempt > 0) throw IterationStall(empty, k);
            mesh /= 4.0;
            ++res.refinements;
        }
        RoundOutput next = lattice_round(f, samples, eps);
        MichaelRecord rec;
        rec.k = k;
        rec.step_bound = std::ldexp(1.0, -k);
        for (std::size_t x = 0; x < npts; ++x)
            rec.max_step = std::max(rec.max_step, real_distance(next.f[x], cur.f[x], norm));
        rec.max_defect = max_defect(f, next.f);
        res.log.push_back(rec);
        res.max_cover = std::max(res.max_cover, next.cover);
        res.max_support = std::max(res.max_support, next.support);
        cur = std::move(next);
    }
    res.selection = std::move(cur.f);
    res.final_defect = res.log.empty() ? res.initial_defect : res.log.back().max_defect;
    return res;
}

std::vector<FamilyMember> dense_selection_family(const SetValuedMap& f,
                                                 const std::vector<RealVector>& net, long m_max,
                                                 long p_max, double tol) {
    if (m_max < 1 || p_max < 1) throw PreconditionError("m_max and p_max must be positive");
    const auto& dom = f.domain();
    const std::size_t npts = dom.size();
    std::vector<FamilyMember> family;
    family.push_back({-1, 0, 0, michael_selection(f, tol).selection});
    for (std::size_t n = 0; n < net.size(); ++n) {
        for (long m = 1; m <= m_max; ++m) {
            const double radius = 1.0 / double(m);
            std::vector<char> in_u(npts, 0);
            std::vector<std::optional<ConvexValue>> clipped(npts);
            for (std::size_t x = 0; x < npts; ++x) {
                if (f.value(x).distance(net[n], f.norm()) >= radius) continue;
                try {
                    clipped[x] = f.value(x).clip_ball(net[n], radius, f.norm());
                    in_u[x] = 1;
                } catch (const EmptyIntersection&) {
                }
            }
            std::vector<char> prev(npts, 0);
            for (long p = 1; p <= p_max; ++p) {
                std::vector<char> piece(npts, 0);
                bool any = false;
                for (std::size_t x = 0; x < npts; ++x)
                    if (in_u[x] && dom.complement_distance(x, in_u) >= 1.0 / double(p)) {
                        piece[x] = 1;
                        any = true;
                    }
                if (!any || piece == prev) continue;
                prev = piece;
                std::vector<ConvexValue> values;
                values.reserve(npts);
                for (std::size_t x = 0; x < npts; ++x)
                    values.push_back(piece[x] ? *clipped[x] : f.value(x));
                SetValuedMap g(dom, std::move(values), f.norm(), f.target());
                family.push_back({long(n), m, p, michael_selection(g, tol).selection});
            }
        }
    }
    return family;
}

double density_audit(const SetValuedMap& f, const std::vector<FamilyMember>& family) {
    double worst = 0.0;
    for (std::size_t x = 0; x < f.domain().size(); ++x)
        for (const auto& w : f.value(x).generators()) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& mem : family)
                best = std::min(best, real_distance(mem.selection[x], w, f.norm()));
            worst = std::max(worst, best);
        }
    return worst;
}

LowerContinuityReport check_lower_continuity(const SetValuedMap& f,
                                             const std::vector<RealVector>& probes, double slope) {
    const std::size_t npts = f.domain().size();
    std::vector<std::vector<double>> dist(probes.size(), std::vector<double>(npts));
    for (std::size_t v = 0; v < probes.size(); ++v)
        for (std::size_t x = 0; x < npts; ++x) dist[v][x] = f.value(x).distance(probes[v], f.norm());
    LowerContinuityReport rep;
    const double allowance = slope * f.domain().mesh();
    for (auto [a, b] : f.domain().adjacent_pairs())
        for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}})
            for (std::size_t v = 0; v < probes.size(); ++v) {
                double defect = dist[v][y] - dist[v][x] - allowance;
                if (defect > rep.defect) {
                    rep.defect = defect;
                    rep.x = x;
                    rep.x_next = y;
                    rep.probe = v;
                }
            }
    rep.ok = rep.defect <= 1e-12;
    return rep;
}

std::vector<RealVector> box_probes(const TargetBox& box, std::size_t per_axis) {
    const auto d = static_cast<std::size_t>(box.lo.size());
    if (!box.lo.allFinite() || !box.hi.allFinite())
        throw PreconditionError("probe grids need a bounded target box");
    std::vector<RealVector> out;
    std::vector<std::size_t> idx(d, 0);
    for (;;) {
        RealVector p(d);
        for (std::size_t k = 0; k < d; ++k) {
            double t = per_axis > 1 ? double(idx[k]) / double(per_axis - 1) : 0.5;
            p[k] = box.lo[k] + t * (box.hi[k] - box.lo[k]);
        }
        out.push_back(std::move(p));
        std::size_t k = 0;
        while (k < d && idx[k] + 1 == per_axis) idx[k++] = 0;
        if (k == d) break;
        ++idx[k];
    }
    return out;
}

namespace {

RealVector r1(double a) { return RealVector::Constant(1, a); }
RealVector r2(double a, double b) { return RealVector(Eigen::Vector2d(a, b)); }

template <class F>
SetValuedMap on_interval(std::size_t points, F&& value, NormSpec norm, TargetBox box) {
    auto dom = DiscreteDomain::grid(r1(0.0), r1(1.0), {points});
    std::vector<ConvexValue> vals;
    for (const auto& p : dom.points()) vals.emplace_back(value(p[0]));
    return SetValuedMap(std::move(dom), std::move(vals), std::move(norm), std::move(box));
}

}  // namespace

std::vector<SuiteMap> selection_suite(std::size_t points) {
    using G = std::vector<RealVector>;
    const double pi = std::numbers::pi;
    const TargetBox unit1{r1(0.0), r1(1.0)};
    const TargetBox unit2{r2(0.0, 0.0), r2(1.0, 1.0)};
    std::vector<SuiteMap> s;
    s.push_back({"singleton_sine",
                 on_interval(points, [&](double x) { return G{r1(0.5 + 0.4 * std::sin(2 * pi * x))}; },
                             NormSpec::l2(), unit1),
                 0.8 * pi});
    s.push_back({"upper_interval",
                 on_interval(points, [](double x) { return G{r1(x), r1(1.0)}; }, NormSpec::l2(), unit1),
                 1.0});
    s.push_back({"constant_interval",
                 on_interval(points, [](double) { return G{r1(0.0), r1(1.0)}; }, NormSpec::l2(), unit1),
                 1.0});
    s.push_back({"sliding_window",
                 on_interval(points, [](double x) { return G{r1(x / 2), r1(x / 2 + 0.25)}; },
                             NormSpec::l2(), unit1),
                 0.5});
    s.push_back({"vertical_segment",
                 on_interval(points, [](double x) { return G{r2(x, 0.0), r2(x, 1.0)}; },
                             NormSpec::l2(), unit2),
                 1.0});
    s.push_back({"moving_triangle",
                 on_interval(points,
                             [](double x) { return G{r2(0.0, 0.0), r2(1.0, 0.0), r2(x, 1.0)}; },
                             NormSpec::l2(), unit2),
                 1.0});
    s.push_back({"rotating_spoke",
                 on_interval(points,
                             [&](double x) {
                                 return G{r2(0.0, 0.0),
                                          r2(0.5 * std::cos(2 * pi * x), 0.5 * std::sin(2 * pi * x))};
                             },
                             NormSpec::l2(), TargetBox{r2(-0.5, -0.5), r2(0.5, 0.5)}),
                 pi});
    s.push_back({"pinched_interval",
                 on_interval(points,
                             [](double x) {
                                 double a = std::abs(x - 0.5);
                                 return G{r1(-a), r1(a)};
                             },
                             NormSpec::l2(), TargetBox{r1(-0.5), r1(0.5)}),
                 1.0});
    s.push_back({"sliding_square_linf",
                 on_interval(points,
                             [](double x) {
                                 return G{r2(x, 0.0), r2(x + 0.5, 0.0), r2(x + 0.5, 0.5), r2(x, 0.5)};
                             },
                             NormSpec::linf(), TargetBox{r2(0.0, 0.0), r2(1.5, 0.5)}),
                 1.0});
    {
        auto side = static_cast<std::size_t>(std::max(3.0, std::floor(std::sqrt(double(points)))));
        auto dom = DiscreteDomain::grid(r2(0.0, 0.0), r2(1.0, 1.0), {side, side});
        std::vector<ConvexValue> vals;
        for (const auto& p : dom.points())
            vals.emplace_back(G{r2(p[0], 0.0), r2(p[0], 0.5 + 0.5 * p[1])});
        s.push_back({"planar_domain_segment",
                     SetValuedMap(std::move(dom), std::move(vals), NormSpec::l2(), unit2), 1.0});
    }
    return s;
}

SuiteMap jump_map(std::size_t points) {
    using G = std::vector<RealVector>;
    return {"jump",
            on_interval(points, [](double x) { return G{r1(x < 0.5 ? 0.0 : 1.0)}; }, NormSpec::l2(),
                        TargetBox{r1(0.0), r1(1.0)}),
            1.0};
}

}  // namespace hyperselect
