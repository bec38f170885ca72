#include "hyperselect/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hyperselect {

double real_distance(const RealVector& a, const RealVector& b, const NormSpec& spec) {
    switch (spec.kind) {
        case NormKind::L1: return (a - b).lpNorm<1>();
        case NormKind::L2: return (a - b).norm();
        case NormKind::Linf: return (a - b).lpNorm<Eigen::Infinity>();
        default: throw UnsupportedNorm("real domains use L1, L2 or Linf");
    }
}

DiscreteDomain::DiscreteDomain(std::vector<RealVector> points, NormSpec metric)
    : points_(std::move(points)), metric_(std::move(metric)) {
    if (points_.empty()) throw PreconditionError("domain needs at least one point");
    const auto d = points_.front().size();
    for (const auto& p : points_)
        if (p.size() != d) throw DimensionMismatch("domain points differ in dimension");
    const std::size_t n = points_.size();
    const bool keep_order = n <= 1024;
    if (keep_order) order_.resize(n);
    std::vector<double> row(n);
    for (std::size_t i = 0; i < n; ++i) {
        double nn = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            row[j] = real_distance(points_[i], points_[j], metric_);
            if (j != i) {
                if (row[j] == 0.0) throw PreconditionError("domain points must be distinct");
                nn = std::min(nn, row[j]);
            }
        }
        if (n > 1) h_ = std::max(h_, nn);
        if (keep_order) {
            auto& ord = order_[i];
            ord.resize(n);
            std::iota(ord.begin(), ord.end(), 0u);
            std::stable_sort(ord.begin(), ord.end(),
                             [&](std::uint32_t a, std::uint32_t b) { return row[a] < row[b]; });
        }
    }
}

DiscreteDomain DiscreteDomain::grid(const RealVector& lo, const RealVector& hi,
                                    const std::vector<std::size_t>& counts, NormSpec metric) {
    const auto d = static_cast<std::size_t>(lo.size());
    if (hi.size() != lo.size() || counts.size() != d)
        throw DimensionMismatch("grid bounds and counts differ in dimension");
    std::vector<RealVector> pts;
    std::vector<std::size_t> idx(d, 0);
    for (;;) {
        RealVector p(d);
        for (std::size_t k = 0; k < d; ++k) {
            double t = counts[k] > 1 ? double(idx[k]) / double(counts[k] - 1) : 0.0;
            p[k] = lo[k] + t * (hi[k] - lo[k]);
        }
        pts.push_back(std::move(p));
        std::size_t k = 0;
        while (k < d && idx[k] + 1 == counts[k]) idx[k++] = 0;
        if (k == d) break;
        ++idx[k];
    }
    return DiscreteDomain(std::move(pts), std::move(metric));
}

double DiscreteDomain::distance(std::size_t i, std::size_t j) const {
    return real_distance(points_[i], points_[j], metric_);
}

double DiscreteDomain::complement_distance(std::size_t i, const std::vector<char>& member) const {
    double best = std::numeric_limits<double>::infinity();
    if (!order_.empty()) {
        for (auto j : order_[i])
            if (!member[j]) return distance(i, j);
        return best;
    }
    for (std::size_t j = 0; j < points_.size(); ++j)
        if (!member[j]) best = std::min(best, distance(i, j));
    return best;
}

std::vector<std::pair<std::size_t, std::size_t>> DiscreteDomain::adjacent_pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    const double lim = h_ * (1.0 + 1e-9);
    for (std::size_t i = 0; i < points_.size(); ++i)
        for (std::size_t j = i + 1; j < points_.size(); ++j)
            if (distance(i, j) <= lim) out.emplace_back(i, j);
    return out;
}

OpenCover::OpenCover(std::vector<std::vector<std::uint32_t>> members)
    : members_(std::move(members)) {
    for (auto& m : members_) {
        std::sort(m.begin(), m.end());
        m.erase(std::unique(m.begin(), m.end()), m.end());
    }
}

OpenCover OpenCover::from_balls(const DiscreteDomain& x, const std::vector<RealVector>& centers,
                                const std::vector<double>& radii) {
    if (centers.size() != radii.size()) throw PreconditionError("one radius per center");
    std::vector<std::vector<std::uint32_t>> members(centers.size());
    for (std::size_t n = 0; n < centers.size(); ++n)
        for (std::size_t i = 0; i < x.size(); ++i)
            if (real_distance(x.point(i), centers[n], x.metric()) < radii[n])
                members[n].push_back(static_cast<std::uint32_t>(i));
    return OpenCover(std::move(members));
}

void OpenCover::require_covers(const DiscreteDomain& x) const {
    std::vector<char> hit(x.size(), 0);
    for (const auto& m : members_)
        for (auto i : m) {
            if (i >= x.size()) throw PreconditionError("cover names a point outside the domain");
            hit[i] = 1;
        }
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!hit[i]) throw NotACover(i);
}

PartitionOfUnity build_partition_of_unity(const DiscreteDomain& x, const OpenCover& cover) {
    cover.require_covers(x);
    const std::size_t npts = x.size();
    const std::size_t nel = cover.size();
    std::vector<std::vector<std::uint32_t>> containing(npts);
    for (std::size_t n = 0; n < nel; ++n)
        for (auto i : cover.members(n)) containing[i].push_back(static_cast<std::uint32_t>(n));

    PartitionOfUnity pou;
    pou.values_.resize(nel);
    pou.at_.resize(npts);
    pou.support_count_.assign(npts, 0);
    std::vector<char> mask(npts, 0);
    // m_n(x) = min(1, d(x, X \ U_n)), computed element by element to reuse one mask.
    std::vector<std::vector<double>> m(npts);
    for (std::size_t i = 0; i < npts; ++i) m[i].reserve(containing[i].size());
    for (std::size_t n = 0; n < nel; ++n) {
        for (auto i : cover.members(n)) mask[i] = 1;
        for (auto i : cover.members(n))
            m[i].push_back(std::min(1.0, x.complement_distance(i, mask)));
        for (auto i : cover.members(n)) mask[i] = 0;
    }
    for (std::size_t i = 0; i < npts; ++i) {
        const auto& els = containing[i];
        // Dominant term: largest log2 g_n = log2 m_n - n; ties keep the smaller n.
        std::size_t star = 0;
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < els.size(); ++t) {
            double key = std::log2(m[i][t]) - double(els[t] + 1);
            if (key > best) {
                best = key;
                star = t;
            }
        }
        const long nstar = long(els[star]) + 1;
        const double mstar = m[i][star];
        // f_n / 2^-n*, exact powers of two so the dominant comparison is not rounded.
        std::vector<double> f(els.size());
        double sum = 0.0;
        for (std::size_t t = 0; t < els.size(); ++t) {
            long shift = nstar - (long(els[t]) + 1);
            double gn = shift < -1100 ? 0.0 : std::ldexp(m[i][t], int(std::min(shift, 1100L)));
            f[t] = std::max(0.0, gn - 0.5 * mstar);
            sum += f[t];
        }
        for (std::size_t t = 0; t < els.size(); ++t) {
            if (f[t] <= 0.0) continue;
            double rho = f[t] / sum;
            pou.values_[els[t]].emplace_back(static_cast<std::uint32_t>(i), rho);
            pou.at_[i].emplace_back(els[t], rho);
        }
        pou.support_count_[i] = pou.at_[i].size();
        pou.max_support_ = std::max(pou.max_support_, pou.at_[i].size());
    }
    return pou;
}

}  // namespace hyperselect
