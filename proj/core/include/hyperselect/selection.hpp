#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyperselect/convex_value.hpp"
#include "hyperselect/partition.hpp"

namespace hyperselect {

// Axis box standing for the complete convex target C; bounds may be infinite.
struct TargetBox {
    RealVector lo;
    RealVector hi;
    RealVector clamp(const RealVector& v) const { return v.cwiseMax(lo).cwiseMin(hi); }
    bool contains(const RealVector& v, double tol) const;
};

// x -> conv(generators at x), all values inside the target box.
class SetValuedMap {
public:
    SetValuedMap(DiscreteDomain domain, std::vector<ConvexValue> values, NormSpec norm,
                 TargetBox target);

    const DiscreteDomain& domain() const noexcept { return domain_; }
    const std::vector<ConvexValue>& values() const noexcept { return values_; }
    const ConvexValue& value(std::size_t i) const { return values_[i]; }
    const NormSpec& norm() const noexcept { return norm_; }
    const TargetBox& target() const noexcept { return target_; }
    std::size_t target_dim() const noexcept { return static_cast<std::size_t>(target_.lo.size()); }

private:
    DiscreteDomain domain_;
    std::vector<ConvexValue> values_;
    NormSpec norm_;
    TargetBox target_;
};

using Selection = std::vector<RealVector>;

struct ApproxSelection {
    Selection values;
    Selection witness;  // a point of F(x) within eps of values[x]
    std::size_t cover_size = 0;
    std::size_t max_support = 0;
    // Per point: (net index, coefficient) with coefficients summing to one.
    std::vector<std::vector<std::pair<std::uint32_t, double>>> coefficients;
};

// f(x) = sum rho_v(x) v over the cover U_v = {x : d(v, F(x)) < eps}.
// Throws NetTooCoarse when some point lies in no U_v.
ApproxSelection approx_selection(const SetValuedMap& f, double eps, const std::vector<RealVector>& net);

struct MichaelRecord {
    int k = 0;
    double max_defect = 0.0;  // max_x d(f_{k+1}(x), F(x))
    double max_step = 0.0;    // max_x ||f_{k+1}(x) - f_k(x)||
    double step_bound = 0.0;  // 2^-k
};

struct MichaelResult {
    Selection selection;
    double initial_defect = 0.0;
    double final_defect = 0.0;
    std::vector<MichaelRecord> log;
    std::size_t max_cover = 0;
    std::size_t max_support = 0;
    int refinements = 0;
};

// Geometric Cauchy iteration. Round k intersects F(x) with the open ball of radius
// 2^-k-1 around f_k(x) and takes an approximate selection of that at scale 2^-k-3 on a
// lattice net clamped into the target, so d(f_k, F) < 2^-k-2 holds throughout.
MichaelResult michael_selection(const SetValuedMap& f, double tol);

struct FamilyMember {
    long n = -1;  // net index, -1 for the unmodified map
    long m = 0;
    long p = 0;
    Selection selection;
};

// Members for every (n, m, p) in lexicographic order with m <= m_max, p <= p_max whose
// closed piece is nonempty, preceded by the selection of F itself. Pieces repeating the
// previous p are skipped.
std::vector<FamilyMember> dense_selection_family(const SetValuedMap& f,
                                                 const std::vector<RealVector>& net, long m_max,
                                                 long p_max, double tol);

// max over x and generators w of F(x) of the distance from w to the nearest member value.
double density_audit(const SetValuedMap& f, const std::vector<FamilyMember>& family);

struct LowerContinuityReport {
    bool ok = true;
    double defect = 0.0;
    std::size_t x = 0;
    std::size_t x_next = 0;
    std::size_t probe = 0;
};

// Discrete upper semicontinuity of x -> d(v, F(x)): for adjacent x, x' and every probe v,
// d(v, F(x')) <= d(v, F(x)) + slope * h.
LowerContinuityReport check_lower_continuity(const SetValuedMap& f,
                                             const std::vector<RealVector>& probes, double slope);

double max_defect(const SetValuedMap& f, const Selection& s);
// max over adjacent pairs of ||s(x) - s(x')||.
double selection_modulus(const SetValuedMap& f, const Selection& s);

struct SuiteMap {
    std::string name;
    SetValuedMap map;
    double slope;
};

// Ten lower-continuous convex-valued maps used by tests, benchmarks and the CLI.
std::vector<SuiteMap> selection_suite(std::size_t points = 101);
// F(x) = {0} for x < 1/2 and {1} otherwise.
SuiteMap jump_map(std::size_t points = 101);
// Grid of probe points over the target box, `per_axis` per coordinate.
std::vector<RealVector> box_probes(const TargetBox& box, std::size_t per_axis);

}  // namespace hyperselect
