#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace hyperselect {

// First d bits of a point of Cantor space, as a string over {'0','1'}.
struct TruncPoint {
    std::string bits;

    static TruncPoint from(const std::function<int(std::size_t)>& x, std::size_t depth);
    std::size_t depth() const noexcept { return bits.size(); }
};

// Depth-d truncation of a closed subset of Cantor space. Each leaf is a prefix whose
// depth-d extensions all belong to the tree; a full leaf also certifies that its whole
// cylinder lies in the set, a partial leaf leaves membership open below depth d.
class PrunedTree {
public:
    PrunedTree(std::size_t depth, std::map<std::string, bool> leaves);

    static PrunedTree full_space(std::size_t depth);
    static PrunedTree empty(std::size_t depth);
    // Union of the listed cylinders, all full when `exact`.
    static PrunedTree from_prefixes(std::size_t depth, const std::vector<std::string>& prefixes,
                                    bool exact);
    // The set of x whose first k bits satisfy `accept`. Exact when k <= depth; otherwise
    // the depth-d shadow (prefixes with an accepted completion) with partial leaves.
    static PrunedTree from_predicate(std::size_t depth, std::size_t k,
                                     const std::function<bool(const std::string&)>& accept);

    std::size_t depth() const noexcept { return depth_; }
    const std::map<std::string, bool>& leaves() const noexcept { return leaves_; }
    bool exact() const;

    enum class Membership { Out, In, Open };
    // Out carries the length of the shortest prefix of x outside the tree.
    std::pair<Membership, std::size_t> classify(const TruncPoint& x) const;

    PrunedTree unite(const PrunedTree& other) const;
    bool operator==(const PrunedTree& other) const {
        return depth_ == other.depth_ && leaves_ == other.leaves_;
    }

private:
    void canonicalize();
    std::size_t depth_;
    std::map<std::string, bool> leaves_;
};

// Pairwise incomparable prefixes, in depth-first order with 0 before 1.
struct CylinderUnion {
    std::vector<std::string> prefixes;
};

// Complement of the tree as disjoint cylinders of length at most d.
CylinderUnion closed_complement_cylinders(const PrunedTree& a);

// A_n replaced by the union of A_0..A_n.
std::vector<PrunedTree> increasing_replacement(const std::vector<PrunedTree>& a);

// Sparse 0/1 matrix: entries (n, m) with value 1, sorted.
struct IndicatorMatrix {
    std::size_t rows = 0;
    std::size_t depth = 0;
    std::vector<std::pair<std::size_t, std::size_t>> entries;

    std::size_t support() const noexcept { return entries.size(); }
};

// Row n marks the complement cylinder of the increasing A_n that contains x. Throws
// DepthInsufficient when x stays inside a partial leaf of some A_n.
IndicatorMatrix sigma2_reduce(const std::vector<PrunedTree>& a, const TruncPoint& x);

// k-th output is sigma2_reduce of family k; DepthInsufficient carries k.
std::vector<IndicatorMatrix> pi3_reduce(const std::vector<std::vector<PrunedTree>>& families,
                                        const TruncPoint& x);

enum class CensusVerdict { CertifiedFinite, GrowingWithDepth, Undetermined };
const char* to_string(CensusVerdict v);

struct Census {
    std::size_t support_shallow = 0;
    std::size_t support_deep = 0;
    CensusVerdict verdict = CensusVerdict::Undetermined;
    std::size_t bound = 0;  // support bound when certified finite
};

// Two-depth comparison of the same reduction. Finite when the support is unchanged and
// the deep matrix has no entries in rows the shallow one lacks; growing when it increases.
Census pfin_census(const IndicatorMatrix& shallow, const IndicatorMatrix& deep);

// Bundled reductions with analytically known membership of x in the union of A_n.
struct BorelInstance {
    std::string name;
    std::function<std::size_t(std::size_t)> rows;  // rows decidable at depth d
    std::function<PrunedTree(std::size_t, std::size_t)> tree;  // (n, d) -> A_n
    std::function<int(std::size_t)> x;
    bool member = false;
    std::size_t required_depth = 1;

    std::vector<PrunedTree> family(std::size_t depth) const;
};

std::vector<BorelInstance> certified_instances();

}  // namespace hyperselect
