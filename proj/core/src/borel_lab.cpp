#include "hyperselect/borel_lab.hpp"

#include <algorithm>

#include "hyperselect/errors.hpp"

namespace hyperselect {

namespace {

constexpr std::size_t kMaxDepth = 62;

bool is_bitstring(const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return c == '0' || c == '1'; });
}

std::string to_bits(std::uint64_t v, std::size_t len) {
    std::string s(len, '0');
    for (std::size_t i = 0; i < len; ++i)
        if ((v >> i) & 1u) s[i] = '1';
    return s;
}

}  // namespace

TruncPoint TruncPoint::from(const std::function<int(std::size_t)>& x, std::size_t depth) {
    TruncPoint p;
    p.bits.resize(depth);
    for (std::size_t i = 0; i < depth; ++i) p.bits[i] = x(i) ? '1' : '0';
    return p;
}

PrunedTree::PrunedTree(std::size_t depth, std::map<std::string, bool> leaves)
    : depth_(depth), leaves_(std::move(leaves)) {
    if (depth_ > kMaxDepth) throw CapExceeded("tree depth above " + std::to_string(kMaxDepth));
    for (const auto& [s, full] : leaves_) {
        if (s.size() > depth_) throw PreconditionError("prefix longer than the tree depth");
        if (!is_bitstring(s)) throw PreconditionError("prefix is not a bit string");
    }
    canonicalize();
}

PrunedTree PrunedTree::full_space(std::size_t depth) { return PrunedTree(depth, {{"", true}}); }

PrunedTree PrunedTree::empty(std::size_t depth) { return PrunedTree(depth, {}); }

PrunedTree PrunedTree::from_prefixes(std::size_t depth, const std::vector<std::string>& prefixes,
                                     bool exact) {
    std::map<std::string, bool> leaves;
    for (const auto& p : prefixes) leaves[p] = leaves[p] || exact;
    return PrunedTree(depth, std::move(leaves));
}

PrunedTree PrunedTree::from_predicate(std::size_t depth, std::size_t k,
                                      const std::function<bool(const std::string&)>& accept) {
    if (k > kMaxDepth || k > 24) throw CapExceeded("predicate length above 24 bits");
    std::map<std::string, bool> leaves;
    const bool exact = k <= depth;
    const std::size_t len = std::min(k, depth);
    for (std::uint64_t v = 0; v < (1ULL << k); ++v) {
        const std::string s = to_bits(v, k);
        if (accept(s)) leaves[s.substr(0, len)] = exact;
    }
    return PrunedTree(depth, std::move(leaves));
}

bool PrunedTree::exact() const {
    return std::all_of(leaves_.begin(), leaves_.end(), [](const auto& kv) { return kv.second; });
}

void PrunedTree::canonicalize() {
    // Drop leaves below a full leaf and partial leaves below a partial leaf.
    auto covered = [&](const std::string& s, bool full) {
        for (std::size_t l = 0; l < s.size(); ++l) {
            auto it = leaves_.find(s.substr(0, l));
            if (it != leaves_.end() && (it->second || !full)) return true;
        }
        return false;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        std::map<std::string, bool> next;
        for (const auto& [s, full] : leaves_)
            if (!covered(s, full)) next.emplace(s, full);
        // Merge sibling leaves of the same kind into their parent.
        std::map<std::string, bool> merged;
        for (const auto& [s, full] : next) {
            if (!s.empty()) {
                std::string sib = s;
                sib.back() = sib.back() == '0' ? '1' : '0';
                auto it = next.find(sib);
                if (it != next.end() && it->second == full) {
                    merged[s.substr(0, s.size() - 1)] = full;
                    changed = true;
                    continue;
                }
            }
            merged.emplace(s, full);
        }
        changed = changed || merged.size() != leaves_.size();
        leaves_ = std::move(merged);
    }
}

std::pair<PrunedTree::Membership, std::size_t> PrunedTree::classify(const TruncPoint& x) const {
    if (x.depth() != depth_) throw DimensionMismatch("point depth differs from tree depth");
    bool partial = false;
    for (std::size_t l = 0; l <= depth_; ++l) {
        auto it = leaves_.find(x.bits.substr(0, l));
        if (it == leaves_.end()) continue;
        if (it->second) return {Membership::In, l};
        partial = true;
    }
    if (partial) return {Membership::Open, depth_};
    // Shortest prefix of x with no leaf comparable to it.
    for (std::size_t l = 0; l <= depth_; ++l) {
        const std::string p = x.bits.substr(0, l);
        auto it = leaves_.lower_bound(p);
        if (it == leaves_.end() || it->first.compare(0, p.size(), p) != 0) return {Membership::Out, l};
    }
    return {Membership::Out, depth_};
}

PrunedTree PrunedTree::unite(const PrunedTree& other) const {
    if (other.depth_ != depth_) throw DimensionMismatch("trees have different depths");
    std::map<std::string, bool> leaves = leaves_;
    for (const auto& [s, full] : other.leaves_) leaves[s] = leaves[s] || full;
    return PrunedTree(depth_, std::move(leaves));
}

CylinderUnion closed_complement_cylinders(const PrunedTree& a) {
    CylinderUnion out;
    const auto& leaves = a.leaves();
    std::function<void(const std::string&)> walk = [&](const std::string& s) {
        for (std::size_t l = 0; l <= s.size(); ++l)
            if (leaves.count(s.substr(0, l))) return;  // inside the tree
        auto it = leaves.lower_bound(s);
        if (it == leaves.end() || it->first.compare(0, s.size(), s) != 0) {
            out.prefixes.push_back(s);
            return;
        }
        walk(s + '0');
        walk(s + '1');
    };
    walk("");
    return out;
}

std::vector<PrunedTree> increasing_replacement(const std::vector<PrunedTree>& a) {
    std::vector<PrunedTree> out;
    out.reserve(a.size());
    for (const auto& t : a) out.push_back(out.empty() ? t : out.back().unite(t));
    return out;
}

IndicatorMatrix sigma2_reduce(const std::vector<PrunedTree>& a, const TruncPoint& x) {
    IndicatorMatrix m;
    m.rows = a.size();
    m.depth = x.depth();
    const auto inc = increasing_replacement(a);
    for (std::size_t n = 0; n < inc.size(); ++n) {
        const auto [kind, len] = inc[n].classify(x);
        if (kind == PrunedTree::Membership::Open) throw DepthInsufficient(n, x.depth());
        if (kind == PrunedTree::Membership::In) continue;
        const auto cyl = closed_complement_cylinders(inc[n]);
        const std::string p = x.bits.substr(0, len);
        const auto it = std::find(cyl.prefixes.begin(), cyl.prefixes.end(), p);
        m.entries.emplace_back(n, static_cast<std::size_t>(it - cyl.prefixes.begin()));
    }
    return m;
}

std::vector<IndicatorMatrix> pi3_reduce(const std::vector<std::vector<PrunedTree>>& families,
                                        const TruncPoint& x) {
    std::vector<IndicatorMatrix> out;
    out.reserve(families.size());
    for (std::size_t k = 0; k < families.size(); ++k) {
        try {
            out.push_back(sigma2_reduce(families[k], x));
        } catch (const DepthInsufficient& e) {
            throw DepthInsufficient(e.row(), e.depth(), static_cast<long>(k));
        }
    }
    return out;
}

const char* to_string(CensusVerdict v) {
    switch (v) {
        case CensusVerdict::CertifiedFinite: return "CertifiedFinite";
        case CensusVerdict::GrowingWithDepth: return "GrowingWithDepth";
        case CensusVerdict::Undetermined: return "Undetermined";
    }
    return "Undetermined";
}

Census pfin_census(const IndicatorMatrix& shallow, const IndicatorMatrix& deep) {
    Census c;
    c.support_shallow = shallow.support();
    c.support_deep = deep.support();
    const bool new_rows = std::any_of(deep.entries.begin(), deep.entries.end(),
                                      [&](const auto& e) { return e.first >= shallow.rows; });
    if (c.support_deep == c.support_shallow && !new_rows) {
        c.verdict = CensusVerdict::CertifiedFinite;
        c.bound = c.support_deep;
    } else if (c.support_deep > c.support_shallow) {
        c.verdict = CensusVerdict::GrowingWithDepth;
    }
    return c;
}

std::vector<PrunedTree> BorelInstance::family(std::size_t depth) const {
    std::vector<PrunedTree> out;
    const std::size_t r = rows(depth);
    out.reserve(r);
    for (std::size_t n = 0; n < r; ++n) out.push_back(tree(n, depth));
    return out;
}

namespace {

using Pred = std::function<bool(const std::string&)>;

// A_n given by a predicate on the first k(n) bits.
std::function<PrunedTree(std::size_t, std::size_t)> by_predicate(
    std::function<std::size_t(std::size_t)> k, std::function<Pred(std::size_t)> pred) {
    return [k, pred](std::size_t n, std::size_t d) { return PrunedTree::from_predicate(d, k(n), pred(n)); };
}

std::function<int(std::size_t)> one_at(std::vector<std::size_t> ones) {
    return [ones](std::size_t i) { return std::find(ones.begin(), ones.end(), i) != ones.end() ? 1 : 0; };
}

}  // namespace

std::vector<BorelInstance> certified_instances() {
    std::vector<BorelInstance> out;
    auto all_rows = [](std::size_t d) { return d; };
    auto half_rows = [](std::size_t d) { return d / 2; };
    const std::function<int(std::size_t)> zeros = [](std::size_t) { return 0; };

    // A_n = {x : x_0 = 1}
    auto first_bit = [](std::size_t, std::size_t d) { return PrunedTree::from_prefixes(d, {"1"}, true); };
    out.push_back({"first_bit_member", all_rows, first_bit, one_at({0}), true, 1});
    out.push_back({"first_bit_nonmember", all_rows, first_bit, zeros, false, 1});

    auto whole = [](std::size_t, std::size_t d) { return PrunedTree::full_space(d); };
    out.push_back({"full_space", all_rows, whole, zeros, true, 1});
    auto none = [](std::size_t, std::size_t d) { return PrunedTree::empty(d); };
    out.push_back({"empty_sets", all_rows, none, one_at({0, 1}), false, 1});

    // A_n = {x : x_n = 1}; the union is every x with some 1.
    auto bit_n = by_predicate([](std::size_t n) { return n + 1; },
                              [](std::size_t n) -> Pred { return [n](const std::string& s) { return s[n] == '1'; }; });
    for (std::size_t p : {0u, 2u, 5u}) {
        out.push_back({"some_one_at_" + std::to_string(p), all_rows, bit_n, one_at({p}), true, p + 1});
    }
    out.push_back({"some_one_never", all_rows, bit_n, zeros, false, 1});

    // A_n = {x : two ones among the first n + 1 bits}
    auto two_ones = by_predicate([](std::size_t n) { return n + 1; }, [](std::size_t) -> Pred {
        return [](const std::string& s) { return std::count(s.begin(), s.end(), '1') >= 2; };
    });
    out.push_back({"two_ones_member", all_rows, two_ones, one_at({1, 4}), true, 5});
    out.push_back({"two_ones_single", all_rows, two_ones, one_at({0}), false, 1});

    // A_n = {x : x_{2n} = x_{2n+1}}, decided at depth 2n + 2.
    auto pair_eq = by_predicate([](std::size_t n) { return 2 * n + 2; },
                                [](std::size_t n) -> Pred {
                                    return [n](const std::string& s) { return s[2 * n] == s[2 * n + 1]; };
                                });
    const std::function<int(std::size_t)> alternating = [](std::size_t i) { return static_cast<int>(i % 2); };
    out.push_back({"pair_equal_never", half_rows, pair_eq, alternating, false, 2});
    out.push_back({"pair_equal_at_2", half_rows, pair_eq,
                   [](std::size_t i) { return i == 5 ? 0 : static_cast<int>(i % 2); }, true, 6});

    // A_n = {x : x starts with n + 1 ones}; decreasing, the union is A_0.
    auto ones_run = by_predicate([](std::size_t n) { return n + 1; }, [](std::size_t) -> Pred {
        return [](const std::string& s) { return s.find('0') == std::string::npos; };
    });
    out.push_back({"leading_ones_member", all_rows, ones_run, one_at({0}), true, 1});
    out.push_back({"leading_ones_nonmember", all_rows, ones_run, one_at({1, 2}), false, 1});

    // A_n = {x : the first n + 1 bits have odd weight}
    auto odd = by_predicate([](std::size_t n) { return n + 1; }, [](std::size_t) -> Pred {
        return [](const std::string& s) { return std::count(s.begin(), s.end(), '1') % 2 == 1; };
    });
    out.push_back({"odd_prefix_member", all_rows, odd, one_at({3}), true, 4});
    out.push_back({"odd_prefix_nonmember", all_rows, odd, zeros, false, 1});

    // A_n = {x : x_0 = x_1 = 1} with a complement of two cylinders.
    auto two_bits = [](std::size_t, std::size_t d) { return PrunedTree::from_prefixes(d, {"11"}, true); };
    out.push_back({"two_leading_bits_member", all_rows, two_bits, one_at({0, 1}), true, 2});
    out.push_back({"two_leading_bits_nonmember", all_rows, two_bits, one_at({0}), false, 2});

    // A_n = {x : x_n = x_{n+1} = 1}
    auto adjacent = by_predicate([](std::size_t n) { return n + 2; },
                                 [](std::size_t n) -> Pred {
                                     return [n](const std::string& s) { return s[n] == '1' && s[n + 1] == '1'; };
                                 });
    auto rows_minus_one = [](std::size_t d) { return d - 1; };
    out.push_back({"adjacent_ones_member", rows_minus_one, adjacent, one_at({3, 4}), true, 5});
    out.push_back({"adjacent_ones_isolated", rows_minus_one, adjacent, alternating, false, 2});
    return out;
}

}  // namespace hyperselect
