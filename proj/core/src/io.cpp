#include "hyperselect/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "hyperselect/errors.hpp"

namespace hyperselect {

namespace {

Json scalar_json(const Scalar& z) { return Json::array({z.real(), z.imag()}); }

Scalar scalar_from(const Json& j) {
    if (j.is_number()) return Scalar(j.get<double>(), 0.0);
    if (!j.is_array() || j.size() != 2) throw ConfigError("complex entries are [re, im] pairs");
    return Scalar(j[0].get<double>(), j[1].get<double>());
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

Json to_json(const Vector& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(scalar_json(v(i)));
    return out;
}

Json to_json(const Matrix& m) {
    Json out = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(scalar_json(m(r, c)));
        out.push_back(std::move(row));
    }
    return out;
}

Vector vector_from_json(const Json& j) {
    if (!j.is_array()) throw ConfigError("vector must be an array");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = scalar_from(j[i]);
    return v;
}

Matrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw ConfigError("matrix must be a nonempty array of rows");
    const std::size_t cols = j[0].size();
    Matrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < j.size(); ++r) {
        if (j[r].size() != cols) throw ConfigError("matrix rows differ in length");
        for (std::size_t c = 0; c < cols; ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = scalar_from(j[r][c]);
    }
    return m;
}

Json to_json(const Subspace& v) {
    Json basis = Json::array();
    for (const auto& b : v.basis()) basis.push_back(to_json(b));
    return {{"basis", basis},
            {"ambient_dim", v.ambient_dim()},
            {"side", v.side() == Side::Primal ? "primal" : "dual"},
            {"norm", to_string(v.ambient().kind)},
            {"field", v.field() == ScalarField::Real ? "real" : "complex"}};
}

Subspace subspace_from_json(const Json& j) {
    std::vector<Vector> gens;
    for (const auto& b : j.at("basis")) gens.push_back(vector_from_json(b));
    const std::size_t dim = j.contains("ambient_dim") ? j.at("ambient_dim").get<std::size_t>()
                                                      : (gens.empty() ? 0 : gens.front().size());
    const std::string side = j.value("side", "primal");
    if (side != "primal" && side != "dual") throw ConfigError("side must be primal or dual");
    const std::string field = j.value("field", "real");
    return Subspace::span(gens, dim, NormSpec::of(norm_kind_from_string(j.value("norm", "L2"))),
                          side == "primal" ? Side::Primal : Side::Dual,
                          field == "complex" ? ScalarField::Complex : ScalarField::Real);
}

Json to_json(const SampledSet& s) {
    Json pts = Json::array();
    for (const auto& p : s.points()) pts.push_back(to_json(p));
    Json out = {{"points", pts},
                {"flags", {{"convex", s.flags().convex}, {"balanced", s.flags().balanced}}},
                {"field", s.field() == ScalarField::Real ? "real" : "complex"}};
    if (s.exact()) {
        if (const auto* b = std::get_if<SubspaceBall>(&*s.exact())) {
            out["exact"] = {{"kind", "subspace_ball"}, {"subspace", to_json(b->subspace)}};
        } else {
            const auto& d = std::get<DiscFamily>(*s.exact());
            out["exact"] = {{"kind", "disc"},
                            {"direction", to_json(d.direction)},
                            {"radius", d.radius},
                            {"field", d.field == ScalarField::Real ? "real" : "complex"}};
        }
    }
    return out;
}

SampledSet sampled_set_from_json(const Json& j) {
    std::vector<Vector> pts;
    for (const auto& p : j.at("points")) pts.push_back(vector_from_json(p));
    SetFlags flags;
    if (j.contains("flags")) {
        flags.convex = j["flags"].value("convex", false);
        flags.balanced = j["flags"].value("balanced", false);
    }
    const auto field = j.value("field", "real") == "complex" ? ScalarField::Complex : ScalarField::Real;
    std::optional<ExactSet> exact;
    if (j.contains("exact")) {
        const auto& e = j["exact"];
        const std::string kind = e.at("kind");
        if (kind == "subspace_ball") {
            exact = SubspaceBall{subspace_from_json(e.at("subspace"))};
        } else if (kind == "disc") {
            exact = DiscFamily{vector_from_json(e.at("direction")), e.at("radius").get<double>(),
                               e.value("field", "complex") == "real" ? ScalarField::Real
                                                                     : ScalarField::Complex};
        } else {
            throw ConfigError("unknown exact descriptor '" + kind + "'");
        }
    }
    return SampledSet(std::move(pts), flags, field, std::move(exact));
}

Json to_json(const SubsetSeq& s) {
    Json rows = Json::array();
    for (std::size_t n = 0; n < s.m; ++n) {
        Json row = Json::array();
        for (std::size_t k = 0; k < s.m; ++k)
            if (s.contains(n, k)) row.push_back(k);
        rows.push_back(std::move(row));
    }
    return {{"m", s.m}, {"S", rows}};
}

SubsetSeq subset_seq_from_json(const Json& j) {
    const std::size_t m = j.at("m").get<std::size_t>();
    std::vector<std::uint64_t> masks;
    for (const auto& row : j.at("S")) {
        std::uint64_t mask = 0;
        for (const auto& k : row) {
            const auto idx = k.get<std::size_t>();
            if (idx >= 64) throw ConfigError("subset index out of range");
            mask |= 1ULL << idx;
        }
        masks.push_back(mask);
    }
    return SubsetSeq(m, std::move(masks));
}

Json to_json(const PrunedTree& t) {
    Json full = Json::array(), partial = Json::array();
    for (const auto& [p, f] : t.leaves()) (f ? full : partial).push_back(p);
    return {{"depth", t.depth()}, {"full", full}, {"partial", partial}};
}

PrunedTree tree_from_json(const Json& j) {
    std::map<std::string, bool> leaves;
    for (const auto& p : j.value("full", Json::array())) leaves[p.get<std::string>()] = true;
    for (const auto& p : j.value("partial", Json::array())) leaves.emplace(p.get<std::string>(), false);
    return PrunedTree(j.at("depth").get<std::size_t>(), std::move(leaves));
}

Json to_json(const IndicatorMatrix& m) {
    Json e = Json::array();
    for (const auto& [n, k] : m.entries) e.push_back(Json::array({n, k}));
    return {{"rows", m.rows}, {"depth", m.depth}, {"entries", e}};
}

Json to_json(const MatrixAlgebra& a) {
    Json out = Json::array();
    for (const auto& b : a.basis()) out.push_back(to_json(b));
    return out;
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : out_(path), columns_(header.size()) {
    if (!out_) throw ConfigError("cannot open '" + path + "' for writing");
    row_ = header;
    end_row();
}

CsvWriter& CsvWriter::operator<<(const std::string& cell) {
    row_.push_back(cell);
    return *this;
}

CsvWriter& CsvWriter::operator<<(double v) { return *this << format_number(v); }

CsvWriter& CsvWriter::operator<<(long long v) { return *this << std::to_string(v); }

void CsvWriter::end_row() {
    if (row_.size() != columns_) throw PreconditionError("csv row has the wrong number of cells");
    for (std::size_t i = 0; i < row_.size(); ++i) out_ << (i ? "," : "") << row_[i];
    out_ << '\n';
    row_.clear();
}

void write_jsonl(const std::string& path, const std::vector<Json>& records) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    for (const auto& r : records) out << r.dump() << '\n';
}

void write_json(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    out << j.dump(2) << '\n';
}

Config Config::parse(const std::string& text) {
    Config c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        if (c.values_.count(key)) throw ConfigError("duplicate key '" + key + "'");
        c.values_[key] = trim(line.substr(eq + 1));
    }
    return c;
}

Config Config::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

long long Config::get_int(const std::string& key, long long fallback, long long lo, long long hi) const {
    auto it = values_.find(key);
    long long v = fallback;
    if (it != values_.end()) {
        const auto& s = it->second;
        auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc() || res.ptr != s.data() + s.size())
            throw ConfigError("key '" + key + "' expects an integer, got '" + s + "'");
    }
    if (v < lo || v > hi)
        throw ConfigError("key '" + key + "' must lie in [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
    return v;
}

double Config::get_double(const std::string& key, double fallback, double lo, double hi) const {
    auto it = values_.find(key);
    double v = fallback;
    if (it != values_.end()) {
        const auto& s = it->second;
        auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc() || res.ptr != s.data() + s.size())
            throw ConfigError("key '" + key + "' expects a number, got '" + s + "'");
    }
    if (!(v >= lo && v <= hi))
        throw ConfigError("key '" + key + "' must lie in [" + format_number(lo) + ", " +
                          format_number(hi) + "]");
    return v;
}

std::vector<double> Config::get_doubles(const std::string& key, const std::vector<double>& fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::vector<double> out;
    std::stringstream ss(it->second);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        double v;
        auto res = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || res.ec != std::errc() || res.ptr != item.data() + item.size())
            throw ConfigError("key '" + key + "' expects a comma-separated list of numbers");
        out.push_back(v);
    }
    if (out.empty()) throw ConfigError("key '" + key + "' is empty");
    return out;
}

void Config::require_known(const std::vector<std::string>& allowed) const {
    for (const auto& [k, v] : values_)
        if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
            throw ConfigError("unknown key '" + k + "'");
}

}  // namespace hyperselect
