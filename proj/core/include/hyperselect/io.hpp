#pragma once

#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hyperselect/borel_lab.hpp"
#include "hyperselect/operator_lab.hpp"
#include "hyperselect/sampled_set.hpp"

namespace hyperselect {

using Json = nlohmann::json;

// Complex entries as [re, im]; matrices as arrays of rows.
Json to_json(const Vector& v);
Json to_json(const Matrix& m);
Vector vector_from_json(const Json& j);
Matrix matrix_from_json(const Json& j);

Json to_json(const Subspace& v);
Subspace subspace_from_json(const Json& j);

Json to_json(const SampledSet& s);
SampledSet sampled_set_from_json(const Json& j);

Json to_json(const SubsetSeq& s);
SubsetSeq subset_seq_from_json(const Json& j);

Json to_json(const PrunedTree& t);
PrunedTree tree_from_json(const Json& j);

Json to_json(const IndicatorMatrix& m);

Json to_json(const MatrixAlgebra& a);  // list of basis matrices

// Shortest decimal form that round-trips.
std::string format_number(double v);

class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);
    CsvWriter& operator<<(const std::string& cell);
    CsvWriter& operator<<(double v);
    CsvWriter& operator<<(long long v);
    CsvWriter& operator<<(std::size_t v) { return *this << static_cast<long long>(v); }
    CsvWriter& operator<<(int v) { return *this << static_cast<long long>(v); }
    CsvWriter& operator<<(long v) { return *this << static_cast<long long>(v); }
    void end_row();

private:
    std::ofstream out_;
    std::size_t columns_;
    std::vector<std::string> row_;
};

void write_jsonl(const std::string& path, const std::vector<Json>& records);
void write_json(const std::string& path, const Json& j);

// Plain key=value lines; '#' starts a comment.
class Config {
public:
    static Config parse(const std::string& text);
    static Config from_file(const std::string& path);

    bool has(const std::string& key) const { return values_.count(key) > 0; }
    void set(const std::string& key, const std::string& value) { values_[key] = value; }
    const std::map<std::string, std::string>& values() const noexcept { return values_; }

    std::string get_string(const std::string& key, const std::string& fallback) const;
    long long get_int(const std::string& key, long long fallback, long long lo, long long hi) const;
    double get_double(const std::string& key, double fallback, double lo, double hi) const;
    std::vector<double> get_doubles(const std::string& key, const std::vector<double>& fallback) const;
    // Throws ConfigError naming the first key outside `allowed`.
    void require_known(const std::vector<std::string>& allowed) const;

private:
    std::map<std::string, std::string> values_;
};

}  // namespace hyperselect
