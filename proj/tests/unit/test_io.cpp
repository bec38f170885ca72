#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hyperselect/errors.hpp"
#include "hyperselect/io.hpp"
#include "hyperselect/scenarios.hpp"

using namespace hyperselect;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / ("hyperselect_unit_" + name);
    fs::remove_all(p);
    return p;
}

}  // namespace

TEST_CASE("json round trips") {
    Vector v(2);
    v << Scalar(1, -2), Scalar(0.1, 0);
    CHECK(vector_from_json(to_json(v)) == v);
    Matrix m(2, 2);
    m << 1, Scalar(0, 1), 3, 4;
    CHECK(matrix_from_json(to_json(m)) == m);

    const auto s = Subspace::span({v}, 2, NormSpec::linf(), Side::Dual, ScalarField::Complex);
    const auto s2 = subspace_from_json(to_json(s));
    CHECK(s2.dim() == 1);
    CHECK(s2.side() == Side::Dual);
    CHECK(s2.ambient().kind == NormKind::Linf);
    CHECK((s2.basis()[0] - s.basis()[0]).norm() <= 1e-15);

    const auto disc = sample_disc(DiscFamily{v, 1.0, ScalarField::Complex}, 4, 8);
    const auto d2 = sampled_set_from_json(to_json(disc));
    CHECK(d2.size() == disc.size());
    CHECK(d2.flags().convex == disc.flags().convex);
    CHECK(d2.exact().has_value());
    CHECK(to_json(d2) == to_json(disc));

    const SubsetSeq q(3, {1, 6, 0});
    CHECK(subset_seq_from_json(to_json(q)).masks == q.masks);
    const auto t = PrunedTree::from_prefixes(5, {"01", "1"}, true).unite(
        PrunedTree::from_predicate(5, 7, [](const std::string& b) { return b[6] == '1'; }));
    CHECK(tree_from_json(to_json(t)) == t);
    const auto j = to_json(IndicatorMatrix{4, 6, {{0, 1}, {2, 0}}});
    CHECK(j["entries"] == Json::parse("[[0,1],[2,0]]"));
}

TEST_CASE("number formatting round-trips") {
    for (double x : {0.1, 1.0 / 3.0, 1e-300, -2.5, 0.0, 123456789.125}) CHECK(std::stod(format_number(x)) == x);
    CHECK(format_number(0.5) == "0.5");
}

TEST_CASE("csv writer") {
    const auto dir = scratch("csv");
    fs::create_directories(dir);
    {
        CsvWriter w((dir / "t.csv").string(), {"a", "b"});
        w << std::size_t{3} << 0.25;
        w.end_row();
        w << std::string("x");
        CHECK_THROWS_AS(w.end_row(), PreconditionError);
    }
    CHECK(slurp(dir / "t.csv").rfind("a,b\n3,0.25\n", 0) == 0);
}

TEST_CASE("config parsing") {
    const auto c = Config::parse("# comment\n dim = 4 \nnorm=L1  # trailing\n\nlist=1, 2.5,3\n");
    CHECK(c.get_int("dim", 0, 1, 8) == 4);
    CHECK(c.get_string("norm", "") == "L1");
    CHECK(c.get_doubles("list", {}) == std::vector<double>{1, 2.5, 3});
    CHECK(c.get_double("missing", 0.5, 0, 1) == 0.5);
    CHECK_THROWS_AS(c.get_int("dim", 0, 5, 8), ConfigError);
    CHECK_THROWS_AS(c.get_int("norm", 0, 0, 8), ConfigError);
    CHECK_THROWS_AS(c.require_known({"dim"}), ConfigError);
    CHECK_NOTHROW(c.require_known({"dim", "norm", "list"}));
    CHECK_THROWS_AS(Config::parse("a=1\na=2"), ConfigError);
    CHECK_THROWS_AS(Config::parse("novalue"), ConfigError);
    CHECK_THROWS_AS(Config::from_file("/nonexistent/path.cfg"), ConfigError);
}

TEST_CASE("scenario runner") {
    CHECK(scenario_names().size() == 6);
    ScenarioConfig cfg;
    cfg.scenario = "duality";
    cfg.values = Config::parse("dim=4\ntrials=20\n");
    const auto first = scratch("duality_a");
    cfg.out_dir = first.string();
    const auto a = run_scenario(cfg);
    CHECK(a.files.back() == "summary.json");
    cfg.out_dir = scratch("duality_b").string();
    run_scenario(cfg);
    for (const auto& f : a.files)
        CHECK(slurp(first / f) == slurp(fs::path(cfg.out_dir) / f));
    const auto header = slurp(fs::path(cfg.out_dir) / "duality.csv").substr(0, 46);
    CHECK(header == "trial,norm,dim,subspace_dim,primal,dual,diff\n0");

    cfg.values = Config::parse("dim=40\n");
    try {
        run_scenario(cfg);
        FAIL("expected ConfigError");
    } catch (const std::exception& e) {
        CHECK(exit_code_for(e) == 2);
        CHECK(error_record(e, "duality")["code"] == "ConfigError");
    }
    cfg.scenario = "borel";
    cfg.values = Config::parse("d=6\ninclude_open=1\n");
    cfg.out_dir = scratch("borel_open").string();
    try {
        run_scenario(cfg);
        FAIL("expected DepthInsufficient");
    } catch (const std::exception& e) {
        CHECK(exit_code_for(e) == 4);
    }
    CHECK(exit_code_for(DualityMismatch(1.0, 2.0)) == 3);
    CHECK(exit_code_for(InvariantViolation("x")) == 3);
    CHECK(exit_code_for(std::runtime_error("x")) == 1);
    cfg.scenario = "nope";
    CHECK_THROWS_AS(run_scenario(cfg), ConfigError);
}
