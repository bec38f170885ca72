#include "hyperselect/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <map>
#include <numbers>
#include <random>

#include "hyperselect/borel_lab.hpp"
#include "hyperselect/duality.hpp"
#include "hyperselect/errors.hpp"
#include "hyperselect/operator_lab.hpp"
#include "hyperselect/selection.hpp"

namespace hyperselect {

namespace {

struct Context {
    const ScenarioConfig& cfg;
    std::filesystem::path dir;
    ScenarioOutcome outcome;
    std::vector<std::string> violations;

    std::string path(const std::string& name) {
        outcome.files.push_back(name);
        return (dir / name).string();
    }
    void check(bool ok, const std::string& what) {
        if (!ok) violations.push_back(what);
    }
};

// Rows comparing a weighted-sum quantity at M probes and at 2M probes.
class RobustnessTable {
public:
    explicit RobustnessTable(Context& ctx)
        : ctx_(ctx),
          csv_(ctx.path("probe_robustness.csv"),
               {"quantity", "probes", "value", "value_doubled", "difference", "tail_bound", "within_bound"}) {}

    void add(const std::string& name, std::size_t m, double v, double v2) {
        const double diff = std::abs(v2 - v);
        const double tail = std::ldexp(1.0, -static_cast<int>(m));
        const bool ok = diff <= tail;
        csv_ << name << m << v << v2 << diff << tail << std::string(ok ? "1" : "0");
        csv_.end_row();
        ctx_.check(ok, "probe doubling moved " + name + " beyond the tail weight");
        worst_ = std::max(worst_, diff / tail);
    }
    double worst_ratio() const { return worst_; }

private:
    Context& ctx_;
    CsvWriter csv_;
    double worst_ = 0.0;
};

std::string join_coords(const RealVector& v, std::size_t width, std::size_t i) {
    return i < static_cast<std::size_t>(v.size()) && i < width ? format_number(v(i)) : "";
}

// Duality identity sweep.
void run_duality(Context& ctx) {
    const auto& c = ctx.cfg.values;
    c.require_known({"dim", "trials", "norm", "tol_l2", "tol_polyhedral"});
    const auto dim = static_cast<std::size_t>(c.get_int("dim", 3, 1, 8));
    const auto trials = c.get_int("trials", 200, 1, 100000);
    const std::string which = c.get_string("norm", "all");
    const double tol_l2 = c.get_double("tol_l2", 1e-6, 0.0, 1.0);
    const double tol_poly = c.get_double("tol_polyhedral", 2e-3, 0.0, 1.0);
    std::vector<NormKind> kinds;
    if (which == "all") kinds = {NormKind::L2, NormKind::L1, NormKind::Linf};
    else if (which == "L1" || which == "L2" || which == "Linf") kinds = {norm_kind_from_string(which)};
    else throw ConfigError("norm must be L1, L2, Linf or all");

    std::mt19937_64 rng(ctx.cfg.seed);
    std::normal_distribution<double> g(0.0, 1.0);
    CsvWriter csv(ctx.path("duality.csv"),
                  {"trial", "norm", "dim", "subspace_dim", "primal", "dual", "diff"});
    Json worst = Json::object();
    for (NormKind kind : kinds) {
        const NormSpec spec = NormSpec::of(kind);
        const double tol = kind == NormKind::L2 ? tol_l2 : tol_poly;
        double max_diff = 0.0;
        for (long long t = 0; t < trials; ++t) {
            const std::size_t k = static_cast<std::size_t>(rng() % dim);
            std::vector<Vector> gens;
            for (std::size_t i = 0; i < k; ++i) {
                Vector v(dim);
                for (std::size_t j = 0; j < dim; ++j) v(j) = g(rng);
                gens.push_back(v);
            }
            Vector x(dim);
            for (std::size_t j = 0; j < dim; ++j) x(j) = g(rng);
            const Subspace v = Subspace::span(gens, dim, spec, Side::Primal);
            const QuotientDistance q = quotient_distance(x, v, spec, tol);
            const double diff = std::abs(q.primal - q.dual);
            max_diff = std::max(max_diff, diff);
            csv << t << std::string(to_string(kind)) << dim << v.dim() << q.primal << q.dual << diff;
            csv.end_row();
        }
        worst[to_string(kind)] = max_diff;
    }
    ctx.outcome.summary["max_diff"] = worst;
}

Vector delta(std::size_t dim, std::size_t i, double scale = 1.0) {
    Vector v = Vector::Zero(dim);
    v(i) = scale;
    return v;
}

// Discs B_n = (C)_1 (delta_0 / 2 + delta_n) against their limit (C)_1 (delta_0 / 2).
void run_counterexample(Context& ctx) {
    const auto& c = ctx.cfg.values;
    c.require_known({"N", "rings", "phases", "probes", "tol", "shape_tol", "scales"});
    const auto N = static_cast<std::size_t>(c.get_int("N", 16, 2, 62));
    const auto rings = static_cast<std::size_t>(c.get_int("rings", 16, 4, 64));
    const auto phases = static_cast<std::size_t>(c.get_int("phases", 64, 8, 256));
    const auto M = static_cast<std::size_t>(c.get_int("probes", 8, 1, 31));
    const double tol = c.get_double("tol", 1e-6, 0.0, 1.0);
    const double shape_tol = c.get_double("shape_tol", 0.1, 0.0, 1.0);
    const auto scales = c.get_doubles("scales", {0.5, 0.75});
    for (double s : scales)
        if (!(s > 0.0 && s < 1.0)) throw ConfigError("scales must lie in (0, 1)");
    const std::size_t dim = N + 1;
    if (2 * M > dim) throw ConfigError("probes must satisfy 2 * probes <= N + 1");

    const NormSpec linf = NormSpec::linf();
    std::vector<Vector> probes;
    for (std::size_t k = 0; k < 2 * M; ++k) probes.push_back(delta(dim, k));
    const std::vector<Vector> probes_m(probes.begin(), probes.begin() + static_cast<long>(M));
    std::vector<Vector> all_coords;
    for (std::size_t k = 0; k < dim; ++k) all_coords.push_back(delta(dim, k));

    const DiscFamily limit_disc{delta(dim, 0, 0.5), 1.0, ScalarField::Complex};
    const SampledSet limit = sample_disc(limit_disc, rings, phases);
    const Subspace span0 = Subspace::span({delta(dim, 0)}, dim, linf, Side::Dual, ScalarField::Complex);

    RobustnessTable robust(ctx);
    CsvWriter csv(ctx.path("counterexample.csv"),
                  {"n", "support_delta0", "support_deltan", "support_gap", "support_gap_doubled",
                   "sup_gap_to_span_delta0", "finite_ball_ok"});
    bool all_finite_ok = true;
    for (std::size_t n = 1; n <= N; ++n) {
        Vector d = delta(dim, 0, 0.5);
        d(n) = 1.0;
        const SampledSet bn = sample_disc(DiscFamily{d, 1.0, ScalarField::Complex}, rings, phases);
        const double s0 = support_function(bn, probes[0], linf);
        const double sn = support_function(bn, all_coords[n], linf);
        const double gap = weighted_support_gap(bn, limit, probes_m, linf);
        const double gap2 = weighted_support_gap(bn, limit, probes, linf);
        const Subspace vn = Subspace::span({d}, dim, linf, Side::Dual, ScalarField::Complex);
        const double sup_gap = convergence_gap({vn}, span0, all_coords).front();
        const bool ok = is_subspace_ball(bn, scales, tol, linf, shape_tol).ok;
        all_finite_ok = all_finite_ok && ok;
        ctx.check(ok, "finite disc B_" + std::to_string(n) + " failed the subspace-ball predicate");
        csv << n << s0 << sn << gap << gap2 << sup_gap << std::string(ok ? "1" : "0");
        csv.end_row();
        robust.add("support_gap[n=" + std::to_string(n) + "]", M, gap, gap2);
    }

    const SubspaceBallCheck chk = is_subspace_ball(limit, scales, tol, linf, shape_tol);
    CsvWriter w(ctx.path("counterexample_witness.csv"), {"scale", "distance", "witness_norm", "ok"});
    if (chk.witness_scale) {
        w << *chk.witness_scale << chk.violation << eval_norm(*chk.witness_point, linf) << std::string("0");
    } else {
        w << std::string("") << 0.0 << std::string("") << std::string("1");
    }
    w.end_row();
    ctx.check(!chk.ok, "the limit disc passed the subspace-ball predicate");
    ctx.outcome.summary["witness"] = {{"ok", chk.ok},
                                      {"scale", chk.witness_scale ? Json(*chk.witness_scale) : Json()},
                                      {"distance", chk.violation}};
    ctx.outcome.summary["finite_balls_ok"] = all_finite_ok;
    ctx.outcome.summary["robustness_worst_ratio"] = robust.worst_ratio();
}

// Michael iteration, dense-family audit and lower-continuity checks on the bundled suite.
void run_selection(Context& ctx) {
    const auto& c = ctx.cfg.values;
    c.require_known({"points", "tol", "m_max", "p_max", "net"});
    const auto points = static_cast<std::size_t>(c.get_int("points", 101, 11, 401));
    const double tol = c.get_double("tol", 1e-3, 1e-6, 0.1);
    const long m_max = static_cast<long>(c.get_int("m_max", 3, 1, 6));
    const long p_max = static_cast<long>(c.get_int("p_max", m_max, 1, 6));
    const auto net_axis = static_cast<std::size_t>(c.get_int("net", 0, 0, 17));

    std::vector<Json> log;
    CsvWriter sel(ctx.path("selections.csv"), {"map", "point", "x0", "x1", "f0", "f1", "defect"});
    CsvWriter audit(ctx.path("density_audit.csv"), {"map", "m_max", "members", "gap", "bound"});
    CsvWriter lc(ctx.path("lower_continuity.csv"), {"map", "ok", "defect", "slope"});
    Json finals = Json::object();
    for (const auto& s : selection_suite(points)) {
        const auto& f = s.map;
        const MichaelResult r = michael_selection(f, tol);
        for (const auto& rec : r.log) {
            log.push_back({{"map", s.name}, {"k", rec.k}, {"max_defect", rec.max_defect},
                           {"max_step", rec.max_step}, {"step_bound", rec.step_bound}});
            ctx.check(rec.max_step <= rec.step_bound, s.name + ": step above 2^-k");
        }
        ctx.check(r.final_defect <= tol, s.name + ": final defect above tol");
        finals[s.name] = r.final_defect;
        for (std::size_t x = 0; x < f.domain().size(); ++x) {
            const auto& xp = f.domain().point(x);
            const auto& fx = r.selection[x];
            sel << s.name << x << join_coords(xp, 2, 0) << join_coords(xp, 2, 1) << join_coords(fx, 2, 0)
                << join_coords(fx, 2, 1) << f.value(x).distance(fx, f.norm());
            sel.end_row();
        }

        const std::size_t per_axis = net_axis ? net_axis : (f.target_dim() == 1 ? 9 : 5);
        const auto net = box_probes(f.target(), per_axis);
        double prev = std::numeric_limits<double>::infinity();
        for (long m = 1; m <= m_max; ++m) {
            const auto fam = dense_selection_family(f, net, m, std::min(m, p_max), tol);
            const double gap = density_audit(f, fam);
            std::string bound;
            if (s.name == "constant_interval") {
                const double b = 1.0 / static_cast<double>(m) + 2.0 * tol;
                bound = format_number(b);
                ctx.check(gap <= b, s.name + ": audit gap above 1/m + 2 tol");
            }
            ctx.check(gap <= prev, s.name + ": audit gap increased with m");
            prev = gap;
            audit << s.name << m << fam.size() << gap << bound;
            audit.end_row();
        }

        const auto rep = check_lower_continuity(f, box_probes(f.target(), 9), s.slope);
        ctx.check(rep.ok, s.name + ": lower continuity check failed");
        lc << s.name << std::string(rep.ok ? "1" : "0") << rep.defect << s.slope;
        lc.end_row();
    }
    const SuiteMap jump = jump_map(points);
    const auto rep = check_lower_continuity(jump.map, box_probes(jump.map.target(), 9), jump.slope);
    ctx.check(!rep.ok, "the jump map passed the lower continuity check");
    lc << jump.name << std::string(rep.ok ? "1" : "0") << rep.defect << jump.slope;
    lc.end_row();
    write_jsonl(ctx.path("michael_log.jsonl"), log);
    ctx.outcome.summary["final_defect"] = finals;
    ctx.outcome.summary["jump_rejected"] = !rep.ok;
}

MatrixAlgebra rotated_diagonal(std::size_t n, double theta) {
    Matrix u = Matrix::Identity(n, n);
    u(0, 0) = std::cos(theta);
    u(0, 1) = -std::sin(theta);
    u(1, 0) = std::sin(theta);
    u(1, 1) = std::cos(theta);
    std::vector<Matrix> basis;
    for (std::size_t k = 0; k < n; ++k) basis.push_back(u * matrix_unit(n, k, k) * u.adjoint());
    return MatrixAlgebra(n, std::move(basis));
}

// c I + x sigma_z + y sigma_x
Matrix pauli_point(const RealVector& v) {
    Matrix m(2, 2);
    m << v(0) + v(1), v(2), v(2), v(0) - v(1);
    return m;
}

// Rotated-family convergence curve and a strongly-* continuous selection demo.
void run_marechal(Context& ctx) {
    const auto& c = ctx.cfg.values;
    c.require_known({"n", "thetas", "theta_max", "probes", "hw_points", "hw_m_max", "hw_p_max",
                     "hw_net", "tol"});
    const auto n = static_cast<std::size_t>(c.get_int("n", 2, 2, 4));
    const auto thetas = c.get_int("thetas", 16, 2, 256);
    const double theta_max = c.get_double("theta_max", std::numbers::pi / 8, 1e-6, std::numbers::pi / 4);
    const auto M = static_cast<std::size_t>(c.get_int("probes", static_cast<long long>(n * n), 1, 30));
    const auto hw_points = static_cast<std::size_t>(c.get_int("hw_points", 33, 5, 257));
    const long hw_m = static_cast<long>(c.get_int("hw_m_max", 2, 1, 4));
    const long hw_p = static_cast<long>(c.get_int("hw_p_max", 2, 1, 4));
    const auto hw_net = static_cast<std::size_t>(c.get_int("hw_net", 3, 2, 7));
    const double tol = c.get_double("tol", 1e-3, 1e-6, 0.1);

    const auto probes2 = marechal_probes(n, 2 * M, ctx.cfg.seed);
    const std::vector<Matrix> probes(probes2.begin(), probes2.begin() + static_cast<long>(M));
    const MatrixAlgebra a0 = rotated_diagonal(n, 0.0);
    RobustnessTable robust(ctx);
    CsvWriter curve(ctx.path("marechal_curve.csv"), {"theta", "pseudometric", "pseudometric_doubled"});
    double prev = std::numeric_limits<double>::infinity();
    double last = 0.0;
    for (long long i = 0; i < thetas; ++i) {
        const double theta = theta_max * static_cast<double>(thetas - 1 - i) / static_cast<double>(thetas - 1);
        const MatrixAlgebra at = rotated_diagonal(n, theta);
        const double d = marechal_pseudometric(at, a0, probes);
        const double d2 = marechal_pseudometric(at, a0, probes2);
        ctx.check(d <= prev + 1e-12, "rotated-family pseudometric increased as theta decreased");
        prev = d;
        last = d;
        curve << theta << d << d2;
        curve.end_row();
        robust.add("pseudometric[theta=" + format_number(theta) + "]", M, d, d2);
    }
    ctx.check(last <= 1e-12, "rotated-family pseudometric does not vanish at theta = 0");

    // F(t): self-adjoint part of the unit ball of A_theta(t), in coordinates (c, x, y).
    std::vector<ConvexValue> values;
    for (std::size_t i = 0; i < hw_points; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(hw_points - 1);
        const double th = theta_max * t;
        std::vector<RealVector> gens;
        for (double a : {-1.0, 1.0})
            for (double b : {-1.0, 1.0})
                gens.push_back(Eigen::Vector3d(0.5 * (a + b), 0.5 * (a - b) * std::cos(2 * th),
                                               0.5 * (a - b) * std::sin(2 * th)));
        values.emplace_back(std::move(gens));
    }
    const TargetBox box{RealVector::Constant(3, -1.0), RealVector::Constant(3, 1.0)};
    const SetValuedMap fmap(DiscreteDomain::grid(RealVector::Zero(1), RealVector::Ones(1), {hw_points}),
                            std::move(values), NormSpec::l2(), box);
    const auto net = box_probes(box, hw_net);
    CsvWriter audit(ctx.path("hw_audit.csv"), {"m_max", "members", "gap"});
    double gap = std::numeric_limits<double>::infinity();
    std::vector<FamilyMember> family;
    for (long m = 1; m <= hw_m; ++m) {
        family = dense_selection_family(fmap, net, m, std::min(m, hw_p), tol);
        const double g = density_audit(fmap, family);
        ctx.check(g <= gap, "demo audit gap increased with m");
        gap = g;
        audit << m << family.size() << g;
        audit.end_row();
    }
    const NormSpec star = NormSpec::probe(NormKind::ProbeStrongStar, ProbeSequence::standard(2, 4));
    CsvWriter hw(ctx.path("hw_family.csv"), {"member", "n", "m", "p", "max_defect", "strong_star_modulus"});
    for (std::size_t k = 0; k < family.size(); ++k) {
        const auto& mem = family[k];
        const double defect = max_defect(fmap, mem.selection);
        ctx.check(defect <= tol, "selection member leaves the self-adjoint unit ball");
        double modulus = 0.0;
        for (auto [a, b] : fmap.domain().adjacent_pairs())
            modulus = std::max(modulus, eval_norm(Matrix(pauli_point(mem.selection[a]) -
                                                         pauli_point(mem.selection[b])),
                                                  star));
        hw << k << mem.n << mem.m << mem.p << defect << modulus;
        hw.end_row();
    }
    ctx.outcome.summary["hw_members"] = family.size();
    ctx.outcome.summary["hw_density_gap"] = gap;
    ctx.outcome.summary["curve_final"] = last;
    ctx.outcome.summary["robustness_worst_ratio"] = robust.worst_ratio();
}

// Adjoint modulus of block algebras f(S) and of full matrix algebras.
void run_finiteness(Context& ctx) {
    const auto& c = ctx.cfg.values;
    c.require_known({"block_sizes", "m", "eps", "samples", "probe_length", "full_sizes"});
    const auto m = static_cast<std::size_t>(c.get_int("m", 8, 2, 8));
    const auto eps = c.get_doubles("eps", {0.05, 0.1, 0.2, 0.4});
    const auto samples = static_cast<std::size_t>(c.get_int("samples", 200, 10, 2000));
    const auto plen = static_cast<std::size_t>(c.get_int("probe_length", 16, 1, 256));
    const auto blocks = c.get_doubles("block_sizes", {1, 2, 4, 8});
    const auto fulls = c.get_doubles("full_sizes", {2, 3, 4});
    for (double e : eps)
        if (!(e > 0.0)) throw ConfigError("eps values must be positive");

    CsvWriter csv(ctx.path("modulus.csv"), {"eps", "delta", "block_size", "algebra"});
    Json delta01 = Json::object();
    for (double bd : blocks) {
        const auto b = static_cast<std::size_t>(bd);
        if (bd != static_cast<double>(b) || b < 1 || b > m)
            throw ConfigError("block sizes must be integers in [1, m]");
        std::vector<std::uint64_t> masks(m, 0);
        masks[0] = (1ULL << b) - 1;
        const FSAlgebra fs = build_fS(SubsetSeq(m, masks));
        const NormSpec metric =
            NormSpec::probe(NormKind::ProbeStrong, ProbeSequence::standard(m * m, plen));
        for (const auto& pt : adjoint_modulus(fs.algebra, eps, samples, ctx.cfg.seed, metric)) {
            csv << pt.eps << pt.delta << b << std::string("fS");
            csv.end_row();
            if (pt.eps == 0.1) delta01["fS_block_" + std::to_string(b)] = pt.delta;
        }
    }
    for (double kd : fulls) {
        const auto k = static_cast<std::size_t>(kd);
        if (kd != static_cast<double>(k) || k < 1 || k > 12) throw ConfigError("full sizes must be integers in [1, 12]");
        std::vector<Matrix> units;
        for (std::size_t l = 0; l < k; ++l)
            for (std::size_t i = 0; i < k; ++i) units.push_back(matrix_unit(k, i, l));
        const MatrixAlgebra a(k, std::move(units));
        const NormSpec metric = NormSpec::probe(NormKind::ProbeStrong, ProbeSequence::standard(k, std::max(plen, k)));
        for (const auto& pt : adjoint_modulus(a, eps, samples, ctx.cfg.seed, metric)) {
            csv << pt.eps << pt.delta << k << std::string("full");
            csv.end_row();
            if (pt.eps == 0.1) delta01["full_" + std::to_string(k)] = pt.delta;
        }
    }
    ctx.outcome.summary["delta_at_0.1"] = delta01;
}

// Two-depth census of the certified reductions and the product composition.
void run_borel(Context& ctx) {
    const auto& c = ctx.cfg.values;
    c.require_known({"d", "d2", "include_open"});
    const auto d = static_cast<std::size_t>(c.get_int("d", 8, 2, 20));
    const auto d2 = static_cast<std::size_t>(c.get_int("d2", static_cast<long long>(std::min<std::size_t>(2 * d, 24)),
                                                       static_cast<long long>(d + 1), 24));
    const bool include_open = c.get_int("include_open", 0, 0, 1) == 1;

    auto instances = certified_instances();
    if (include_open) {
        // A_n = {x : x_k = 0 for n <= k < d + 4}: closed but not decided by d bits.
        const std::size_t K = d + 4;
        BorelInstance open;
        open.name = "eventually_zero_open";
        open.rows = [](std::size_t depth) { return depth; };
        open.tree = [K](std::size_t n, std::size_t depth) {
            return PrunedTree::from_predicate(depth, K, [n](const std::string& s) {
                return s.find('1', n) == std::string::npos;
            });
        };
        open.x = [](std::size_t) { return 0; };
        open.member = true;
        open.required_depth = 0;
        instances.push_back(open);
    }

    CsvWriter census(ctx.path("borel_census.csv"),
                     {"instance", "depth", "deep_depth", "support", "support_deep", "verdict", "member",
                      "certified", "correct"});
    Json matrices = Json::object();
    std::size_t correct = 0, certified = 0;
    for (const auto& inst : instances) {
        const IndicatorMatrix m1 = sigma2_reduce(inst.family(d), TruncPoint::from(inst.x, d));
        const IndicatorMatrix m2 = sigma2_reduce(inst.family(d2), TruncPoint::from(inst.x, d2));
        const Census cs = pfin_census(m1, m2);
        const bool ok = (cs.verdict == CensusVerdict::CertifiedFinite) == inst.member;
        const bool cert = d >= inst.required_depth;
        if (cert) {
            ++certified;
            correct += ok;
            ctx.check(ok, inst.name + ": census verdict contradicts membership");
        }
        census << inst.name << d << d2 << cs.support_shallow << cs.support_deep << std::string(to_string(cs.verdict))
               << std::string(inst.member ? "1" : "0") << std::string(cert ? "1" : "0")
               << std::string(ok ? "1" : "0");
        census.end_row();
        matrices[inst.name] = {{"shallow", to_json(m1)}, {"deep", to_json(m2)}};
    }
    write_json(ctx.path("borel_matrices.json"), matrices);

    // Every bundled family against a few shared points.
    const std::vector<std::pair<std::string, std::function<int(std::size_t)>>> pts = {
        {"zeros", [](std::size_t) { return 0; }},
        {"first_one", [](std::size_t i) { return i == 0 ? 1 : 0; }},
        {"one_at_3", [](std::size_t i) { return i == 3 ? 1 : 0; }},
        {"alternating", [](std::size_t i) { return static_cast<int>(i % 2); }}};
    const auto base = certified_instances();
    std::vector<std::vector<PrunedTree>> fam1, fam2;
    for (const auto& inst : base) {
        fam1.push_back(inst.family(d));
        fam2.push_back(inst.family(d2));
    }
    CsvWriter pi3(ctx.path("pi3.csv"), {"point", "family", "support", "support_deep", "verdict", "matches_standalone"});
    Json inter = Json::object();
    for (const auto& [name, x] : pts) {
        const auto x1 = TruncPoint::from(x, d), x2 = TruncPoint::from(x, d2);
        const auto out1 = pi3_reduce(fam1, x1);
        const auto out2 = pi3_reduce(fam2, x2);
        bool all_finite = true;
        for (std::size_t k = 0; k < base.size(); ++k) {
            const auto solo = sigma2_reduce(fam1[k], x1);
            const bool same = solo.entries == out1[k].entries && solo.rows == out1[k].rows;
            ctx.check(same, "product reduction differs from the standalone reduction");
            const Census cs = pfin_census(out1[k], out2[k]);
            all_finite = all_finite && cs.verdict == CensusVerdict::CertifiedFinite;
            pi3 << name << base[k].name << cs.support_shallow << cs.support_deep
                << std::string(to_string(cs.verdict)) << std::string(same ? "1" : "0");
            pi3.end_row();
        }
        inter[name] = all_finite;
    }
    ctx.outcome.summary["certified_correct"] = correct;
    ctx.outcome.summary["certified_total"] = certified;
    ctx.outcome.summary["in_intersection"] = inter;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names = {"duality",  "counterexample", "selection",
                                                   "marechal", "finiteness",     "borel"};
    return names;
}

ScenarioOutcome run_scenario(const ScenarioConfig& config) {
    static const std::map<std::string, void (*)(Context&)> table = {
        {"duality", run_duality},   {"counterexample", run_counterexample},
        {"selection", run_selection}, {"marechal", run_marechal},
        {"finiteness", run_finiteness}, {"borel", run_borel}};
    auto it = table.find(config.scenario);
    if (it == table.end()) throw ConfigError("unknown scenario '" + config.scenario + "'");

    std::error_code ec;
    std::filesystem::create_directories(config.out_dir, ec);
    if (ec) throw ConfigError("cannot create output directory '" + config.out_dir + "'");
    Context ctx{config, config.out_dir, {}, {}};
    ctx.outcome.summary = Json::object();
    it->second(ctx);

    Json summary = {{"scenario", config.scenario},
                    {"seed", config.seed},
                    {"config", config.values.values()},
                    {"results", ctx.outcome.summary},
                    {"violations", ctx.violations}};
    ctx.outcome.files.push_back("summary.json");
    summary["files"] = ctx.outcome.files;
    write_json((ctx.dir / "summary.json").string(), summary);
    ctx.outcome.summary = summary;
    if (!ctx.violations.empty()) throw InvariantViolation(ctx.violations.front());
    return ctx.outcome;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e)) return 2;
    if (dynamic_cast<const DepthInsufficient*>(&e)) return 4;
    if (dynamic_cast<const Error*>(&e)) return 3;
    return 1;
}

Json error_record(const std::exception& e, const std::string& scenario) {
    const auto* err = dynamic_cast<const Error*>(&e);
    return {{"scenario", scenario},
            {"code", err ? err->code() : std::string("InternalError")},
            {"message", e.what()},
            {"exit_code", exit_code_for(e)}};
}

}  // namespace hyperselect
