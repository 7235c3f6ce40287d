#pragma once

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bounds.hpp"
#include "depth.hpp"
#include "json_io.hpp"
#include "rounding.hpp"
#include "sperner.hpp"
#include "version.hpp"

namespace secluded::cli {

// Exit codes: 0 success / claims hold; 1 a checked claim is violated (report emitted);
// 2 usage or input error.
inline constexpr int kOk = 0;
inline constexpr int kClaimViolated = 1;
inline constexpr int kUsageError = 2;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline Rational parse_rational(const std::string& s, bool allow_inexact) {
    if (auto r = Rational::try_parse(s)) return *r;
    if (allow_inexact) {
        char* end = nullptr;
        double v = std::strtod(s.c_str(), &end);
        if (end && *end == '\0' && std::isfinite(v)) return Rational::from_double_exact(v);
    }
    throw InputError("not an exact rational: '" + s +
                     "' (use p/q or a finite decimal, or pass --allow-inexact)");
}

inline Point parse_point(const std::string& csv, bool allow_inexact) {
    Point p;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) p.coords.push_back(parse_rational(item, allow_inexact));
    if (p.dim() == 0) throw InputError("empty point");
    return p;
}

inline Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InputError("bad JSON in " + path + ": " + e.what());
    }
    return j;
}

inline int emit(const Json& report, const std::string& out_path, std::ostream& out) {
    std::string text = report.dump(2);
    text += "\n";
    if (out_path.empty()) {
        out << text;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw InputError("cannot write file: " + out_path);
        f << text;
    }
    return kOk;
}

inline Json envelope(const std::string& command) {
    Json j;
    j["tool"] = kToolName;
    j["version"] = kVersion;
    j["command"] = command;
    return j;
}

inline int default_threads() {
    if (const char* env = std::getenv("SECLUDE_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

inline Json members_with_corners(const PartitionSpec& spec, const std::vector<MemberId>& ids) {
    Json arr = Json::array();
    for (const auto& id : ids) {
        Json m;
        m["id"] = to_json(id);
        m["corner"] = to_json(corner_of(spec, id));
        arr.push_back(std::move(m));
    }
    return arr;
}

}  // namespace detail

inline int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using namespace detail;

    CLI::App app{"secluded unit-cube partitions: rounding schemes, audits, and bound checks"};
    app.require_subcommand(1);
    bool allow_inexact = false;
    app.add_flag("--allow-inexact", allow_inexact,
                 "convert non-decimal floating literals exactly as dyadic rationals");

    std::string out_path;
    app.add_option("--out", out_path, "write the JSON report to this file");
    int threads = default_threads();
    app.add_option("--threads", threads, "worker threads (results are thread-count invariant)");

    // ---- round
    auto* c_round = app.add_subcommand("round", "universal rounding of a point");
    int r_d = 1;
    std::string r_eps0, r_x;
    c_round->add_option("--d", r_d, "dimension")->required();
    c_round->add_option("--eps0", r_eps0, "oracle accuracy eps0")->required();
    c_round->add_option("--x", r_x, "point, comma-separated rationals")->required();

    // ---- output-set
    auto* c_oset = app.add_subcommand("output-set", "distinct universal-rounding outputs over a ball");
    int o_d = 1;
    std::string o_eps0, o_x;
    c_oset->add_option("--d", o_d, "dimension")->required();
    c_oset->add_option("--eps0", o_eps0, "ball radius eps0")->required();
    c_oset->add_option("--x", o_x, "ball center, comma-separated rationals")->required();

    // ---- audit
    auto* c_audit = app.add_subcommand("audit", "exact or randomized seclusion audit");
    std::string a_spec, a_eps, a_ball = "closed", a_strategy = "exact", a_claim;
    std::uint64_t a_budget = 20000, a_seed = 0;
    int a_max_exact = 4;
    c_audit->add_option("--spec", a_spec, "partition spec JSON file")->required();
    c_audit->add_option("--epsilon", a_eps, "ball radius")->required();
    c_audit->add_option("--ball", a_ball, "closed|open");
    c_audit->add_option("--strategy", a_strategy, "exact|randomized");
    c_audit->add_option("--claim-k", a_claim, "claimed degree to verify");
    c_audit->add_option("--budget", a_budget, "randomized: max count evaluations");
    c_audit->add_option("--seed", a_seed, "randomized: RNG seed");
    c_audit->add_option("--max-exact-dim", a_max_exact, "largest irreducible block for exact mode");

    // ---- witness
    auto* c_wit = app.add_subcommand("witness", "lower-bound witness search (open ball)");
    std::string w_spec, w_eps, w_strategy = "exact";
    std::uint64_t w_budget = 20000, w_seed = 0;
    c_wit->add_option("--spec", w_spec, "partition spec JSON file")->required();
    c_wit->add_option("--epsilon", w_eps, "ball radius")->required();
    c_wit->add_option("--strategy", w_strategy, "exact|randomized");
    c_wit->add_option("--budget", w_budget, "randomized: max count evaluations");
    c_wit->add_option("--seed", w_seed, "randomized: RNG seed");

    // ---- construct
    auto* c_cons = app.add_subcommand("construct", "gluing construction and its claim");
    std::string f_arg;
    int cons_d = 1;
    c_cons->add_option("--f", f_arg, "block dimension f(d): a positive integer, or 'd'")->required();
    c_cons->add_option("--d", cons_d, "total dimension")->required();

    // ---- depth
    auto* c_depth = app.add_subcommand("depth", "box-family depth decomposition and pigeonhole");
    std::string d_family;
    c_depth->add_option("--family", d_family, "box family JSON file")->required();

    // ---- sperner
    auto* c_sp = app.add_subcommand("sperner", "grid-coloring face validation and rich point");
    std::string s_coloring, s_eps;
    bool s_validate_only = false;
    c_sp->add_option("--coloring", s_coloring, "coloring JSON file")->required();
    c_sp->add_option("--epsilon", s_eps, "ball radius in (0, 1/2]");
    c_sp->add_flag("--validate-only", s_validate_only, "only run the opposite-face validation");

    // ---- bounds
    auto* c_bounds = app.add_subcommand("bounds", "closed-form bound calculators");
    auto* c_table = c_bounds->add_subcommand("table", "lower-bound table rows");
    std::string t_drange = "1..10", t_eps = "1/4", t_norms = "linf,l1,l2", t_fmt = "csv", t_M = "1";
    c_table->add_option("--d", t_drange, "dimension range lo..hi");
    c_table->add_option("--eps", t_eps, "tolerance");
    c_table->add_option("--M", t_M, "measure bound");
    c_table->add_option("--norms", t_norms, "comma list of linf,l1,l2");
    c_table->add_option("--format", t_fmt, "csv|json");
    c_bounds->require_subcommand(1);

    // ---- nfl-demo
    auto* c_nfl = app.add_subcommand("nfl-demo", "adversarial transversal and collapse demo");
    int n_d = 2;
    std::string n_eps0 = "1", n_delta = "1/2", n_scale = "1";
    std::uint64_t n_trials = 10000, n_seed = 7;
    c_nfl->add_option("--d", n_d, "dimension");
    c_nfl->add_option("--eps0", n_eps0, "oracle accuracy eps0");
    c_nfl->add_option("--delta", n_delta, "failure probability in (0, 1/2]");
    c_nfl->add_option("--trials", n_trials, "collapse trials");
    c_nfl->add_option("--seed", n_seed, "RNG seed");
    c_nfl->add_option("--scale", n_scale, "scheme scale (member side; diameter 2*eps)");

    std::vector<std::string> argv_copy = args;
    std::vector<char*> argv;
    argv.push_back(const_cast<char*>(kToolName));
    for (auto& a : argv_copy) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        std::stringstream msg;
        int code = app.exit(e, msg, msg);
        err << msg.str();
        return code == 0 ? kOk : kUsageError;
    }

    try {
        if (*c_round) {
            Rational eps0 = parse_rational(r_eps0, allow_inexact);
            Point x = parse_point(r_x, allow_inexact);
            if (x.dim() != r_d) throw InputError("--x has wrong dimension");
            Json rep = envelope("round");
            rep["params"] = {{"d", r_d}, {"eps0", eps0.str()}, {"x", to_json(x)}};
            RoundingScheme s = universal_scheme(r_d, eps0);
            rep["params"]["scheme"] = {{"spec", to_json(s.spec)},
                                       {"scale", s.scale.str()},
                                       {"representative", "center"}};
            rep["result"] = {{"output", to_json(round_point(s, x))}};
            return emit(rep, out_path, out);
        }

        if (*c_oset) {
            Rational eps0 = parse_rational(o_eps0, allow_inexact);
            Point x = parse_point(o_x, allow_inexact);
            if (x.dim() != o_d) throw InputError("--x has wrong dimension");
            OutputSetReport r = output_set(o_d, eps0, x);
            Json rep = envelope("output-set");
            rep["params"] = {{"d", o_d}, {"eps0", eps0.str()}, {"x", to_json(x)}};
            Json outs = Json::array();
            for (const auto& p : r.outputs) outs.push_back(to_json(p));
            bool holds = r.k_observed <= static_cast<size_t>(o_d) + 1;
            rep["result"] = {{"outputs", outs},
                            {"k_observed", r.k_observed},
                            {"k_max", o_d + 1},
                            {"holds", holds}};
            int rc = emit(rep, out_path, out);
            return holds ? rc : kClaimViolated;
        }

        if (*c_audit) {
            PartitionSpec spec = spec_from_json(load_json(a_spec));
            Rational eps = parse_rational(a_eps, allow_inexact);
            AuditOptions opts;
            if (a_ball == "closed")
                opts.kind = BallKind::closed;
            else if (a_ball == "open")
                opts.kind = BallKind::open;
            else
                throw InputError("--ball must be closed|open");
            if (a_strategy == "exact")
                opts.strategy = AuditStrategy::exact;
            else if (a_strategy == "randomized")
                opts.strategy = AuditStrategy::randomized;
            else
                throw InputError("--strategy must be exact|randomized");
            opts.budget = a_budget;
            opts.seed = a_seed;
            opts.threads = threads;
            opts.max_exact_block_dim = a_max_exact;

            AuditResult r = audit_seclusion(spec, eps, opts);
            Json rep = envelope("audit");
            rep["params"] = {{"spec", to_json(spec)},   {"epsilon", eps.str()},
                             {"ball", a_ball},          {"strategy", a_strategy},
                             {"budget", a_budget},      {"seed", a_seed},
                             {"threads", threads}};
            NeighborhoodReport nbhd = enumerate_neighborhood(spec, r.witness, eps, opts.kind);
            rep["result"] = {{"max_count", r.max_count.str()},
                             {"witness", to_json(r.witness)},
                             {"count_at_witness", nbhd.count},
                             {"candidates_examined", r.candidates_examined},
                             {"exhaustive", r.exhaustive},
                             {"members", members_with_corners(spec, nbhd.members)}};
            bool holds = true;
            if (!a_claim.empty()) {
                Integer claim = Integer::from_string(a_claim);
                holds = r.max_count <= claim;
                rep["result"]["claim"] = {{"k", claim.str()}, {"holds", holds}};
            }
            int rc = emit(rep, out_path, out);
            return holds ? rc : kClaimViolated;
        }

        if (*c_wit) {
            PartitionSpec spec = spec_from_json(load_json(w_spec));
            Rational eps = parse_rational(w_eps, allow_inexact);
            AuditOptions opts;
            opts.strategy = (w_strategy == "randomized") ? AuditStrategy::randomized
                                                         : AuditStrategy::exact;
            opts.budget = w_budget;
            opts.seed = w_seed;
            opts.threads = threads;
            WitnessResult r = lower_bound_witness(spec, eps, opts);
            Json rep = envelope("witness");
            rep["params"] = {{"spec", to_json(spec)},
                             {"epsilon", eps.str()},
                             {"strategy", w_strategy},
                             {"budget", w_budget},
                             {"seed", w_seed}};
            rep["result"] = {{"witness", to_json(r.witness)},
                             {"count", r.count},
                             {"bound", r.bound.str()},
                             {"theorem_ok", r.theorem_ok},
                             {"exhaustive", r.exhaustive}};
            int rc = emit(rep, out_path, out);
            if (r.exhaustive && !r.theorem_ok) {
                err << "THEOREM VIOLATION: witness count " << r.count << " < bound "
                    << r.bound.str() << "\n";
                return kClaimViolated;
            }
            return rc;
        }

        if (*c_cons) {
            long fd;
            if (f_arg == "d") {
                fd = cons_d;
            } else {
                fd = std::atol(f_arg.c_str());
                if (fd < 1) throw InputError("--f must be a positive integer or 'd'");
            }
            auto [spec, claim] = build_profile([fd](int) { return fd; }, cons_d);
            Json rep = envelope("construct");
            rep["params"] = {{"f", f_arg}, {"d", cons_d}};
            rep["result"] = {{"spec", to_json(spec)},
                             {"claim", {{"k", claim.k.str()}, {"epsilon", claim.epsilon.str()}}}};
            return emit(rep, out_path, out);
        }

        if (*c_depth) {
            Json fam_json = load_json(d_family);
            BoxFamily fam;
            fam.container = box_from_json(fam_json.at("container"));
            for (const auto& m : fam_json.at("members")) fam.members.push_back(box_from_json(m));
            auto cells = depth_decomposition(fam);
            auto identity = multiplicity_identity_check(fam);
            auto witness = pigeonhole_witness(fam);
            size_t max_depth = 0;
            for (const auto& c : cells) max_depth = std::max(max_depth, c.depth);
            Json rep = envelope("depth");
            rep["params"] = {{"family", fam_json}};
            Json cj = Json::array();
            for (const auto& c : cells)
                cj.push_back({{"cell", to_json(c.cell)}, {"depth", c.depth}});
            bool guarantee_ok =
                Integer(static_cast<long>(witness.depth)) >= witness.guarantee;
            rep["result"] = {{"cells", cj},
                             {"max_depth", max_depth},
                             {"witness", to_json(witness.point)},
                             {"witness_depth", witness.depth},
                             {"sum_volumes", identity.sum_of_volumes.str()},
                             {"integral", identity.depth_integral.str()},
                             {"identity_ok", identity.equal},
                             {"guarantee", witness.guarantee.str()},
                             {"guarantee_ok", guarantee_ok}};
            int rc = emit(rep, out_path, out);
            return (identity.equal && guarantee_ok) ? rc : kClaimViolated;
        }

        if (*c_sp) {
            GridColoring col = coloring_from_json(load_json(s_coloring));
            FaceValidation v = validate_no_opposite_faces(col);
            Json rep = envelope("sperner");
            rep["params"] = {{"coloring", to_json(col)}};
            Json vio = Json::array();
            for (const auto& x : v.violations) vio.push_back({{"color", x.color}, {"axis", x.axis}});
            rep["result"] = {{"valid", v.valid}, {"violations", vio}};
            if (!v.valid) {
                int rc = emit(rep, out_path, out);
                (void)rc;
                err << "invalid coloring: color " << v.violations.front().color
                    << " touches opposite faces on axis " << v.violations.front().axis << "\n";
                return kClaimViolated;
            }
            if (!s_validate_only && !s_eps.empty()) {
                Rational eps = parse_rational(s_eps, allow_inexact);
                RichPointReport r = find_rich_point(col, eps);
                Json colors = Json::array();
                for (int cid : r.colors_found) colors.push_back(cid);
                rep["result"]["rich_point"] = {{"point", to_json(r.point)},
                                               {"epsilon", eps.str()},
                                               {"count", r.count},
                                               {"bound", r.bound.str()},
                                               {"colors", colors},
                                               {"theorem_ok", r.theorem_ok}};
                int rc = emit(rep, out_path, out);
                if (!r.theorem_ok) {
                    err << "THEOREM VIOLATION: rich point count " << r.count << " < bound "
                        << r.bound.str() << "\n";
                    return kClaimViolated;
                }
                return rc;
            }
            return emit(rep, out_path, out);
        }

        if (*c_table) {
            auto dots = t_drange.find("..");
            int dlo, dhi;
            if (dots == std::string::npos) {
                dlo = dhi = std::atoi(t_drange.c_str());
            } else {
                dlo = std::atoi(t_drange.substr(0, dots).c_str());
                dhi = std::atoi(t_drange.substr(dots + 2).c_str());
            }
            if (dlo < 1 || dhi < dlo) throw InputError("--d must be a range lo..hi with lo >= 1");
            Rational eps = parse_rational(t_eps, allow_inexact);
            Rational M = parse_rational(t_M, allow_inexact);
            std::vector<NormKind> norms;
            std::stringstream ss(t_norms);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                auto n = norm_from_name(tok);
                if (!n) throw InputError("unknown norm: " + tok);
                norms.push_back(*n);
            }
            auto rows = bounds_table(dlo, dhi, eps, M, norms);
            if (t_fmt == "csv") {
                std::stringstream csv;
                csv << "d,norm,k,expression_30_digits,stirling_approx\n";
                for (const auto& r : rows)
                    csv << r.d << "," << norm_name(r.norm) << "," << r.k.str() << ","
                        << r.expression30 << "," << r.stirling_approx << "\n";
                if (out_path.empty()) {
                    out << csv.str();
                } else {
                    std::ofstream f(out_path, std::ios::binary);
                    if (!f) throw InputError("cannot write file: " + out_path);
                    f << csv.str();
                }
                return kOk;
            }
            if (t_fmt != "json") throw InputError("--format must be csv|json");
            Json rep = envelope("bounds-table");
            rep["params"] = {{"d", t_drange}, {"eps", eps.str()}, {"M", M.str()}, {"norms", t_norms}};
            Json rj = Json::array();
            for (const auto& r : rows)
                rj.push_back({{"d", r.d},
                              {"norm", norm_name(r.norm)},
                              {"k", r.k.str()},
                              {"expression_30_digits", r.expression30},
                              {"stirling_approx", r.stirling_approx}});
            rep["result"] = {{"rows", rj}};
            return emit(rep, out_path, out);
        }

        if (*c_nfl) {
            Rational eps0 = parse_rational(n_eps0, allow_inexact);
            Rational delta = parse_rational(n_delta, allow_inexact);
            Rational scale = parse_rational(n_scale, allow_inexact);
            if (delta.sgn() <= 0 || delta > Rational(1, 2))
                throw InputError("--delta must be in (0, 1/2]");
            RoundingScheme scheme{PartitionSpec::layered(n_d), scale, Representative::center};
            TransversalReport tr = adversarial_transversal(scheme, eps0);

            auto oracle = [&](SplitMix& rng) {
                return tr.points[rng.next_below(tr.points.size())];
            };
            CollapseStats st = replicate_collapse(scheme, oracle, n_trials, n_seed);

            // Smallest k capturing (1-delta) of the trial mass, with binomial 3-sigma slack.
            std::vector<size_t> freqs;
            for (const auto& [pt, cnt] : st.histogram) freqs.push_back(cnt);
            std::sort(freqs.rbegin(), freqs.rend());
            double q = 1.0 - delta.to_double();
            double slack = 3.0 * std::sqrt(static_cast<double>(n_trials) * q * (1.0 - q));
            double threshold = q * static_cast<double>(n_trials) - slack;
            size_t observed_k = 0;
            double acc = 0;
            for (size_t f : freqs) {
                if (acc >= threshold) break;
                acc += static_cast<double>(f);
                ++observed_k;
            }
            Integer k_lower =
                ((Rational(1) - delta) * Rational(static_cast<long>(tr.points.size()))).ceil();
            bool collapse_ok = Integer(static_cast<long>(observed_k)) >= k_lower;

            BoundValue nfl = nfl_lower(eps0, n_d, Integer(n_d + 1));
            // The returned bound must dominate both closed forms.
            bool nfl_consistent = nfl.value >= eps0.to_double() * 0.999999;

            Json rep = envelope("nfl-demo");
            rep["params"] = {{"d", n_d},           {"eps0", eps0.str()},
                             {"delta", delta.str()}, {"trials", n_trials},
                             {"seed", n_seed},     {"scale", scale.str()}};
            Json pts = Json::array();
            for (const auto& p : tr.points) pts.push_back(to_json(p));
            rep["result"] = {
                {"transversal_size", tr.points.size()},
                {"transversal_bound", tr.bound.str()},
                {"transversal_center", to_json(tr.center)},
                {"transversal_points", pts},
                {"k_lower_bound", k_lower.str()},
                {"observed_collapse",
                 {{"distinct", st.distinct}, {"observed_k", observed_k}}},
                {"nfl_lower", {{"value", nfl.value}, {"decimal", nfl.decimal}}},
                {"checks",
                 {{"transversal_bound_met", tr.bound_met},
                  {"collapse_ok", collapse_ok},
                  {"nfl_consistent", nfl_consistent}}}};
            int rc = emit(rep, out_path, out);
            return (tr.bound_met && collapse_ok && nfl_consistent) ? rc : kClaimViolated;
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kUsageError;
    }
    return kUsageError;
}

inline int execute(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return execute(args, out, err);
}

}  // namespace secluded::cli
