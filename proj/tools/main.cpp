// localinv command-line driver: enumerate, eval, verify, hilbert, bounds, plan.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "localinv/contraction.hpp"
#include "localinv/errors.hpp"
#include "localinv/invariant_span.hpp"
#include "localinv/json_io.hpp"
#include "localinv/series.hpp"
#include "localinv/simd.hpp"

using namespace localinv;

namespace {

enum Exit { kOk = 0, kFalse = 1, kUsage = 2 };

struct Common {
    std::string dims = "2";
    std::optional<int> m;
    std::string alpha;
    std::uint64_t seed = kDefaultSeed;
    bool text = false;
};

void add_format(CLI::App* cmd, Common& c) {
    auto* json = cmd->add_flag("--json", "JSON output (default)");
    cmd->add_flag("--text", c.text, "Human-readable output")->excludes(json);
}

DimensionVector parse_dims(const std::string& s) {
    try {
        return DimensionVector(parse_int_list(s));
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("--dims: ") + e.what());
    }
}

MultiDegree parse_alpha(const Common& c) {
    MultiDegree alpha;
    try {
        alpha.degrees = parse_int_list(c.alpha);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("--alpha: ") + e.what());
    }
    for (int a : alpha.degrees) {
        if (a < 0) throw std::invalid_argument("--alpha: entries must be non-negative");
    }
    if (c.m && *c.m != static_cast<int>(alpha.degrees.size())) {
        throw std::invalid_argument("--alpha has " + std::to_string(alpha.degrees.size()) +
                                    " entries but --m is " + std::to_string(*c.m));
    }
    return alpha;
}

int m_or(const Common& c, int fallback) {
    const int m = c.m.value_or(fallback);
    if (m < 1) throw std::invalid_argument("--m must be at least 1");
    return m;
}

Json header(const char* command, const Common& c) {
    return Json{{"schema_version", kSchemaVersion}, {"command", command}, {"seed", c.seed}};
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

// ---- enumerate ----

int run_enumerate(const Common& c, bool connected, bool girth, bool small_dim) {
    const auto d = parse_dims(c.dims);
    const auto alpha = parse_alpha(c);
    if (alpha.degrees.empty()) throw std::invalid_argument("--alpha is required");
    EnumerateOptions base;
    const auto all = enumerate_generators(alpha, d, base);
    EnumerateOptions opts;
    opts.connected_only = connected;
    opts.apply_girth = girth || small_dim;
    opts.small_dim = small_dim;
    auto listed = enumerate_generators(alpha, d, opts);
    std::size_t connected_count = 0;
    std::size_t girth_count = 0;
    for (const auto& t : all) {
        if (t.degree() > 0 && is_position_connected(t)) ++connected_count;
        if (girth_filter(t, d, small_dim)) ++girth_count;
    }
    const bool unit_only = alpha.total() == 0;
    if (unit_only) listed.clear();

    if (c.text) {
        for (const auto& t : listed) std::cout << t.to_text() << '\n';
        if (unit_only) std::cout << "# degree 0: only the unit monomial 1\n";
        std::cout << "# " << listed.size() << " monomials (all " << all.size() << ", connected " << connected_count
                  << ", girth " << girth_count << ")\n";
        return kOk;
    }
    auto out = header("enumerate", c);
    out["alpha"] = alpha.degrees;
    out["dims"] = d.dims();
    out["m"] = alpha.degrees.size();
    out["filters"] = Json{{"connected", connected}, {"girth", opts.apply_girth}, {"small_dim", small_dim}};
    out["counts"] = Json{{"all", all.size()}, {"connected", connected_count}, {"girth", girth_count},
                         {"listed", listed.size()}};
    Json list = Json::array();
    for (const auto& t : listed) {
        auto j = to_json(t);
        j["text"] = t.to_text();
        list.push_back(std::move(j));
    }
    out["monomials"] = list;
    if (unit_only) out["note"] = "degree 0: only the unit monomial 1";
    emit(out);
    return kOk;
}

// ---- eval ----

int run_eval(const Common& c, const std::string& monomial_arg, const std::string& endos_path, bool random,
             bool identity, bool use_plan, bool use_float) {
    const auto t = monomial_from_json(read_json_arg(monomial_arg), monomial_arg.front() == '{' ? "monomial" : monomial_arg);
    EndoInput input;
    int m = 0;
    if (!endos_path.empty()) {
        input = endo_input_from_json(read_json_arg(endos_path), endos_path.front() == '[' ? "endomorphisms" : endos_path);
        m = static_cast<int>(input.tuple.size());
    } else if (random || identity) {
        const auto d = parse_dims(c.dims);
        int needed = 1;
        for (int label : t.M.entries) needed = std::max(needed, label);
        m = m_or(c, needed);
        input.tuple = random ? random_endotuple(d, m, c.seed) : identity_endotuple(d, m);
    } else {
        throw std::invalid_argument("eval needs --endos FILE, --random or --identity");
    }
    const std::string source = endos_path.empty() ? std::string("generated inputs") : endos_path;
    if (input.tuple.dims.factors() != t.factors()) {
        throw std::invalid_argument(source + ": dims has " + std::to_string(input.tuple.dims.factors()) +
                                    " factors but the monomial has " + std::to_string(t.factors()) +
                                    " permutations");
    }
    for (int label : t.M.entries) {
        if (static_cast<std::size_t>(label) > input.tuple.size()) {
            throw std::invalid_argument(source + ": monomial uses label " + std::to_string(label) + " but only " +
                                        std::to_string(input.tuple.size()) + " endomorphisms are given");
        }
    }
    Scalar value;
    std::optional<double> approx;
    if (use_plan) {
        const auto plan = plan_contraction(t, input.tuple.dims);
        value = evaluate_with_plan(t, input.tuple, plan);
        if (use_float) approx = evaluate_with_plan_f64(t, input.tuple, plan);
    } else {
        value = evaluate(t, input.tuple);
    }
    std::optional<Scalar> simple_value;
    if (input.all_simple) simple_value = evaluate_simple(t, input.simple);

    if (c.text) {
        std::cout << to_string(value) << '\n';
        return kOk;
    }
    auto out = header("eval", c);
    out["monomial"] = t.to_text();
    out["dims"] = input.tuple.dims.dims();
    out["m"] = m;
    out["method"] = use_plan ? "plan" : "naive";
    out["value"] = to_string(value);
    if (simple_value) {
        out["simple_value"] = to_string(*simple_value);
        out["simple_agrees"] = *simple_value == value;
    }
    if (approx) {
        out["float_value"] = *approx;
        out["simd"] = std::string(simd::isa_name(simd::active_isa()));
    }
    emit(out);
    return kOk;
}

// ---- verify ----

int run_verify(const Common& c, bool centralizer, bool invariance, int samples) {
    const auto d = parse_dims(c.dims);
    const bool generation = !c.alpha.empty();
    if (!generation && !centralizer) throw std::invalid_argument("verify needs --alpha and/or --centralizer");
    auto out = header("verify", c);
    out["dims"] = d.dims();
    Json checks = Json::array();
    bool all = true;
    std::string text;
    if (centralizer) {
        const int m = m_or(c, 2);
        const auto rho = span_dimension_rho(d, m);
        const auto mu = commutant_dimension_mu(d, m);
        std::size_t product = 1;
        for (int di : d.dims()) product *= span_dimension_rho(DimensionVector({di}), m);
        const bool ok = rho == mu && rho == product;
        all = all && ok;
        checks.push_back(Json{{"kind", "centralizer"}, {"d", d.dims()}, {"m", m}, {"span_rho", rho},
                              {"commutant_mu", mu}, {"product_of_factors", product}, {"match", ok}});
        text += "centralizer m=" + std::to_string(m) + ": span_rho=" + std::to_string(rho) +
                " commutant_mu=" + std::to_string(mu) + " product=" + std::to_string(product) +
                (ok ? " ok\n" : " MISMATCH\n");
    }
    if (generation) {
        const auto alpha = parse_alpha(c);
        const int m = static_cast<int>(alpha.degrees.size());
        const auto report = verify_generation(alpha, d, m, c.seed);
        all = all && report.match;
        Json j{{"kind", "generation"}};
        j.update(to_json(report));
        checks.push_back(j);
        text += "generation alpha=" + c.alpha + ": oracle=" + std::to_string(report.oracle_dim) +
                " span=" + std::to_string(report.span_dim) + (report.match ? " ok\n" : " MISMATCH\n");
        if (invariance) {
            const auto monomials = enumerate_generators(alpha, d);
            std::size_t failures = 0;
            for (int s = 0; s < samples; ++s) {
                const auto e = random_endotuple(d, m, derive_seed(c.seed, 2 * static_cast<std::uint64_t>(s)));
                const auto g = random_group_element(d, derive_seed(c.seed, 2 * static_cast<std::uint64_t>(s) + 1));
                const auto moved = local_conjugate(e, g);
                for (const auto& t : monomials) {
                    if (evaluate(t, e) != evaluate(t, moved)) ++failures;
                }
            }
            all = all && failures == 0;
            checks.push_back(Json{{"kind", "invariance"}, {"monomials", monomials.size()}, {"samples", samples},
                                  {"failures", failures}, {"match", failures == 0}});
            text += "invariance: " + std::to_string(monomials.size()) + " monomials x " + std::to_string(samples) +
                    " samples, " + std::to_string(failures) + " failures\n";
        }
    }
    if (c.text) {
        std::cout << text;
    } else {
        out["checks"] = checks;
        out["all_match"] = all;
        emit(out);
    }
    return all ? kOk : kFalse;
}

// ---- hilbert ----

int run_hilbert(const Common& c, std::optional<std::size_t> N, bool auto_N, std::size_t max_N) {
    const auto d = parse_dims(c.dims);
    const int m = m_or(c, 1);
    const std::size_t start = N.value_or(default_truncation(d));
    GrownReconstruction grown;
    if (auto_N) {
        grown = reconstruct_hs_local(m, d, start, max_N);
    } else {
        grown.series = hs_local(m, d, start);
        grown.reconstruction = reconstruct_rational(grown.series);
    }
    const auto bounds = degree_bounds(m, d);
    const std::size_t pole_bound = d.total() * d.total();
    std::optional<PoleCheck> poles;
    if (grown.reconstruction.conclusive) poles = check_pole_orders(grown.reconstruction.function, pole_bound);
    const bool ok = !poles || poles->ok;

    if (c.text) {
        std::cout << "N = " << grown.series.order() << "\ncoefficients:";
        for (std::size_t j = 0; j < grown.series.coeffs.size() && j < 16; ++j) {
            std::cout << ' ' << to_string(grown.series.coeffs[j]);
        }
        std::cout << (grown.series.coeffs.size() > 16 ? " ...\n" : "\n");
        if (grown.reconstruction.conclusive) {
            std::cout << "rational: (" << poly_to_string(grown.reconstruction.function.num) << ") / ("
                      << poly_to_string(grown.reconstruction.function.den) << ")\n";
            std::cout << "poles: " << (poles->ok ? "roots of unity of order <= " : "NOT all of order <= ")
                      << pole_bound << '\n';
        } else {
            std::cout << "rational: inconclusive (" << grown.reconstruction.reason << ")\n";
        }
        std::cout << "bounds: segre " << bounds.segre;
        if (bounds.final_m1) std::cout << ", final " << *bounds.final_m1;
        if (bounds.small_dim) std::cout << ", small_dim " << *bounds.small_dim;
        std::cout << '\n';
        return ok ? kOk : kFalse;
    }
    auto out = header("hilbert", c);
    out["dims"] = d.dims();
    out["m"] = m;
    out["N"] = grown.series.order();
    out["series"] = to_json(grown.series);
    out["reconstruction"] = to_json(grown.reconstruction);
    if (poles) {
        auto p = to_json(*poles);
        p["bound"] = pole_bound;
        out["pole_check"] = p;
    } else {
        out["pole_check"] = nullptr;
    }
    out["bounds"] = to_json(bounds);
    emit(out);
    return ok ? kOk : kFalse;
}

// ---- bounds ----

int run_bounds(const Common& c, bool empirical, std::size_t max_degree) {
    const auto d = parse_dims(c.dims);
    const int m = m_or(c, 1);
    const auto bounds = degree_bounds(m, d);
    std::optional<EmpiricalBound> observed;
    bool ok = true;
    if (empirical) {
        if (m != 1) throw std::invalid_argument("--empirical requires --m 1");
        observed = verify_bound_empirically(d, max_degree, c.seed);
        if (observed->largest_new_degree) {
            const auto limit = bounds.small_dim.value_or(*bounds.final_m1);
            ok = *observed->largest_new_degree <= limit;
        }
    }
    if (c.text) {
        std::cout << "segre " << bounds.segre << '\n';
        if (bounds.final_m1) std::cout << "final " << *bounds.final_m1 << '\n';
        if (bounds.small_dim) std::cout << "small_dim " << *bounds.small_dim << '\n';
        std::cout << "girth";
        for (auto g : bounds.girth) std::cout << ' ' << g;
        std::cout << '\n';
        if (bounds.girth_small_dim) {
            std::cout << "girth_small_dim";
            for (auto g : *bounds.girth_small_dim) std::cout << ' ' << g;
            std::cout << '\n';
        }
        if (observed) {
            for (const auto& s : observed->steps) {
                std::cout << "degree " << s.degree << ": span " << s.span_rank << ", products " << s.product_rank
                          << (s.new_generators ? ", new generators\n" : "\n");
            }
        }
        return ok ? kOk : kFalse;
    }
    auto out = header("bounds", c);
    out["dims"] = d.dims();
    out["m"] = m;
    out["bounds"] = to_json(bounds);
    if (observed) out["empirical"] = to_json(*observed);
    emit(out);
    return ok ? kOk : kFalse;
}

// ---- plan ----

int run_plan(const Common& c, const std::string& monomial_arg, bool optimal) {
    const auto t = monomial_from_json(read_json_arg(monomial_arg), monomial_arg.front() == '{' ? "monomial" : monomial_arg);
    const auto d = parse_dims(c.dims);
    const auto plan = plan_contraction(t, d);
    const auto naive = naive_cost(t, d);
    std::optional<ContractionPlan> best;
    if (optimal) best = optimal_plan(t, d);
    if (c.text) {
        std::cout << t.to_text() << '\n';
        for (const auto& s : plan.steps) {
            std::cout << "  t" << s.result << " = t" << s.left;
            if (s.right != ContractionStep::kNone) std::cout << " * t" << s.right;
            std::cout << "  cost " << s.cost << ", size " << s.result_size << '\n';
        }
        std::cout << "total " << plan.total_cost << ", peak " << plan.peak_size << ", naive " << naive;
        if (best) std::cout << ", optimal " << best->total_cost;
        std::cout << '\n';
        return kOk;
    }
    auto out = header("plan", c);
    out["monomial"] = t.to_text();
    out["plan"] = to_json(plan);
    out["naive_cost"] = naive;
    if (best) out["optimal"] = to_json(*best);
    emit(out);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trace-monomial invariants under local conjugation"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("localinv ") + kSchemaVersion);

    Common c;
    auto common = [&](CLI::App* cmd, bool with_alpha) {
        cmd->add_option("--dims", c.dims, "Local dimensions, e.g. 2,2")->capture_default_str();
        cmd->add_option("--m", c.m, "Number of endomorphisms");
        if (with_alpha) cmd->add_option("--alpha", c.alpha, "Multidegree, e.g. 1,1");
        cmd->add_option("--seed", c.seed, "Random seed")->capture_default_str();
        add_format(cmd, c);
    };

    auto* enumerate = app.add_subcommand("enumerate", "List canonical Tr^M_sigma of a multidegree");
    common(enumerate, true);
    bool connected = false;
    bool girth = false;
    bool small_dim = false;
    enumerate->add_flag("--connected", connected, "Only position-connected monomials");
    enumerate->add_flag("--girth", girth, "Drop monomials above the girth bound d_i^2");
    enumerate->add_flag("--small-dim", small_dim, "Use the bound C(d_i+1,2) (all d_i <= 3)");

    auto* eval = app.add_subcommand("eval", "Evaluate one monomial exactly");
    common(eval, false);
    std::string monomial_arg;
    std::string endos_path;
    bool random = false;
    bool identity = false;
    bool use_plan = false;
    bool use_float = false;
    eval->add_option("--monomial", monomial_arg, "Monomial JSON (file or inline)")->required();
    auto* endos_opt = eval->add_option("--endos", endos_path, "Endomorphism tuple JSON file");
    auto* random_opt = eval->add_flag("--random", random, "Seeded random inputs (uses --dims, --m, --seed)");
    auto* identity_opt = eval->add_flag("--identity", identity, "Identity inputs");
    endos_opt->excludes(random_opt)->excludes(identity_opt);
    random_opt->excludes(identity_opt);
    eval->add_flag("--plan", use_plan, "Use the planned contraction");
    eval->add_flag("--float", use_float, "Also report the double-precision planned value (with --plan)");

    auto* verify = app.add_subcommand("verify", "Check invariant-theoretic identities");
    common(verify, true);
    bool centralizer = false;
    bool invariance = false;
    int samples = 5;
    verify->add_flag("--centralizer", centralizer, "Compare span of rho with the commutant of mu");
    verify->add_flag("--invariance", invariance, "Also test local-conjugation invariance of each monomial");
    verify->add_option("--samples", samples, "Random samples for --invariance")->capture_default_str()->check(
        CLI::PositiveNumber);

    auto* hilbert = app.add_subcommand("hilbert", "Hilbert series, rational form, pole orders, bounds");
    common(hilbert, false);
    std::optional<std::size_t> N;
    bool auto_N = false;
    std::size_t max_N = 8192;
    hilbert->add_option("--N", N, "Truncation order (default 4 dimV^2 + 8)");
    hilbert->add_flag("--auto-N", auto_N, "Double N until the rational form is determined");
    hilbert->add_option("--max-N", max_N, "Upper limit for --auto-N")->capture_default_str();

    auto* bounds = app.add_subcommand("bounds", "Degree and girth bounds");
    common(bounds, false);
    bool empirical = false;
    std::size_t max_degree = 4;
    bounds->add_flag("--empirical", empirical, "Measure where new generators appear (m = 1)");
    bounds->add_option("--max-degree", max_degree, "Largest degree for --empirical")->capture_default_str();

    auto* plan = app.add_subcommand("plan", "Contraction plan for one monomial");
    common(plan, false);
    bool optimal = false;
    plan->add_option("--monomial", monomial_arg, "Monomial JSON (file or inline)")->required();
    plan->add_flag("--optimal", optimal, "Also run the exhaustive planner (|M| <= 8)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*enumerate) return run_enumerate(c, connected, girth, small_dim);
        if (*eval) return run_eval(c, monomial_arg, endos_path, random, identity, use_plan, use_float);
        if (*verify) return run_verify(c, centralizer, invariance, samples);
        if (*hilbert) return run_hilbert(c, N, auto_N, max_N);
        if (*bounds) return run_bounds(c, empirical, max_degree);
        if (*plan) return run_plan(c, monomial_arg, optimal);
    } catch (const GuardError& e) {
        std::cerr << "localinv: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "localinv: " << e.what() << '\n';
        return kUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "localinv: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "localinv: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
