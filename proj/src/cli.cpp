#include <chrono>
#include <ostream>

#include <CLI11.hpp>

#include "quadmod/cli.hpp"
#include "quadmod/covers.hpp"
#include "quadmod/errors.hpp"
#include "quadmod/gleason.hpp"
#include "quadmod/irred.hpp"
#include "quadmod/pern.hpp"

namespace quadmod::cli {

namespace {

using Clock = std::chrono::steady_clock;

struct Run {
    json inputs = json::object();
    json outputs = json::object();
    json timings = json::object();
    json cache = json::object();
    u64 seed = 1;
    int code = kOk;

    template <class F>
    auto timed(const std::string& phase, F&& f) {
        const auto t0 = Clock::now();
        auto r = f();
        timings[phase] = seconds_string(std::chrono::duration<double>(Clock::now() - t0).count());
        return r;
    }
};

std::string str(long v) { return std::to_string(v); }

json str_array(const std::vector<int>& v) {
    json a = json::array();
    for (int x : v) a.push_back(str(x));
    return a;
}

void require_range(int n, int lo, int hi, const std::string& what) {
    if (n < lo) throw InvalidPeriod(what + ": n must be at least " + std::to_string(lo));
    if (hi > 0 && n > hi)
        throw ResourceLimit(what + ": n = " + std::to_string(n) + " exceeds the budget " + std::to_string(hi));
}

void cmd_gleason(Run& run, Cache& cache, int n) {
    require_range(n, 1, kDefaultMaxPeriod, "gleason");
    Cache::Status st;
    const IntPoly g = run.timed("compute", [&] { return cached_gleason(n, cache, &st); });
    run.cache["status"] = to_string(st);
    run.outputs = {{"n", str(n)}, {"degree", str(g.degree())}, {"coefficients", coefficients_json(g)}};
}

void cmd_orbit(Run& run, int n) {
    require_range(n, 1, kDefaultMaxPeriod, "orbit");
    const IntPoly f = run.timed("compute", [&] { return crit_orbit(n); });
    run.outputs = {{"n", str(n)}, {"degree", str(f.degree())}, {"coefficients", coefficients_json(f)}};
}

void cmd_irred(Run& run, Cache& cache, int n, int max_primes) {
    require_range(n, 1, kDefaultMaxPeriod, "irred");
    Cache::Status st;
    const IntPoly g = run.timed("gleason", [&] { return cached_gleason(n, cache, &st); });
    run.cache["status"] = to_string(st);
    const auto cert = run.timed("sieve", [&] { return sieve(g, {max_primes, 60, run.seed}); });
    json patterns = json::array();
    for (const auto& p : cert.patterns) patterns.push_back({{"p", std::to_string(p.p)}, {"degrees", str_array(p.degrees)}});
    json witness = nullptr;
    if (cert.witness)
        witness = {{"factor", coefficients_json(cert.witness->factor)},
                   {"cofactor", coefficients_json(cert.witness->cofactor)}};
    run.outputs = {{"n", str(n)},
                   {"degree", str(cert.degree)},
                   {"verdict", to_string(cert.verdict)},
                   {"seed", std::to_string(cert.seed)},
                   {"primes_tried", str(cert.primes_tried)},
                   {"bad_primes", str(cert.bad_primes)},
                   {"good_primes", str(static_cast<long>(cert.patterns.size()))},
                   {"possible_sums", str_array(cert.possible_sums)},
                   {"patterns", patterns},
                   {"witness", witness}};
    if (cert.verdict == Verdict::ReducibleWitness) run.code = kVerificationFailure;
}

pern::CurveModel model(Run& run, Cache& cache, int n) {
    require_range(n, 1, pern::kDefaultMaxModel, "plane model");
    Cache::Status st;
    auto m = run.timed("model", [&] { return cached_plane_model(n, run.seed, cache, &st); });
    run.cache["status"] = to_string(st);
    return m;
}

void cmd_pern(Run& run, Cache& cache, int n) {
    const auto m = model(run, cache, n);
    run.outputs = curve_model_json(m);
    if (!m.certificate.exact) run.code = kVerificationFailure;
}

void cmd_restrict(Run& run, Cache& cache, int n) {
    require_range(n, 2, 0, "restrict");
    const auto m = model(run, cache, n);
    const auto r = run.timed("restrict", [&] { return pern::restriction_check(m); });
    const bool meets = pern::component_meets_per1(m);
    run.outputs = {{"n", str(n)},
                   {"ok", r.ok},
                   {"meets_per1", meets},
                   {"multiplicity", str(r.multiplicity)},
                   {"pure_power", r.pure_power},
                   {"restricted", coefficients_json(r.restricted)},
                   {"radical", coefficients_json(r.radical)},
                   {"gleason", coefficients_json(r.gleason)}};
    if (!r.ok || !meets) run.code = kVerificationFailure;
}

void cmd_rpoints(Run& run, Cache& cache, int n, long height) {
    if (height < 1) throw std::invalid_argument("rpoints: --height must be positive");
    const auto m = model(run, cache, n);
    const auto pts = run.timed("search", [&] { return pern::rational_point_search(m.pmodel, height); });
    run.outputs = json::array();
    for (const auto& p : pts) run.outputs.push_back({{"s1", to_decimal(p.s1)}, {"s2", to_decimal(p.s2)}});
}

void cmd_fstar(Run& run, int n) {
    using namespace covers;
    require_range(n, 4, 0, "fstar");
    const auto t0 = Clock::now();
    const TreeCover cov = build_fstar(n);
    const auto adm = check_admissible(cov);
    const MarkedTree x = build_xstar(n);
    std::set<std::string> ka, kb;
    std::map<std::string, std::string> ra, rb;
    for (int k = 1; k <= n; ++k) {
        ka.insert(a_label(k));
        kb.insert(b_label(k));
        ra[a_label(k)] = p_label(k);
        rb[b_label(k)] = p_label(k);
    }
    const auto sa = stabilize(cov.source, ka), sb = stabilize(cov.target, kb);
    const bool iso_a = isomorphic(sa.tree, x, ra), iso_b = isomorphic(sb.tree, x, rb);
    auto landing = [](const StabilizeResult& s) {
        json j = json::object();
        for (const auto& [l, v] : s.landing) j[l] = s.tree.vertices.at(v);
        return j;
    };
    const auto cr = cross_ratio_check(cov);
    const auto lm = local_model(n);
    const auto sv = smoothness_verdict(lm, run.seed);

    std::vector<int> wa, wb;
    for (int i = 1; i <= n - 3; ++i) wa.push_back(i), wb.push_back(i + 1);
    const bool pattern_ok = a_indices(lm) == wa && b_indices(lm) == wb;

    json s_params = json::array();
    for (const auto& s : lm.s_params)
        s_params.push_back({{"s", "s" + str(s.index)},
                            {"source_nodes", {s.source_nodes.first, s.source_nodes.second}},
                            {"target_node", s.target_node}});
    json pullbacks = json::array();
    for (std::size_t i = 0; i < lm.t_params.size(); ++i)
        pullbacks.push_back({{"t", "t" + str(lm.t_params[i].index)},
                             {"node", lm.t_params[i].node},
                             {"a", lm.a_pullback[i].unit + "*s" + str(lm.a_pullback[i].s_index)},
                             {"b", lm.b_pullback[i].unit + "*s" + str(lm.b_pullback[i].s_index)}});

    run.outputs = {
        {"n", str(n)},
        {"counts",
         {{"source_vertices", str(static_cast<long>(cov.source.vertices.size()))},
          {"source_edges", str(static_cast<long>(cov.source.edges.size()))},
          {"target_vertices", str(static_cast<long>(cov.target.vertices.size()))},
          {"target_edges", str(static_cast<long>(cov.target.edges.size()))}}},
        {"admissible", {{"ok", adm.ok}, {"failures", adm.failures}}},
        {"stabilization",
         {{"source_isomorphic_to_xstar", iso_a},
          {"target_isomorphic_to_xstar", iso_b},
          {"source_landing", landing(sa)},
          {"target_landing", landing(sb)}}},
        {"cross_ratio",
         {{"value", to_decimal(cr.value)}, {"ok", cr.ok}, {"convention", cr.convention}, {"violations", cr.violations}}},
        {"local_model",
         {{"s_params", s_params},
          {"pullbacks", pullbacks},
          {"a_indices", str_array(a_indices(lm))},
          {"b_indices", str_array(b_indices(lm))},
          {"pattern_ok", pattern_ok}}},
        {"smoothness",
         {{"verdict", sv.verdict},
          {"rank_certified", sv.rank_certified},
          {"equations", str(sv.equations)},
          {"variables", str(sv.variables)},
          {"rank", str(sv.rank)},
          {"kernel_dimension", str(sv.kernel_dimension)},
          {"interior_adjacent", sv.interior_adjacent}}}};
    run.timings["compute"] = seconds_string(std::chrono::duration<double>(Clock::now() - t0).count());
    if (!adm.ok || !iso_a || !iso_b || !cr.ok || !pattern_ok || sv.verdict != "smooth, interior-adjacent")
        run.code = kVerificationFailure;
}

void cmd_suite(Run& run, Cache& cache, int max_n, const std::vector<int>& only, std::ostream& err) {
    SuiteOptions opt;
    opt.max_n = max_n;
    opt.seed = run.seed;
    opt.progress = &err;
    opt.cache = cache.enabled() ? &cache : nullptr;
    opt.only = only;
    const auto results = run_suite(opt);
    json criteria = json::array();
    bool passed = true;
    for (const auto& r : results) {
        criteria.push_back({{"id", str(r.id)}, {"name", r.name}, {"status", r.status}, {"detail", r.detail}});
        run.timings["criterion_" + str(r.id)] = seconds_string(r.seconds);
        passed = passed && r.status != "FAIL";
    }
    run.outputs = {{"criteria", criteria}, {"passed", passed}};
    if (!passed) run.code = kVerificationFailure;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact algebra for quadratic rational maps with a periodic critical point", "quadmod"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::optional<std::string> cache_dir;
    bool no_cache = false;
    u64 seed = 1;
    app.add_option("--cache-dir", cache_dir, "cache directory (default: $QUADMOD_CACHE_DIR or .quadmod-cache/)");
    app.add_flag("--no-cache", no_cache, "do not read or write the cache");
    app.add_option("--seed", seed, "random seed")->capture_default_str();

    int n = 0, max_primes = 100, max_n = 0;
    long height = 0;
    std::vector<int> only;
    auto* gl = app.add_subcommand("gleason", "coefficients of G_n, ascending");
    auto* orb = app.add_subcommand("orbit", "coefficients of f_c^n(0), ascending");
    auto* irr = app.add_subcommand("irred", "irreducibility certificate for G_n");
    auto* prn = app.add_subcommand("pern", "plane model of Per_n(0) in (s1, s2)");
    auto* rst = app.add_subcommand("restrict", "restriction of the model to Per_1(0)");
    auto* rpt = app.add_subcommand("rpoints", "rational points of bounded height on the model");
    auto* fst = app.add_subcommand("fstar", "verification report for the boundary cover");
    auto* sui = app.add_subcommand("suite", "acceptance battery");
    for (auto* sc : {gl, orb, irr, prn, rst, rpt, fst}) sc->add_option("n", n, "period")->required();
    irr->add_option("--max-primes", max_primes, "prime budget")->capture_default_str()->check(CLI::PositiveNumber);
    rpt->add_option("--height", height, "height bound")->required();
    sui->add_option("--max-n", max_n, "cap on the periods of the first four criteria")->check(CLI::NonNegativeNumber);
    sui->add_option("--criteria", only, "run only these criterion ids")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? kOk : kUsage;
    }

    Run run;
    run.seed = seed;
    Cache cache = no_cache ? Cache() : Cache(resolve_cache_dir(cache_dir));
    const std::string command = app.get_subcommands().front()->get_name();
    if (command == "suite") {
        run.inputs["max_n"] = str(max_n);
        if (!only.empty()) run.inputs["criteria"] = str_array(only);
    } else {
        run.inputs["n"] = str(n);
    }
    if (command == "irred") run.inputs["max_primes"] = str(max_primes);
    if (command == "rpoints") run.inputs["height"] = str(height);

    auto emit = [&](const json& extra) {
        json report{{"command", command}, {"inputs", run.inputs}, {"outputs", run.outputs}, {"timings", run.timings},
                    {"seed", std::to_string(run.seed)}, {"version", kVersion}};
        if (!run.cache.empty()) report["cache"] = run.cache;
        if (!extra.is_null()) report["error"] = extra;
        out << report.dump(2) << std::endl;
    };
    auto fail = [&](int code, const char* kind, const std::exception& e) {
        err << "quadmod: " << e.what() << std::endl;
        run.outputs = nullptr;
        emit(json{{"kind", kind}, {"message", e.what()}});
        return code;
    };

    try {
        if (command == "gleason") cmd_gleason(run, cache, n);
        else if (command == "orbit") cmd_orbit(run, n);
        else if (command == "irred") cmd_irred(run, cache, n, max_primes);
        else if (command == "pern") cmd_pern(run, cache, n);
        else if (command == "restrict") cmd_restrict(run, cache, n);
        else if (command == "rpoints") cmd_rpoints(run, cache, n, height);
        else if (command == "fstar") cmd_fstar(run, n);
        else cmd_suite(run, cache, max_n, only, err);
    } catch (const ResourceLimit& e) {
        return fail(kResourceLimit, "ResourceLimit", e);
    } catch (const InvalidPeriod& e) {
        return fail(kUsage, "InvalidPeriod", e);
    } catch (const std::invalid_argument& e) {
        return fail(kUsage, "InvalidArgument", e);
    } catch (const Error& e) {
        return fail(kVerificationFailure, "VerificationFailure", e);
    }
    emit(nullptr);
    return run.code;
}

}  // namespace quadmod::cli
