#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "quadmod/cli.hpp"
#include "quadmod/covers.hpp"
#include "quadmod/errors.hpp"
#include "quadmod/gleason.hpp"
#include "quadmod/irred.hpp"
#include "quadmod/pern.hpp"

namespace quadmod::cli {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int cap(int full, int max_n) { return max_n > 0 ? std::min(full, max_n) : full; }

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
};

constexpr Criterion kCriteria[] = {
    {1, "Gleason product identity, separability and degrees", 300},
    {2, "Irreducibility of G_n by degree patterns", 1800},
    {3, "Plane models, restriction to Per_1(0)", 1200},
    {4, "No rational points on Per_5(0) of height <= 50", 600},
    {5, "Boundary cover battery for 4 <= n <= 64", 10},
    {6, "Property suites", 1800},
};

void log(const SuiteOptions& opt, const std::string& msg) {
    if (opt.progress) *opt.progress << "[suite] " << msg << std::endl;
}

// Each runner returns an empty string on success, else the failure.

std::string run_gleason(const SuiteOptions& opt, std::string& detail) {
    static const long expected[] = {1, 1, 3, 6, 15, 27, 63, 120, 252, 495, 1023, 2010};
    const int top = cap(14, opt.max_n);
    GleasonTable& table = default_gleason_table();
    for (int n = 1; n <= top; ++n) {
        const auto prod = verify_product_identity(n, table);
        if (!prod.ok) return "product identity fails at n = " + std::to_string(n);
        std::vector<int> others;
        for (int m = 1; m < n; ++m) others.push_back(m);
        const auto sep = verify_separability(n, others, table);
        if (!sep.ok) return "separability fails at n = " + std::to_string(n);
        const long d = table.gleason(n).degree();
        if (d != gleason_degree(n)) return "degree recursion mismatch at n = " + std::to_string(n);
        if (n <= 12 && d != expected[n - 1]) return "deg G_" + std::to_string(n) + " = " + std::to_string(d);
        log(opt, "gleason n=" + std::to_string(n) + " degree " + std::to_string(d) + " ok");
    }
    detail = "n <= " + std::to_string(top) + ", G_m coprime to G_n for all m < n";
    return {};
}

std::string run_irred(const SuiteOptions& opt, std::string& detail) {
    const int top = cap(12, opt.max_n);
    std::ostringstream primes;
    int inconclusive = 0;
    for (int n = 1; n <= top; ++n) {
        const auto cert = sieve(gleason(n), {100, 60, opt.seed});
        if (cert.verdict == Verdict::ReducibleWitness) return "G_" + std::to_string(n) + " has a rational factor";
        if (cert.verdict == Verdict::Inconclusive) {
            ++inconclusive;
            primes << " n=" << n << ":inconclusive{";
            for (int s : cert.possible_sums) primes << s << ",";
            primes << "}";
        } else {
            primes << " " << cert.patterns.size();
        }
        log(opt, "irred n=" + std::to_string(n) + " " + to_string(cert.verdict) + " after " +
                     std::to_string(cert.primes_tried) + " primes");
    }
    const std::string oracle = check_irred_soundness(2000, opt.seed);
    if (!oracle.empty()) return oracle;
    detail = "n <= " + std::to_string(top) + ", good primes used:" + primes.str() + "; " +
             std::to_string(inconclusive) + " inconclusive; soundness oracle 2000/2000";
    return {};
}

std::string run_pern(const SuiteOptions& opt, std::string& detail) {
    const int top = cap(5, opt.max_n);
    std::ostringstream os;
    for (int n = 2; n <= top; ++n) {
        const auto m = opt.cache ? cached_plane_model(n, opt.seed, *opt.cache) : pern::plane_model(n, opt.seed);
        if (!m.certificate.exact) return "no exact membership certificate at n = " + std::to_string(n);
        const auto r = pern::restriction_check(m);
        if (!r.ok) return "restriction radical differs from G_" + std::to_string(n);
        if (!pern::component_meets_per1(m)) return "model misses Per_1(0) at n = " + std::to_string(n);
        os << " n=" << n << "(deg " << m.pmodel.total_degree() << ", m=" << r.multiplicity << ")";
        log(opt, "pern n=" + std::to_string(n) + " ok");
    }
    detail = "2 <= n <= " + std::to_string(top) + ":" + os.str();
    if (top < 5) detail += "; n = 5 SKIPPED";
    return {};
}

std::string run_rpoints(const SuiteOptions& opt, std::string& detail) {
    const auto m = opt.cache ? cached_plane_model(5, opt.seed, *opt.cache) : pern::plane_model(5, opt.seed);
    const auto pts = pern::rational_point_search(m.pmodel, 50);
    if (!pts.empty())
        return std::to_string(pts.size()) + " points, first (" + to_decimal(pts[0].s1) + ", " + to_decimal(pts[0].s2) + ")";
    detail = "empty list at height 50";
    return {};
}

std::string run_fstar(const SuiteOptions&, std::string& detail) {
    for (int n = 4; n <= 64; ++n) {
        const std::string at = " at n = " + std::to_string(n);
        const auto cov = covers::build_fstar(n);
        if (!covers::check_admissible(cov).ok) return "admissibility fails" + at;
        const auto x = covers::build_xstar(n);
        std::set<std::string> ka, kb;
        std::map<std::string, std::string> ra, rb;
        for (int k = 1; k <= n; ++k) {
            ka.insert(covers::a_label(k));
            kb.insert(covers::b_label(k));
            ra[covers::a_label(k)] = covers::p_label(k);
            rb[covers::b_label(k)] = covers::p_label(k);
        }
        if (!covers::isomorphic(covers::stabilize(cov.source, ka).tree, x, ra)) return "source stabilization" + at;
        if (!covers::isomorphic(covers::stabilize(cov.target, kb).tree, x, rb)) return "target stabilization" + at;
        const auto cr = covers::cross_ratio_check(cov);
        if (!cr.ok) return "cross-ratio " + to_decimal(cr.value) + at;
        const auto lm = covers::local_model(n);
        std::vector<int> wa, wb;
        for (int i = 1; i <= n - 3; ++i) wa.push_back(i), wb.push_back(i + 1);
        if (covers::a_indices(lm) != wa || covers::b_indices(lm) != wb) return "pullback pattern" + at;
        const auto sv = covers::smoothness_verdict(lm, static_cast<u64>(n));
        if (sv.verdict != "smooth, interior-adjacent") return "smoothness verdict '" + sv.verdict + "'" + at;
    }
    detail = "all checks for 4 <= n <= 64";
    return {};
}

std::string run_properties(const SuiteOptions& opt, std::string& detail) {
    struct Battery {
        const char* name;
        std::function<std::string()> run;
    };
    const u64 s = opt.seed;
    const Battery batteries[] = {
        {"integer laws x10^4", [s] { return check_integer_laws(10000, s); }},
        {"modular laws x10^4", [s] { return check_modular_laws(10000, s); }},
        {"multivariate laws x10^4", [s] { return check_multivariate_laws(10000, s); }},
        {"ddf vs exhaustive factoring", [s] { return check_ddf_oracle(s); }},
        {"stabilize confluence x10^3", [s] { return check_stabilize_confluence(1000, s); }},
        {"separating edge vs brute force x10^3", [s] { return check_separating_edge_oracle(1000, s); }},
        {"orbit oracle 10^3 points, n <= 5", [s] { return check_orbit_oracle(1000, 5, s); }},
    };
    std::ostringstream os;
    for (const auto& b : batteries) {
        const auto t0 = Clock::now();
        const std::string r = b.run();
        if (!r.empty()) return std::string(b.name) + ": " + r;
        log(opt, std::string(b.name) + " ok in " + seconds_string(since(t0)) + " s");
        os << (os.tellp() > 0 ? "; " : "") << b.name;
    }
    detail = os.str();
    return {};
}

}  // namespace

std::vector<CriterionResult> run_suite(const SuiteOptions& opt) {
    using Runner = std::string (*)(const SuiteOptions&, std::string&);
    const Runner runners[] = {run_gleason, run_irred, run_pern, run_rpoints, run_fstar, run_properties};
    std::vector<CriterionResult> out;
    for (const auto& c : kCriteria) {
        if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), c.id) == opt.only.end()) continue;
        CriterionResult r{c.id, c.name, "PASS", "", 0};
        if (c.id == 4 && opt.max_n > 0 && opt.max_n < 5) {
            r.status = "SKIPPED";
            r.detail = "--max-n below 5";
            out.push_back(r);
            continue;
        }
        log(opt, "criterion " + std::to_string(c.id) + ": " + c.name);
        const auto t0 = Clock::now();
        std::string failure;
        try {
            failure = runners[c.id - 1](opt, r.detail);
        } catch (const std::exception& e) {
            failure = std::string("exception: ") + e.what();
        }
        r.seconds = since(t0);
        if (failure.empty() && r.seconds > c.budget_seconds)
            failure = "exceeded the " + std::to_string(static_cast<int>(c.budget_seconds)) + " s budget";
        if (!failure.empty()) {
            r.status = "FAIL";
            r.detail = failure;
        }
        out.push_back(r);
    }
    return out;
}

}  // namespace quadmod::cli
