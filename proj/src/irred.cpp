#include "quadmod/irred.hpp"

#include <algorithm>
#include <stdexcept>

#include "quadmod/errors.hpp"
#include "quadmod/kernels.hpp"
#include "quadmod/modarith.hpp"
#include "quadmod/modpoly.hpp"

namespace quadmod {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Irreducible:
            return "Irreducible";
        case Verdict::Inconclusive:
            return "Inconclusive";
        case Verdict::ReducibleWitness:
            return "ReducibleWitness";
    }
    return "?";
}

std::optional<DegreePattern> degree_pattern(const IntPoly& f, u64 p) {
    if (f.degree() < 1) throw std::invalid_argument("degree_pattern: constant polynomial");
    if (mod_u64(f.lc(), p) == 0) return std::nullopt;
    ModPoly fp = mod_reduce(f, p);
    if (!is_squarefree(fp)) return std::nullopt;
    return DegreePattern{p, degree_multiset(ddf(fp))};
}

std::vector<bool> subset_sums(const std::vector<int>& degrees) {
    int total = 0;
    for (int d : degrees) total += d;
    std::vector<bool> reach(static_cast<std::size_t>(total) + 1, false);
    reach[0] = true;
    int hi = 0;
    for (int d : degrees) {
        for (int s = hi; s >= 0; --s)
            if (reach[s]) reach[s + d] = true;
        hi += d;
    }
    return reach;
}

std::optional<FactorWitness> rational_factor_scan(const IntPoly& f) {
    if (f.degree() < 1) throw std::invalid_argument("rational_factor_scan: constant polynomial");
    if (f.degree() < 2) return std::nullopt;
    const auto roots = rational_roots(f);
    if (roots.empty()) return std::nullopt;
    const Rat& r = roots.front();
    IntPoly lin(std::vector<Int>{Int(-r.get_num()), r.get_den()}, f.var());
    return FactorWitness{lin, poly_divrem_exact(f, lin)};
}

IrredCertificate sieve(const IntPoly& f, const SieveOptions& opt) {
    if (f.degree() < 1) throw std::invalid_argument("sieve: constant polynomial");
    if (!is_squarefree(f)) throw NotSquarefreeOverQ("sieve: input is not squarefree over Q");
    IrredCertificate cert;
    cert.degree = f.degree();
    cert.seed = opt.seed;
    const int n = f.degree();

    std::vector<bool> alive(static_cast<std::size_t>(n) + 1, true);
    auto collect = [&] {
        cert.possible_sums.clear();
        for (int s = 1; s < n; ++s)
            if (alive[s]) cert.possible_sums.push_back(s);
    };

    if (auto w = rational_factor_scan(f)) {
        cert.verdict = Verdict::ReducibleWitness;
        cert.witness = std::move(*w);
        collect();
        return cert;
    }

    PrimeStream primes(opt.prime_bits, opt.seed);
    const int batch = std::max(1, kernels::thread_count());
    while (cert.primes_tried < opt.max_primes) {
        const int k = std::min(batch, opt.max_primes - cert.primes_tried);
        std::vector<u64> ps(k);
        for (auto& p : ps) p = primes.next();
        std::vector<std::optional<DegreePattern>> pats(k);
#pragma omp parallel for schedule(dynamic, 1) if (k > 1)
        for (int i = 0; i < k; ++i) pats[i] = degree_pattern(f, ps[i]);
        // merge in draw order so the certificate does not depend on the batch size
        for (int i = 0; i < k; ++i) {
            ++cert.primes_tried;
            if (!pats[i]) {
                ++cert.bad_primes;
                continue;
            }
            const auto reach = subset_sums(pats[i]->degrees);
            for (int s = 1; s < n; ++s) alive[s] = alive[s] && reach[s];
            cert.patterns.push_back(std::move(*pats[i]));
            collect();
            if (cert.possible_sums.empty()) {
                cert.verdict = Verdict::Irreducible;
                return cert;
            }
        }
    }
    collect();
    cert.verdict = Verdict::Inconclusive;
    return cert;
}

}  // namespace quadmod
