#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>
#include <unistd.h>

#include "quadmod/cli.hpp"
#include "quadmod/errors.hpp"
#include "quadmod/gleason.hpp"

namespace quadmod::cli {

namespace {

std::string str(long v) { return std::to_string(v); }

long to_long(const json& j) { return std::stol(j.get<std::string>()); }

}  // namespace

json to_json(const IntPoly& a) {
    json terms = json::array();
    for (int k = a.degree(); k >= 0; --k)
        if (a[k] != 0) terms.push_back(json::array({str(k), to_decimal(a[k])}));
    return json{{"vars", json::array({a.var()})}, {"terms", terms}};
}

json to_json(const MPoly& a) {
    json terms = json::array();
    for (const auto& t : a.terms()) {
        json row = json::array();
        for (int v = 0; v < a.nvars(); ++v) row.push_back(str(mono_exp(t.m, v)));
        row.push_back(to_decimal(t.c));
        terms.push_back(std::move(row));
    }
    return json{{"vars", a.vars()}, {"terms", terms}};
}

IntPoly intpoly_from_json(const json& j) {
    const auto vars = j.at("vars").get<std::vector<std::string>>();
    if (vars.size() != 1) throw std::invalid_argument("intpoly_from_json: expected one variable");
    std::vector<Int> c;
    for (const auto& t : j.at("terms")) {
        const auto k = static_cast<std::size_t>(to_long(t.at(0)));
        if (c.size() <= k) c.resize(k + 1, 0);
        c[k] += Int(t.at(1).get<std::string>());
    }
    return IntPoly(std::move(c), vars[0]);
}

MPoly mpoly_from_json(const json& j) {
    const auto vars = j.at("vars").get<std::vector<std::string>>();
    MPoly out(vars);
    for (const auto& t : j.at("terms")) {
        std::array<unsigned, kMaxVars> e{};
        for (std::size_t v = 0; v < vars.size(); ++v) e[v] = static_cast<unsigned>(to_long(t.at(v)));
        out = out + MPoly::monomial(vars, e, Int(t.at(vars.size()).get<std::string>()));
    }
    return out;
}

json coefficients_json(const IntPoly& a) {
    json c = json::array();
    for (const auto& x : a.coeffs()) c.push_back(to_decimal(x));
    return c;
}

IntPoly from_coefficients_json(const json& j, std::string var) {
    std::vector<Int> c;
    for (const auto& x : j) c.emplace_back(x.get<std::string>());
    return IntPoly(std::move(c), std::move(var));
}

json curve_model_json(const pern::CurveModel& m) {
    json votes = json::array();
    for (const auto& v : m.votes)
        votes.push_back({{"factor", to_json(v.factor)},
                         {"hits", str(v.hits)},
                         {"samples", str(v.samples)},
                         {"kept", v.kept}});
    return json{{"n", str(m.n)},
                {"gamma", to_json(m.gamma)},
                {"pmodel", to_json(m.pmodel)},
                {"pmodel_total_degree", str(m.pmodel.total_degree())},
                {"pmodel_degree_s1", str(m.pmodel.degree(0))},
                {"pmodel_degree_s2", str(m.pmodel.degree(1))},
                {"used_fallback", m.used_fallback},
                {"certificate",
                 {{"exact", m.certificate.exact},
                  {"weight", str(m.certificate.weight)},
                  {"numerator_terms", str(static_cast<long>(m.certificate.numerator_terms))}}},
                {"votes", votes},
                {"q_power_r1", str(m.q_power_r1)},
                {"q_power_r2", str(m.q_power_r2)},
                {"r1_q_degree", str(m.r1_q_degree)},
                {"fiber_squarefree", m.fiber_squarefree}};
}

pern::CurveModel curve_model_from_json(const json& j) {
    pern::CurveModel m;
    m.n = static_cast<int>(to_long(j.at("n")));
    m.gamma = mpoly_from_json(j.at("gamma"));
    m.pmodel = mpoly_from_json(j.at("pmodel"));
    m.used_fallback = j.at("used_fallback").get<bool>();
    const auto& c = j.at("certificate");
    m.certificate.exact = c.at("exact").get<bool>();
    m.certificate.weight = static_cast<unsigned>(to_long(c.at("weight")));
    m.certificate.numerator_terms = static_cast<std::size_t>(to_long(c.at("numerator_terms")));
    for (const auto& v : j.at("votes"))
        m.votes.push_back({mpoly_from_json(v.at("factor")), static_cast<int>(to_long(v.at("hits"))),
                           static_cast<int>(to_long(v.at("samples"))), v.at("kept").get<bool>()});
    m.q_power_r1 = static_cast<unsigned>(to_long(j.at("q_power_r1")));
    m.q_power_r2 = static_cast<unsigned>(to_long(j.at("q_power_r2")));
    m.r1_q_degree = static_cast<int>(to_long(j.at("r1_q_degree")));
    m.fiber_squarefree = j.at("fiber_squarefree").get<bool>();
    return m;
}

std::string seconds_string(double s) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << s;
    return os.str();
}

// ---------------------------------------------------------------- cache

std::string sha256_hex(std::string_view data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256: digest failed");
    std::ostringstream os;
    for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return os.str();
}

Cache::Cache(std::filesystem::path dir, std::string version) : dir_(std::move(dir)), version_(std::move(version)) {
    status_ = Status::Miss;
}

std::string Cache::key(std::string_view kind, int n) const {
    return "quadmod/" + version_ + "/" + std::string(kind) + "/" + std::to_string(n);
}

std::filesystem::path Cache::file(std::string_view kind, int n) const {
    return dir_ / (sha256_hex(key(kind, n)) + ".json");
}

std::optional<json> Cache::load(std::string_view kind, int n) {
    if (!enabled()) {
        status_ = Status::Disabled;
        return std::nullopt;
    }
    const auto path = file(kind, n);
    std::ifstream in(path);
    if (!in) {
        status_ = Status::Miss;
        return std::nullopt;
    }
    try {
        std::stringstream buf;
        buf << in.rdbuf();
        const json doc = json::parse(buf.str());
        if (doc.at("key").get<std::string>() != key(kind, n)) throw CorruptCache("cache: key mismatch in " + path.string());
        const json& payload = doc.at("payload");
        if (doc.at("checksum").get<std::string>() != sha256_hex(payload.dump()))
            throw CorruptCache("cache: checksum mismatch in " + path.string());
        status_ = Status::Hit;
        return payload;
    } catch (const std::exception&) {
        status_ = Status::Corrupt;
        return std::nullopt;
    }
}

void Cache::store(std::string_view kind, int n, const json& value) {
    if (!enabled()) return;
    static std::atomic<unsigned> counter{0};
    std::filesystem::create_directories(dir_);
    const auto path = file(kind, n);
    const json doc{{"key", key(kind, n)}, {"checksum", sha256_hex(value.dump())}, {"payload", value}};
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << doc.dump() << '\n';
        out.flush();
        if (!out) throw std::runtime_error("cache: cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string to_string(Cache::Status s) {
    switch (s) {
        case Cache::Status::Disabled:
            return "disabled";
        case Cache::Status::Hit:
            return "hit";
        case Cache::Status::Miss:
            return "miss";
        case Cache::Status::Corrupt:
            return "corrupt";
    }
    return "?";
}

std::filesystem::path resolve_cache_dir(const std::optional<std::string>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("QUADMOD_CACHE_DIR"); env && *env) return env;
    return ".quadmod-cache";
}

IntPoly cached_gleason(int n, Cache& cache, Cache::Status* status) {
    auto hit = cache.load("gleason", n);
    if (status) *status = cache.last_status();
    if (hit) return from_coefficients_json(*hit);
    GleasonTable& table = default_gleason_table();
    for (int d : proper_divisors(n)) {
        if (table.has(d)) continue;
        if (auto h = cache.load("gleason", d)) table.seed(d, from_coefficients_json(*h));
    }
    IntPoly g = table.gleason(n);
    cache.store("gleason", n, coefficients_json(g));
    return g;
}

pern::CurveModel cached_plane_model(int n, u64 seed, Cache& cache, Cache::Status* status) {
    const std::string kind = "pmodel-seed" + std::to_string(seed);
    auto hit = cache.load(kind, n);
    if (status) *status = cache.last_status();
    if (hit) return curve_model_from_json(*hit);
    pern::CurveModel m = pern::plane_model(n, seed);
    cache.store(kind, n, curve_model_json(m));
    return m;
}

}  // namespace quadmod::cli
