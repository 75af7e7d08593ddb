#pragma once

// Command-line surface: JSON reports, the on-disk cache and the acceptance
// suite shared by the `quadmod` tool and the acceptance test binary.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "quadmod/bigint.hpp"
#include "quadmod/intpoly.hpp"
#include "quadmod/mpoly.hpp"
#include "quadmod/pern.hpp"

namespace quadmod::cli {

using json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int { kOk = 0, kVerificationFailure = 1, kUsage = 2, kResourceLimit = 3 };

// ---- serialization: every number is a decimal string

json to_json(const IntPoly& a);  ///< {"vars":["c"],"terms":[["k","coeff"],...]}, graded-lex descending
json to_json(const MPoly& a);
IntPoly intpoly_from_json(const json& j);
MPoly mpoly_from_json(const json& j);
json coefficients_json(const IntPoly& a);  ///< ascending degree
IntPoly from_coefficients_json(const json& j, std::string var = "c");
json curve_model_json(const pern::CurveModel& m);
pern::CurveModel curve_model_from_json(const json& j);
std::string seconds_string(double s);  ///< fixed 6 decimals

// ---- cache

std::string sha256_hex(std::string_view data);

/// Content-addressed store of JSON values keyed by (kind, n, version). Files
/// are written to a temporary name and renamed into place; each carries a
/// checksum of its payload that is validated on load.
class Cache {
public:
    enum class Status { Disabled, Hit, Miss, Corrupt };

    Cache() = default;
    explicit Cache(std::filesystem::path dir, std::string version = kVersion);

    bool enabled() const { return !dir_.empty(); }
    const std::filesystem::path& dir() const { return dir_; }
    std::string key(std::string_view kind, int n) const;
    std::filesystem::path file(std::string_view kind, int n) const;

    /// nullopt on miss or corruption; last_status() tells which.
    std::optional<json> load(std::string_view kind, int n);
    void store(std::string_view kind, int n, const json& value);
    Status last_status() const { return status_; }

private:
    std::filesystem::path dir_;
    std::string version_;
    Status status_ = Status::Disabled;
};

std::string to_string(Cache::Status s);

/// --cache-dir, else QUADMOD_CACHE_DIR, else .quadmod-cache/
std::filesystem::path resolve_cache_dir(const std::optional<std::string>& flag);

/// G_n through the cache; cached divisors seed the computation on a miss.
/// status receives the outcome of the lookup for n.
IntPoly cached_gleason(int n, Cache& cache, Cache::Status* status = nullptr);
pern::CurveModel cached_plane_model(int n, u64 seed, Cache& cache, Cache::Status* status = nullptr);

// ---- acceptance suite

struct CriterionResult {
    int id = 0;
    std::string name;
    std::string status;  ///< PASS, FAIL or SKIPPED
    std::string detail;
    double seconds = 0;
};

struct SuiteOptions {
    int max_n = 0;  ///< caps the periods of criteria 1 to 4; 0 means the full battery
    u64 seed = 1;
    std::ostream* progress = nullptr;
    Cache* cache = nullptr;
    std::vector<int> only;  ///< criterion ids to run; empty means all
};

std::vector<CriterionResult> run_suite(const SuiteOptions& opt);

// Individual property batteries of criterion 6; each returns an empty string
// on success and a description of the first counterexample otherwise.
std::string check_integer_laws(int trials, u64 seed);
std::string check_modular_laws(int trials, u64 seed);
std::string check_multivariate_laws(int trials, u64 seed);
std::string check_ddf_oracle(u64 seed);
std::string check_stabilize_confluence(int trials, u64 seed);
std::string check_separating_edge_oracle(int trials, u64 seed);
std::string check_orbit_oracle(int points, int max_n, u64 seed);
/// Sieve verdicts against Kronecker factoring for degree <= 4, coefficients in [-5, 5].
std::string check_irred_soundness(int trials, u64 seed);

// ---- entry point

/// Parses argv, runs one subcommand, writes a single JSON document to out and
/// progress to err. Returns an ExitCode.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace quadmod::cli
