#pragma once

// Instance configuration, the analyze/alpha/generate/verify pipelines and
// their JSON reports. Rationals are written as "p/q" strings.

#include <json.hpp>

#include "sgen2/error.hpp"
#include "sgen2/verification.hpp"

namespace sgen2 {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------- serialization

json to_json(const Rat& x);
json to_json(const RatVec& v);
json to_json(const FieldElement& x);
json to_json(const Mat2& m);
json to_json(const PrimeIdeal& P);
json to_json(const AlphaCertificate& c);
json to_json(const GeneratorTriple& T);
json to_json(const IdentityReport& r);
json to_json(const IdealLadder& L);
json to_json(const ModPReport& r);

Rat rat_from_json(const json& j);
RatVec ratvec_from_json(const json& j);
Datasheet datasheet_from_json(const json& j);

// ---------------------------------------------------------------- configuration

struct PrimeSelection {
  enum class Kind { All, Index, Generator };
  long p = 0;
  Kind kind = Kind::All;
  size_t index = 0;
  RatVec generator;  // power-basis coordinates of an element g with P = (p, g)
};

struct VerifyOptions {
  size_t primes = 10;
  long q_bound = 100;
  IdentityRanges ranges;
  size_t witness_samples = 20;
  size_t ideal_samples = 6;
};

struct InstanceConfig {
  IntVec poly;
  std::optional<Datasheet> datasheet;
  std::vector<PrimeSelection> S;
  long h = 1;
  std::optional<long> N;  // nullopt: search N = 1..24
  VerifyOptions verify;
  std::uint64_t seed = 1;
  long alpha_bound = 32;
  json echo;  // the configuration as given
};

// Errors: ConfigInvalid.
InstanceConfig parse_config(const json& j);

// Resolves the prime selections against factor_rational_prime. Errors:
// ConfigInvalid (no such factor, ambiguous generator, duplicates).
PrimeSet resolve_primes(const FieldPtr& K, const std::vector<PrimeSelection>& sel);

// ---------------------------------------------------------------- pipelines

enum class Command { Analyze, Alpha, Generate, Verify, Examples };

Command parse_command(const std::string& name);

struct RunOptions {
  bool timings = false;  // wall-clock timings make reports non-reproducible
  bool parallel = true;
};

struct RunResult {
  json report;
  int exit_code = 0;
};

// 0 success, 1 configuration or field errors, 2 failed hypotheses,
// 3 verification failures.
int exit_code_for(Errc code);

// Never throws Error: failures become an "error" entry and an exit code.
RunResult run(Command cmd, const InstanceConfig& config, const RunOptions& opts = {});

// The two worked examples over Q(i) with their expected values.
std::vector<InstanceConfig> example_configs();

}  // namespace sgen2
