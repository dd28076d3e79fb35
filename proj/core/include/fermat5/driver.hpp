#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fermat5/criterion.hpp"

namespace fermat5 {

// One JSON object per line, keys p, n, q, method, primality_mode, sorted by p.
std::string certificate_to_json_line(const WitnessCertificate& cert);
WitnessCertificate certificate_from_json_line(const std::string& line);

// Thread-count default: FERMAT5_THREADS env var, else hardware concurrency.
unsigned default_thread_count();

std::uint64_t fnv1a_file(const std::string& path);  // throws IoError

struct VerifyOptions {
  std::uint64_t from = 5;
  std::uint64_t to = 0;  // exclusive
  std::string out_path;
  std::string curve_path;
  bool resume = false;
  unsigned threads = 0;  // 0 = default_thread_count()
  std::optional<std::uint64_t> n_max;
  std::uint64_t shard_primes = 10000;  // primes per work shard
  bool progress = true;                // per-shard reporting on stderr

  // Test hook: stop (as if killed) after writing this many shards this run.
  std::optional<unsigned> stop_after_shards;
};

struct VerifySummary {
  std::uint64_t primes = 0;
  std::uint64_t certificates = 0;
  std::vector<std::uint64_t> failures;  // primes with no certificate
  std::map<Method, std::uint64_t> by_method;
  unsigned shards_total = 0;
  unsigned shards_done_at_start = 0;  // > 0 only when a checkpoint was resumed
  bool stopped_early = false;

  bool ok() const { return failures.empty() && !stopped_early; }
};

// Certifies every prime in [from, to). The certificate log is written shard
// by shard in prime order, so the finished file is byte-identical for any
// thread count; a checkpoint (out_path + ".ckpt") is updated atomically
// after each shard, and --resume continues an interrupted run whose
// configuration fingerprint matches. The curve is loaded and validated
// before any work starts.
VerifySummary verify_range(const VerifyOptions& opts);

struct RecheckResult {
  std::uint64_t lines = 0;
  std::vector<std::string> errors;
  bool ok() const { return errors.empty(); }
};

// Re-validates every certificate in a log file using only criterion logic.
RecheckResult recheck_log(const std::string& log_path, const CurveOverK* E);

}  // namespace fermat5
