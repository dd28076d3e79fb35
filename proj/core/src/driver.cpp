#include "fermat5/driver.hpp"

#include <atomic>
#include <condition_variable>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "fermat5/errors.hpp"

namespace fermat5 {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

std::string certificate_to_json_line(const WitnessCertificate& cert) {
  ordered_json j;
  if (fits_u64(cert.p)) j["p"] = to_u64(cert.p);
  else j["p"] = cert.p.get_str();
  j["n"] = cert.n;
  if (fits_u64(cert.q)) j["q"] = to_u64(cert.q);
  else j["q"] = cert.q.get_str();
  j["method"] = to_string(cert.method);
  j["primality_mode"] = to_string(cert.primality_mode);
  return j.dump();
}

namespace {

Zint json_to_zint(const json& v, const char* key) {
  if (v.is_number_unsigned()) return zint_of(v.get<std::uint64_t>());
  if (v.is_string()) return Zint(v.get<std::string>());
  throw DataError(std::string("certificate: field '") + key +
                  "' must be an unsigned number or a decimal string");
}

}  // namespace

WitnessCertificate certificate_from_json_line(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("certificate: bad JSON: ") + e.what());
  }
  for (const char* key : {"p", "n", "q", "method", "primality_mode"})
    if (!j.contains(key))
      throw DataError(std::string("certificate: missing key '") + key + "'");
  WitnessCertificate cert;
  cert.p = json_to_zint(j["p"], "p");
  if (!j["n"].is_number_unsigned()) throw DataError("certificate: 'n' must be unsigned");
  cert.n = j["n"].get<std::uint64_t>();
  cert.q = json_to_zint(j["q"], "q");
  auto m = method_from_string(j["method"].get<std::string>());
  if (!m) throw DataError("certificate: unknown method");
  cert.method = *m;
  auto pm = primality_mode_from_string(j["primality_mode"].get<std::string>());
  if (!pm) throw DataError("certificate: unknown primality_mode");
  cert.primality_mode = *pm;
  return cert;
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("FERMAT5_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 4096)
      return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::uint64_t fnv1a_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[4096];
  while (in.read(buf, sizeof buf) || in.gcount() > 0)
    h = fnv1a(buf, static_cast<std::size_t>(in.gcount()), h);
  return h;
}

namespace {

struct Checkpoint {
  json fingerprint;  // compared structurally, key order irrelevant
  unsigned shards_done = 0;
  std::uint64_t log_bytes = 0;
};

json make_fingerprint(const VerifyOptions& opts, std::uint64_t curve_hash) {
  json f;
  f["format"] = 1;
  f["from"] = opts.from;
  f["to"] = opts.to;
  f["n_max"] = opts.n_max ? json(*opts.n_max) : json(nullptr);
  f["curve_hash"] = curve_hash;
  f["shard_primes"] = opts.shard_primes;
  f["primality_mode"] = "auto";
  return f;
}

std::optional<Checkpoint> read_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    json j = json::parse(in);
    Checkpoint c;
    c.fingerprint = j.at("fingerprint");
    c.shards_done = j.at("shards_done").get<unsigned>();
    c.log_bytes = j.at("log_bytes").get<std::uint64_t>();
    return c;
  } catch (...) {
    return std::nullopt;  // unreadable checkpoint = no checkpoint
  }
}

// Atomic replace: write a temp file, then rename over the target.
void write_checkpoint(const std::string& path, const Checkpoint& c) {
  ordered_json j;
  j["version"] = 1;
  j["fingerprint"] = c.fingerprint;
  j["shards_done"] = c.shards_done;
  j["log_bytes"] = c.log_bytes;
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw IoError("cannot write '" + tmp + "'");
    out << j.dump() << "\n";
    out.flush();
    if (!out) throw IoError("short write on '" + tmp + "'");
  }
  fs::rename(tmp, path);
}

}  // namespace

VerifySummary verify_range(const VerifyOptions& opts) {
  if (opts.from < 5) throw ArgumentError("verify_range: range must start at 5 or above");
  if (opts.from >= opts.to) throw ArgumentError("verify_range: empty range");
  if (opts.out_path.empty()) throw ArgumentError("verify_range: no output path");
  if (opts.shard_primes == 0) throw ArgumentError("verify_range: shard_primes == 0");

  // Fail before touching the log if the curve is bad or missing.
  CurveOverK curve = load_curve(opts.curve_path);
  std::uint64_t curve_hash = fnv1a_file(opts.curve_path);

  std::vector<std::uint64_t> primes = primes_in_range(opts.from, opts.to);

  VerifySummary summary;
  summary.primes = primes.size();
  unsigned shards =
      static_cast<unsigned>((primes.size() + opts.shard_primes - 1) / opts.shard_primes);
  summary.shards_total = shards;

  const std::string ckpt_path = opts.out_path + ".ckpt";
  json fingerprint = make_fingerprint(opts, curve_hash);

  unsigned first_shard = 0;
  if (opts.resume) {
    auto ck = read_checkpoint(ckpt_path);
    if (ck && ck->fingerprint == fingerprint && ck->shards_done <= shards &&
        fs::exists(opts.out_path) && fs::file_size(opts.out_path) >= ck->log_bytes) {
      fs::resize_file(opts.out_path, ck->log_bytes);  // drop any torn tail
      first_shard = ck->shards_done;
    }
  }
  summary.shards_done_at_start = first_shard;
  if (first_shard == 0) {
    std::ofstream trunc(opts.out_path, std::ios::trunc);
    if (!trunc) throw IoError("cannot write '" + opts.out_path + "'");
  }

  // The log from already-done shards stays as is; rebuild summary counts
  // from it, including failures (a covered prime with no certificate line).
  if (first_shard > 0) {
    std::set<std::uint64_t> logged;
    std::ifstream in(opts.out_path);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      WitnessCertificate cert = certificate_from_json_line(line);
      ++summary.certificates;
      ++summary.by_method[cert.method];
      if (fits_u64(cert.p)) logged.insert(to_u64(cert.p));
    }
    std::size_t covered = std::min<std::size_t>(
        primes.size(), static_cast<std::size_t>(first_shard) * opts.shard_primes);
    for (std::size_t i = 0; i < covered; ++i)
      if (logged.count(primes[i]) == 0) summary.failures.push_back(primes[i]);
  }

  struct ShardResult {
    std::vector<std::string> lines;
    std::vector<std::uint64_t> failures;
    std::map<Method, std::uint64_t> by_method;
    std::uint64_t certificates = 0;
  };

  std::mutex mu;
  std::condition_variable cv;
  std::map<unsigned, ShardResult> done;
  std::atomic<unsigned> next{first_shard};
  std::atomic<bool> abort{false};
  std::exception_ptr worker_error;

  auto worker = [&] {
    try {
      for (;;) {
        unsigned s = next.fetch_add(1);
        if (s >= shards || abort.load()) return;
        ShardResult res;
        std::size_t lo = static_cast<std::size_t>(s) * opts.shard_primes;
        std::size_t hi = std::min(primes.size(), lo + opts.shard_primes);
        for (std::size_t i = lo; i < hi; ++i) {
          Zint p = zint_of(primes[i]);
          std::optional<WitnessCertificate> cert = decide(p, &curve, opts.n_max);
          if (cert) {
            res.lines.push_back(certificate_to_json_line(*cert));
            ++res.certificates;
            ++res.by_method[cert->method];
          } else {
            res.failures.push_back(primes[i]);
          }
        }
        {
          std::lock_guard<std::mutex> lock(mu);
          done.emplace(s, std::move(res));
        }
        cv.notify_all();
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!worker_error) worker_error = std::current_exception();
      abort.store(true);
      cv.notify_all();
    }
  };

  unsigned nthreads = opts.threads ? opts.threads : default_thread_count();
  nthreads = std::max(1u, std::min<unsigned>(nthreads, shards ? shards : 1));
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);

  std::ofstream log(opts.out_path, std::ios::app);
  if (!log) {
    abort.store(true);
    for (auto& t : pool) t.join();
    throw IoError("cannot append to '" + opts.out_path + "'");
  }

  unsigned written_this_run = 0;
  try {
    for (unsigned s = first_shard; s < shards; ++s) {
      ShardResult res;
      {
        std::unique_lock<std::mutex> lock(mu);
        cv.wait(lock, [&] { return done.count(s) != 0 || worker_error; });
        if (worker_error) std::rethrow_exception(worker_error);
        res = std::move(done.at(s));
        done.erase(s);
      }
      for (const std::string& line : res.lines) log << line << "\n";
      log.flush();
      if (!log) throw IoError("short write on '" + opts.out_path + "'");
      summary.certificates += res.certificates;
      for (const auto& [m, c] : res.by_method) summary.by_method[m] += c;
      summary.failures.insert(summary.failures.end(), res.failures.begin(),
                              res.failures.end());

      Checkpoint ck;
      ck.fingerprint = fingerprint;
      ck.shards_done = s + 1;
      ck.log_bytes = static_cast<std::uint64_t>(fs::file_size(opts.out_path));
      write_checkpoint(ckpt_path, ck);

      if (opts.progress) {
        std::cerr << "shard " << (s + 1) << "/" << shards << " done ("
                  << summary.certificates << " certificates";
        if (!summary.failures.empty())
          std::cerr << ", " << summary.failures.size() << " FAILURES";
        std::cerr << ")\n";
      }

      ++written_this_run;
      if (opts.stop_after_shards && written_this_run >= *opts.stop_after_shards &&
          s + 1 < shards) {
        summary.stopped_early = true;
        abort.store(true);
        break;
      }
    }
  } catch (...) {
    abort.store(true);
    next.store(shards);
    for (auto& t : pool) t.join();
    throw;
  }
  next.store(shards);
  for (auto& t : pool) t.join();
  if (worker_error && !summary.stopped_early) std::rethrow_exception(worker_error);
  return summary;
}

RecheckResult recheck_log(const std::string& log_path, const CurveOverK* E) {
  std::ifstream in(log_path);
  if (!in) throw IoError("recheck: cannot open '" + log_path + "'");
  RecheckResult out;
  std::string line;
  Zint last_p = 0;
  std::uint64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    ++out.lines;
    try {
      WitnessCertificate cert = certificate_from_json_line(line);
      if (!(cert.p > last_p)) {
        out.errors.push_back("line " + std::to_string(lineno) +
                             ": certificates not strictly increasing in p");
      }
      last_p = cert.p;
      std::string why;
      if (!verify_certificate(cert, E, &why)) {
        out.errors.push_back("line " + std::to_string(lineno) + ": p=" +
                             cert.p.get_str() + ": " + why);
      }
    } catch (const Error& e) {
      out.errors.push_back("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace fermat5
