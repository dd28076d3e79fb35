#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fermat5/driver.hpp"
#include "fermat5/errors.hpp"

using namespace fermat5;
namespace fs = std::filesystem;

namespace {

const std::string kCurvePath = std::string(FERMAT5_DATA_DIR) + "/curve64.txt";

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path dir;
  TempDir() {
    dir = fs::temp_directory_path() /
          ("fermat5-test-" + std::to_string(SplitMix64(::getpid() ^ 0x5eed).next()));
    fs::create_directories(dir);
  }
  ~TempDir() { std::error_code ec; fs::remove_all(dir, ec); }
  std::string file(const std::string& name) const { return (dir / name).string(); }
};

VerifyOptions base_opts(const TempDir& td, const std::string& log_name) {
  VerifyOptions o;
  o.from = 5;
  o.to = 2000;
  o.out_path = td.file(log_name);
  o.curve_path = kCurvePath;
  o.threads = 2;
  o.progress = false;
  return o;
}

}  // namespace

TEST_CASE("certificate JSON round trip") {
  WitnessCertificate cert;
  cert.p = Zint(29);
  cert.n = 2;
  cert.q = Zint(59);
  cert.method = Method::corollary2a;
  cert.primality_mode = PrimalityMode::deterministic;
  std::string line = certificate_to_json_line(cert);
  CHECK(line ==
        R"({"p":29,"n":2,"q":59,"method":"corollary2a","primality_mode":"deterministic"})");
  WitnessCertificate back = certificate_from_json_line(line);
  CHECK(back.p == cert.p);
  CHECK(back.n == cert.n);
  CHECK(back.q == cert.q);
  CHECK(back.method == cert.method);
  CHECK(back.primality_mode == cert.primality_mode);

  // very large p round-trips through a decimal string
  cert.p = pow_u(Zint(10), 100) + 267;
  cert.n = 754;
  cert.q = cert.p * 754 + 1;
  cert.primality_mode = PrimalityMode::probable;
  back = certificate_from_json_line(certificate_to_json_line(cert));
  CHECK(back.p == cert.p);
  CHECK(back.q == cert.q);

  CHECK_THROWS_AS(certificate_from_json_line("{"), DataError);
  CHECK_THROWS_AS(certificate_from_json_line(R"({"p":5})"), DataError);
  CHECK_THROWS_AS(certificate_from_json_line(
                      R"({"p":5,"n":2,"q":11,"method":"nope","primality_mode":"deterministic"})"),
                  DataError);
}

TEST_CASE("verify_range: the first window of exponents") {
  TempDir td;
  VerifyOptions o = base_opts(td, "small.jsonl");
  o.to = 50;
  VerifySummary s = verify_range(o);
  CHECK(s.ok());
  CHECK(s.primes == 13);  // primes in [5, 50)
  CHECK(s.certificates == 13);
  CHECK(s.failures.empty());
  CHECK(s.by_method[Method::exceptional] == 2);  // 11 and 23

  // the log is sorted, one line per prime, and re-verifies
  CurveOverK E = load_curve(kCurvePath);
  RecheckResult r = recheck_log(o.out_path, &E);
  CHECK(r.lines == 13);
  CHECK(r.ok());

  // methods for the two exceptional entries
  std::ifstream in(o.out_path);
  std::string line;
  int exceptional = 0;
  while (std::getline(in, line)) {
    WitnessCertificate c = certificate_from_json_line(line);
    if (c.method == Method::exceptional) {
      ++exceptional;
      CHECK((c.p == 11 || c.p == 23));
    }
  }
  CHECK(exceptional == 2);
}

TEST_CASE("verify_range argument checking") {
  TempDir td;
  VerifyOptions o = base_opts(td, "x.jsonl");
  o.from = 3;
  CHECK_THROWS_AS(verify_range(o), ArgumentError);
  o.from = 50;
  o.to = 10;
  CHECK_THROWS_AS(verify_range(o), ArgumentError);
  o = base_opts(td, "x.jsonl");
  o.curve_path = "/nonexistent";
  CHECK_THROWS_AS(verify_range(o), IoError);  // aborts before any work
  CHECK_FALSE(fs::exists(o.out_path));
}

TEST_CASE("log bytes are identical across thread counts") {
  TempDir td;
  VerifyOptions o1 = base_opts(td, "t1.jsonl");
  o1.threads = 1;
  VerifyOptions o4 = base_opts(td, "t4.jsonl");
  o4.threads = 4;
  o4.shard_primes = 37;  // odd shard size shakes the scheduling
  CHECK(verify_range(o1).ok());
  CHECK(verify_range(o4).ok());
  CHECK(slurp(o1.out_path) == slurp(o4.out_path));
}

TEST_CASE("kill/resume at every shard boundary reproduces the log") {
  TempDir td;
  VerifyOptions full = base_opts(td, "full.jsonl");
  full.shard_primes = 50;
  VerifySummary fs_sum = verify_range(full);
  CHECK(fs_sum.ok());
  std::string want = slurp(full.out_path);

  for (unsigned kill_at = 1; kill_at < fs_sum.shards_total; ++kill_at) {
    CAPTURE(kill_at);
    VerifyOptions o = base_opts(td, "resume.jsonl");
    o.shard_primes = 50;
    o.stop_after_shards = kill_at;
    VerifySummary first = verify_range(o);
    CHECK(first.stopped_early);

    o.stop_after_shards.reset();
    o.resume = true;
    VerifySummary second = verify_range(o);
    CHECK(second.ok());
    CHECK(second.shards_done_at_start == kill_at);
    CHECK(slurp(o.out_path) == want);
    fs::remove(o.out_path);
    fs::remove(o.out_path + ".ckpt");
  }
}

TEST_CASE("resume also survives a torn final line") {
  TempDir td;
  VerifyOptions o = base_opts(td, "torn.jsonl");
  o.shard_primes = 100;
  o.stop_after_shards = 2;
  CHECK(verify_range(o).stopped_early);

  // simulate a crash mid-append: garbage past the checkpointed byte count
  {
    std::ofstream app(o.out_path, std::ios::app);
    app << "{\"p\":999";  // torn line, no newline
  }
  VerifyOptions done = o;
  done.stop_after_shards.reset();
  done.resume = true;
  CHECK(verify_range(done).ok());

  VerifyOptions ref = base_opts(td, "ref.jsonl");
  ref.shard_primes = 100;
  CHECK(verify_range(ref).ok());
  CHECK(slurp(o.out_path) == slurp(ref.out_path));
}

TEST_CASE("a fingerprint mismatch forces a fresh run") {
  TempDir td;
  VerifyOptions o = base_opts(td, "fp.jsonl");
  o.shard_primes = 100;
  o.stop_after_shards = 1;
  CHECK(verify_range(o).stopped_early);

  VerifyOptions changed = o;
  changed.stop_after_shards.reset();
  changed.resume = true;
  changed.n_max = 5000;  // different configuration
  VerifySummary s = verify_range(changed);
  CHECK(s.ok());
  CHECK(s.shards_done_at_start == 0);  // did not resume

  // same configuration resumes fine
  VerifyOptions again = o;
  again.stop_after_shards.reset();
  again.resume = true;
  // fresh baseline: run was completed by `changed`, so restart from scratch
  VerifySummary s2 = verify_range(again);
  CHECK(s2.ok());
}

TEST_CASE("recheck rejects tampered logs") {
  TempDir td;
  VerifyOptions o = base_opts(td, "tamper.jsonl");
  o.to = 100;
  CHECK(verify_range(o).ok());

  CurveOverK E = load_curve(kCurvePath);
  CHECK(recheck_log(o.out_path, &E).ok());

  std::string contents = slurp(o.out_path);
  // flip the first witness index 2 -> 6
  auto pos = contents.find("\"n\":2");
  REQUIRE(pos != std::string::npos);
  contents.replace(pos, 5, "\"n\":6");
  {
    std::ofstream out(o.out_path, std::ios::trunc);
    out << contents;
  }
  RecheckResult r = recheck_log(o.out_path, &E);
  CHECK_FALSE(r.ok());
}

TEST_CASE("default_thread_count respects the environment override") {
  ::setenv("FERMAT5_THREADS", "3", 1);
  CHECK(default_thread_count() == 3);
  ::setenv("FERMAT5_THREADS", "not-a-number", 1);
  CHECK(default_thread_count() >= 1);
  ::unsetenv("FERMAT5_THREADS");
  CHECK(default_thread_count() >= 1);
}
