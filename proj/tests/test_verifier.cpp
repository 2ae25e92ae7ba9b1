#include <catch2/catch_amalgamated.hpp>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "pps/verifier.hpp"

using pps::Int;

namespace {

nlohmann::json report_fingerprint(const pps::VerificationReport& r) {
  return pps::report_to_json(r, "fixed");  // elapsed_ms excluded below where compared
}

}  // namespace

TEST_CASE("chunk scan examples", "[verifier]") {
  auto r = pps::verify_chunk(pps::descriptor("T1"), 2, 100);
  CHECK(r.violations.empty());
  CHECK(r.rows_checked == 99);
  auto primes = oracle::primes_upto(100);
  REQUIRE(r.equality_count == primes.size());  // 25
  CHECK(r.equality_sample == std::vector<uint64_t>(primes.begin(), primes.end()));

  auto l1 = pps::verify_chunk(pps::descriptor("L1"), 2, 100);
  CHECK(l1.violations.empty());
  auto pps_list = oracle::prime_powers_upto(100);
  CHECK(l1.equality_count == pps_list.size());  // 35: 25 primes + 10 higher powers
  CHECK(l1.equality_count == 35);

  auto s14a = pps::verify_chunk(pps::descriptor("S14a"), 1, 1);
  CHECK(s14a.equality_count == 1);
  CHECK(s14a.rows_checked == 1);
}

TEST_CASE("chunk errors", "[verifier]") {
  CHECK_THROWS_AS(pps::verify_chunk(pps::descriptor("T1"), 1, 10), std::domain_error);
  CHECK_THROWS_AS(pps::verify_chunk(pps::descriptor("T1"), 0, 10), std::domain_error);
  CHECK_THROWS_AS(pps::verify_chunk(pps::descriptor("T1"), 10, 2), std::domain_error);
  pps::VerifyOptions tight;
  tight.segment_budget = 10;
  CHECK_THROWS_AS(pps::verify_chunk(pps::descriptor("T1"), 2, 1000, tight), std::length_error);
}

TEST_CASE("merge is boundary invariant", "[verifier]") {
  const auto& d = pps::descriptor("T1");
  std::vector<pps::ChunkReport> split{pps::verify_chunk(d, 2, 500), pps::verify_chunk(d, 501, 1000)};
  std::vector<pps::ChunkReport> whole{pps::verify_chunk(d, 2, 1000)};
  auto a = pps::merge_reports(split);
  auto b = pps::merge_reports(whole);
  CHECK(report_fingerprint(a) == report_fingerprint(b));
  CHECK(a.equality_class_observed == pps::ObservedClass::primes);

  // merge accepts chunks in any order
  std::vector<pps::ChunkReport> reversed{split[1], split[0]};
  CHECK(report_fingerprint(pps::merge_reports(reversed)) == report_fingerprint(a));
}

TEST_CASE("merge input validation", "[verifier]") {
  const auto& d = pps::descriptor("T1");
  std::vector<pps::ChunkReport> empty;
  CHECK_THROWS_AS(pps::merge_reports(empty), std::invalid_argument);

  std::vector<pps::ChunkReport> gap{pps::verify_chunk(d, 2, 10), pps::verify_chunk(d, 12, 20)};
  CHECK_THROWS_AS(pps::merge_reports(gap), std::invalid_argument);

  std::vector<pps::ChunkReport> overlap{pps::verify_chunk(d, 2, 10), pps::verify_chunk(d, 10, 20)};
  CHECK_THROWS_AS(pps::merge_reports(overlap), std::invalid_argument);

  std::vector<pps::ChunkReport> mixed{pps::verify_chunk(d, 2, 10),
                                      pps::verify_chunk(pps::descriptor("T2"), 11, 20)};
  CHECK_THROWS_AS(pps::merge_reports(mixed), std::invalid_argument);
}

TEST_CASE("verify_range is independent of workers and chunking", "[verifier]") {
  const auto& d = pps::descriptor("T2");
  pps::RangeRunOptions one;
  one.workers = 1;
  one.chunk_len = 10000;
  pps::RangeRunOptions many;
  many.workers = 8;
  many.chunk_len = 512;
  auto a = pps::verify_range(d, 2, 10000, one);
  auto b = pps::verify_range(d, 2, 10000, many);
  auto ja = report_fingerprint(a), jb = report_fingerprint(b);
  ja.erase("elapsed_ms");
  jb.erase("elapsed_ms");
  CHECK(ja == jb);
  CHECK(a.checksum == b.checksum);
  CHECK(a.violations.empty());
}

TEST_CASE("verify_range over a larger range stays clean", "[verifier]") {
  pps::RangeRunOptions opts;
  opts.workers = 4;
  opts.chunk_len = 1 << 14;
  auto r = pps::verify_range(pps::descriptor("T3"), 2, 100000, opts);
  CHECK(r.violations.empty());
  CHECK(r.rows_checked == 99999);
  CHECK(r.equality_class_observed == pps::ObservedClass::primes);
  CHECK(r.equality_count == oracle::primes_upto(100000).size());
}

TEST_CASE("equality class observation distinguishes the three shapes", "[verifier]") {
  pps::RangeRunOptions opts;
  opts.chunk_len = 4096;
  CHECK(pps::verify_range(pps::descriptor("L1"), 2, 20000, opts).equality_class_observed ==
        pps::ObservedClass::prime_powers);
  CHECK(pps::verify_range(pps::descriptor("L2"), 2, 20000, opts).equality_class_observed ==
        pps::ObservedClass::primes);
  // S14a is tight on every squarefree n, which is neither class.
  auto s = pps::verify_range(pps::descriptor("S14a"), 1, 20000, opts);
  CHECK(s.equality_class_observed == pps::ObservedClass::other);
  CHECK_FALSE(s.class_counterexamples.empty());
}

TEST_CASE("find_extremes", "[verifier]") {
  auto l2 = pps::find_extremes(pps::descriptor("L2"), 2, 100, 1);
  REQUIRE(l2.size() == 1);
  CHECK(l2[0].n == Int(4));
  CHECK(l2[0].gap == Int(1));

  auto t1 = pps::find_extremes(pps::descriptor("T1"), 2, 10, 1);
  REQUIRE(t1.size() == 1);
  CHECK(t1[0].n == Int(4));
  CHECK(t1[0].gap == Int(290));

  CHECK(pps::find_extremes(pps::descriptor("T1"), 2, 3, 5).empty());

  // ranked ascending by gap, ties by n
  auto s14a = pps::find_extremes(pps::descriptor("S14a"), 1, 50, 3);
  REQUIRE(s14a.size() == 3);
  CHECK(s14a[0].n == Int(4));
  CHECK(s14a[0].gap == Int(9));
  CHECK(s14a[1].n == Int(9));
  CHECK(s14a[1].gap == Int(136));
  CHECK(s14a[2].n == Int(8));
  CHECK(s14a[2].gap == Int(153));

  CHECK_THROWS_AS(pps::find_extremes(pps::descriptor("T1"), 2, 10, 0), std::invalid_argument);
}

TEST_CASE("chunk reports survive the journal round trip", "[verifier]") {
  auto r = pps::verify_chunk(pps::descriptor("T4"), 2, 5000);
  auto back = pps::chunk_from_json(pps::chunk_to_json(r));
  CHECK(back == r);
}

TEST_CASE("journal resume skips completed chunks and reproduces the report", "[verifier]") {
  namespace fs = std::filesystem;
  const auto& d = pps::descriptor("T1");
  fs::path journal = fs::temp_directory_path() / "pps_test_journal.jsonl";
  fs::remove(journal);

  pps::RangeRunOptions opts;
  opts.workers = 2;
  opts.chunk_len = 1000;
  opts.journal_path = journal.string();

  std::atomic<int> computed{0};
  opts.on_chunk_done = [&](const pps::ChunkReport&) { ++computed; };

  auto full = pps::verify_range(d, 2, 8000, opts);
  CHECK(computed.load() == 8);

  // resume: nothing left to compute, identical result
  computed = 0;
  auto resumed = pps::verify_range(d, 2, 8000, opts);
  CHECK(computed.load() == 0);
  auto ja = report_fingerprint(full), jb = report_fingerprint(resumed);
  ja.erase("elapsed_ms");
  jb.erase("elapsed_ms");
  CHECK(ja == jb);

  // drop some journal lines; only the missing chunks are recomputed
  std::ifstream in(journal);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) lines.push_back(line);
  in.close();
  REQUIRE(lines.size() == 8);
  std::ofstream out(journal, std::ios::trunc);
  for (std::size_t i = 0; i + 3 < lines.size(); ++i) out << lines[i] << "\n";
  out.close();

  computed = 0;
  auto partial = pps::verify_range(d, 2, 8000, opts);
  CHECK(computed.load() == 3);
  auto jc = report_fingerprint(partial);
  jc.erase("elapsed_ms");
  CHECK(jc == ja);

  // journal lines for other inequalities are ignored
  computed = 0;
  auto other = pps::verify_range(pps::descriptor("T2"), 2, 8000, opts);
  CHECK(computed.load() == 8);
  CHECK(other.violations.empty());

  fs::remove(journal);
}

TEST_CASE("range orchestration errors", "[verifier]") {
  const auto& d = pps::descriptor("T1");
  pps::RangeRunOptions opts;
  opts.chunk_len = 0;
  CHECK_THROWS_AS(pps::verify_range(d, 2, 100, opts), std::invalid_argument);
  opts.chunk_len = pps::kDefaultSegmentBudget * 2;
  CHECK_THROWS_AS(pps::verify_range(d, 2, 100, opts), std::length_error);
  opts.chunk_len = 100;
  CHECK_THROWS_AS(pps::verify_range(d, 1, 100, opts), std::domain_error);
}
