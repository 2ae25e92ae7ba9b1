#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ios>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pps/catalog.hpp"
#include "pps/sieve.hpp"

namespace pps {

enum class ObservedClass { primes, prime_powers, other };

inline const char* observed_class_name(ObservedClass c) {
  switch (c) {
    case ObservedClass::primes: return "PRIMES";
    case ObservedClass::prime_powers: return "PRIME_POWERS";
    default: return "OTHER";
  }
}

struct VerifyOptions {
  uint64_t segment_budget = kDefaultSegmentBudget;
  std::size_t equality_sample_limit = 64;
  std::size_t counterexample_limit = 16;
};

/// Scan result for one contiguous chunk of one inequality.
///
/// Besides the spec'd aggregates it carries the tallies needed to classify
/// the full equality set at merge time without rescanning: how many primes /
/// prime powers the chunk contains, how many of them were equality rows, and
/// capped counterexample lists for every possible mismatch direction.
struct ChunkReport {
  std::string inequality;
  uint64_t lo = 0;
  uint64_t hi = 0;
  std::vector<GapValue> violations;  // rows with gap < 0, in n order
  uint64_t equality_count = 0;
  std::vector<uint64_t> equality_sample;  // first K equality rows
  std::optional<GapValue> min_positive_gap;
  uint64_t rows_checked = 0;
  uint64_t checksum = 0;  // order-independent digest over (n, gap mod 2^64)

  uint64_t primes_in_range = 0;
  uint64_t prime_powers_in_range = 0;
  uint64_t equal_primes = 0;
  uint64_t equal_prime_powers = 0;
  std::vector<uint64_t> eq_not_prime;
  std::vector<uint64_t> prime_not_eq;
  std::vector<uint64_t> eq_not_prime_power;
  std::vector<uint64_t> prime_power_not_eq;

  bool operator==(const ChunkReport&) const = default;
};

struct VerificationReport {
  std::string inequality;
  uint64_t lo = 0;
  uint64_t hi = 0;
  std::vector<GapValue> violations;
  uint64_t equality_count = 0;
  std::vector<uint64_t> equality_sample;
  std::optional<GapValue> min_positive_gap;
  uint64_t rows_checked = 0;
  ObservedClass equality_class_observed = ObservedClass::other;
  std::vector<uint64_t> class_counterexamples;
  uint64_t checksum = 0;
  uint64_t elapsed_ms = 0;
};

namespace detail {

inline uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline uint64_t row_digest(uint64_t n, uint64_t gap_low) { return mix64(mix64(n) ^ gap_low); }

inline void push_capped(std::vector<uint64_t>& v, uint64_t x, std::size_t cap) {
  if (v.size() < cap) v.push_back(x);
}

}  // namespace detail

/// Evaluates the gap for every n in [lo, hi] (one sieve pass) and classifies
/// each row. Throws std::domain_error when lo is 0, above hi, or below the
/// inequality's validity threshold, std::length_error when the chunk exceeds
/// the segment budget.
inline ChunkReport verify_chunk(const InequalityDescriptor& d, uint64_t lo, uint64_t hi,
                                const VerifyOptions& opts = {}) {
  if (lo == 0 || lo > hi) throw std::domain_error("verify_chunk: bad range");
  if (lo < d.min_n)
    throw std::domain_error("verify_chunk: " + d.id + " requires n >= " + std::to_string(d.min_n));
  if (hi - lo + 1 > opts.segment_budget)
    throw std::length_error("verify_chunk: chunk exceeds segment budget");

  RangeTable table = sieve_range(lo, hi, opts.segment_budget);
  ChunkReport r;
  r.inequality = d.id;
  r.lo = lo;
  r.hi = hi;
  r.rows_checked = table.rows.size();

  const Int one{1};
  for (const FunctionBundle& b : table.rows) {
    const Int g = gap(d, b);
    const uint64_t n = b.n.as_uint64();
    r.checksum += detail::row_digest(n, g.low_u64());
    const bool is_prime_row = b.big_omega == 1;
    const bool is_prime_power_row = n >= 2 && b.phi_star + one == b.n;
    if (is_prime_row) ++r.primes_in_range;
    if (is_prime_power_row) ++r.prime_powers_in_range;

    const int s = g.sign();
    if (s < 0) {
      r.violations.push_back({b.n, g});
    } else if (s == 0) {
      ++r.equality_count;
      if (r.equality_sample.size() < opts.equality_sample_limit) r.equality_sample.push_back(n);
      if (is_prime_row) ++r.equal_primes;
      else detail::push_capped(r.eq_not_prime, n, opts.counterexample_limit);
      if (is_prime_power_row) ++r.equal_prime_powers;
      else detail::push_capped(r.eq_not_prime_power, n, opts.counterexample_limit);
    } else {
      if (is_prime_row) detail::push_capped(r.prime_not_eq, n, opts.counterexample_limit);
      if (is_prime_power_row) detail::push_capped(r.prime_power_not_eq, n, opts.counterexample_limit);
      if (!r.min_positive_gap || g < r.min_positive_gap->gap) r.min_positive_gap = GapValue{b.n, g};
    }
  }
  return r;
}

/// Deterministic merge of chunk reports covering contiguous disjoint ranges
/// of one inequality. The result is independent of chunk boundaries and of
/// the order the chunks are handed in.
inline VerificationReport merge_reports(std::span<const ChunkReport> reports,
                                        const VerifyOptions& opts = {}) {
  if (reports.empty()) throw std::invalid_argument("merge_reports: no chunks");
  std::vector<const ChunkReport*> sorted;
  sorted.reserve(reports.size());
  for (const auto& r : reports) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(),
            [](const ChunkReport* a, const ChunkReport* b) { return a->lo < b->lo; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i]->inequality != sorted[0]->inequality)
      throw std::invalid_argument("merge_reports: chunks from different inequalities");
    if (i > 0 && sorted[i]->lo != sorted[i - 1]->hi + 1)
      throw std::invalid_argument("merge_reports: chunks overlap or leave a gap");
  }

  VerificationReport m;
  m.inequality = sorted[0]->inequality;
  m.lo = sorted.front()->lo;
  m.hi = sorted.back()->hi;

  uint64_t primes = 0, prime_powers = 0, equal_primes = 0, equal_prime_powers = 0;
  std::vector<uint64_t> eq_not_prime, prime_not_eq, eq_not_pp, pp_not_eq;
  for (const ChunkReport* c : sorted) {
    m.rows_checked += c->rows_checked;
    m.equality_count += c->equality_count;
    m.checksum += c->checksum;
    m.violations.insert(m.violations.end(), c->violations.begin(), c->violations.end());
    for (uint64_t n : c->equality_sample)
      if (m.equality_sample.size() < opts.equality_sample_limit) m.equality_sample.push_back(n);
    if (c->min_positive_gap) {
      if (!m.min_positive_gap || c->min_positive_gap->gap < m.min_positive_gap->gap ||
          (c->min_positive_gap->gap == m.min_positive_gap->gap &&
           c->min_positive_gap->n < m.min_positive_gap->n))
        m.min_positive_gap = c->min_positive_gap;
    }
    primes += c->primes_in_range;
    prime_powers += c->prime_powers_in_range;
    equal_primes += c->equal_primes;
    equal_prime_powers += c->equal_prime_powers;
    for (uint64_t n : c->eq_not_prime) detail::push_capped(eq_not_prime, n, opts.counterexample_limit);
    for (uint64_t n : c->prime_not_eq) detail::push_capped(prime_not_eq, n, opts.counterexample_limit);
    for (uint64_t n : c->eq_not_prime_power) detail::push_capped(eq_not_pp, n, opts.counterexample_limit);
    for (uint64_t n : c->prime_power_not_eq) detail::push_capped(pp_not_eq, n, opts.counterexample_limit);
  }

  if (eq_not_prime.empty() && prime_not_eq.empty() && m.equality_count == primes &&
      equal_primes == m.equality_count) {
    m.equality_class_observed = ObservedClass::primes;
  } else if (eq_not_pp.empty() && pp_not_eq.empty() && m.equality_count == prime_powers &&
             equal_prime_powers == m.equality_count) {
    m.equality_class_observed = ObservedClass::prime_powers;
  } else {
    m.equality_class_observed = ObservedClass::other;
    std::vector<uint64_t>* sources[4] = {&eq_not_prime, &prime_not_eq, &eq_not_pp, &pp_not_eq};
    for (auto* src : sources)
      for (uint64_t n : *src)
        detail::push_capped(m.class_counterexamples, n, opts.counterexample_limit);
  }
  return m;
}

// --- JSON forms (reports, journal lines) ------------------------------------

namespace detail {

inline nlohmann::json int_to_json(const Int& v) {
  if (v.fits_int64()) return nlohmann::json(v.as_int64());
  return nlohmann::json(v.to_decimal());
}

inline Int int_from_json(const nlohmann::json& j) {
  if (j.is_string()) return Int::from_decimal(j.get<std::string>());
  if (j.is_number_unsigned()) return Int(j.get<uint64_t>());
  return Int(j.get<int64_t>());
}

inline std::string checksum_hex(uint64_t c) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(c));
  return std::string(buf);
}

inline uint64_t checksum_from_hex(const std::string& s) {
  return std::stoull(s, nullptr, 16);
}

}  // namespace detail

inline nlohmann::json chunk_to_json(const ChunkReport& r) {
  nlohmann::json j;
  j["inequality"] = r.inequality;
  j["lo"] = r.lo;
  j["hi"] = r.hi;
  auto viol = nlohmann::json::array();
  for (const auto& v : r.violations)
    viol.push_back({{"n", detail::int_to_json(v.n)}, {"gap", detail::int_to_json(v.gap)}});
  j["violations"] = std::move(viol);
  j["equality_count"] = r.equality_count;
  j["equality_sample"] = r.equality_sample;
  if (r.min_positive_gap)
    j["min_positive_gap"] = {{"n", detail::int_to_json(r.min_positive_gap->n)},
                             {"gap", detail::int_to_json(r.min_positive_gap->gap)}};
  j["rows_checked"] = r.rows_checked;
  j["checksum"] = detail::checksum_hex(r.checksum);
  j["primes_in_range"] = r.primes_in_range;
  j["prime_powers_in_range"] = r.prime_powers_in_range;
  j["equal_primes"] = r.equal_primes;
  j["equal_prime_powers"] = r.equal_prime_powers;
  j["eq_not_prime"] = r.eq_not_prime;
  j["prime_not_eq"] = r.prime_not_eq;
  j["eq_not_prime_power"] = r.eq_not_prime_power;
  j["prime_power_not_eq"] = r.prime_power_not_eq;
  return j;
}

inline ChunkReport chunk_from_json(const nlohmann::json& j) {
  ChunkReport r;
  r.inequality = j.at("inequality").get<std::string>();
  r.lo = j.at("lo").get<uint64_t>();
  r.hi = j.at("hi").get<uint64_t>();
  for (const auto& v : j.at("violations"))
    r.violations.push_back({detail::int_from_json(v.at("n")), detail::int_from_json(v.at("gap"))});
  r.equality_count = j.at("equality_count").get<uint64_t>();
  r.equality_sample = j.at("equality_sample").get<std::vector<uint64_t>>();
  if (j.contains("min_positive_gap"))
    r.min_positive_gap = GapValue{detail::int_from_json(j.at("min_positive_gap").at("n")),
                                  detail::int_from_json(j.at("min_positive_gap").at("gap"))};
  r.rows_checked = j.at("rows_checked").get<uint64_t>();
  r.checksum = detail::checksum_from_hex(j.at("checksum").get<std::string>());
  r.primes_in_range = j.at("primes_in_range").get<uint64_t>();
  r.prime_powers_in_range = j.at("prime_powers_in_range").get<uint64_t>();
  r.equal_primes = j.at("equal_primes").get<uint64_t>();
  r.equal_prime_powers = j.at("equal_prime_powers").get<uint64_t>();
  r.eq_not_prime = j.at("eq_not_prime").get<std::vector<uint64_t>>();
  r.prime_not_eq = j.at("prime_not_eq").get<std::vector<uint64_t>>();
  r.eq_not_prime_power = j.at("eq_not_prime_power").get<std::vector<uint64_t>>();
  r.prime_power_not_eq = j.at("prime_power_not_eq").get<std::vector<uint64_t>>();
  return r;
}

/// Report rendering used by the CLI --report flag. generated_at is the only
/// field that varies between identical runs (elapsed_ms aside).
inline nlohmann::json report_to_json(const VerificationReport& r, const std::string& generated_at) {
  nlohmann::json j;
  j["inequality"] = r.inequality;
  j["from"] = r.lo;
  j["to"] = r.hi;
  auto viol = nlohmann::json::array();
  for (const auto& v : r.violations)
    viol.push_back({{"n", detail::int_to_json(v.n)}, {"gap", detail::int_to_json(v.gap)}});
  j["violations"] = std::move(viol);
  j["equality_count"] = r.equality_count;
  j["equality_sample"] = r.equality_sample;
  j["equality_class_observed"] = observed_class_name(r.equality_class_observed);
  if (r.min_positive_gap)
    j["min_positive_gap"] = {{"n", detail::int_to_json(r.min_positive_gap->n)},
                             {"gap", detail::int_to_json(r.min_positive_gap->gap)}};
  if (!r.class_counterexamples.empty()) j["class_counterexamples"] = r.class_counterexamples;
  j["rows_checked"] = r.rows_checked;
  j["checksum"] = detail::checksum_hex(r.checksum);
  j["elapsed_ms"] = r.elapsed_ms;
  j["generated_at"] = generated_at;
  return j;
}

// --- range orchestration -----------------------------------------------------

struct RangeRunOptions : VerifyOptions {
  unsigned workers = 0;  // 0: hardware concurrency
  uint64_t chunk_len = uint64_t{1} << 16;
  std::string journal_path;  // empty: no checkpointing
  std::function<void(const ChunkReport&)> on_chunk_done;  // called as chunks complete
};

namespace detail {

inline std::vector<std::pair<uint64_t, uint64_t>> partition(uint64_t lo, uint64_t hi,
                                                            uint64_t chunk_len) {
  std::vector<std::pair<uint64_t, uint64_t>> chunks;
  for (uint64_t a = lo; a <= hi;) {
    uint64_t b = a + std::min<uint64_t>(chunk_len - 1, hi - a);
    chunks.emplace_back(a, b);
    if (b == hi) break;
    a = b + 1;
  }
  return chunks;
}

inline std::map<std::pair<uint64_t, uint64_t>, ChunkReport> load_journal(
    const std::string& path, const std::string& ineq_id) {
  std::map<std::pair<uint64_t, uint64_t>, ChunkReport> done;
  std::ifstream in(path);
  if (!in) return done;  // absent journal: nothing to resume
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception&) {
      throw std::ios_base::failure("journal: unparsable line " + std::to_string(lineno) + " in " + path);
    }
    if (j.value("inequality", std::string{}) != ineq_id) continue;
    ChunkReport r = chunk_from_json(j);
    done[{r.lo, r.hi}] = std::move(r);
  }
  return done;
}

}  // namespace detail

/// Partitions [lo, hi] into chunks, evaluates them on a bounded worker pool
/// and merges deterministically: the report is bit-identical for every
/// workers/chunk_len choice. With a journal path set, completed chunks are
/// appended as JSON lines and matching chunks are skipped on resume.
inline VerificationReport verify_range(const InequalityDescriptor& d, uint64_t lo, uint64_t hi,
                                       const RangeRunOptions& opts = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  if (opts.chunk_len == 0) throw std::invalid_argument("verify_range: chunk_len must be positive");
  if (opts.chunk_len > opts.segment_budget)
    throw std::length_error("verify_range: chunk_len exceeds segment budget");
  if (lo == 0 || lo > hi) throw std::domain_error("verify_range: bad range");
  if (lo < d.min_n)
    throw std::domain_error("verify_range: " + d.id + " requires n >= " + std::to_string(d.min_n));

  const auto chunks = detail::partition(lo, hi, opts.chunk_len);
  std::vector<ChunkReport> results(chunks.size());
  std::vector<char> have(chunks.size(), 0);

  std::vector<std::size_t> pending;
  if (!opts.journal_path.empty()) {
    auto done = detail::load_journal(opts.journal_path, d.id);
    for (std::size_t i = 0; i < chunks.size(); ++i) {
      auto it = done.find(chunks[i]);
      if (it != done.end()) {
        results[i] = it->second;
        have[i] = 1;
      } else {
        pending.push_back(i);
      }
    }
  } else {
    pending.resize(chunks.size());
    for (std::size_t i = 0; i < chunks.size(); ++i) pending[i] = i;
  }

  std::ofstream journal_out;
  if (!opts.journal_path.empty() && !pending.empty()) {
    journal_out.open(opts.journal_path, std::ios::app);
    if (!journal_out) throw std::ios_base::failure("journal: cannot open " + opts.journal_path);
  }

  std::mutex sink_mutex;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  std::exception_ptr first_error;

  auto work = [&] {
    while (!abort.load(std::memory_order_relaxed)) {
      std::size_t k = next.fetch_add(1);
      if (k >= pending.size()) return;
      std::size_t i = pending[k];
      try {
        ChunkReport r = verify_chunk(d, chunks[i].first, chunks[i].second, opts);
        std::lock_guard lock(sink_mutex);
        if (journal_out.is_open()) {
          journal_out << chunk_to_json(r).dump() << '\n';
          journal_out.flush();
        }
        if (opts.on_chunk_done) opts.on_chunk_done(r);
        results[i] = std::move(r);
        have[i] = 1;
      } catch (...) {
        std::lock_guard lock(sink_mutex);
        if (!first_error) first_error = std::current_exception();
        abort = true;
      }
    }
  };

  unsigned workers = opts.workers ? opts.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(pending.size(), 1)));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  VerificationReport report = merge_reports(results, opts);
  report.elapsed_ms = static_cast<uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                                std::chrono::steady_clock::now() - t0)
                                                .count());
  return report;
}

/// The k smallest strictly positive gaps in [lo, hi], ordered by gap then n.
/// Equality rows are excluded; violations would surface through verify, not
/// here.
inline std::vector<GapValue> find_extremes(const InequalityDescriptor& d, uint64_t lo, uint64_t hi,
                                           std::size_t k, const VerifyOptions& opts = {}) {
  if (k == 0) throw std::invalid_argument("find_extremes: k must be >= 1");
  if (lo == 0 || lo > hi) throw std::domain_error("find_extremes: bad range");
  if (lo < d.min_n)
    throw std::domain_error("find_extremes: " + d.id + " requires n >= " + std::to_string(d.min_n));

  auto worse = [](const GapValue& a, const GapValue& b) {
    return a.gap != b.gap ? a.gap > b.gap : a.n > b.n;
  };
  std::vector<GapValue> best;
  for (auto [a, b] : detail::partition(lo, hi, opts.segment_budget)) {
    RangeTable table = sieve_range(a, b, opts.segment_budget);
    for (const FunctionBundle& row : table.rows) {
      Int g = gap(d, row);
      if (g.sign() <= 0) continue;
      GapValue cand{row.n, g};
      if (best.size() < k) {
        best.push_back(std::move(cand));
        std::push_heap(best.begin(), best.end(), worse);
      } else if (worse(best.front(), cand)) {
        std::pop_heap(best.begin(), best.end(), worse);
        best.back() = std::move(cand);
        std::push_heap(best.begin(), best.end(), worse);
      }
    }
  }
  std::sort_heap(best.begin(), best.end(), worse);
  return best;
}

/// Streams one CSV row per n with header, all values as decimal strings.
inline uint64_t export_csv(const InequalityDescriptor& d, uint64_t lo, uint64_t hi,
                           std::ostream& os, const VerifyOptions& opts = {}) {
  if (lo == 0 || lo > hi) throw std::domain_error("export_csv: bad range");
  if (lo < d.min_n)
    throw std::domain_error("export_csv: " + d.id + " requires n >= " + std::to_string(d.min_n));
  os << "n,phi,psi,sigma,phi_star,sigma_star,lhs,rhs,gap\n";
  uint64_t rows = 0;
  for (auto [a, b] : detail::partition(lo, hi, opts.segment_budget)) {
    RangeTable table = sieve_range(a, b, opts.segment_budget);
    for (const FunctionBundle& row : table.rows) {
      Int lhs = d.lhs.eval(row);
      Int rhs = d.rhs.eval(row);
      os << row.n.to_decimal() << ',' << row.phi.to_decimal() << ',' << row.psi.to_decimal()
         << ',' << row.sigma.to_decimal() << ',' << row.phi_star.to_decimal() << ','
         << row.sigma_star.to_decimal() << ',' << lhs.to_decimal() << ',' << rhs.to_decimal()
         << ',' << (lhs - rhs).to_decimal() << '\n';
      ++rows;
    }
  }
  return rows;
}

}  // namespace pps
