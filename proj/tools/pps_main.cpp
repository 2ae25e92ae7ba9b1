// pps: evaluate phi/psi/sigma exactly, verify the inequality catalog over
// ranges, list the tightest cases, and certify the polynomial obligations.
//
// Exit codes: 0 ok, 1 inequality violation found, 2 inconclusive certificate,
// 3 usage error, 4 I/O error.

#include <algorithm>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pps/pps.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 3;
constexpr int kExitIo = 4;

std::string iso8601_utc_now() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<std::string> expand_ineq_ids(const std::vector<std::string>& flags) {
  std::vector<std::string> ids;
  auto push_unique = [&ids](const std::string& id) {
    for (const auto& existing : ids)
      if (existing == id) return;
    ids.push_back(id);
  };
  for (const auto& f : flags) {
    if (f == "all") {
      for (const auto& d : pps::registry()) push_unique(d.id);
    } else {
      if (!pps::has_descriptor(f)) throw std::invalid_argument("unknown inequality id: " + f);
      push_unique(f);
    }
  }
  if (ids.empty()) throw std::invalid_argument("no inequality selected");
  return ids;
}

void print_bundle(const pps::FunctionBundle& b, const pps::Factorization& f) {
  std::cout << "n          = " << b.n << "\n";
  std::cout << "factors    = ";
  if (f.factors.empty()) {
    std::cout << "1";
  } else {
    bool first = true;
    for (const auto& pp : f.factors) {
      if (!first) std::cout << " * ";
      first = false;
      std::cout << pp.prime;
      if (pp.exponent > 1) std::cout << "^" << pp.exponent;
    }
  }
  if (!f.primality_proven) std::cout << "   (prime factors certified probabilistically)";
  std::cout << "\n";
  std::cout << "phi        = " << b.phi << "\n";
  std::cout << "psi        = " << b.psi << "\n";
  std::cout << "sigma      = " << b.sigma << "\n";
  std::cout << "phi_star   = " << b.phi_star << "\n";
  std::cout << "sigma_star = " << b.sigma_star << "\n";
  std::cout << "omega      = " << b.big_omega << "\n";
}

int cmd_eval(const std::string& n_text, const std::vector<std::string>& ineq_flags) {
  pps::Int n = pps::Int::from_decimal(n_text);
  if (n.sign() <= 0) throw std::domain_error("eval: n must be >= 1");
  pps::Factorization f = pps::factorize(n);
  pps::FunctionBundle b;
  b.n = n;
  b.phi = pps::evaluate(pps::Fn::phi, f);
  b.psi = pps::evaluate(pps::Fn::psi, f);
  b.sigma = pps::evaluate(pps::Fn::sigma, f);
  b.phi_star = pps::evaluate(pps::Fn::phi_star, f);
  b.sigma_star = pps::evaluate(pps::Fn::sigma_star, f);
  b.big_omega = static_cast<uint32_t>(pps::big_omega(f));
  print_bundle(b, f);
  if (!ineq_flags.empty()) {
    for (const auto& id : expand_ineq_ids(ineq_flags)) {
      const auto& d = pps::descriptor(id);
      if (b.n < pps::Int(d.min_n))
        throw std::domain_error("eval: " + d.id + " requires n >= " + std::to_string(d.min_n));
      pps::Int lhs = d.lhs.eval(b);
      pps::Int rhs = d.rhs.eval(b);
      std::cout << "ineq " << d.id << ": lhs=" << lhs << " rhs=" << rhs << " gap=" << (lhs - rhs)
                << "\n";
    }
  }
  return kExitOk;
}

struct VerifyFlags {
  std::vector<std::string> ineq;
  uint64_t from = 0;
  uint64_t to = 0;
  unsigned threads = 0;
  uint64_t chunk = uint64_t{1} << 16;
  std::string report_path;
  std::string csv_path;
  std::string journal_path;
};

int cmd_verify(const VerifyFlags& flags) {
  auto ids = expand_ineq_ids(flags.ineq);
  if (!flags.csv_path.empty() && ids.size() != 1)
    throw std::invalid_argument("--csv requires exactly one --ineq");

  pps::RangeRunOptions opts;
  opts.workers = flags.threads;
  opts.chunk_len = flags.chunk;
  opts.journal_path = flags.journal_path;

  bool any_violation = false;
  nlohmann::json report_array = nlohmann::json::array();
  const std::string stamp = iso8601_utc_now();

  for (const auto& id : ids) {
    const auto& d = pps::descriptor(id);
    pps::VerificationReport r = pps::verify_range(d, flags.from, flags.to, opts);
    std::cout << d.id << "  [" << r.lo << ", " << r.hi << "]"
              << "  rows=" << r.rows_checked << "  violations=" << r.violations.size()
              << "  equality=" << r.equality_count << " (" << observed_class_name(r.equality_class_observed)
              << ")";
    if (r.min_positive_gap)
      std::cout << "  min_gap=" << r.min_positive_gap->gap << "@" << r.min_positive_gap->n;
    std::cout << "  checksum=" << pps::detail::checksum_hex(r.checksum) << "  elapsed=" << r.elapsed_ms
              << "ms\n";
    if (!r.violations.empty()) {
      any_violation = true;
      for (const auto& v : r.violations)
        std::cout << "  VIOLATION n=" << v.n << " gap=" << v.gap << "\n";
    }
    report_array.push_back(pps::report_to_json(r, stamp));
  }

  if (!flags.report_path.empty()) {
    std::ofstream out(flags.report_path);
    if (!out) throw std::ios_base::failure("cannot open report file " + flags.report_path);
    out << report_array.dump(2) << "\n";
    if (!out.good()) throw std::ios_base::failure("failed writing " + flags.report_path);
  }
  if (!flags.csv_path.empty()) {
    std::ofstream out(flags.csv_path);
    if (!out) throw std::ios_base::failure("cannot open csv file " + flags.csv_path);
    pps::export_csv(pps::descriptor(ids[0]), flags.from, flags.to, out);
    if (!out.good()) throw std::ios_base::failure("failed writing " + flags.csv_path);
  }
  return any_violation ? kExitViolation : kExitOk;
}

int cmd_extremes(const std::string& ineq, uint64_t from, uint64_t to, std::size_t top) {
  const auto& d = pps::descriptor(ineq);
  auto rows = pps::find_extremes(d, from, to, top);
  std::cout << "n gap\n";
  for (const auto& r : rows) std::cout << r.n << " " << r.gap << "\n";
  return kExitOk;
}

int cmd_certify(const std::string& theorem) {
  std::optional<int> filter;
  if (theorem != "all") {
    if (theorem.size() == 2 && theorem[0] == 'T' && theorem[1] >= '1' && theorem[1] <= '5')
      filter = theorem[1] - '0';
    else
      throw std::invalid_argument("certify: --theorem must be T1..T5 or all");
  }
  auto results = pps::certify_all(filter);
  bool all_ok = true;
  for (const auto& r : results) {
    const auto& ob = *r.obligation;
    std::string shift_text = "-";
    if (!ob.lower_bounds.empty()) {
      shift_text.clear();
      for (const auto& [v, b] : ob.lower_bounds) {
        if (!shift_text.empty()) shift_text += ",";
        shift_text += std::string(pps::var_name(v)) + "->+" + std::to_string(r.floor_used);
      }
    }
    std::printf("%-16s %-4s %-9s %-26s shift=%s", ob.id.c_str(),
                ob.theorem ? ("T" + std::to_string(*ob.theorem)).c_str() : "-",
                proof_case_name(ob.proof_case), cert_outcome_name(r.verdict.outcome),
                shift_text.c_str());
    if (r.verdict.witness.raw_mixed_sign) std::printf("  [raw coefficients mixed-sign]");
    if (r.verdict.witness.slice_points_checked)
      std::printf("  [%zu integer slices]", r.verdict.witness.slice_points_checked);
    std::printf("\n");
    if (!r.satisfied) all_ok = false;
  }
  std::printf("%zu/%zu obligations certified\n",
              static_cast<std::size_t>(std::count_if(results.begin(), results.end(),
                                                     [](const auto& r) { return r.satisfied; })),
              results.size());
  return all_ok ? kExitOk : kExitInconclusive;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact phi/psi/sigma toolkit: evaluation, inequality verification, certificates"};
  app.require_subcommand(1);

  std::string eval_n;
  std::vector<std::string> eval_ineq;
  auto* eval = app.add_subcommand("eval", "evaluate all functions at one n");
  eval->add_option("n", eval_n, "positive integer, any size")->required();
  eval->add_option("--ineq", eval_ineq, "also print lhs/rhs/gap for these inequality ids (or all)");

  VerifyFlags vf;
  auto* verify = app.add_subcommand("verify", "exhaustively verify inequalities over a range");
  verify->add_option("--ineq", vf.ineq, "inequality ids, repeatable, or all")->required();
  verify->add_option("--from", vf.from, "range start (inclusive)")->required();
  verify->add_option("--to", vf.to, "range end (inclusive)")->required();
  verify->add_option("--threads", vf.threads, "worker count (default: hardware)");
  verify->add_option("--chunk", vf.chunk, "chunk length (default 65536)");
  verify->add_option("--report", vf.report_path, "write JSON report array here");
  verify->add_option("--csv", vf.csv_path, "write per-n CSV here (single --ineq only)");
  verify->add_option("--journal", vf.journal_path, "append-only chunk journal for resume");

  std::string ex_ineq;
  uint64_t ex_from = 0, ex_to = 0;
  std::size_t ex_top = 10;
  auto* extremes = app.add_subcommand("extremes", "smallest strictly positive gaps in a range");
  extremes->add_option("--ineq", ex_ineq, "inequality id")->required();
  extremes->add_option("--from", ex_from, "range start (inclusive)")->required();
  extremes->add_option("--to", ex_to, "range end (inclusive)")->required();
  extremes->add_option("--top", ex_top, "how many rows (default 10)");

  std::string certify_theorem = "all";
  auto* certify = app.add_subcommand("certify", "run the polynomial certificates");
  certify->add_option("--theorem", certify_theorem, "T1..T5 or all (default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (eval->parsed()) return cmd_eval(eval_n, eval_ineq);
    if (verify->parsed()) return cmd_verify(vf);
    if (extremes->parsed()) return cmd_extremes(ex_ineq, ex_from, ex_to, ex_top);
    if (certify->parsed()) return cmd_certify(certify_theorem);
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
