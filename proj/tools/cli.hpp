#pragma once

// Command implementations for the antichains tool. Everything writes to the
// streams it is given so the tests can run commands in-process.

#include "antichain/partitions.hpp"
#include "antichain/pcoeff.hpp"
#include "antichain/sequences.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace antichain::cli {

enum Exit : int { success = 0, failure = 1, usage = 2 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string subcommand;
  int n = 0;
  std::string method = "pcoeff";
  int k = 2;
  unsigned threads = 1;
  std::string format = "text";
  std::uint64_t seed = 1;
  int verbosity = 0;
  bool allow_long_run = false;
  bool verify = false;
};

/// ANTICHAIN_THREADS if set, one thread otherwise.
inline unsigned default_threads() {
  const char* env = std::getenv("ANTICHAIN_THREADS");
  if (!env || !*env) return 1;
  char* end = nullptr;
  const long t = std::strtol(env, &end, 10);
  if (*end != '\0' || t < 1 || t > 1024) throw UsageError(std::string("bad ANTICHAIN_THREADS value '") + env + "'");
  return static_cast<unsigned>(t);
}

// Measured on one core: the A8 sum runs at roughly 100 ns per (alpha, beta)
// term with about 6e9 terms, after ~75 s of setup.
inline double long_run_estimate_seconds(unsigned threads) { return 75.0 + 500.0 / threads; }

inline std::string describe_seconds(double s) {
  std::ostringstream o;
  if (s < 120) o << static_cast<int>(s) << " s";
  else o << static_cast<int>(s / 60 + 0.5) << " min";
  return o.str();
}

namespace detail {

inline PCoeffOptions pcoeff_options(const RunConfig& cfg, std::ostream& err) {
  PCoeffOptions opt;
  opt.threads = cfg.threads;
  if (cfg.verbosity >= 0)
    opt.progress = [&err](std::size_t done, std::size_t total) {
      if (total < 1000) return;
      if (done == total || done % (total / 100) == 0) err << "progress " << done << "/" << total << "\n" << std::flush;
    };
  return opt;
}

inline void long_run_guard(int n, const RunConfig& cfg, std::ostream& err) {
  if (n < 8) return;
  const std::string estimate = describe_seconds(long_run_estimate_seconds(cfg.threads));
  if (!cfg.allow_long_run)
    throw UsageError("n = 8 takes about " + estimate + " with " + std::to_string(cfg.threads) +
                     " thread(s); pass --allow-long-run to start it");
  err << "estimated run time: " << estimate << " with " << cfg.threads << " thread(s)\n" << std::flush;
}

/// B_0..B_n as interval sizes.
inline std::vector<BigCount> basic_sizes(int n) {
  if (n > 6) throw UnsupportedSize("basic interval sizes are computed up to n = 6");
  std::vector<BigCount> b;
  for (int i = 0; i <= n; ++i) b.push_back(interval_size(basic_interval(Universe(i))));
  return b;
}

inline BigCount enumerated_dedekind(int n) {
  if (n > 5) throw UnsupportedSize("enumerate is limited to n <= 5");
  return all_antichains(Universe(n)).size();
}

}  // namespace detail

inline const std::vector<std::string>& dedekind_methods() {
  static const std::vector<std::string> m = {"enumerate", "bn", "stirling", "connected", "pcoeff"};
  return m;
}

/// A_n by one method. Direct counts of D and C are used up to n = 5 and
/// converted from B for n = 6.
inline BigCount dedekind_by(int n, const std::string& method, const RunConfig& cfg, std::ostream& err) {
  if (method == "enumerate") return detail::enumerated_dedekind(n);
  if (method == "bn") return a_from_b(detail::basic_sizes(n))[static_cast<std::size_t>(n)];
  if (method == "stirling" || method == "connected") {
    if (n > 6) throw UnsupportedSize(method + " is limited to n <= 6");
    std::vector<BigCount> v = {2};
    for (int i = 1; i <= std::min(n, 5); ++i)
      v.push_back(method == "stirling" ? distinguishing_count_direct(i) : connected_count_direct(i));
    if (n == 6) {
      const auto b = detail::basic_sizes(6);
      v.push_back(method == "stirling" ? d_from_b(b)[6] : c_from_b(b)[6]);
    }
    const auto a = method == "stirling" ? a_from_d(v) : a_from_b(b_via_connected(v));
    return a[static_cast<std::size_t>(n)];
  }
  if (method == "pcoeff") {
    if (n < cfg.k) throw UnsupportedSize("pcoeff needs n >= k");
    detail::long_run_guard(n, cfg, err);
    return dedekind_pcoeff(n - cfg.k, cfg.k, detail::pcoeff_options(cfg, err));
  }
  throw UsageError("unknown method '" + method + "'");
}

inline bool method_feasible(int n, const std::string& method, const RunConfig& cfg) {
  if (method == "enumerate") return n <= 5;
  if (method == "pcoeff") return n >= 2 && (n < 8 || cfg.allow_long_run);
  return n <= 6;
}

inline int cmd_dedekind(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  BigCount value;
  if (cfg.verify) {
    std::optional<BigCount> first;
    std::string first_method;
    bool ok = true;
    RunConfig c = cfg;
    c.k = 2;
    for (const auto& m : dedekind_methods()) {
      if (!method_feasible(cfg.n, m, c)) continue;
      const BigCount v = dedekind_by(cfg.n, m, c, err);
      err << m << " " << to_string(v) << "\n";
      if (!first) {
        first = v;
        first_method = m;
      } else if (v != *first) {
        err << "mismatch: " << m << " gives " << to_string(v) << ", " << first_method << " gives " << to_string(*first) << "\n";
        ok = false;
      }
    }
    if (!first) throw UnsupportedSize("no method is feasible for this n");
    if (!ok) return failure;
    value = *first;
  } else {
    value = dedekind_by(cfg.n, cfg.method, cfg, err);
  }
  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["n"] = cfg.n;
    j["method"] = cfg.verify ? "verify" : cfg.method;
    j["value"] = to_string(value);
    out << j.dump() << "\n";
  } else {
    out << to_string(value) << "\n";
  }
  return success;
}

/// A_0..A_max_n from enumeration (n <= 5) and P-coefficients (n >= 6).
inline SequenceTable compute_table(const RunConfig& cfg, std::ostream& err) {
  RunConfig c = cfg;
  c.k = 2;
  std::vector<BigCount> a;
  for (int n = 0; n <= cfg.n; ++n) a.push_back(n <= 5 ? detail::enumerated_dedekind(n) : dedekind_by(n, "pcoeff", c, err));
  return SequenceTable::from_dedekind(a);
}

inline int cmd_table(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  detail::long_run_guard(cfg.n, cfg, err);
  const SequenceTable t = compute_table(cfg, err);
  if (cfg.format == "json") {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t n = 0; n < t.rows.size(); ++n) {
      const auto& r = t.rows[n];
      rows.push_back({{"n", n}, {"A", to_string(r.a)}, {"B", to_string(r.b)}, {"C", to_string(r.c)}, {"D", to_string(r.d)}});
    }
    out << nlohmann::ordered_json{{"rows", rows}}.dump() << "\n";
  } else if (cfg.format == "csv") {
    out << "n,A,B,C,D\n";
    for (std::size_t n = 0; n < t.rows.size(); ++n) {
      const auto& r = t.rows[n];
      out << n << "," << to_string(r.a) << "," << to_string(r.b) << "," << to_string(r.c) << "," << to_string(r.d) << "\n";
    }
  } else {
    std::size_t w = 1;
    for (const auto& r : t.rows) w = std::max(w, to_string(r.a).size());
    const int width = static_cast<int>(w) + 2;
    out << "n" << std::setw(width) << "A" << std::setw(width) << "B" << std::setw(width) << "C" << std::setw(width) << "D" << "\n";
    for (std::size_t n = 0; n < t.rows.size(); ++n) {
      const auto& r = t.rows[n];
      out << n << std::setw(width) << to_string(r.a) << std::setw(width) << to_string(r.b) << std::setw(width)
          << to_string(r.c) << std::setw(width) << to_string(r.d) << "\n";
    }
  }
  if (!t.consistent()) {
    err << "table rows do not satisfy the recursions\n";
    return failure;
  }
  return success;
}

struct IntervalArgs {
  std::string bottom, top;
  bool both_parities = false;
  bool stats = false;
  bool graph = false;
};

inline int cmd_interval_size(const RunConfig& cfg, const IntervalArgs& args, std::ostream& out, std::ostream& err) {
  const Universe u(cfg.n);
  const Antichain lo = parse_antichain(args.bottom, u), hi = parse_antichain(args.top, u);
  if (!leq(lo, hi)) {
    out << "0\n";
    return success;
  }
  const Interval iv(lo, hi);
  int code = success;
  if (args.both_parities) {
    const BigCount even = size_leveled(iv, Parity::even), odd = size_leveled(iv, Parity::odd);
    out << "even " << to_string(even) << "\nodd " << to_string(odd) << "\n";
    if (even != odd) {
      err << "the two parities disagree\n";
      code = failure;
    }
  } else {
    out << to_string(interval_size(iv)) << "\n";
  }
  if (args.graph) {
    const IntervalGraph g = interval_graph(iv);
    out << "vertices";
    for (auto v : g.vertices) out << " " << format_set(v, cfg.n);
    out << "\nedges";
    for (auto [i, j] : g.edges) out << " " << i << "-" << j;
    out << "\n";
  }
  if (args.stats) {
    const auto s = default_sizer().stats();
    err << "memo hits " << s.hits << ", misses " << s.misses << ", entries " << s.entries << "\n";
  }
  return code;
}

struct PCoeffArgs {
  std::string rho1, rho2;
  bool brute = false;
};

inline int cmd_pcoeff(const RunConfig& cfg, const PCoeffArgs& args, std::ostream& out) {
  const Universe u(cfg.n);
  const Antichain r1 = parse_antichain(args.rho1, u), r2 = parse_antichain(args.rho2, u);
  BigCount v;
  if (cfg.k == 2 && !args.brute) v = pcoeff_k2(r1, r2);
  else v = pcoeff_bruteforce({cfg.n, cfg.k, r1, r2});
  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["n"] = cfg.n;
    j["k"] = cfg.k;
    j["value"] = to_string(v);
    out << j.dump() << "\n";
  } else {
    out << to_string(v) << "\n";
  }
  return success;
}

// Verification suites. Each one stops at its first failure and reports it.

struct SuiteResult {
  std::string name;
  std::uint64_t checks = 0;
  std::optional<std::string> failure;
};

namespace detail {

/// Comparable pairs: all of them for n <= 4, `samples` seeded random ones above.
template <class F>
void for_pairs(int n, std::uint64_t seed, std::size_t samples, F&& f) {
  const auto lattice = all_antichains(Universe(n));
  if (n <= 4) {
    for (const auto& a : lattice)
      for (const auto& b : lattice)
        if (leq(a, b) && !f(a, b)) return;
    return;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, lattice.size() - 1);
  for (std::size_t i = 0; i < samples; ++i) {
    const Antichain& a = lattice[pick(rng)];
    const Antichain& b = lattice[pick(rng)];
    if (!f(meet(a, b), join(a, b))) return;
  }
}

inline std::string pair_text(const Antichain& a, const Antichain& b) { return format(a) + " " + format(b); }

}  // namespace detail

inline SuiteResult check_lattice(int n, std::uint64_t seed, std::size_t samples) {
  SuiteResult r{"lattice", 0, std::nullopt};
  const auto lattice = all_antichains(Universe(n));
  if (lattice.size() != known_dedekind()[static_cast<std::size_t>(n)]) {
    r.failure = "lattice has " + std::to_string(lattice.size()) + " elements";
    return r;
  }
  std::vector<int> shift(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) shift[static_cast<std::size_t>(i)] = (i + 1) % n;
  auto check = [&](const Antichain& a, const Antichain& b) {
    ++r.checks;
    const Antichain m = meet(a, b), j = join(a, b);
    const bool ok = leq(m, a) && leq(m, b) && leq(a, j) && leq(b, j) && meet(a, j) == a && join(a, m) == a &&
                    (leq(a, b) == (j == b)) && (leq(a, b) == (m == a)) && dual(dual(a)) == a &&
                    (!leq(a, b) || leq(dual(b), dual(a))) &&
                    canonicalize(relabel(a, shift)).representative == canonicalize(a).representative;
    if (!ok) r.failure = "lattice laws fail at " + detail::pair_text(a, b);
    return ok;
  };
  if (n <= 4) {
    for (const auto& a : lattice)
      for (const auto& b : lattice)
        if (!check(a, b)) return r;
    return r;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, lattice.size() - 1);
  for (std::size_t i = 0; i < samples; ++i)
    if (!check(lattice[pick(rng)], lattice[pick(rng)])) break;
  return r;
}

/// Leveled sums with both parities, the dispatcher and plain enumeration agree.
inline SuiteResult check_sizes(int n, std::uint64_t seed, std::size_t samples) {
  SuiteResult r{"sizes", 0, std::nullopt};
  detail::for_pairs(n, seed, samples, [&](const Antichain& a, const Antichain& b) {
    ++r.checks;
    const Interval iv(a, b);
    const BigCount even = size_leveled(iv, Parity::even), odd = size_leveled(iv, Parity::odd);
    const BigCount counted = count_by_enumeration(iv), fast = interval_size(iv);
    if (even == odd && odd == counted && counted == fast) return true;
    r.failure = "sizes differ on " + format(iv) + ": even " + to_string(even) + ", odd " + to_string(odd) +
                ", enumeration " + to_string(counted) + ", dispatcher " + to_string(fast);
    return false;
  });
  return r;
}

using Partitioner = std::function<IntervalPartition(const Antichain&)>;

/// Elementwise checks for n <= 3, size sums above. Every product split is size-checked.
inline SuiteResult check_partitions(int n, std::uint64_t seed, std::size_t samples, const Partitioner& partition = lnd_partition) {
  SuiteResult r{"partitions", 0, std::nullopt};
  const Universe u(n);
  const auto lattice = all_antichains(u);
  auto run = [&](const Antichain& alpha) {
    ++r.checks;
    const IntervalPartition p = partition(alpha);
    const PartitionCheck c = verify_partition(p, n <= 3 ? VerifyMode::full : VerifyMode::size);
    if (c.ok) return true;
    std::string msg = "partition at " + format(alpha) + " fails: " + c.detail;
    if (c.witness) msg += ", witness " + format(*c.witness);
    r.failure = msg;
    return false;
  };
  if (n <= 4) {
    for (const auto& alpha : lattice)
      if (!run(alpha)) return r;
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, lattice.size() - 1);
    for (std::size_t i = 0; i < samples; ++i)
      if (!run(lattice[pick(rng)])) return r;
  }
  for (unsigned n1 = 1; n1 + 1 < (1u << n); ++n1) {
    ++r.checks;
    const auto p = product_partition(u, static_cast<SubsetMask>(n1), static_cast<SubsetMask>(u.all() & ~n1));
    const PartitionCheck c = verify_partition(p, VerifyMode::size);
    if (!c.ok) {
      r.failure = "product partition " + format_set(static_cast<SubsetMask>(n1), n) + " fails: " + c.detail;
      return r;
    }
  }
  return r;
}

/// Fast k = 2 coefficients against the definition, and the symmetry reduction.
inline SuiteResult check_pcoeff(int n, std::uint64_t seed, std::size_t samples, unsigned threads) {
  SuiteResult r{"pcoeff", 0, std::nullopt};
  std::uint64_t skipped = 0;
  detail::for_pairs(n, seed, samples, [&](const Antichain& a, const Antichain& b) {
    BigCount brute;
    try {
      brute = pcoeff_bruteforce({n, 2, a, b});
    } catch (const UnsupportedSize&) {
      ++skipped;
      return true;
    }
    ++r.checks;
    const BigCount fast = pcoeff_k2(a, b);
    if (fast == brute) return true;
    r.failure = "pcoeff differs on " + detail::pair_text(a, b) + ": " + to_string(fast) + " vs " + to_string(brute);
    return false;
  });
  if (r.failure) return r;
  const int m = std::min(n, 4);
  PCoeffOptions with, without;
  with.threads = without.threads = threads;
  without.use_symmetry = false;
  ++r.checks;
  const BigCount x = dedekind_pcoeff(m, 2, with), y = dedekind_pcoeff(m, 2, without);
  if (x != y) r.failure = "symmetry reduction changes A_" + std::to_string(m + 2) + ": " + to_string(x) + " vs " + to_string(y);
  return r;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> s = {"lattice", "sizes", "partitions", "pcoeff"};
  return s;
}

inline int cmd_verify(const RunConfig& cfg, const std::string& suite, std::size_t samples, std::ostream& out) {
  if (cfg.n > 5) throw UsageError("verify runs up to n = 5");
  int code = success;
  for (const auto& name : suite_names()) {
    if (suite != "all" && suite != name) continue;
    SuiteResult r;
    if (name == "lattice") r = check_lattice(cfg.n, cfg.seed, samples);
    else if (name == "sizes") r = check_sizes(cfg.n, cfg.seed, samples);
    else if (name == "partitions") r = check_partitions(cfg.n, cfg.seed, std::min<std::size_t>(samples, 500));
    else r = check_pcoeff(cfg.n, cfg.seed, std::min<std::size_t>(samples, 1000), cfg.threads);
    if (r.failure) {
      out << name << ": FAIL after " << r.checks << " checks: " << *r.failure << "\n";
      code = failure;
    } else {
      out << name << ": pass (" << r.checks << " checks)\n";
    }
  }
  return code;
}

inline int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  using clock = std::chrono::steady_clock;
  auto timed = [&](const std::string& name, auto&& f) {
    const auto t0 = clock::now();
    const std::string v = f();
    out << std::left << std::setw(28) << name << std::right << std::setw(12) << std::fixed << std::setprecision(3)
        << std::chrono::duration<double>(clock::now() - t0).count() << " s  " << v << "\n";
  };
  const int n = cfg.n;
  if (n <= 5) timed("enumerate A_" + std::to_string(n), [&] { return to_string(detail::enumerated_dedekind(n)); });
  if (n <= 6) {
    default_sizer().clear();
    timed("interval size B_" + std::to_string(n), [&] { return to_string(interval_size(basic_interval(Universe(n)))); });
  }
  if (n >= 2 && n <= 7) {
    RunConfig c = cfg;
    c.k = 2;
    timed("pcoeff A_" + std::to_string(n), [&] { return to_string(dedekind_by(n, "pcoeff", c, err)); });
  }
  return success;
}

/// Parses and runs one command line. argv[0] is the program name.
inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Counting in the lattice of antichains", "antichains"};
  app.require_subcommand(1, 1);
  try {
    cfg.threads = default_threads();
  } catch (const UsageError& e) {
    err << e.what() << "\n";
    return usage;
  }
  app.add_option("--threads", cfg.threads, "worker threads (default: ANTICHAIN_THREADS or 1)")->check(CLI::Range(1u, 1024u));
  app.add_flag("-v,--verbose", cfg.verbosity, "more diagnostics on stderr");
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "no progress output");

  const auto n_range = CLI::Range(0, max_universe);
  const std::vector<std::string> formats = {"text", "csv", "json"};

  auto* dedekind = app.add_subcommand("dedekind", "print the Dedekind number A_n");
  dedekind->add_option("n", cfg.n)->required()->check(n_range);
  dedekind->add_option("--method", cfg.method)->check(CLI::IsMember(dedekind_methods()));
  dedekind->add_option("--k", cfg.k, "coordinates for the pcoeff method")->check(CLI::Range(2, 8));
  dedekind->add_flag("--verify", cfg.verify, "run every feasible method and compare");
  dedekind->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json"}));
  dedekind->add_flag("--allow-long-run", cfg.allow_long_run);

  auto* table = app.add_subcommand("table", "print A, B, C, D for n = 0..max_n");
  table->add_option("max_n", cfg.n)->required()->check(n_range);
  table->add_option("--format", cfg.format)->check(CLI::IsMember(formats));
  table->add_flag("--allow-long-run", cfg.allow_long_run);

  IntervalArgs iv;
  auto* isize = app.add_subcommand("interval-size", "size of the interval [bottom, top]");
  isize->add_option("n", cfg.n)->required()->check(n_range);
  isize->add_option("bottom", iv.bottom)->required();
  isize->add_option("top", iv.top)->required();
  isize->add_flag("--both-parities", iv.both_parities, "compute both leveled sums and compare");
  isize->add_flag("--stats", iv.stats, "memo statistics on stderr");
  isize->add_flag("--graph", iv.graph, "print the interval graph");

  PCoeffArgs pc;
  auto* pcoeff = app.add_subcommand("pcoeff", "P-coefficient for rho1 <= rho2");
  pcoeff->add_option("n", cfg.n)->required()->check(n_range);
  pcoeff->add_option("rho1", pc.rho1)->required();
  pcoeff->add_option("rho2", pc.rho2)->required();
  pcoeff->add_option("--k", cfg.k)->check(CLI::Range(0, 8));
  pcoeff->add_flag("--brute", pc.brute, "count straight from the definition");
  pcoeff->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json"}));

  std::string suite = "all";
  std::size_t samples = 10000;
  auto* verify = app.add_subcommand("verify", "run the consistency suites for one n");
  verify->add_option("n", cfg.n)->required()->check(n_range);
  std::vector<std::string> suites = suite_names();
  suites.push_back("all");
  verify->add_option("--suite", suite)->check(CLI::IsMember(suites));
  verify->add_option("--seed", cfg.seed);
  verify->add_option("--samples", samples, "random pairs for n = 5")->check(CLI::Range(std::size_t{1}, std::size_t{1000000}));

  auto* bench = app.add_subcommand("bench", "time the main pipelines");
  bench->add_option("n", cfg.n)->check(CLI::Range(0, 7));
  cfg.n = 6;

  std::vector<const char*> args;
  for (const auto& a : argv) args.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(args.size()), args.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return usage;
  }
  if (quiet) cfg.verbosity = -1;

  try {
    if (*dedekind) return cmd_dedekind(cfg, out, err);
    if (*table) return cmd_table(cfg, out, err);
    if (*isize) return cmd_interval_size(cfg, iv, out, err);
    if (*pcoeff) return cmd_pcoeff(cfg, pc, out);
    if (*verify) return cmd_verify(cfg, suite, samples, out);
    if (*bench) return cmd_bench(cfg, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const std::logic_error& e) {
    // Parse failures, universe mismatches and infeasible sizes.
    err << "error: " << e.what() << "\n";
    return usage;
  }
  return usage;
}

}  // namespace antichain::cli
