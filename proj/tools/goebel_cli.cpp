// goebel: command-line front end for the (k,l)-Goebel integrality toolkit.
//
// Exit codes: 0 success, 1 domain or I/O error, 2 usage error.

#include "goebel/goebel.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

namespace fs = std::filesystem;
using namespace goebel;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Rows of strings with a fixed header, emitted as CSV or as a JSON array of
// objects carrying the same fields.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

nlohmann::json json_cell(const std::string& v) {
  if (v.empty()) return nullptr;
  bool integral = std::all_of(v.begin(), v.end(), [](char c) { return c >= '0' && c <= '9'; });
  if (integral && v.size() < 19) return std::stoull(v);
  char* end = nullptr;
  double d = std::strtod(v.c_str(), &end);
  if (end && *end == '\0') return d;
  return v;
}

void emit(const Table& t, const std::string& format, std::ostream& os) {
  if (format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : t.rows) {
      nlohmann::json o = nlohmann::json::object();
      for (std::size_t i = 0; i < t.header.size(); ++i) o[t.header[i]] = json_cell(row[i]);
      arr.push_back(o);
    }
    os << arr.dump(2) << '\n';
    return;
  }
  for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
}

template <class Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open output file " + path);
  fn(os);
  if (!os) throw IoError("write failed for " + path);
}

fs::path resolve_cache_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("GOEBEL_CACHE"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_DATA_HOME"); xdg && *xdg) return fs::path(xdg) / "goebel";
  if (const char* home = std::getenv("HOME"); home && *home) return fs::path(home) / ".local/share/goebel";
  return ".goebel-cache";
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create cache directory " + dir.string() + ": " + ec.message());
}

// "a..b" or "a".
std::pair<u64, u64> parse_range(const std::string& text) {
  try {
    auto dots = text.find("..");
    if (dots == std::string::npos) {
      u64 v = std::stoull(text);
      return {v, v};
    }
    u64 lo = std::stoull(text.substr(0, dots));
    u64 hi = std::stoull(text.substr(dots + 2));
    if (lo > hi) throw UsageError("empty range " + text);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw UsageError("invalid range '" + text + "'");
  }
}

// ---------------------------------------------------------------------------
// exact
// ---------------------------------------------------------------------------

struct ExactOpts {
  std::string k = "2";
  u64 l = 2;
  u64 limit = kDefaultNLimit;
  unsigned threads = 1;
  std::string cache_dir;
  bool no_cache = false;
  std::string out;
  std::string format = "csv";
};

std::map<u64, NkResult> load_nk_cache(const fs::path& file) {
  std::map<u64, NkResult> cached;
  std::ifstream is(file);
  if (!is) return cached;
  for (const auto& r : read_nk_csv(is))
    if (r.exact()) cached[r.k] = r;
  return cached;
}

int cmd_exact(const ExactOpts& o) {
  auto [k_lo, k_hi] = parse_range(o.k);
  if (k_lo < 2) throw UsageError("--k must be >= 2");
  if (o.limit < 2) throw UsageError("--limit must be >= 2");

  std::map<u64, NkResult> cached;
  fs::path cache_file;
  if (!o.no_cache) {
    fs::path dir = resolve_cache_dir(o.cache_dir);
    ensure_dir(dir);
    cache_file = dir / ("nk_l" + std::to_string(o.l) + ".csv");
    cached = load_nk_cache(cache_file);
  }

  std::vector<u64> pending;
  for (u64 k = k_lo; k <= k_hi; ++k) {
    auto it = cached.find(k);
    if (it == cached.end() || it->second.value > o.limit) pending.push_back(k);
  }
  auto fresh = parallel_map(pending.size(), o.threads,
                            [&](std::size_t i) { return exact_N(pending[i], o.l, o.limit); });

  NkDataset rows;
  std::size_t j = 0;
  for (u64 k = k_lo; k <= k_hi; ++k) {
    if (j < pending.size() && pending[j] == k) {
      rows.push_back(fresh[j++]);
      if (rows.back().exact()) cached[k] = rows.back();
    } else {
      rows.push_back(cached.at(k));
    }
  }

  if (!o.no_cache) {
    NkDataset all;
    for (const auto& [k, r] : cached) all.push_back(r);
    fs::path tmp = cache_file;
    tmp += ".tmp";
    {
      std::ofstream os(tmp, std::ios::binary);
      if (!os) throw IoError("cannot write cache " + tmp.string());
      write_nk_csv(os, all);
    }
    fs::rename(tmp, cache_file);
  }

  with_output(o.out, [&](std::ostream& os) {
    if (o.format == "json")
      os << nk_to_json(rows).dump(2) << '\n';
    else
      write_nk_csv(os, rows);
  });
  return 0;
}

// ---------------------------------------------------------------------------
// stats
// ---------------------------------------------------------------------------

struct StatsOpts {
  std::string input;
  std::vector<u64> moduli;
  bool records = false;
  bool prime_share = false;
  std::string out;
  std::string format = "csv";
};

std::string fixed(double v, int digits) {
  std::ostringstream ss;
  ss.setf(std::ios::fixed);
  ss.precision(digits);
  ss << v;
  return ss.str();
}

int cmd_stats(const StatsOpts& o) {
  std::ifstream is(o.input);
  if (!is) throw IoError("cannot open dataset " + o.input);
  NkDataset rows = read_nk_csv(is);
  bool any = o.records || o.prime_share || !o.moduli.empty();

  Table means{{"d", "a", "count", "mean"}, {}};
  for (u64 d : o.moduli) {
    if (d == 0) throw UsageError("--mod must be positive");
    auto m = class_means(rows, d);
    std::vector<u64> cnt(d, 0);
    for (const auto& r : rows)
      if (r.exact()) ++cnt[r.k % d];
    for (u64 a = 0; a < d; ++a)
      means.rows.push_back({std::to_string(d), std::to_string(a), std::to_string(cnt[a]),
                            m[a] ? fixed(*m[a], 6) : ""});
  }
  Table rec{{"k", "N", "prime"}, {}};
  if (o.records || !any)
    for (const auto& r : records(rows))
      rec.rows.push_back({std::to_string(r.k), std::to_string(r.N),
                          default_prime_table().is_prime(r.N) ? "prime" : "composite"});
  Table share{{"prime", "total", "fraction"}, {}};
  if (o.prime_share || !any) {
    PrimeShare s = prime_share(rows);
    share.rows.push_back({std::to_string(s.prime), std::to_string(s.total), fixed(s.fraction(), 6)});
  }

  with_output(o.out, [&](std::ostream& os) {
    if (o.format == "json") {
      nlohmann::json doc = nlohmann::json::object();
      auto to_json = [&](const Table& t) {
        std::ostringstream ss;
        emit(t, "json", ss);
        return nlohmann::json::parse(ss.str());
      };
      if (!means.rows.empty()) doc["means"] = to_json(means);
      if (!rec.rows.empty()) doc["records"] = to_json(rec);
      if (!share.rows.empty()) doc["prime_share"] = to_json(share);
      os << doc.dump(2) << '\n';
      return;
    }
    bool first = true;
    for (const Table* t : {&means, &rec, &share}) {
      if (t->rows.empty()) continue;
      if (!first) os << '\n';
      first = false;
      emit(*t, "csv", os);
    }
  });
  return 0;
}

// ---------------------------------------------------------------------------
// sieve
// ---------------------------------------------------------------------------

struct SieveOpts {
  u64 k_lo = 2;
  u64 k_hi = 100000;
  u32 p_max = 2000;
  u64 l = 2;
  unsigned threads = 1;
  std::string cache_dir;
  bool no_cache = false;
  std::string tables_out;
  std::string out;
  std::string format = "csv";
  std::size_t spot_check = 0;
  u64 seed = 0;
};

std::vector<BadResidueTable> cached_tables(const SieveOpts& o) {
  std::vector<u64> primes = default_prime_table().primes_in(3, o.p_max);
  std::map<std::pair<u32, u32>, BadResidueTable> known;
  fs::path file;
  if (!o.no_cache) {
    fs::path dir = resolve_cache_dir(o.cache_dir);
    ensure_dir(dir);
    file = dir / "sieve_tables.txt";
    std::ifstream is(file);
    if (is)
      for (auto& t : read_sieve_tables(is)) known[{t.p, t.l}] = t;
  }
  std::vector<u32> missing;
  for (u64 p : primes)
    if (!known.count({static_cast<u32>(p), static_cast<u32>(o.l % p)})) missing.push_back(static_cast<u32>(p));
  auto fresh = parallel_map(missing.size(), o.threads,
                            [&](std::size_t i) { return bad_residues(missing[i], o.l); });
  if (!o.no_cache && !fresh.empty()) {
    std::ofstream os(file, std::ios::binary | std::ios::app);
    if (!os) throw IoError("cannot append to " + file.string());
    write_sieve_tables(os, fresh);
  }
  for (auto& t : fresh) known[{t.p, t.l}] = t;
  std::vector<BadResidueTable> out;
  for (u64 p : primes) out.push_back(known.at({static_cast<u32>(p), static_cast<u32>(o.l % p)}));
  return out;
}

int cmd_sieve(const SieveOpts& o) {
  if (o.k_lo < 2 || o.k_lo > o.k_hi) throw UsageError("need 2 <= --k-lo <= --k-hi");
  if (o.p_max < 3) throw UsageError("--p-max must be >= 3");
  if (o.p_max > default_prime_table().limit()) throw UsageError("--p-max beyond prime table bound");
  auto tables = cached_tables(o);
  SieveOutcome res = sieve_range(o.k_lo, o.k_hi, tables);

  if (!o.tables_out.empty())
    with_output(o.tables_out, [&](std::ostream& os) { write_sieve_tables(os, tables); });

  std::size_t failures = 0;
  Table checks{{"k", "p", "N", "ok"}, {}};
  if (o.spot_check > 0) {
    std::vector<u64> sieved;
    std::size_t si = 0;
    for (u64 k = o.k_lo; k <= o.k_hi; ++k) {
      if (si < res.survivors.size() && res.survivors[si] == k) {
        ++si;
        continue;
      }
      sieved.push_back(k);
    }
    std::mt19937_64 rng(o.seed);
    std::vector<u64> sample;
    for (std::size_t i = 0; i < o.spot_check && !sieved.empty(); ++i) sample.push_back(sieved[rng() % sieved.size()]);
    auto verdicts = parallel_map(sample.size(), o.threads, [&](std::size_t i) {
      u32 p = *first_sieving_prime(sample[i], tables);
      return std::make_pair(p, exact_N(sample[i], o.l, p));
    });
    for (std::size_t i = 0; i < sample.size(); ++i) {
      auto [p, nk] = verdicts[i];
      bool ok = nk.exact() && nk.value <= p;
      failures += !ok;
      checks.rows.push_back({std::to_string(sample[i]), std::to_string(p),
                             nk.exact() ? std::to_string(nk.value) : "", ok ? "yes" : "no"});
    }
  }

  with_output(o.out, [&](std::ostream& os) {
    if (o.format == "json") {
      nlohmann::json doc;
      doc["k_lo"] = res.k_lo;
      doc["k_hi"] = res.k_hi;
      doc["l"] = o.l;
      doc["bound"] = res.bound;
      doc["implied_bound"] = res.implied_bound;
      doc["survivors"] = res.survivors;
      if (!checks.rows.empty()) {
        std::ostringstream ss;
        emit(checks, "json", ss);
        doc["spot_checks"] = nlohmann::json::parse(ss.str());
      }
      os << doc.dump(2) << '\n';
      return;
    }
    os << "k_lo,k_hi,l,bound,implied_bound,survivors\n"
       << res.k_lo << ',' << res.k_hi << ',' << o.l << ',' << res.bound << ',' << res.implied_bound << ','
       << res.survivors.size() << "\n\nk\n";
    for (u64 k : res.survivors) os << k << '\n';
    if (!checks.rows.empty()) {
      os << '\n';
      emit(checks, "csv", os);
    }
  });
  return failures == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// grid, jp, two-in-jp
// ---------------------------------------------------------------------------

void require_odd_prime(u64 p) {
  if (p < 3 || p % 2 == 0 || !default_prime_table().is_prime(p))
    throw DomainError("p must be an odd prime, got " + std::to_string(p));
}

int cmd_grid(u32 p, unsigned threads, const std::string& out, const std::string& format) {
  require_odd_prime(p);
  Table t{{"p", "k", "l"}, {}};
  for (auto [k, l] : grid_scan(p, threads)) t.rows.push_back({std::to_string(p), std::to_string(k), std::to_string(l)});
  with_output(out, [&](std::ostream& os) { emit(t, format, os); });
  return 0;
}

int cmd_jp(u32 p, u32 p_min, u32 p_max, unsigned threads, const std::string& out, const std::string& format) {
  std::vector<JpSummary> rows;
  if (p != 0) {
    rows.push_back(compute_jp(p));
  } else {
    if (p_max < 13) throw UsageError("--p-max must be >= 13");
    rows = jp_table(p_min, p_max, threads);
  }
  Table t{{"p", "l_L", "l_R", "J_size", "ratio"}, {}};
  for (const auto& s : rows)
    t.rows.push_back({std::to_string(s.p), std::to_string(s.l_left), std::to_string(s.l_right),
                      std::to_string(s.count), format_ratio(s.count, s.p)});
  with_output(out, [&](std::ostream& os) { emit(t, format, os); });
  return 0;
}

int cmd_two_in_jp(u32 p_max, unsigned threads, const std::string& out, const std::string& format) {
  if (p_max < 13) throw UsageError("--p-max must be >= 13");
  Table t{{"p"}, {}};
  for (u32 p : scan_two_in_jp(p_max, threads)) t.rows.push_back({std::to_string(p)});
  with_output(out, [&](std::ostream& os) { emit(t, format, os); });
  return 0;
}

// ---------------------------------------------------------------------------
// billiards, verify
// ---------------------------------------------------------------------------

int cmd_billiards(u32 p, std::optional<u32> l, bool show_sigma, const std::string& out) {
  std::vector<u32> ls;
  if (l) {
    ls.push_back(*l);
  } else {
    check_billiard_args(p, 0);
    for (u32 v = 0; v + 3 <= p; v += 2) ls.push_back(v);
  }
  std::ostringstream body;
  for (u32 v : ls) {
    SignSequence a = construct_a(p, v);
    body << p << ',' << v << ':' << a.signs() << '\n';
    if (show_sigma && v > 0) {
      BilliardPath path = billiard_path(p, v);
      body << "sigma";
      for (u32 s : path.sigma) body << ' ' << s;
      body << '\n';
    }
  }
  with_output(out, [&](std::ostream& os) { os << body.str(); });
  return 0;
}

int cmd_verify(u32 p_min, u32 p_max, unsigned threads, const std::string& out) {
  if (p_max < 13) throw UsageError("--p-max must be >= 13");
  std::vector<u32> primes = jp_primes(std::max<u32>(p_min, 13), p_max);
  struct PerPrime {
    MultiplicativityReport mult;
    JpSummary jp;
    bool both_conditions = false;
  };
  auto results = parallel_map(primes.size(), threads, [&](std::size_t i) {
    u32 p = primes[i];
    LegendreTable chi(p);
    PerPrime r;
    r.jp = compute_jp(chi);
    for (u32 l = 0; l + 3 <= p; l += 2) {
      auto [c1, c2] = empty_iff_conditions(chi, l);
      if (c1 && c2) r.both_conditions = true;
    }
    r.mult = verify_multiplicativity(p, 1);
    return r;
  });

  std::size_t failures = 0;
  Table t{{"p", "l", "m"}, {}};
  for (const auto& r : results) {
    for (const auto& w : r.mult.witnesses)
      t.rows.push_back({std::to_string(w.p), std::to_string(w.l), std::to_string(w.m)});
    if (!(r.jp.l_left < r.jp.l_right)) {
      ++failures;
      std::cerr << "p=" << r.jp.p << ": empty middle block\n";
    }
    if (r.both_conditions) {
      ++failures;
      std::cerr << "p=" << r.jp.p << ": both Legendre conditions hold for some l\n";
    }
    for (u32 l : r.mult.missing) {
      ++failures;
      std::cerr << "p=" << r.mult.p << " l=" << l << ": NoWitness\n";
    }
    for (u32 l : r.mult.legendre_matches) {
      ++failures;
      std::cerr << "p=" << r.mult.p << " l=" << l << ": a_{p,l} equals the Legendre sequence\n";
    }
  }
  with_output(out, [&](std::ostream& os) { emit(t, "csv", os); });
  std::cerr << "verified " << primes.size() << " primes, " << t.rows.size() << " witnesses, " << failures
            << " failures\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integrality breakdown of (k,l)-Goebel sequences"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto add_format = [](CLI::App* sub, std::string& format) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  };

  ExactOpts ex;
  auto* exact = app.add_subcommand("exact", "Exact N_{k,l} for one k or a range a..b");
  exact->add_option("--k", ex.k, "k or range a..b")->required();
  exact->add_option("--l", ex.l, "Initial value l");
  exact->add_option("--limit", ex.limit, "Largest n_max to try");
  exact->add_option("--threads", ex.threads)->check(CLI::PositiveNumber);
  exact->add_option("--cache-dir", ex.cache_dir);
  exact->add_flag("--no-cache", ex.no_cache);
  exact->add_option("--out", ex.out, "Output file (default stdout)");
  add_format(exact, ex.format);

  StatsOpts st;
  auto* stats = app.add_subcommand("stats", "Class means, records and prime share of an N dataset");
  stats->add_option("--input", st.input, "Dataset CSV (k,l,N,status)")->required();
  stats->add_option("--mod", st.moduli, "Residue-class modulus d (repeatable)");
  stats->add_flag("--records", st.records);
  stats->add_flag("--prime-share", st.prime_share);
  stats->add_option("--out", st.out);
  add_format(stats, st.format);

  SieveOpts sv;
  auto* sieve = app.add_subcommand("sieve", "Sieve a k range by bad residue classes");
  sieve->add_option("--k-lo", sv.k_lo);
  sieve->add_option("--k-hi", sv.k_hi);
  sieve->add_option("--p-max", sv.p_max);
  sieve->add_option("--l", sv.l);
  sieve->add_option("--threads", sv.threads)->check(CLI::PositiveNumber);
  sieve->add_option("--cache-dir", sv.cache_dir);
  sieve->add_flag("--no-cache", sv.no_cache);
  sieve->add_option("--tables-out", sv.tables_out, "Write the sieve-table file here");
  sieve->add_option("--spot-check", sv.spot_check, "Confirm this many random sieved k with exact_N");
  sieve->add_option("--seed", sv.seed);
  sieve->add_option("--out", sv.out);
  add_format(sieve, sv.format);

  u32 grid_p = 0;
  unsigned threads = 1;
  std::string out, format = "csv";
  auto* grid = app.add_subcommand("grid", "All (k,l) mod p with non-integrality at p");
  grid->add_option("--p", grid_p)->required();
  grid->add_option("--threads", threads)->check(CLI::PositiveNumber);
  grid->add_option("--out", out);
  add_format(grid, format);

  u32 jp_p = 0, jp_min = 13, jp_max = 0;
  auto* jp = app.add_subcommand("jp", "l_L, l_R and #J_p for primes p = 1 mod 4");
  auto* jp_single = jp->add_option("--p", jp_p, "Single prime");
  auto* jp_range = jp->add_option("--p-max", jp_max);
  jp->add_option("--p-min", jp_min);
  jp_single->excludes(jp_range);
  jp->add_option("--threads", threads)->check(CLI::PositiveNumber);
  jp->add_option("--out", out);
  add_format(jp, format);

  u32 two_max = 0;
  auto* two = app.add_subcommand("two-in-jp", "Primes p = 1 mod 4 with 2 in J_p");
  two->add_option("--p-max", two_max)->required();
  two->add_option("--threads", threads)->check(CLI::PositiveNumber);
  two->add_option("--out", out);
  add_format(two, format);

  u32 bil_p = 0;
  std::optional<u32> bil_l;
  bool bil_sigma = false;
  auto* bil = app.add_subcommand("billiards", "Dump a_{p,l} sign sequences");
  bil->add_option("--p", bil_p)->required();
  bil->add_option("--l", bil_l, "Even l in [0, p-3]; all when omitted");
  bil->add_flag("--sigma", bil_sigma, "Also print the permutation sigma");
  bil->add_option("--out", out);

  u32 ver_min = 13, ver_max = 0;
  auto* verify = app.add_subcommand("verify", "Check l_L < l_R and the multiplicativity witnesses");
  verify->add_option("--p-max", ver_max)->required();
  verify->add_option("--p-min", ver_min);
  verify->add_option("--threads", threads)->check(CLI::PositiveNumber);
  verify->add_option("--out", out, "Witness CSV (p,l,m)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*exact) return cmd_exact(ex);
    if (*stats) return cmd_stats(st);
    if (*sieve) return cmd_sieve(sv);
    if (*grid) return cmd_grid(grid_p, threads, out, format);
    if (*jp) {
      if (jp_p == 0 && jp_max == 0) throw UsageError("jp needs --p or --p-max");
      return cmd_jp(jp_p, jp_min, jp_max, threads, out, format);
    }
    if (*two) return cmd_two_in_jp(two_max, threads, out, format);
    if (*bil) return cmd_billiards(bil_p, bil_l, bil_sigma, out);
    if (*verify) return cmd_verify(ver_min, ver_max, threads, out);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
