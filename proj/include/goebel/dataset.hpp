#pragma once

// N_{k,l} datasets: CSV/JSON serialization and summary statistics.
//
// CSV schema: header "k,l,N,status", status in {exact, exceeded}, N empty
// when exceeded. LF line endings.

#include "goebel/exact.hpp"

#include <json.hpp>

#include <algorithm>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace goebel {

using NkDataset = std::vector<NkResult>;

inline constexpr const char* kNkHeader = "k,l,N,status";

inline void write_nk_row(std::ostream& os, const NkResult& r) {
  os << r.k << ',' << r.l << ',';
  if (r.exact()) os << r.value;
  os << ',' << (r.exact() ? "exact" : "exceeded") << '\n';
}

inline void write_nk_csv(std::ostream& os, const NkDataset& rows) {
  os << kNkHeader << '\n';
  for (const auto& r : rows) write_nk_row(os, r);
}

inline NkDataset read_nk_csv(std::istream& is) {
  NkDataset rows;
  std::string line;
  if (!std::getline(is, line)) return rows;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kNkHeader) throw std::runtime_error("N dataset: unexpected header '" + line + "'");
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(item);
    if (f.size() == 3) f.push_back("");  // getline drops a trailing empty field
    if (f.size() != 4) throw std::runtime_error("N dataset: malformed row '" + line + "'");
    NkResult r;
    r.k = std::stoull(f[0]);
    r.l = std::stoull(f[1]);
    if (f[3] == "exact") {
      r.status = NkResult::Status::Exact;
      r.value = std::stoull(f[2]);
    } else if (f[3] == "exceeded") {
      r.status = NkResult::Status::Exceeded;
      r.value = 0;
    } else {
      throw std::runtime_error("N dataset: bad status in '" + line + "'");
    }
    rows.push_back(r);
  }
  return rows;
}

inline nlohmann::json nk_to_json(const NkDataset& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json o;
    o["k"] = r.k;
    o["l"] = r.l;
    o["N"] = r.exact() ? nlohmann::json(r.value) : nlohmann::json(nullptr);
    o["status"] = r.exact() ? "exact" : "exceeded";
    arr.push_back(o);
  }
  return arr;
}

// Arithmetic mean of exact N over k = a mod d for each a in [0, d); absent
// for classes with no exact rows.
inline std::vector<std::optional<double>> class_means(const NkDataset& rows, u64 d) {
  if (d == 0) throw std::invalid_argument("class_means: modulus must be positive");
  std::vector<double> sum(d, 0.0);
  std::vector<u64> cnt(d, 0);
  for (const auto& r : rows) {
    if (!r.exact()) continue;
    sum[r.k % d] += static_cast<double>(r.value);
    ++cnt[r.k % d];
  }
  std::vector<std::optional<double>> out(d);
  for (u64 a = 0; a < d; ++a)
    if (cnt[a]) out[a] = sum[a] / static_cast<double>(cnt[a]);
  return out;
}

struct Record {
  u64 k;
  u64 N;
  friend bool operator==(const Record&, const Record&) = default;
};

// k whose N exceeds every N at smaller k in the dataset.
inline std::vector<Record> records(NkDataset rows) {
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.k < b.k; });
  std::vector<Record> out;
  u64 best = 0;
  for (const auto& r : rows) {
    if (!r.exact()) continue;
    if (out.empty() || r.value > best) {
      out.push_back({r.k, r.value});
      best = r.value;
    }
  }
  return out;
}

struct PrimeShare {
  u64 prime = 0;
  u64 total = 0;
  double fraction() const { return total ? static_cast<double>(prime) / static_cast<double>(total) : 0.0; }
};

inline PrimeShare prime_share(const NkDataset& rows) {
  PrimeShare s;
  for (const auto& r : rows) {
    if (!r.exact()) continue;
    ++s.total;
    if (default_prime_table().is_prime(r.value)) ++s.prime;
  }
  return s;
}

}  // namespace goebel
