#pragma once

#include <algorithm>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "specforge/errors.hpp"

namespace specforge {

// Cycle type of a permutation: a partition, stored with parts descending.
class CycleType {
public:
  CycleType() = default;
  explicit CycleType(std::vector<int> parts) : parts_(std::move(parts)) {
    for (int p : parts_)
      if (p < 1) fail(ErrorKind::Domain, "cycle lengths must be positive");
    std::sort(parts_.rbegin(), parts_.rend());
  }

  const std::vector<int>& parts() const { return parts_; }
  int total() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
  bool is_identity() const {
    return std::all_of(parts_.begin(), parts_.end(), [](int p) { return p == 1; });
  }
  long long order() const {
    long long l = 1;
    for (int p : parts_) l = std::lcm<long long>(l, p);
    return l;
  }
  // ascending, for set comparisons
  std::vector<int> distinct_parts() const {
    std::vector<int> d = parts_;
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    return d;
  }

  bool operator==(const CycleType&) const = default;
  bool operator<(const CycleType& o) const { return parts_ < o.parts_; }

  // dash-joined, e.g. "2-1"
  std::string str() const {
    std::ostringstream os;
    for (size_t i = 0; i < parts_.size(); ++i) {
      if (i) os << "-";
      os << parts_[i];
    }
    return os.str();
  }

  static CycleType parse(const std::string& s, int expected_total = -1) {
    std::vector<int> parts;
    size_t i = 0;
    while (i < s.size()) {
      size_t j = i;
      while (j < s.size() && isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j == i) fail(ErrorKind::Usage, "bad cycle type '" + s + "'");
      parts.push_back(std::stoi(s.substr(i, j - i)));
      i = j;
      if (i < s.size()) {
        if (s[i] != '-') fail(ErrorKind::Usage, "bad cycle type '" + s + "'");
        ++i;
        if (i == s.size()) fail(ErrorKind::Usage, "bad cycle type '" + s + "'");
      }
    }
    if (parts.empty()) fail(ErrorKind::Usage, "empty cycle type");
    CycleType t(parts);
    if (expected_total >= 0 && t.total() != expected_total)
      fail(ErrorKind::Usage, "cycle type '" + s + "' does not partition " +
                                 std::to_string(expected_total));
    return t;
  }

private:
  std::vector<int> parts_;
};

// Cycle type of the a-th power: a length-L cycle splits into gcd(L, a)
// cycles of length L / gcd(L, a).
inline CycleType power_cycle_type(const CycleType& c, long long a) {
  if (a < 1) fail(ErrorKind::Domain, "power exponent must be >= 1");
  std::vector<int> parts;
  for (int L : c.parts()) {
    long long g = std::gcd<long long>(L, a);
    for (long long i = 0; i < g; ++i) parts.push_back(static_cast<int>(L / g));
  }
  return CycleType(parts);
}

// All partitions of n, descending parts, in canonical (lexicographic) order.
inline void partitions_of(int n, int max_part, std::vector<int>& cur,
                          std::vector<CycleType>& out) {
  if (n == 0) {
    out.emplace_back(cur);
    return;
  }
  for (int p = std::min(n, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_of(n - p, p, cur, out);
    cur.pop_back();
  }
}

inline std::vector<CycleType> all_cycle_types(int n) {
  std::vector<CycleType> out;
  std::vector<int> cur;
  partitions_of(n, n, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

// Parity: a cycle type is even iff sum of (L - 1) is even.
inline bool is_even_type(const CycleType& c) {
  int s = 0;
  for (int p : c.parts()) s += p - 1;
  return s % 2 == 0;
}

}  // namespace specforge
