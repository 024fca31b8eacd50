#pragma once

#include "locoloc/ext_module.hpp"

#include <functional>
#include <map>

namespace locoloc {

/// Euclidean remainder, always in [0, m).
inline int wrap(int n, int m) { return ((n % m) + m) % m; }

/// A graded family, either periodic (period 2 or 8, one entry per residue)
/// or bounded (finitely many entries, zero elsewhere). T{} must be the zero
/// value and T must provide to_string().
template <class T>
class GradedGroup {
 public:
  GradedGroup() = default;

  static GradedGroup periodic(int period, std::vector<T> entries) {
    if (period != 2 && period != 8) throw std::invalid_argument("GradedGroup: period must be 2 or 8");
    if (entries.size() != static_cast<std::size_t>(period))
      throw std::invalid_argument("GradedGroup: need exactly one entry per residue class");
    GradedGroup g;
    g.period_ = period;
    for (int i = 0; i < period; ++i) g.entries_[i] = std::move(entries[i]);
    return g;
  }
  static GradedGroup bounded(std::map<int, T> entries) {
    GradedGroup g;
    for (auto& [n, v] : entries)
      if (!(v == T{})) g.entries_[n] = std::move(v);
    return g;
  }

  bool is_periodic() const noexcept { return period_ != 0; }
  int period() const noexcept { return period_; }

  T at(int n) const {
    if (period_) return entries_.at(wrap(n, period_));
    auto it = entries_.find(n);
    return it == entries_.end() ? T{} : it->second;
  }

  /// Degrees with stored entries: 0..period-1, or the bounded support.
  std::vector<int> degrees() const {
    std::vector<int> out;
    for (const auto& [n, v] : entries_) out.push_back(n);
    return out;
  }
  /// Smallest and largest stored degree; {0, -1} when nothing is stored.
  std::pair<int, int> window() const {
    if (entries_.empty()) return {0, -1};
    return {entries_.begin()->first, entries_.rbegin()->first};
  }

  /// Degreewise image; for bounded input `spread` widens the window on both
  /// sides to catch entries that depend on neighbouring degrees.
  template <class U>
  GradedGroup<U> build(const std::function<U(int)>& f, int spread_below = 0, int spread_above = 0) const {
    if (period_) {
      std::vector<U> v;
      for (int i = 0; i < period_; ++i) v.push_back(f(i));
      return GradedGroup<U>::periodic(period_, std::move(v));
    }
    std::map<int, U> m;
    const auto [lo, hi] = window();
    for (int n = lo - spread_below; n <= hi + spread_above; ++n) m[n] = f(n);
    return GradedGroup<U>::bounded(std::move(m));
  }

  friend bool operator==(const GradedGroup&, const GradedGroup&) = default;

  /// `period=2: [Z, 0]` or `bounded: {0: Z/4, 1: Z}`.
  std::string to_string() const {
    std::string out;
    if (period_) {
      out = "period=" + std::to_string(period_) + ": [";
      for (int i = 0; i < period_; ++i) out += (i ? ", " : "") + entries_.at(i).to_string();
      return out + "]";
    }
    out = "bounded: {";
    bool first = true;
    for (const auto& [n, v] : entries_) {
      out += (first ? "" : ", ") + std::to_string(n) + ": " + v.to_string();
      first = false;
    }
    return out + "}";
  }

 private:
  int period_ = 0;
  std::map<int, T> entries_;
};

using GradedFg = GradedGroup<FgAbGroup>;
using GradedExt = GradedGroup<ExtModule>;

inline GradedExt to_ext(const GradedFg& F) {
  return F.build<ExtModule>([&](int n) { return ExtModule::from_group(F.at(n)); });
}

/// f.g. view of an ExtModule-valued theory; nullopt when some entry is not f.g.
inline std::optional<GradedFg> to_fg(const GradedExt& F) {
  for (int n : F.degrees())
    if (!F.at(n).is_finitely_generated()) return std::nullopt;
  return F.build<FgAbGroup>([&](int n) { return *F.at(n).as_group(); });
}

}  // namespace locoloc
