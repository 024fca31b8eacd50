#pragma once

#include "locoloc/integer.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

namespace locoloc {

/// A set of primes S, either finite or cofinite. It stands for the
/// multiplicative set of positive integers whose prime factors all lie in S.
class PrimeSet {
 public:
  PrimeSet() = default;  // empty

  static PrimeSet finite(std::vector<Integer> primes) { return PrimeSet(false, std::move(primes)); }
  static PrimeSet cofinite(std::vector<Integer> excluded) {
    return PrimeSet(true, std::move(excluded));
  }
  static PrimeSet all() { return cofinite({}); }
  static PrimeSet odd() { return cofinite({2}); }
  /// The primes dividing n.
  static PrimeSet primes_of(const Integer& n) { return finite(prime_divisors(n)); }

  bool is_cofinite() const noexcept { return cofinite_; }
  bool is_empty() const noexcept { return !cofinite_ && listed_.empty(); }
  bool is_all() const noexcept { return cofinite_ && listed_.empty(); }
  /// Members for a finite set; excluded primes for a cofinite one.
  const std::vector<Integer>& listed() const noexcept { return listed_; }

  bool contains(const Integer& p) const {
    const bool listed = std::binary_search(listed_.begin(), listed_.end(), p);
    return cofinite_ ? !listed : listed;
  }

  /// Largest divisor of |n| supported on S (n != 0).
  Integer s_part(const Integer& n) const {
    Integer m = abs(n);
    if (m == 0) throw std::invalid_argument("s_part(0)");
    Integer part = 1;
    for (const auto& p : listed_)
      while (divides(p, m)) {
        m = exact_div(m, p);
        part *= p;
      }
    // for a cofinite set the listed primes are the ones removed
    return cofinite_ ? m : part;
  }
  /// |n| with its S-part removed.
  Integer away_part(const Integer& n) const { return exact_div(abs(n), s_part(n)); }
  /// n > 0 is a product of primes in S (1 counts).
  bool is_s_number(const Integer& n) const { return n > 0 && s_part(n) == n; }

  bool is_subset_of(const PrimeSet& o) const {
    if (!cofinite_) {
      return std::all_of(listed_.begin(), listed_.end(), [&](const Integer& p) { return o.contains(p); });
    }
    if (!o.cofinite_) return false;
    return std::all_of(o.listed_.begin(), o.listed_.end(), [&](const Integer& p) {
      return std::binary_search(listed_.begin(), listed_.end(), p);
    });
  }

  friend PrimeSet set_union(const PrimeSet& a, const PrimeSet& b) {
    if (!a.cofinite_ && !b.cofinite_) return finite(merge(a.listed_, b.listed_));
    if (a.cofinite_ && b.cofinite_) return cofinite(intersect(a.listed_, b.listed_));
    const PrimeSet& c = a.cofinite_ ? a : b;
    const PrimeSet& f = a.cofinite_ ? b : a;
    return cofinite(minus(c.listed_, f.listed_));
  }
  friend PrimeSet set_intersection(const PrimeSet& a, const PrimeSet& b) {
    if (!a.cofinite_ && !b.cofinite_) return finite(intersect(a.listed_, b.listed_));
    if (a.cofinite_ && b.cofinite_) return cofinite(merge(a.listed_, b.listed_));
    const PrimeSet& c = a.cofinite_ ? a : b;
    const PrimeSet& f = a.cofinite_ ? b : a;
    return finite(minus(f.listed_, c.listed_));
  }
  friend PrimeSet set_difference(const PrimeSet& a, const PrimeSet& b) {
    return set_intersection(a, b.complement());
  }
  PrimeSet complement() const { return PrimeSet(!cofinite_, listed_); }
  bool intersects(const PrimeSet& o) const { return !set_intersection(*this, o).is_empty(); }

  friend bool operator==(const PrimeSet&, const PrimeSet&) = default;

  /// `{}`, `{2,3}`, `all`, `odd`, `all\{2,7}`.
  std::string to_string() const {
    if (is_all()) return "all";
    if (cofinite_ && listed_.size() == 1 && listed_[0] == 2) return "odd";
    std::ostringstream os;
    if (cofinite_) os << "all\\";
    os << '{';
    for (std::size_t i = 0; i < listed_.size(); ++i) os << (i ? "," : "") << listed_[i];
    os << '}';
    return os.str();
  }

 private:
  PrimeSet(bool cofinite, std::vector<Integer> primes) : cofinite_(cofinite), listed_(std::move(primes)) {
    std::sort(listed_.begin(), listed_.end());
    listed_.erase(std::unique(listed_.begin(), listed_.end()), listed_.end());
    for (const auto& p : listed_)
      if (!is_prime(p)) throw std::invalid_argument("PrimeSet: " + p.get_str() + " is not prime");
  }

  static std::vector<Integer> merge(const std::vector<Integer>& a, const std::vector<Integer>& b) {
    std::vector<Integer> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
  }
  static std::vector<Integer> intersect(const std::vector<Integer>& a, const std::vector<Integer>& b) {
    std::vector<Integer> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
  }
  static std::vector<Integer> minus(const std::vector<Integer>& a, const std::vector<Integer>& b) {
    std::vector<Integer> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
  }

  bool cofinite_ = false;
  std::vector<Integer> listed_;
};

}  // namespace locoloc
