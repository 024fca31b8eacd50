#pragma once

// Finitely generated abelian groups in canonical form, and the explicit
// isomorphisms between presentations and canonical generators.

#include "locoloc/smith.hpp"

#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace locoloc {

/// Z^rank + Z/n_1 + ... + Z/n_k with 2 <= n_1 | n_2 | ... | n_k.
///
/// Canonical generators are ordered free generators first, then torsion
/// generators in factor order. Two values are equal iff the groups are
/// isomorphic.
class FgAbGroup {
 public:
  FgAbGroup() = default;

  static FgAbGroup free(std::size_t rank) {
    FgAbGroup g;
    g.rank_ = rank;
    return g;
  }
  /// Z/n for n >= 2, Z for n == 0, trivial for n == 1.
  static FgAbGroup cyclic(const Integer& n) {
    if (n < 0) throw std::invalid_argument("cyclic: negative order");
    if (n == 0) return free(1);
    return from_cyclic_orders(0, {n});
  }
  /// Normalises an arbitrary list of cyclic orders (entries 0 mean Z).
  static FgAbGroup from_cyclic_orders(std::size_t rank, std::vector<Integer> orders) {
    std::vector<Integer> diag;
    for (auto& n : orders) {
      if (n < 0) n = -n;
      if (n == 0)
        ++rank;
      else if (n != 1)
        diag.push_back(n);
    }
    FgAbGroup g;
    g.rank_ = rank;
    if (diag.empty()) return g;
    const auto snf = smith_normal_form(IntMatrix::diagonal(diag), {false, false, false, false});
    for (const auto& d : snf.diagonal())
      if (d >= 2) g.factors_.push_back(d);
    return g;
  }

  std::size_t rank() const noexcept { return rank_; }
  const std::vector<Integer>& invariant_factors() const noexcept { return factors_; }
  std::size_t num_generators() const noexcept { return rank_ + factors_.size(); }
  /// Order of canonical generator i; 0 for a free generator.
  Integer generator_order(std::size_t i) const {
    return i < rank_ ? Integer(0) : factors_[i - rank_];
  }

  bool is_trivial() const noexcept { return rank_ == 0 && factors_.empty(); }
  bool is_finite() const noexcept { return rank_ == 0; }
  bool is_free() const noexcept { return factors_.empty(); }

  Integer order() const {
    if (!is_finite()) throw std::domain_error("order of an infinite group");
    Integer o = 1;
    for (const auto& f : factors_) o *= f;
    return o;
  }
  /// Exponent of the torsion subgroup (1 when torsion-free).
  Integer torsion_exponent() const { return factors_.empty() ? Integer(1) : factors_.back(); }
  FgAbGroup torsion() const {
    FgAbGroup g;
    g.factors_ = factors_;
    return g;
  }

  /// Product over i of |Z/n_i|-style elementary divisors, as prime powers.
  std::vector<Integer> elementary_divisors() const {
    std::vector<Integer> out;
    for (const auto& f : factors_)
      for (const auto& [p, e] : factorize(f)) out.push_back(locoloc::pow(p, e));
    std::sort(out.begin(), out.end());
    return out;
  }

  friend FgAbGroup operator+(const FgAbGroup& a, const FgAbGroup& b) {
    std::vector<Integer> orders = a.factors_;
    orders.insert(orders.end(), b.factors_.begin(), b.factors_.end());
    return from_cyclic_orders(a.rank_ + b.rank_, std::move(orders));
  }
  friend bool operator==(const FgAbGroup&, const FgAbGroup&) = default;

  std::string to_string() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (rank_ > 0) {
      os << "Z";
      if (rank_ > 1) os << '^' << rank_;
      first = false;
    }
    for (const auto& f : factors_) {
      os << (first ? "" : " + ") << "Z/" << f;
      first = false;
    }
    return os.str();
  }
  friend std::ostream& operator<<(std::ostream& os, const FgAbGroup& g) {
    return os << g.to_string();
  }

  /// Reduces an element given in canonical coordinates.
  std::vector<Integer> reduce(std::vector<Integer> x) const {
    for (std::size_t i = rank_; i < x.size(); ++i) x[i] = mod(x[i], factors_[i - rank_]);
    return x;
  }
  bool is_zero_element(std::span<const Integer> x) const {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (i < rank_ ? x[i] != 0 : !divides(factors_[i - rank_], x[i])) return false;
    }
    return true;
  }

  /// Relation columns of the canonical presentation Z^n / R.
  IntMatrix relation_matrix() const {
    IntMatrix r(num_generators(), factors_.size());
    for (std::size_t j = 0; j < factors_.size(); ++j) r(rank_ + j, j) = factors_[j];
    return r;
  }

 private:
  std::size_t rank_ = 0;
  std::vector<Integer> factors_;
};

/// Z^n / span(columns of R) together with the explicit isomorphism to the
/// canonical form: `to_canonical` sends presentation coordinates to canonical
/// coordinates (unreduced), `from_canonical` sends canonical generator j to a
/// representative in Z^n.
struct PresentedQuotient {
  FgAbGroup group;
  IntMatrix to_canonical;
  IntMatrix from_canonical;

  std::vector<Integer> canonical_coordinates(std::span<const Integer> x) const {
    return group.reduce(to_canonical * x);
  }
};

inline PresentedQuotient present_quotient(const IntMatrix& relations) {
  const std::size_t n = relations.rows();
  const auto snf = smith_normal_form(relations, {true, true, false, false});
  std::vector<std::size_t> free_idx, tors_idx;
  std::vector<Integer> orders;
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= snf.rank) {
      free_idx.push_back(i);
    } else if (snf.D(i, i) >= 2) {
      tors_idx.push_back(i);
      orders.push_back(snf.D(i, i));
    }
  }
  PresentedQuotient pq;
  pq.group = FgAbGroup::from_cyclic_orders(free_idx.size(), orders);
  std::vector<std::size_t> order = free_idx;
  order.insert(order.end(), tors_idx.begin(), tors_idx.end());
  pq.to_canonical = IntMatrix(order.size(), n);
  pq.from_canonical = IntMatrix(n, order.size());
  for (std::size_t j = 0; j < order.size(); ++j)
    for (std::size_t c = 0; c < n; ++c) {
      pq.to_canonical(j, c) = snf.U(order[j], c);
      pq.from_canonical(c, j) = snf.U_inv(c, order[j]);
    }
  return pq;
}

/// Cokernel of a relations matrix whose ROWS are relations among its
/// columns' generators.
inline FgAbGroup group_from_presentation(const IntMatrix& relations) {
  const auto snf = smith_normal_form(relations, {false, false, false, false});
  std::vector<Integer> orders;
  for (std::size_t i = 0; i < snf.rank; ++i) orders.push_back(snf.D(i, i));
  return FgAbGroup::from_cyclic_orders(relations.cols() - snf.rank, orders);
}

/// span(numerator) / span(denominator) inside Z^n, with span(denominator)
/// contained in span(numerator). Carries explicit representatives and
/// coordinates for the canonical generators of the quotient.
class Subquotient {
 public:
  Subquotient(const IntMatrix& numerator, const IntMatrix& denominator)
      : num_(hstack(numerator, denominator)) {
    IntMatrix rel(num_.rank(), denominator.cols());
    for (std::size_t j = 0; j < denominator.cols(); ++j) {
      auto c = num_.coordinates(denominator.col(j));
      if (!c) throw std::logic_error("Subquotient: denominator not contained in numerator");
      rel.set_col(j, *c);
    }
    pq_ = present_quotient(rel);
  }

  const FgAbGroup& group() const noexcept { return pq_.group; }
  std::size_t ambient_dim() const noexcept { return num_.ambient_dim(); }

  /// Representative in Z^n of canonical generator j.
  std::vector<Integer> representative(std::size_t j) const {
    return num_.basis() * pq_.from_canonical.col(j);
  }
  /// Canonical coordinates of x, or nullopt when x is outside the numerator.
  std::optional<std::vector<Integer>> coordinates(std::span<const Integer> x) const {
    auto c = num_.coordinates(x);
    if (!c) return std::nullopt;
    return pq_.canonical_coordinates(*c);
  }

 private:
  Lattice num_;
  PresentedQuotient pq_;
};

}  // namespace locoloc
