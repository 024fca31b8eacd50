#pragma once

// Modules that arise from f.g. groups by localising and by taking Tor
// coefficients: free Z[S^-1]-modules, finite torsion prime to S, and
// divisible groups that are sums of Pruefer groups.

#include "locoloc/bifunctor.hpp"

#include <map>
#include <variant>

namespace locoloc {

/// A value that exists mathematically but leaves the representable class.
struct NotRepresentable {
  std::string reason;
  friend bool operator==(const NotRepresentable&, const NotRepresentable&) = default;
};

template <class T>
using Representable = std::variant<T, NotRepresentable>;

template <class T>
bool is_representable(const Representable<T>& r) {
  return std::holds_alternative<T>(r);
}

/// (+)_p Z(p^inf)^{m(p)} with m eventually constant: a default multiplicity for
/// all primes and finitely many exceptions.
class Divisible {
 public:
  Divisible() = default;

  /// (+)_{p in T} Z(p^inf)^m.
  static Divisible prufer(const PrimeSet& T, unsigned long m) {
    Divisible d;
    if (m == 0) return d;
    if (T.is_cofinite()) {
      d.default_ = m;
      for (const auto& p : T.listed()) d.exceptions_[p] = 0;
    } else {
      for (const auto& p : T.listed()) d.exceptions_[p] = m;
    }
    return d;
  }

  unsigned long multiplicity(const Integer& p) const {
    auto it = exceptions_.find(p);
    return it == exceptions_.end() ? default_ : it->second;
  }
  unsigned long default_multiplicity() const noexcept { return default_; }
  const std::map<Integer, unsigned long>& exceptions() const noexcept { return exceptions_; }
  bool is_zero() const noexcept { return default_ == 0 && exceptions_.empty(); }

  /// Primes with positive multiplicity.
  PrimeSet support() const { return level(1); }
  /// {p : m(p) >= k}.
  PrimeSet level(unsigned long k) const {
    std::vector<Integer> ps;
    for (const auto& [p, m] : exceptions_)
      if ((m >= k) != (default_ >= k)) ps.push_back(p);
    return default_ >= k ? PrimeSet::cofinite(ps) : PrimeSet::finite(ps);
  }
  unsigned long max_multiplicity() const {
    unsigned long m = default_;
    for (const auto& [p, e] : exceptions_) m = std::max(m, e);
    return m;
  }

  /// Decomposition into atoms Pruefer(T) listed with their counts.
  std::vector<std::pair<PrimeSet, unsigned long>> atoms() const {
    std::vector<std::pair<PrimeSet, unsigned long>> out;
    for (unsigned long k = 1; k <= max_multiplicity(); ++k) {
      PrimeSet t = level(k);
      if (!out.empty() && out.back().first == t)
        ++out.back().second;
      else
        out.emplace_back(std::move(t), 1);
    }
    return out;
  }

  friend Divisible operator+(const Divisible& a, const Divisible& b) {
    Divisible d;
    d.default_ = a.default_ + b.default_;
    for (const auto& [p, m] : a.exceptions_) d.exceptions_[p] = 0;
    for (const auto& [p, m] : b.exceptions_) d.exceptions_[p] = 0;
    for (auto& [p, m] : d.exceptions_) m = a.multiplicity(p) + b.multiplicity(p);
    d.prune();
    return d;
  }
  friend bool operator==(const Divisible&, const Divisible&) = default;

  /// Terms such as `Q/Z`, `(Q/Z)^2`, `Prufer(odd)`, `Prufer(3)^2`, sorted with
  /// the cofinite part first and single primes ascending.
  std::vector<std::string> terms() const {
    std::vector<std::string> out;
    auto power = [](std::string base, unsigned long m) {
      return m == 1 ? base : base + "^" + std::to_string(m);
    };
    if (default_ > 0) {
      std::vector<Integer> below;
      for (const auto& [p, m] : exceptions_)
        if (m < default_) below.push_back(p);
      if (below.empty())
        out.push_back(default_ == 1 ? "Q/Z" : power("(Q/Z)", default_));
      else
        out.push_back(power("Prufer(" + PrimeSet::cofinite(below).to_string() + ")", default_));
    }
    for (const auto& [p, m] : exceptions_) {
      const unsigned long extra = m > default_ ? m - default_ : m;
      if (extra > 0) out.push_back(power("Prufer(" + p.get_str() + ")", extra));
    }
    return out;
  }

 private:
  void prune() {
    for (auto it = exceptions_.begin(); it != exceptions_.end();)
      it = it->second == default_ ? exceptions_.erase(it) : std::next(it);
  }

  unsigned long default_ = 0;
  std::map<Integer, unsigned long> exceptions_;  // values differ from default_
};

namespace detail {

inline std::string ring_name(const PrimeSet& base) {
  if (base.is_empty()) return "Z";
  if (base.is_all()) return "Q";
  if (!base.is_cofinite()) {
    Integer prod = 1;
    for (const auto& p : base.listed()) prod *= p;
    return "Z[1/" + prod.get_str() + "]";
  }
  return "Z[1/" + base.to_string() + "]";
}

}  // namespace detail

/// Z[S^-1]^r + T + D with T finite of order prime to S and D divisible.
/// Equality is isomorphism of abelian groups: the base ring only matters when
/// the free rank is positive.
class ExtModule {
 public:
  ExtModule() = default;

  static ExtModule from_group(const FgAbGroup& g) {
    ExtModule m;
    m.rank_ = g.rank();
    m.torsion_ = g.torsion();
    return m;
  }
  /// Z[S^-1]^rank + torsion; throws when torsion has S-primary parts.
  static ExtModule localized(const PrimeSet& S, std::size_t rank, const FgAbGroup& torsion = {}) {
    if (!torsion.is_finite()) throw std::invalid_argument("ExtModule: torsion part must be finite");
    for (const auto& n : torsion.invariant_factors())
      if (S.s_part(n) != 1)
        throw std::invalid_argument("ExtModule: torsion " + torsion.to_string() +
                                    " is not prime to " + S.to_string());
    ExtModule m;
    m.base_ = S;
    m.rank_ = rank;
    m.torsion_ = torsion;
    return m;
  }
  static ExtModule rational(std::size_t rank = 1) { return localized(PrimeSet::all(), rank); }
  static ExtModule divisible(Divisible d) {
    ExtModule m;
    m.divisible_ = std::move(d);
    return m;
  }
  static ExtModule prufer(const PrimeSet& T, unsigned long multiplicity = 1) {
    return divisible(Divisible::prufer(T, multiplicity));
  }
  static ExtModule q_mod_z(unsigned long multiplicity = 1) { return prufer(PrimeSet::all(), multiplicity); }

  const PrimeSet& base() const noexcept { return base_; }
  std::size_t free_rank() const noexcept { return rank_; }
  const FgAbGroup& finite_torsion() const noexcept { return torsion_; }
  const Divisible& divisible_part() const noexcept { return divisible_; }

  bool is_zero() const noexcept { return rank_ == 0 && torsion_.is_trivial() && divisible_.is_zero(); }
  bool is_finitely_generated() const noexcept {
    return divisible_.is_zero() && (rank_ == 0 || base_.is_empty());
  }
  bool is_finite() const noexcept { return rank_ == 0 && divisible_.is_zero(); }
  std::optional<FgAbGroup> as_group() const {
    if (!is_finitely_generated()) return std::nullopt;
    return FgAbGroup::free(rank_) + torsion_;
  }
  /// Exponent when finite; nullopt otherwise.
  std::optional<Integer> exponent() const {
    if (!is_finite()) return std::nullopt;
    return torsion_.torsion_exponent();
  }

  friend bool operator==(const ExtModule& a, const ExtModule& b) {
    return a.rank_ == b.rank_ && (a.rank_ == 0 || a.base_ == b.base_) && a.torsion_ == b.torsion_ &&
           a.divisible_ == b.divisible_;
  }
  /// Field-by-field identity, including the base ring.
  friend bool identical(const ExtModule& a, const ExtModule& b) { return a == b && a.base_ == b.base_; }

  friend Representable<ExtModule> direct_sum(const ExtModule& a, const ExtModule& b) {
    if (a.rank_ > 0 && b.rank_ > 0 && !(a.base_ == b.base_))
      return NotRepresentable{"sum of free modules over " + detail::ring_name(a.base_) + " and " +
                              detail::ring_name(b.base_)};
    ExtModule m;
    m.base_ = a.rank_ > 0 || b.rank_ == 0 ? a.base_ : b.base_;
    m.rank_ = a.rank_ + b.rank_;
    m.torsion_ = a.torsion_ + b.torsion_;
    m.divisible_ = a.divisible_ + b.divisible_;
    if (m.rank_ > 0)
      for (const auto& n : m.torsion_.invariant_factors())
        if (m.base_.s_part(n) != 1)
          return NotRepresentable{"torsion " + m.torsion_.to_string() + " beside " +
                                  detail::ring_name(m.base_)};
    return m;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::vector<std::string> terms;
    if (rank_ > 0) {
      const std::string r = detail::ring_name(base_);
      terms.push_back(rank_ == 1 ? r : r + "^" + std::to_string(rank_));
    }
    for (const auto& f : torsion_.invariant_factors()) terms.push_back("Z/" + f.get_str());
    for (auto& t : divisible_.terms()) terms.push_back(std::move(t));
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) out += (i ? " + " : "") + terms[i];
    return out;
  }
  friend std::ostream& operator<<(std::ostream& os, const ExtModule& m) { return os << m.to_string(); }

 private:
  PrimeSet base_;
  std::size_t rank_ = 0;
  FgAbGroup torsion_;
  Divisible divisible_;
};

/// M (x) Z[S^-1].
inline ExtModule localize_group(const FgAbGroup& M, const PrimeSet& S) {
  std::vector<Integer> away;
  for (const auto& n : M.invariant_factors()) away.push_back(S.away_part(n));
  return ExtModule::localized(S, M.rank(), FgAbGroup::from_cyclic_orders(0, away));
}

/// Localisation of an already localised module; divisible parts are rejected.
inline ExtModule localize_group(const ExtModule& M, const PrimeSet& S) {
  if (!M.divisible_part().is_zero())
    throw std::invalid_argument("localize_group: divisible input is not supported");
  const PrimeSet base = M.free_rank() > 0 ? set_union(M.base(), S) : S;
  std::vector<Integer> away;
  for (const auto& n : M.finite_torsion().invariant_factors()) away.push_back(base.away_part(n));
  return ExtModule::localized(base, M.free_rank(), FgAbGroup::from_cyclic_orders(0, away));
}

struct TorCoefficients {
  ExtModule tor0;  // coker(M -> S^-1 M)
  FgAbGroup tor1;  // ker(M -> S^-1 M)
};

inline TorCoefficients tor_coefficients(const FgAbGroup& M, const PrimeSet& S) {
  return {ExtModule::prufer(S, M.rank()), torsion_data(M, S).s_torsion};
}

struct ColimitApproximation {
  FgAbGroup ker_approx;
  FgAbGroup coker_approx;
};

/// Kernel and cokernel of s^k on M: the depth-k stage of the colimits
/// computing the S-primary torsion and S^-1 M / M.
inline ColimitApproximation colimit_truncation_oracle(const FgAbGroup& M, const Integer& s, unsigned k) {
  if (s <= 1) throw Error("InvalidArgument", "colimit_truncation_oracle: s must be >= 2");
  if (k < 1) throw Error("InvalidArgument", "colimit_truncation_oracle: depth must be >= 1");
  const auto t = map_subquotients(GroupHom::multiplication(M, locoloc::pow(s, k)));
  return {t.kernel, t.cokernel};
}

// ---------------------------------------------------------------------------
// Atoms and the bifunctor table.

/// Z/n (n >= 2), Z[S^-1] (S empty is Z, S all is Q) or (+)_{p in T} Z(p^inf).
struct Atom {
  enum class Kind { Cyclic, Local, Prufer };
  Kind kind = Kind::Local;
  Integer order;   // Cyclic
  PrimeSet primes; // base ring for Local, support for Prufer

  static Atom cyclic(const Integer& n) { return {Kind::Cyclic, n, {}}; }
  static Atom local(const PrimeSet& S) { return {Kind::Local, 0, S}; }
  static Atom prufer(const PrimeSet& T) { return {Kind::Prufer, 0, T}; }

  ExtModule module() const {
    switch (kind) {
      case Kind::Cyclic: return ExtModule::from_group(FgAbGroup::cyclic(order));
      case Kind::Local: return ExtModule::localized(primes, 1);
      case Kind::Prufer: return ExtModule::prufer(primes);
    }
    return {};
  }
  std::string to_string() const { return module().to_string(); }
};

/// The atoms of M with multiplicity, in a fixed order.
inline std::vector<Atom> atoms_of(const ExtModule& M) {
  std::vector<Atom> out(M.free_rank(), Atom::local(M.base()));
  for (const auto& n : M.finite_torsion().invariant_factors()) out.push_back(Atom::cyclic(n));
  for (const auto& [T, count] : M.divisible_part().atoms())
    for (unsigned long i = 0; i < count; ++i) out.push_back(Atom::prufer(T));
  return out;
}

namespace detail {

inline ExtModule cyc(const Integer& n) { return ExtModule::from_group(FgAbGroup::cyclic(n)); }

inline Representable<ExtModule> atom_hom(const Atom& a, const Atom& b) {
  using K = Atom::Kind;
  switch (a.kind) {
    case K::Cyclic:
      if (b.kind == K::Cyclic) return cyc(gcd(a.order, b.order));
      if (b.kind == K::Local) return ExtModule{};
      return cyc(b.primes.s_part(a.order));
    case K::Local:
      if (b.kind == K::Cyclic) return cyc(a.primes.away_part(b.order));
      if (b.kind == K::Local) return a.primes.is_subset_of(b.primes) ? b.module() : ExtModule{};
      if (!a.primes.intersects(b.primes)) return b.module();
      break;
    case K::Prufer:
      if (b.kind != K::Prufer || !a.primes.intersects(b.primes)) return ExtModule{};
      break;
  }
  return NotRepresentable{"Hom(" + a.to_string() + ", " + b.to_string() + ") is not in the class"};
}

inline Representable<ExtModule> atom_ext(const Atom& a, const Atom& b) {
  using K = Atom::Kind;
  switch (a.kind) {
    case K::Cyclic:
      if (b.kind == K::Cyclic) return cyc(gcd(a.order, b.order));
      if (b.kind == K::Local) return cyc(b.primes.away_part(a.order));
      return ExtModule{};
    case K::Local:
      if (b.kind != K::Local || a.primes.is_subset_of(b.primes)) return ExtModule{};
      break;
    case K::Prufer:
      if (b.kind == K::Cyclic) return cyc(a.primes.s_part(b.order));
      if (b.kind == K::Prufer || a.primes.is_subset_of(b.primes)) return ExtModule{};
      break;
  }
  return NotRepresentable{"Ext(" + a.to_string() + ", " + b.to_string() + ") is not in the class"};
}

inline Representable<ExtModule> atom_tensor(const Atom& a, const Atom& b) {
  using K = Atom::Kind;
  if (a.kind == K::Cyclic && b.kind == K::Cyclic) return cyc(gcd(a.order, b.order));
  if (a.kind == K::Cyclic && b.kind == K::Local) return cyc(b.primes.away_part(a.order));
  if (a.kind == K::Local && b.kind == K::Cyclic) return cyc(a.primes.away_part(b.order));
  if (a.kind == K::Local && b.kind == K::Local) return Atom::local(set_union(a.primes, b.primes)).module();
  if (a.kind == K::Local && b.kind == K::Prufer)
    return ExtModule::prufer(set_difference(b.primes, a.primes));
  if (a.kind == K::Prufer && b.kind == K::Local)
    return ExtModule::prufer(set_difference(a.primes, b.primes));
  return ExtModule{};  // torsion against divisible torsion
}

inline Representable<ExtModule> atom_tor(const Atom& a, const Atom& b) {
  using K = Atom::Kind;
  if (a.kind == K::Local || b.kind == K::Local) return ExtModule{};
  if (a.kind == K::Cyclic && b.kind == K::Cyclic) return cyc(gcd(a.order, b.order));
  if (a.kind == K::Cyclic) return cyc(b.primes.s_part(a.order));
  if (b.kind == K::Cyclic) return cyc(a.primes.s_part(b.order));
  return ExtModule::prufer(set_intersection(a.primes, b.primes));
}

}  // namespace detail

inline Representable<ExtModule> atom_bifunctor(Bifunctor kind, const Atom& a, const Atom& b) {
  switch (kind) {
    case Bifunctor::Hom: return detail::atom_hom(a, b);
    case Bifunctor::Ext: return detail::atom_ext(a, b);
    case Bifunctor::Tensor: return detail::atom_tensor(a, b);
    case Bifunctor::Tor: return detail::atom_tor(a, b);
  }
  return NotRepresentable{"unknown bifunctor"};
}

/// Bilinear extension of the atom table.
inline Representable<ExtModule> bifunctor(Bifunctor kind, const ExtModule& A, const ExtModule& B) {
  ExtModule acc;
  for (const auto& a : atoms_of(A))
    for (const auto& b : atoms_of(B)) {
      auto v = atom_bifunctor(kind, a, b);
      if (!is_representable(v)) return v;
      auto s = direct_sum(acc, std::get<ExtModule>(v));
      if (!is_representable(s)) return s;
      acc = std::get<ExtModule>(std::move(s));
    }
  return acc;
}

}  // namespace locoloc
