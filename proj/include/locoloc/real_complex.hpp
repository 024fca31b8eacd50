#pragma once

// The sequence  ... -chi-> KO_n -c-> K_n -delta-> KO_{n-2} -chi-> KO_{n-1} -> ...
// relating a real theory to its complexification, and the coefficient cases in
// which complex groups split as KO_n + KO_{n-2}.

#include "locoloc/kk.hpp"

namespace locoloc {

/// A real theory (period 8), a complex theory (period 2) and the three maps,
/// each stored for degrees 0..7: chi_n : KO_n -> KO_{n+1}, c_n : KO_n -> K_n,
/// delta_n : K_n -> KO_{n-2}.
class RCPair {
 public:
  RCPair(GradedFg real, GradedFg complex, std::vector<GroupHom> chi, std::vector<GroupHom> c,
         std::vector<GroupHom> delta)
      : real_(std::move(real)), complex_(std::move(complex)), chi_(std::move(chi)), c_(std::move(c)),
        delta_(std::move(delta)) {
    if (!real_.is_periodic() || real_.period() != 8 || !complex_.is_periodic() || complex_.period() != 2)
      throw std::invalid_argument("RCPair: periods must be 8 (real) and 2 (complex)");
    if (chi_.size() != 8 || c_.size() != 8 || delta_.size() != 8)
      throw std::invalid_argument("RCPair: maps are given for degrees 0..7");
    for (int n = 0; n < 8; ++n) {
      auto fits = [&](const GroupHom& f, const FgAbGroup& d, const FgAbGroup& t) {
        return f.domain() == d && f.codomain() == t;
      };
      if (!fits(chi_[n], real_.at(n), real_.at(n + 1)) || !fits(c_[n], real_.at(n), complex_.at(n)) ||
          !fits(delta_[n], complex_.at(n), real_.at(n - 2)))
        throw std::invalid_argument("RCPair: map in degree " + std::to_string(n) + " has the wrong shape");
      if (!(chi_[n] + chi_[n]).is_zero())
        throw std::invalid_argument("RCPair: 2 chi != 0 in degree " + std::to_string(n));
    }
  }

  const GradedFg& real() const noexcept { return real_; }
  const GradedFg& complex() const noexcept { return complex_; }
  const GroupHom& chi(int n) const { return chi_[wrap(n, 8)]; }
  const GroupHom& c(int n) const { return c_[wrap(n, 8)]; }
  const GroupHom& delta(int n) const { return delta_[wrap(n, 8)]; }
  const std::vector<GroupHom>& chi_maps() const noexcept { return chi_; }
  const std::vector<GroupHom>& c_maps() const noexcept { return c_; }
  const std::vector<GroupHom>& delta_maps() const noexcept { return delta_; }

  RCPair with_c(int n, GroupHom f) const {
    auto c = c_;
    c[wrap(n, 8)] = std::move(f);
    return {real_, complex_, chi_, c, delta_};
  }

 private:
  GradedFg real_, complex_;
  std::vector<GroupHom> chi_, c_, delta_;
};

namespace fixtures {

inline RCPair point_rc() {
  const GradedFg KO = ko_point(), K = k_point();
  std::vector<GroupHom> chi, c, delta;
  for (int n = 0; n < 8; ++n) {
    chi.push_back(GroupHom::zero(KO.at(n), KO.at(n + 1)));
    c.push_back(GroupHom::zero(KO.at(n), K.at(n)));
    delta.push_back(GroupHom::zero(K.at(n), KO.at(n - 2)));
  }
  auto one = [](const FgAbGroup& a, const FgAbGroup& b, long v) {
    return GroupHom(a, b, IntMatrix::scalar(1, Integer(v)));
  };
  chi[0] = one(KO.at(0), KO.at(1), 1);  // Z ->> Z/2
  chi[1] = one(KO.at(1), KO.at(2), 1);  // Z/2 ~ Z/2
  c[0] = one(KO.at(0), K.at(0), 1);
  c[4] = one(KO.at(4), K.at(4), 2);
  delta[2] = one(K.at(2), KO.at(0), 2);
  delta[4] = one(K.at(4), KO.at(2), 1);  // Z ->> Z/2
  delta[6] = one(K.at(6), KO.at(4), 1);
  return {KO, K, chi, c, delta};
}

inline RCPair zero_rc() {
  const FgAbGroup O;
  const auto Z = GroupHom::zero(O, O);
  return {GradedFg::periodic(8, std::vector<FgAbGroup>(8)), GradedFg::periodic(2, {O, O}),
          std::vector<GroupHom>(8, Z), std::vector<GroupHom>(8, Z), std::vector<GroupHom>(8, Z)};
}

}  // namespace fixtures

/// The 24-node cyclic sequence, m = 0, -1, ..., -7: KO_m, K_m, KO_{m-2}.
inline ExactSequenceReport eta_les_check(const RCPair& p) {
  std::vector<std::string> labels;
  std::vector<GroupHom> maps;
  for (int k = 0; k < 8; ++k) {
    const int m = -k;
    labels.push_back("KO_" + std::to_string(wrap(m, 8)));
    labels.push_back("K_" + std::to_string(wrap(m, 8)));
    labels.push_back("KO_" + std::to_string(wrap(m - 2, 8)));
    maps.push_back(p.c(m));
    maps.push_back(p.delta(m));
    maps.push_back(p.chi(m - 2));
  }
  ExactSequenceReport r = check_exact(labels, maps, Closure::Cyclic);
  r.notes.push_back("2 chi = 0 in every degree");
  return r;
}

// ---------------------------------------------------------------------------

struct Coefficients {
  enum class Kind { Localized, Finite, TorsionQuotient };
  Kind kind;
  PrimeSet S;  // Localized, TorsionQuotient
  Integer s;   // Finite

  static Coefficients localized(PrimeSet S) { return {Kind::Localized, std::move(S), 0}; }
  static Coefficients finite(const Integer& s) { return {Kind::Finite, PrimeSet::finite({}), s}; }
  static Coefficients torsion_quotient(PrimeSet S) { return {Kind::TorsionQuotient, std::move(S), 0}; }

  std::string to_string() const {
    switch (kind) {
      case Kind::Localized: return "Z[1/" + S.to_string() + "]";
      case Kind::Finite: return "Z/" + s.get_str();
      case Kind::TorsionQuotient: return "Z[1/" + S.to_string() + "]/Z";
    }
    return {};
  }
};

struct SplittingDegree {
  int degree = 0;
  ExtModule left;   // K_n(;H)
  ExtModule right;  // KO_n(;H) + KO_{n-2}(;H)
  bool iso = false;
};

struct SplittingReport {
  std::string coefficients;
  std::vector<SplittingDegree> degrees;
  bool two_chi_zero = false;
  bool localized_chi_vanishes = false;  // Localized case: S^-1 chi = 0
  bool exponent_bound_holds = true;     // Finite case: exponents divide s
  std::vector<std::string> notes;

  bool passed() const {
    return two_chi_zero && exponent_bound_holds &&
           std::all_of(degrees.begin(), degrees.end(), [](const auto& d) { return d.iso; });
  }
};

inline SplittingReport splitting_check(const RCPair& p, const Coefficients& H) {
  GradedExt left, right_once;
  switch (H.kind) {
    case Coefficients::Kind::Localized:
      if (!H.S.contains(2)) throw Error("DisallowedCoefficient", H.to_string() + ": 2 must be inverted");
      left = localize_theory(p.complex(), H.S);
      right_once = localize_theory(p.real(), H.S);
      break;
    case Coefficients::Kind::Finite: {
      if (H.s < 3 || divides(2, H.s)) throw Error("DisallowedCoefficient", H.to_string() + ": s must be odd");
      auto split = [&](const GradedFg& F) {
        std::vector<ExtModule> e;
        const auto G = finite_coefficients(F, H.s, ResolutionPolicy::Split);
        for (int n = 0; n < F.period(); ++n) e.push_back(ExtModule::from_group(*G.at(n).resolved));
        return GradedExt::periodic(F.period(), e);
      };
      left = split(p.complex());
      right_once = split(p.real());
      break;
    }
    case Coefficients::Kind::TorsionQuotient:
      if (H.S.contains(2) || H.S.is_cofinite() || H.S.listed().empty())
        throw Error("DisallowedCoefficient", H.to_string() + ": S must be a nonempty finite set of odd primes");
      left = torsion_theory(p.complex(), H.S);
      right_once = torsion_theory(p.real(), H.S);
      break;
  }

  SplittingReport r;
  r.coefficients = H.to_string();
  r.two_chi_zero = std::all_of(p.chi_maps().begin(), p.chi_maps().end(),
                               [](const GroupHom& f) { return (f + f).is_zero(); });
  for (int n = 0; n < 8; ++n) {
    SplittingDegree d;
    d.degree = n;
    d.left = left.at(n);
    auto sum = direct_sum(right_once.at(n), right_once.at(n - 2));
    if (is_representable(sum)) {
      d.right = std::get<ExtModule>(std::move(sum));
      d.iso = d.left == d.right;
    } else {
      r.notes.push_back("degree " + std::to_string(n) + ": " + std::get<NotRepresentable>(sum).reason);
    }
    if (H.kind == Coefficients::Kind::Finite) {
      for (const auto* m : {&d.left, &d.right}) {
        const auto e = m->exponent();
        if (!e || !divides(*e, H.s)) r.exponent_bound_holds = false;
      }
    }
    r.degrees.push_back(std::move(d));
  }
  if (H.kind == Coefficients::Kind::Localized) {
    // chi localizes to zero when its image is S-torsion
    r.localized_chi_vanishes = std::all_of(p.chi_maps().begin(), p.chi_maps().end(), [&](const GroupHom& f) {
      const FgAbGroup im = image_subquotient(f).group();
      return im.rank() == 0 && H.S.is_s_number(im.torsion_exponent());
    });
  }
  r.notes.push_back("groupwise isomorphism only; naturality is not certified");
  return r;
}

}  // namespace locoloc
