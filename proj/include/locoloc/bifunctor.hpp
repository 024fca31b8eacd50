#pragma once

// Hom, Ext, tensor and Tor of finitely generated abelian groups, and the
// S-primary torsion subgroup together with its structure maps.

#include "locoloc/group_hom.hpp"
#include "locoloc/prime_set.hpp"

#include <string_view>

namespace locoloc {

enum class Bifunctor { Hom, Ext, Tensor, Tor };

inline std::string_view to_string(Bifunctor k) {
  switch (k) {
    case Bifunctor::Hom: return "Hom";
    case Bifunctor::Ext: return "Ext";
    case Bifunctor::Tensor: return "Tensor";
    case Bifunctor::Tor: return "Tor";
  }
  return "?";
}

namespace detail {

// Value on cyclic atoms; order 0 stands for Z.
inline Integer cyclic_bifunctor(Bifunctor kind, const Integer& a, const Integer& b) {
  const bool fa = a == 0, fb = b == 0;
  switch (kind) {
    case Bifunctor::Hom:
      if (fa) return b;             // Hom(Z, M) = M
      if (fb) return 1;             // Hom(Z/a, Z) = 0
      return gcd(a, b);
    case Bifunctor::Ext:
      if (fa) return 1;             // Ext(Z, M) = 0
      if (fb) return a;             // Ext(Z/a, Z) = Z/a
      return gcd(a, b);
    case Bifunctor::Tensor:
      if (fa) return b;
      if (fb) return a;
      return gcd(a, b);
    case Bifunctor::Tor:
      if (fa || fb) return 1;
      return gcd(a, b);
  }
  return 1;
}

inline std::vector<Integer> cyclic_atoms(const FgAbGroup& g) {
  std::vector<Integer> atoms(g.rank(), Integer(0));
  atoms.insert(atoms.end(), g.invariant_factors().begin(), g.invariant_factors().end());
  return atoms;
}

}  // namespace detail

/// Computed by bilinearity over the cyclic decompositions of A and B.
inline FgAbGroup bifunctor(Bifunctor kind, const FgAbGroup& A, const FgAbGroup& B) {
  std::vector<Integer> orders;
  for (const auto& a : detail::cyclic_atoms(A))
    for (const auto& b : detail::cyclic_atoms(B)) orders.push_back(detail::cyclic_bifunctor(kind, a, b));
  return FgAbGroup::from_cyclic_orders(0, std::move(orders));
}

struct TorsionData {
  FgAbGroup s_torsion;
  Integer exponent_of_torsion;
};

/// The S-primary torsion subgroup (elements killed by some s in S) and the
/// exponent of the full torsion subgroup.
inline TorsionData torsion_data(const FgAbGroup& M, const PrimeSet& S) {
  std::vector<Integer> parts;
  for (const auto& n : M.invariant_factors()) parts.push_back(S.s_part(n));
  return {FgAbGroup::from_cyclic_orders(0, std::move(parts)), M.torsion_exponent()};
}

/// Inclusion of the S-primary torsion subgroup into M. The subgroup's
/// canonical generator for factor n_j is (n_j / s_j) e_j, where s_j is the
/// S-part of n_j.
inline GroupHom s_torsion_inclusion(const FgAbGroup& M, const PrimeSet& S) {
  const FgAbGroup T = torsion_data(M, S).s_torsion;
  IntMatrix m(M.num_generators(), T.num_generators());
  std::size_t col = 0;
  for (std::size_t j = 0; j < M.invariant_factors().size(); ++j) {
    const Integer& n = M.invariant_factors()[j];
    const Integer s = S.s_part(n);
    if (s < 2) continue;
    m(M.rank() + j, col++) = exact_div(n, s);
  }
  return {T, M, m};
}

/// M -> M with the S-primary torsion killed: the f.g. shadow of M -> S^{-1}M.
/// The target is Z^rank + (torsion with S-parts removed); free generators map
/// identically and torsion generators to their reductions.
inline GroupHom s_torsion_quotient(const FgAbGroup& M, const PrimeSet& S) {
  std::vector<Integer> away;
  for (const auto& n : M.invariant_factors()) away.push_back(S.away_part(n));
  const FgAbGroup Q = FgAbGroup::from_cyclic_orders(M.rank(), away);
  IntMatrix m(Q.num_generators(), M.num_generators());
  for (std::size_t i = 0; i < M.rank(); ++i) m(i, i) = 1;
  std::size_t row = Q.rank();
  for (std::size_t j = 0; j < away.size(); ++j)
    if (away[j] >= 2) m(row++, M.rank() + j) = 1;
  return {M, Q, m};
}

/// The restriction of f to S-primary torsion subgroups.
inline GroupHom restrict_to_s_torsion(const GroupHom& f, const PrimeSet& S) {
  const GroupHom in_dom = s_torsion_inclusion(f.domain(), S);
  const GroupHom in_cod = s_torsion_inclusion(f.codomain(), S);
  const FgAbGroup& N = f.codomain();
  const FgAbGroup& T = in_cod.domain();
  IntMatrix m(T.num_generators(), in_dom.domain().num_generators());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const std::vector<Integer> y = f.apply(in_dom.matrix().col(c));
    std::size_t row = 0;
    for (std::size_t k = 0; k < N.invariant_factors().size(); ++k) {
      const Integer& n = N.invariant_factors()[k];
      const Integer s = S.s_part(n);
      const Integer& yk = y[N.rank() + k];
      if (s < 2) {
        if (yk != 0) throw std::logic_error("restrict_to_s_torsion: image leaves S-torsion");
        continue;
      }
      const Integer step = exact_div(n, s);
      if (!divides(step, yk)) throw std::logic_error("restrict_to_s_torsion: image leaves S-torsion");
      m(row++, c) = exact_div(yk, step);
    }
  }
  return {in_dom.domain(), T, m};
}

/// Matrix of the map induced on free quotients M/T(M) -> N/T(N).
inline IntMatrix free_part_matrix(const GroupHom& f) {
  return f.matrix().block(0, 0, f.codomain().rank(), f.domain().rank());
}

}  // namespace locoloc
