#pragma once

// Coefficient constructions on graded theories (localisation, torsion and
// finite coefficients), their long exact sequences, and iso detection.

#include "locoloc/exact_sequence.hpp"
#include "locoloc/extension.hpp"
#include "locoloc/graded.hpp"

#include <array>

namespace locoloc {

inline GradedExt localize_theory(const GradedFg& F, const PrimeSet& S) {
  return F.build<ExtModule>([&](int n) { return localize_group(F.at(n), S); });
}

/// Degree n carries tor0(F_n) + tor1(F_{n-1}); the extension is split since
/// its sub is divisible. The splitting is not natural.
inline GradedExt torsion_theory(const GradedFg& F, const PrimeSet& S) {
  return F.build<ExtModule>(
      [&](int n) {
        const auto t0 = tor_coefficients(F.at(n), S).tor0;
        const auto t1 = ExtModule::from_group(tor_coefficients(F.at(n - 1), S).tor1);
        return std::get<ExtModule>(direct_sum(t0, t1));
      },
      0, 1);
}

// ker and coker of multiplication by s, as subquotients of the generator space.
inline Subquotient coker_mult(const FgAbGroup& M, const Integer& s) {
  const std::size_t k = M.num_generators();
  return {IntMatrix::identity(k), hstack(M.relation_matrix(), IntMatrix::scalar(k, s))};
}
inline Subquotient ker_mult(const FgAbGroup& M, const Integer& s) {
  return kernel_subquotient(GroupHom::multiplication(M, s));
}

inline ExtensionProblem finite_coefficient_problem(const FgAbGroup& Fn, const FgAbGroup& Fn1, const Integer& s,
                                                   ResolutionPolicy policy, const Integer& max_order = 4096) {
  if (s <= 1) throw Error("InvalidArgument", "finite coefficients need s >= 2");
  return resolve_extension({coker_mult(Fn, s).group(), ker_mult(Fn1, s).group()}, policy, max_order);
}

/// Degree n: coker(s on F_n) >-> F_n(;s) ->> ker(s on F_{n-1}).
inline GradedGroup<ExtensionProblem> finite_coefficients(const GradedFg& F, const Integer& s,
                                                         ResolutionPolicy policy = ResolutionPolicy::Enumerate,
                                                         const Integer& max_order = 4096) {
  if (s <= 1) throw Error("InvalidArgument", "finite coefficients need s >= 2");
  return F.build<ExtensionProblem>(
      [&](int n) { return finite_coefficient_problem(F.at(n), F.at(n - 1), s, policy, max_order); }, 0, 1);
}

// ---------------------------------------------------------------------------
// The localisation / colocalisation sequence
//   ... -> F_n -> S^-1 F_n -> F'_n -> F_{n-1} -> ...
// checked layer by layer. The f.g. layer replaces S^-1 F_n by the lattice
// Z^r + (torsion prime to S) through which F_n -> S^-1 F_n factors; the
// divisible layer records how many copies of (+)_{p in S} Z(p^inf) the map
// S^-1 F_n -> F'_n hits.

struct LocColocLayer {
  GroupHom alpha;                    // F_n -> Z^r + T'
  GroupHom gamma;                    // tor1(F_{n-1}) -> F_{n-1}
  unsigned long beta_multiplicity;  // rank of the Pruefer image of S^-1 F_n
};

struct LocColocMaps {
  std::map<int, LocColocLayer> by_degree;
};

namespace detail {

inline std::vector<int> descending_degrees(const GradedFg& F, int extra_above) {
  std::vector<int> out;
  if (F.is_periodic()) {
    for (int n = F.period() - 1; n >= 0; --n) out.push_back(n);
    return out;
  }
  const auto [lo, hi] = F.window();
  for (int n = hi + extra_above; n >= lo; --n) out.push_back(n);
  return out;
}

}  // namespace detail

inline LocColocMaps canonical_loc_coloc_maps(const GradedFg& F, const PrimeSet& S) {
  LocColocMaps m;
  for (int n : detail::descending_degrees(F, 1))
    m.by_degree[n] = {s_torsion_quotient(F.at(n), S), s_torsion_inclusion(F.at(n - 1), S), F.at(n).rank()};
  return m;
}

inline ExactSequenceReport check_loc_coloc(const GradedFg& F, const PrimeSet& S, const LocColocMaps& maps) {
  const GradedExt L = localize_theory(F, S);
  const GradedExt T = torsion_theory(F, S);
  const std::vector<int> degs = detail::descending_degrees(F, 1);
  auto layer = [&](int n) -> const LocColocLayer& {
    return maps.by_degree.at(F.is_periodic() ? wrap(n, F.period()) : n);
  };
  auto has = [&](int n) { return maps.by_degree.count(F.is_periodic() ? wrap(n, F.period()) : n) > 0; };
  ExactSequenceReport r;
  for (int n : degs) {
    const std::string d = std::to_string(n);
    const FgAbGroup& Fn = F.at(n);
    const LocColocLayer& cur = layer(n);

    // F_n: image of tor1(F_n) equals the kernel of the localisation map
    const GroupHom in = has(n + 1) ? layer(n + 1).gamma : GroupHom::zero(FgAbGroup{}, Fn);
    r.add_node("F_" + d, Fn.to_string(), exactness_defect(in, cur.alpha).empty(),
               exactness_defect(in, cur.alpha));

    // S^-1 F_n: the image of F_n is the full lattice, which is the kernel of
    // the projection onto the Pruefer part exactly when that projection has
    // full multiplicity
    const FgAbGroup lattice = FgAbGroup::free(Fn.rank()) + L.at(n).finite_torsion();
    std::string why;
    if (!(cur.alpha.codomain() == lattice)) why = "localisation map has the wrong target lattice";
    else if (!is_surjective(cur.alpha)) why = "image of F_n is a proper sublattice";
    else if (!S.is_empty() && cur.beta_multiplicity != Fn.rank())
      why = "kernel of the Pruefer projection differs from the image of F_n";
    r.add_node("S^-1 F_" + d, L.at(n).to_string(), why.empty(), why);

    // F'_n: the Pruefer layer is the image of S^-1 F_n, and tor1(F_{n-1})
    // injects into F_{n-1}
    why.clear();
    if (!S.is_empty() && cur.beta_multiplicity != T.at(n).divisible_part().max_multiplicity())
      why = "Pruefer layer is not hit by S^-1 F_n";
    else if (!is_injective(cur.gamma))
      why = "tor1 part has kernel " + kernel_subquotient(cur.gamma).group().to_string();
    r.add_node("F'_" + d, T.at(n).to_string(), why.empty(), why);
  }
  return r;
}

inline ExactSequenceReport assemble_loc_coloc_les(const GradedFg& F, const PrimeSet& S) {
  return check_loc_coloc(F, S, canonical_loc_coloc_maps(F, S));
}

// ---------------------------------------------------------------------------
// The coefficient sequence ... -> F(;s)_n -> F(;st)_n -> F(;t)_n -> F(;s)_{n-1}
// with split middle groups coker_u(F_n) + ker_u(F_{n-1}).

namespace detail {

struct SplitCoefficientGroup {
  Subquotient coker;  // of u on F_n
  Subquotient ker;    // of u on F_{n-1}
  SplitSum sum;
};

inline SplitCoefficientGroup split_coefficient_group(const GradedFg& F, int n, const Integer& u) {
  Subquotient c = coker_mult(F.at(n), u);
  Subquotient k = ker_mult(F.at(n - 1), u);
  SplitSum sum({c.group(), k.group()});
  return {std::move(c), std::move(k), std::move(sum)};
}

}  // namespace detail

inline ExactSequenceReport coefficient_les(const GradedFg& F, const Integer& s, const Integer& t) {
  if (s < 2 || t < 2) throw Error("InvalidArgument", "coefficient_les needs s, t >= 2");
  const Integer st = s * t;
  const std::vector<int> degs = detail::descending_degrees(F, 1);
  std::vector<std::string> labels;
  std::vector<GroupHom> maps;
  const std::string ss = s.get_str(), sst = st.get_str(), stt = t.get_str();
  for (std::size_t k = 0; k < degs.size(); ++k) {
    const int n = degs[k];
    const auto Gs = detail::split_coefficient_group(F, n, s);
    const auto Gst = detail::split_coefficient_group(F, n, st);
    const auto Gt = detail::split_coefficient_group(F, n, t);
    const auto Gs_next = detail::split_coefficient_group(F, n - 1, s);
    const std::size_t r_n = F.at(n).num_generators(), r_n1 = F.at(n - 1).num_generators();
    const IntMatrix one_n = IntMatrix::identity(r_n), one_n1 = IntMatrix::identity(r_n1);

    // coker: x t then projection; ker: inclusion then x s
    maps.push_back(block_hom(Gs.sum, Gst.sum,
                             {{induced_map(Gs.coker, Gst.coker, t * one_n), std::nullopt},
                              {std::nullopt, induced_map(Gs.ker, Gst.ker, one_n1)}}));
    maps.push_back(block_hom(Gst.sum, Gt.sum,
                             {{induced_map(Gst.coker, Gt.coker, one_n), std::nullopt},
                              {std::nullopt, induced_map(Gst.ker, Gt.ker, s * one_n1)}}));
    // connecting map: ker_t(F_{n-1}) -> F_{n-1} -> coker_s(F_{n-1})
    maps.push_back(block_hom(Gt.sum, Gs_next.sum,
                             {{std::nullopt, induced_map(Gt.ker, Gs_next.coker, one_n1)},
                              {std::nullopt, std::nullopt}}));
    const std::string d = std::to_string(n);
    labels.push_back("F(;" + ss + ")_" + d);
    labels.push_back("F(;" + sst + ")_" + d);
    labels.push_back("F(;" + stt + ")_" + d);
  }
  if (!F.is_periodic()) {
    // the bounded sequence ends at F(;s) one degree below the window
    const auto [lo, hi] = F.window();
    (void)hi;
    labels.push_back("F(;" + ss + ")_" + std::to_string(lo - 1));
  }
  ExactSequenceReport r = check_exact(labels, maps, F.is_periodic() ? Closure::Cyclic : Closure::ZeroEnds);
  r.notes.push_back("assignment: split groups coker + ker; maps x" + stt + " on coker and inclusion on ker, "
                    "projection on coker and x" + ss + " on ker, connecting ker_" + stt + " -> coker_" + ss);
  if (!r.exact())
    throw Error("Undetermined", "coefficient sequence: the canonical split assignment is not exact (" +
                                    r.witnesses.front() + ")");
  return r;
}

/// Groups of the coefficient sequence in degree n under the split policy.
inline std::array<FgAbGroup, 3> coefficient_groups(const GradedFg& F, int n, const Integer& s, const Integer& t) {
  return {detail::split_coefficient_group(F, n, s).sum.group(),
          detail::split_coefficient_group(F, n, s * t).sum.group(),
          detail::split_coefficient_group(F, n, t).sum.group()};
}

// ---------------------------------------------------------------------------
// Maps of theories and iso detection.

struct TheoryMap {
  GradedFg source;
  GradedFg target;
  std::map<int, GroupHom> maps;  // residues for periodic theories

  GroupHom at(int n) const {
    const int key = source.is_periodic() ? wrap(n, source.period()) : n;
    auto it = maps.find(key);
    if (it != maps.end()) return it->second;
    return GroupHom::zero(source.at(n), target.at(n));
  }
  void validate() const {
    if (source.period() != target.period()) throw std::invalid_argument("TheoryMap: periods differ");
    for (const auto& [n, f] : maps)
      if (!(f.domain() == source.at(n)) || !(f.codomain() == target.at(n)))
        throw std::invalid_argument("TheoryMap: degree " + std::to_string(n) + " does not match");
  }
  std::vector<int> degrees() const {
    std::vector<int> out;
    if (source.is_periodic()) {
      for (int n = 0; n < source.period(); ++n) out.push_back(n);
      return out;
    }
    auto [a, b] = source.window();
    auto [c, d] = target.window();
    int lo = std::min(a, c), hi = std::max(b, d);
    if (a > b) lo = c, hi = d;
    if (c > d) lo = a, hi = b;
    for (int n = lo; n <= hi + 1; ++n) out.push_back(n);
    return out;
  }
};

struct IsoDegreeReport {
  int degree = 0;
  bool phi_iso = false;
  bool loc_iso = false;
  bool tor0_iso = false;
  bool tor1_iso = false;
  bool tor_iso = false;
  std::map<Integer, bool> mod_q_iso;  // finite S only
};

struct IsoReport {
  std::vector<IsoDegreeReport> degrees;
  bool all_phi() const {
    return std::all_of(degrees.begin(), degrees.end(), [](const auto& d) { return d.phi_iso; });
  }
  bool all_loc() const {
    return std::all_of(degrees.begin(), degrees.end(), [](const auto& d) { return d.loc_iso; });
  }
  bool all_tor() const {
    return std::all_of(degrees.begin(), degrees.end(), [](const auto& d) { return d.tor_iso; });
  }
  bool all_mod_q() const {
    for (const auto& d : degrees)
      for (const auto& [q, ok] : d.mod_q_iso)
        if (!ok) return false;
    return true;
  }
};

namespace detail {

inline bool is_s_torsion_group(const FgAbGroup& g, const PrimeSet& S) {
  if (!g.is_finite()) return false;
  return std::all_of(g.invariant_factors().begin(), g.invariant_factors().end(),
                     [&](const Integer& n) { return S.is_s_number(n); });
}

/// f (x) (+)_{p in S} Z(p^inf) is an isomorphism: the free-part matrix is
/// square with determinant a unit away from S.
inline bool prufer_layer_iso(const GroupHom& f, const PrimeSet& S) {
  if (S.is_empty()) return true;
  const IntMatrix A = free_part_matrix(f);
  if (A.rows() != A.cols()) return false;
  if (A.rows() == 0) return true;
  const auto snf = smith_normal_form(A, {false, false, false, false});
  if (snf.rank < A.rows()) return false;
  Integer det = 1;
  for (const auto& d : snf.diagonal()) det *= d;
  return S.s_part(det) == 1;
}

}  // namespace detail

inline IsoReport iso_detector(const TheoryMap& phi, const PrimeSet& S) {
  phi.validate();
  IsoReport report;
  for (int n : phi.degrees()) {
    IsoDegreeReport d;
    d.degree = n;
    const GroupHom f = phi.at(n), f1 = phi.at(n - 1);
    d.phi_iso = is_isomorphism(f);
    const auto t = map_subquotients(f);
    d.loc_iso = detail::is_s_torsion_group(t.kernel, S) && detail::is_s_torsion_group(t.cokernel, S);
    d.tor0_iso = detail::prufer_layer_iso(f, S);
    d.tor1_iso = is_isomorphism(restrict_to_s_torsion(f1, S));
    d.tor_iso = d.tor0_iso && d.tor1_iso;
    if (!S.is_cofinite()) {
      for (const auto& q : S.listed()) {
        const bool c = is_isomorphism(induced_map(coker_mult(f.domain(), q), coker_mult(f.codomain(), q), f.matrix()));
        const bool k = is_isomorphism(induced_map(ker_mult(f1.domain(), q), ker_mult(f1.codomain(), q), f1.matrix()));
        d.mod_q_iso[q] = c && k;
      }
    }
    report.degrees.push_back(std::move(d));
  }
  return report;
}

}  // namespace locoloc
