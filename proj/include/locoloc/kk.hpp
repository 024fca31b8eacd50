#pragma once

// Universal coefficient computations for KK-groups of K-theory fixtures and
// the explicit C_q, KKO and D_Q computations.

#include "locoloc/theories.hpp"

namespace locoloc {

enum class Flavor { Complex, Real };

inline std::string_view to_string(Flavor f) { return f == Flavor::Complex ? "complex" : "real"; }

struct KTheoryObject {
  std::string name;
  GradedExt k_groups;
  Flavor flavor = Flavor::Complex;

  KTheoryObject() = default;
  KTheoryObject(std::string n, GradedExt k, Flavor f) : name(std::move(n)), k_groups(std::move(k)), flavor(f) {
    if (k_groups.period() != (flavor == Flavor::Complex ? 2 : 8))
      throw std::invalid_argument("KTheoryObject: period does not match the flavor");
  }
};

namespace fixtures {

inline GradedFg ko_point() {
  const FgAbGroup Z = FgAbGroup::free(1), Z2 = FgAbGroup::cyclic(2), O;
  return GradedFg::periodic(8, {Z, Z2, Z2, O, Z, O, O, O});
}
inline GradedFg k_point() { return GradedFg::periodic(2, {FgAbGroup::free(1), FgAbGroup{}}); }

inline KTheoryObject point_complex() { return {"point-complex", to_ext(k_point()), Flavor::Complex}; }
inline KTheoryObject point_real() { return {"point-real", to_ext(ko_point()), Flavor::Real}; }
/// The cone of q on the point: K_0 = Z/q, K_1 = 0.
inline KTheoryObject cq(const Integer& q) {
  if (q < 2) throw Error("InvalidArgument", "Cq needs q >= 2");
  return {"Cq(" + q.get_str() + ")",
          GradedExt::periodic(2, {ExtModule::from_group(FgAbGroup::cyclic(q)), ExtModule{}}), Flavor::Complex};
}
inline KTheoryObject dq() { return {"DQ", GradedExt::periodic(2, {ExtModule::rational(), ExtModule{}}), Flavor::Complex}; }
inline KTheoryObject dqz() { return {"DQZ", GradedExt::periodic(2, {ExtModule::q_mod_z(), ExtModule{}}), Flavor::Complex}; }

}  // namespace fixtures

struct UCTDegree {
  int degree = 0;
  Representable<ExtModule> sub;       // (+) Ext(K_i A, K_{i+n+1} B)
  Representable<ExtModule> quot;      // (+) Hom(K_i A, K_{i+n} B)
  Representable<ExtModule> resolved;  // split
  std::optional<ExtensionProblem> problem;  // when both ends are f.g.
};

struct UCTResult {
  std::string label = "bootstrap-class formula";
  std::vector<UCTDegree> degrees;
};

namespace detail {

inline Representable<ExtModule> graded_bifunctor_sum(Bifunctor kind, const KTheoryObject& A, const KTheoryObject& B,
                                                     int shift) {
  const int P = A.k_groups.period();
  ExtModule acc;
  for (int i = 0; i < P; ++i) {
    auto v = bifunctor(kind, A.k_groups.at(i), B.k_groups.at(i + shift));
    if (!is_representable(v))
      return NotRepresentable{std::string(to_string(kind)) + "(K_" + std::to_string(i) + "(" + A.name + "), K_" +
                              std::to_string(wrap(i + shift, P)) + "(" + B.name + ")): " +
                              std::get<NotRepresentable>(v).reason};
    auto s = direct_sum(acc, std::get<ExtModule>(v));
    if (!is_representable(s)) return s;
    acc = std::get<ExtModule>(std::move(s));
  }
  return acc;
}

}  // namespace detail

/// KK_n(A, B) for complex objects: Ext(K_{*+1} A, K_* B) >-> KK_n ->> Hom(K_* A, K_* B),
/// resolved by splitting.
inline UCTResult uct_kk(const KTheoryObject& A, const KTheoryObject& B) {
  if (A.flavor != Flavor::Complex || B.flavor != Flavor::Complex)
    throw std::invalid_argument("uct_kk: only the complex flavor is supported");
  UCTResult r;
  for (int n = 0; n < 2; ++n) {
    UCTDegree d;
    d.degree = n;
    d.sub = detail::graded_bifunctor_sum(Bifunctor::Ext, A, B, n + 1);
    d.quot = detail::graded_bifunctor_sum(Bifunctor::Hom, A, B, n);
    if (!is_representable(d.sub)) d.resolved = d.sub;
    else if (!is_representable(d.quot)) d.resolved = d.quot;
    else d.resolved = direct_sum(std::get<ExtModule>(d.sub), std::get<ExtModule>(d.quot));
    if (is_representable(d.sub) && is_representable(d.quot)) {
      auto s = std::get<ExtModule>(d.sub).as_group();
      auto q = std::get<ExtModule>(d.quot).as_group();
      if (s && q) d.problem = resolve_extension({*s, *q}, ResolutionPolicy::Split);
    }
    r.degrees.push_back(std::move(d));
  }
  return r;
}

/// B with Z/q coefficients: each degree an extension problem, split for the
/// complex flavor and enumerated for the real one.
struct CoefficientObject {
  std::string name;
  Flavor flavor;
  GradedGroup<ExtensionProblem> k_groups;
};

inline CoefficientObject coefficient_object(const KTheoryObject& B, const Integer& q, const Integer& max_order = 4096) {
  if (q < 2) throw Error("InvalidArgument", "coefficient_object needs q >= 2");
  auto F = to_fg(B.k_groups);
  if (!F) throw std::invalid_argument("coefficient_object: K-groups of " + B.name + " are not finitely generated");
  const auto policy = B.flavor == Flavor::Complex ? ResolutionPolicy::Split : ResolutionPolicy::Enumerate;
  return {B.name + ";Z/" + q.get_str(), B.flavor, finite_coefficients(*F, q, policy, max_order)};
}

// ---------------------------------------------------------------------------

struct KKOCqR {
  FgAbGroup kko_minus1;
  FgAbGroup kko_0;
  ExactSequenceReport les;
};

/// KKO_n(C_q, R) from ... -> KO_{n+1} -q-> KO_{n+1} -> KKO_n(C_q, R) -> KO_n -q-> KO_n -> ...,
/// whose middle terms are coker(q on KO_{n+1}) and ker(q on KO_n). For n = 0, -1
/// one of the two ends vanishes, so the groups are forced.
inline KKOCqR kko_cq_r(const Integer& q) {
  if (q < 2) throw Error("InvalidArgument", "kko_cq_r needs q >= 2");
  const GradedFg KO = fixtures::ko_point();
  auto group_at = [&](int n) {
    auto p = finite_coefficient_problem(KO.at(n + 1), KO.at(n), q, ResolutionPolicy::Enumerate);
    if (!p.resolved) throw std::logic_error("kko_cq_r: degree " + std::to_string(n) + " is not forced");
    return p;
  };
  const ExtensionProblem x0 = group_at(0), xm1 = group_at(-1);

  // KO_1 -q-> KO_1 -> X_0 -> KO_0 -q-> KO_0 -> X_{-1} -> KO_{-1}
  auto mult = [&](int n) { return GroupHom::multiplication(KO.at(n), q); };
  auto into = [&](int n, const ExtensionProblem& x) {
    // KO_{n+1} ->> coker part of X_n
    const Subquotient c = coker_mult(KO.at(n + 1), q);
    const GroupHom proj = induced_map(Subquotient(IntMatrix::identity(KO.at(n + 1).num_generators()),
                                                  KO.at(n + 1).relation_matrix()),
                                      c, IntMatrix::identity(KO.at(n + 1).num_generators()));
    return x.candidates.front().inclusion.after(GroupHom(KO.at(n + 1), c.group(), proj.matrix()));
  };
  auto out_of = [&](int n, const ExtensionProblem& x) {
    // X_n ->> ker part ->> KO_n
    const GroupHom inc = kernel_inclusion(mult(n));
    return inc.after(x.candidates.front().projection);
  };
  const std::vector<std::string> labels = {"KO_1", "KO_1", "KKO_0(C_q,R)", "KO_0", "KO_0", "KKO_-1(C_q,R)", "KO_-1"};
  const std::vector<GroupHom> maps = {mult(1), into(0, x0), out_of(0, x0), mult(0), into(-1, xm1), out_of(-1, xm1)};
  return {*xm1.resolved, *x0.resolved, check_exact(labels, maps, Closure::Open)};
}

struct KKOCqCqBound {
  Integer q;
  ExtensionProblem problem;  // sub Z/2 (x) Z/q, quot Tor(Z/q, Z/q)
  Integer bound;             // 2q for even q, q for odd q
  bool exponent_bound_holds = false;
  std::string conclusion;
};

inline KKOCqCqBound kko_cq_cq_bound(const Integer& q, const Integer& max_order = 4096) {
  if (q < 2) throw Error("InvalidArgument", "kko_cq_cq_bound needs q >= 2");
  const FgAbGroup Zq = FgAbGroup::cyclic(q);
  const FgAbGroup sub = bifunctor(Bifunctor::Tensor, FgAbGroup::cyclic(2), Zq);
  const FgAbGroup quot = bifunctor(Bifunctor::Tor, Zq, Zq);
  const bool even = divides(2, q);
  KKOCqCqBound r;
  r.q = q;
  // odd q: the sub vanishes and the extension splits
  r.problem = resolve_extension({sub, quot}, even ? ResolutionPolicy::Enumerate : ResolutionPolicy::Split, max_order);
  r.bound = even ? Integer(2 * q) : q;
  r.exponent_bound_holds = std::all_of(r.problem.candidates.begin(), r.problem.candidates.end(),
                                       [&](const auto& c) { return divides(c.middle.torsion_exponent(), r.bound); });
  r.conclusion = "KKO_0(C_q,C_q) is annihilated by q for odd q and by 2q for even q";
  return r;
}

struct DQExamples {
  Representable<ExtModule> kk0_dq_dq;
  Representable<ExtModule> kk0_dq_point;
  Representable<ExtModule> kk0_dq_point_rational;
  Representable<ExtModule> qz_tensor_q;
  Representable<ExtModule> kk0_dqz_dqz_rational;
  std::string dqz_claim_status;
};

inline DQExamples dq_examples() {
  DQExamples r;
  const auto dq = fixtures::dq(), pt = fixtures::point_complex(), dqz = fixtures::dqz();
  r.kk0_dq_dq = uct_kk(dq, dq).degrees[0].resolved;
  r.kk0_dq_point = uct_kk(dq, pt).degrees[0].resolved;
  auto rational = [](const Representable<ExtModule>& m) -> Representable<ExtModule> {
    if (!is_representable(m)) return m;
    return bifunctor(Bifunctor::Tensor, std::get<ExtModule>(m), ExtModule::rational());
  };
  r.kk0_dq_point_rational = rational(r.kk0_dq_point);
  r.qz_tensor_q = bifunctor(Bifunctor::Tensor, ExtModule::q_mod_z(), ExtModule::rational());
  r.kk0_dqz_dqz_rational = rational(uct_kk(dqz, dqz).degrees[0].resolved);
  r.dqz_claim_status = is_representable(r.kk0_dqz_dqz_rational)
                           ? "computed"
                           : "unverified — NotRepresentable (" +
                                 std::get<NotRepresentable>(r.kk0_dqz_dqz_rational).reason + ")";
  return r;
}

}  // namespace locoloc
