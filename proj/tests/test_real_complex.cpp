#include "locoloc/real_complex.hpp"

#include <gtest/gtest.h>

using namespace locoloc;
namespace fx = locoloc::fixtures;

namespace {

PrimeSet P(std::initializer_list<long> ps) {
  std::vector<Integer> v(ps.begin(), ps.end());
  return PrimeSet::finite(v);
}

}  // namespace

TEST(EtaSequence, PointIsExact) {
  const auto r = eta_les_check(fx::point_rc());
  EXPECT_EQ(r.labels.size(), 24u);
  EXPECT_TRUE(r.exact()) << (r.witnesses.empty() ? "" : r.witnesses.front());
  EXPECT_TRUE(eta_les_check(fx::zero_rc()).exact());
}

TEST(EtaSequence, CorruptedComplexificationIsCaught) {
  const RCPair p = fx::point_rc();
  const RCPair bad = p.with_c(0, GroupHom(p.real().at(0), p.complex().at(0), IntMatrix::scalar(1, Integer(2))));
  const auto r = eta_les_check(bad);
  EXPECT_FALSE(r.exact());
  ASSERT_FALSE(r.witnesses.empty());
  EXPECT_NE(r.witnesses.front().find("K_0"), std::string::npos) << r.witnesses.front();
}

TEST(RCPair, RejectsBadShapesAndTwoChi) {
  const RCPair p = fx::point_rc();
  auto chi = p.chi_maps();
  // chi_4 : Z -> 0 is fine; make chi_0 land in Z by using the wrong target
  chi[0] = GroupHom::zero(p.real().at(0), p.real().at(0));
  EXPECT_THROW(RCPair(p.real(), p.complex(), chi, p.c_maps(), p.delta_maps()), std::invalid_argument);

  // a theory where chi has order 3 cannot be a pair
  const FgAbGroup Z3 = FgAbGroup::cyclic(3), O;
  std::vector<FgAbGroup> real(8, O);
  real[0] = Z3;
  real[1] = Z3;
  const GradedFg R = GradedFg::periodic(8, real), K = GradedFg::periodic(2, {O, O});
  std::vector<GroupHom> x, c, d;
  for (int n = 0; n < 8; ++n) {
    x.push_back(GroupHom::zero(R.at(n), R.at(n + 1)));
    c.push_back(GroupHom::zero(R.at(n), K.at(n)));
    d.push_back(GroupHom::zero(K.at(n), R.at(n - 2)));
  }
  x[0] = GroupHom::identity(Z3);
  EXPECT_THROW(RCPair(R, K, x, c, d), std::invalid_argument);
}

TEST(Splitting, LocalizedAtTwo) {
  const auto r = splitting_check(fx::point_rc(), Coefficients::localized(P({2})));
  EXPECT_TRUE(r.passed());
  EXPECT_TRUE(r.two_chi_zero);
  EXPECT_TRUE(r.localized_chi_vanishes);
  const ExtModule Z2 = localize_group(FgAbGroup::free(1), P({2}));
  for (const auto& d : r.degrees) {
    EXPECT_EQ(d.left, d.degree % 2 == 0 ? Z2 : ExtModule{}) << d.degree;
    EXPECT_EQ(d.right, d.left) << d.degree;
  }
  EXPECT_TRUE(splitting_check(fx::point_rc(), Coefficients::localized(PrimeSet::all())).passed());
  EXPECT_TRUE(splitting_check(fx::point_rc(), Coefficients::localized(P({2, 7}))).passed());
}

TEST(Splitting, OddFiniteCoefficients) {
  for (long s : {3, 5, 7, 9, 15, 21}) {
    const auto r = splitting_check(fx::point_rc(), Coefficients::finite(s));
    EXPECT_TRUE(r.passed()) << s;
    EXPECT_TRUE(r.exponent_bound_holds);
    for (const auto& d : r.degrees) {
      const bool even = d.degree % 2 == 0;
      EXPECT_EQ(d.left, even ? ExtModule::from_group(FgAbGroup::cyclic(s)) : ExtModule{}) << s << " " << d.degree;
    }
  }
}

TEST(Splitting, OddTorsionQuotient) {
  for (auto S : {P({3}), P({3, 5}), P({7})}) {
    const auto r = splitting_check(fx::point_rc(), Coefficients::torsion_quotient(S));
    EXPECT_TRUE(r.passed()) << S.to_string();
    for (const auto& d : r.degrees)
      EXPECT_EQ(d.left, d.degree % 2 == 0 ? ExtModule::prufer(S) : ExtModule{}) << d.degree;
  }
}

TEST(Splitting, ZeroTheoriesSplitTrivially) {
  EXPECT_TRUE(splitting_check(fx::zero_rc(), Coefficients::finite(3)).passed());
  EXPECT_TRUE(splitting_check(fx::zero_rc(), Coefficients::localized(P({2}))).passed());
}

TEST(Splitting, DisallowedCoefficientsAreRejected) {
  auto name_of = [](const Coefficients& H) {
    try {
      splitting_check(fx::point_rc(), H);
    } catch (const Error& e) {
      return e.name();
    }
    return std::string("none");
  };
  EXPECT_EQ(name_of(Coefficients::finite(2)), "DisallowedCoefficient");
  EXPECT_EQ(name_of(Coefficients::finite(6)), "DisallowedCoefficient");
  EXPECT_EQ(name_of(Coefficients::localized(P({3}))), "DisallowedCoefficient");
  EXPECT_EQ(name_of(Coefficients::torsion_quotient(P({2, 3}))), "DisallowedCoefficient");
  EXPECT_EQ(name_of(Coefficients::torsion_quotient(PrimeSet::odd())), "DisallowedCoefficient");
}

TEST(Splitting, LocalizedSequenceBreaksIntoShortExactPieces) {
  // with 2 inverted, chi dies, so each K_n sits in 0 -> KO_n -> K_n -> KO_{n-2} -> 0
  const RCPair p = fx::point_rc();
  const PrimeSet S = P({2});
  for (int n = 0; n < 8; ++n) {
    const ExtModule Kn = localize_group(p.complex().at(n), S);
    const auto sum = direct_sum(localize_group(p.real().at(n), S), localize_group(p.real().at(n - 2), S));
    ASSERT_TRUE(is_representable(sum));
    EXPECT_EQ(std::get<ExtModule>(sum), Kn) << n;
  }
}
