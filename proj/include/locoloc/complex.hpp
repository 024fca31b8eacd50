#pragma once

// Bounded complexes of free abelian groups up to chain homotopy: cones,
// homotopy solving, S-finiteness and S-equivalences, octahedral sequences.

#include "locoloc/bifunctor.hpp"
#include "locoloc/exact_sequence.hpp"
#include "locoloc/graded.hpp"

namespace locoloc {

/// ... -> C_n -d_n-> C_{n-1} -> ... with C_n = Z^{ranks[n-lo]} for lo <= n <= hi.
class FreeComplex {
 public:
  FreeComplex() = default;
  /// differentials[i] is d_{lo+i+1}: C_{lo+i+1} -> C_{lo+i}.
  FreeComplex(int lo, std::vector<std::size_t> ranks, std::vector<IntMatrix> differentials)
      : lo_(lo), ranks_(std::move(ranks)), d_(std::move(differentials)) {
    if (ranks_.empty()) ranks_.push_back(0);
    if (d_.size() + 1 != ranks_.size())
      throw std::invalid_argument("FreeComplex: need one differential between consecutive degrees");
    for (std::size_t i = 0; i < d_.size(); ++i)
      if (d_[i].rows() != ranks_[i] || d_[i].cols() != ranks_[i + 1])
        throw std::invalid_argument("FreeComplex: d_" + std::to_string(lo_ + static_cast<int>(i) + 1) +
                                    " has the wrong shape");
    for (std::size_t i = 0; i + 1 < d_.size(); ++i)
      if (!(d_[i] * d_[i + 1]).is_zero())
        throw std::invalid_argument("FreeComplex: d_" + std::to_string(lo_ + static_cast<int>(i) + 1) +
                                    " d_" + std::to_string(lo_ + static_cast<int>(i) + 2) + " != 0");
  }

  /// Z concentrated in one degree, or Z^r.
  static FreeComplex point(int degree = 0, std::size_t rank = 1) { return {degree, {rank}, {}}; }
  /// Z -m-> Z in degrees (degree+1, degree).
  static FreeComplex two_term(const Integer& m, int degree = 0) {
    IntMatrix d(1, 1);
    d(0, 0) = m;
    return {degree, {1, 1}, {d}};
  }

  int lo() const noexcept { return lo_; }
  int hi() const noexcept { return lo_ + static_cast<int>(ranks_.size()) - 1; }
  std::size_t rank(int n) const {
    return n < lo() || n > hi() ? 0 : ranks_[static_cast<std::size_t>(n - lo_)];
  }
  /// d_n: C_n -> C_{n-1}; a zero matrix of the right shape outside the window.
  IntMatrix d(int n) const {
    if (n <= lo() || n > hi()) return IntMatrix(rank(n - 1), rank(n));
    return d_[static_cast<std::size_t>(n - lo_ - 1)];
  }
  const std::vector<std::size_t>& ranks() const noexcept { return ranks_; }
  const std::vector<IntMatrix>& differentials() const noexcept { return d_; }
  bool is_zero() const {
    return std::all_of(ranks_.begin(), ranks_.end(), [](std::size_t r) { return r == 0; });
  }

  /// ker d_n / im d_{n+1} together with representatives.
  Subquotient homology_subquotient(int n) const {
    return {kernel_basis(d(n)), d(n + 1)};
  }
  GradedFg homology() const {
    std::map<int, FgAbGroup> h;
    for (int n = lo(); n <= hi(); ++n) h[n] = homology_subquotient(n).group();
    return GradedFg::bounded(std::move(h));
  }

  /// C[k]: (C[k])_n = C_{n-k}, differentials scaled by (-1)^k.
  FreeComplex shift(int k) const {
    std::vector<IntMatrix> d = d_;
    if (k % 2 != 0)
      for (auto& m : d) m = Integer(-1) * m;
    return {lo_ + k, ranks_, std::move(d)};
  }

  friend bool operator==(const FreeComplex&, const FreeComplex&) = default;

 private:
  int lo_ = 0;
  std::vector<std::size_t> ranks_{0};
  std::vector<IntMatrix> d_;
};

inline FreeComplex direct_sum(const FreeComplex& a, const FreeComplex& b) {
  const int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
  std::vector<std::size_t> ranks;
  std::vector<IntMatrix> d;
  for (int n = lo; n <= hi; ++n) ranks.push_back(a.rank(n) + b.rank(n));
  for (int n = lo + 1; n <= hi; ++n) d.push_back(direct_sum(a.d(n), b.d(n)));
  return {lo, ranks, d};
}

/// f_n: A_n -> B_{n+k} with d f = (-1)^k f d.
class ChainMap {
 public:
  ChainMap() = default;
  ChainMap(FreeComplex source, FreeComplex target, std::map<int, IntMatrix> components, int degree = 0)
      : src_(std::move(source)), tgt_(std::move(target)), f_(std::move(components)), deg_(degree) {
    for (auto it = f_.begin(); it != f_.end();) {
      const int n = it->first;
      if (it->second.rows() != tgt_.rank(n + deg_) || it->second.cols() != src_.rank(n))
        throw std::invalid_argument("ChainMap: component " + std::to_string(n) + " has the wrong shape");
      it = it->second.is_zero() ? f_.erase(it) : std::next(it);
    }
    const Integer sign = deg_ % 2 == 0 ? 1 : -1;
    for (int n = src_.lo(); n <= src_.hi() + 1; ++n)
      if (!(tgt_.d(n + deg_) * at(n) == sign * (at(n - 1) * src_.d(n))))
        throw std::invalid_argument("ChainMap: not a chain map at degree " + std::to_string(n));
  }

  /// s * id.
  static ChainMap multiplication(const FreeComplex& C, const Integer& s) {
    std::map<int, IntMatrix> f;
    for (int n = C.lo(); n <= C.hi(); ++n) f[n] = IntMatrix::scalar(C.rank(n), s);
    return {C, C, f};
  }
  static ChainMap identity(const FreeComplex& C) { return multiplication(C, 1); }
  static ChainMap zero(const FreeComplex& A, const FreeComplex& B, int degree = 0) { return {A, B, {}, degree}; }

  const FreeComplex& source() const noexcept { return src_; }
  const FreeComplex& target() const noexcept { return tgt_; }
  int degree() const noexcept { return deg_; }
  IntMatrix at(int n) const {
    auto it = f_.find(n);
    return it == f_.end() ? IntMatrix(tgt_.rank(n + deg_), src_.rank(n)) : it->second;
  }
  const std::map<int, IntMatrix>& components() const noexcept { return f_; }

  /// this ∘ g
  ChainMap after(const ChainMap& g) const {
    if (!(g.tgt_ == src_)) throw std::invalid_argument("ChainMap: composing incompatible maps");
    std::map<int, IntMatrix> h;
    for (int n = g.src_.lo(); n <= g.src_.hi(); ++n) h[n] = at(n + g.deg_) * g.at(n);
    return {g.src_, tgt_, h, deg_ + g.deg_};
  }
  friend ChainMap operator-(const ChainMap& a, const ChainMap& b) {
    if (!(a.src_ == b.src_) || !(a.tgt_ == b.tgt_) || a.deg_ != b.deg_)
      throw std::invalid_argument("ChainMap: subtracting incompatible maps");
    std::map<int, IntMatrix> h;
    for (int n = a.src_.lo(); n <= a.src_.hi(); ++n) h[n] = a.at(n) - b.at(n);
    return {a.src_, a.tgt_, h, a.deg_};
  }

  /// The induced map H_n(source) -> H_{n+k}(target).
  GroupHom on_homology(int n) const {
    return induced_map(src_.homology_subquotient(n), tgt_.homology_subquotient(n + deg_), at(n));
  }

 private:
  FreeComplex src_, tgt_;
  std::map<int, IntMatrix> f_;
  int deg_ = 0;
};

/// H_n: A_n -> B_{n+1} with f = dH + Hd.
struct HomotopyCertificate {
  std::map<int, IntMatrix> components;
};

namespace detail {

/// Row-major flattening of variable blocks into one unknown vector.
struct BlockLayout {
  std::map<int, std::size_t> offset;
  std::map<int, std::pair<std::size_t, std::size_t>> shape;
  std::size_t size = 0;
  void add(int key, std::size_t rows, std::size_t cols) {
    offset[key] = size;
    shape[key] = {rows, cols};
    size += rows * cols;
  }
  std::size_t index(int key, std::size_t r, std::size_t c) const {
    return offset.at(key) + r * shape.at(key).second + c;
  }
};

/// Adds coeff * (L X R)(i, j) to equation row `row` for the variable block X.
inline void add_product_terms(IntMatrix& sys, std::size_t row, std::size_t i, std::size_t j, const IntMatrix* L,
                              const IntMatrix* R, const BlockLayout& lay, int key, const Integer& coeff) {
  const auto [xr, xc] = lay.shape.at(key);
  for (std::size_t a = 0; a < xr; ++a) {
    const Integer l = L ? (*L)(i, a) : Integer(a == i ? 1 : 0);
    if (l == 0) continue;
    for (std::size_t b = 0; b < xc; ++b) {
      const Integer r = R ? (*R)(b, j) : Integer(b == j ? 1 : 0);
      if (r == 0) continue;
      sys(row, lay.index(key, a, b)) += coeff * l * r;
    }
  }
}

}  // namespace detail

/// Solves f = dH + Hd over Z, for a degree-0 map.
inline std::optional<HomotopyCertificate> is_nullhomotopic(const ChainMap& f) {
  if (f.degree() != 0) throw std::invalid_argument("is_nullhomotopic: degree-0 maps only");
  const FreeComplex& A = f.source();
  const FreeComplex& B = f.target();
  detail::BlockLayout lay;
  for (int n = A.lo(); n <= A.hi(); ++n)
    if (A.rank(n) && B.rank(n + 1)) lay.add(n, B.rank(n + 1), A.rank(n));
  std::size_t eqs = 0;
  for (int n = A.lo(); n <= A.hi(); ++n) eqs += B.rank(n) * A.rank(n);
  IntMatrix sys(eqs, lay.size);
  std::vector<Integer> rhs(eqs);
  std::size_t row = 0;
  for (int n = A.lo(); n <= A.hi(); ++n) {
    const IntMatrix dB = B.d(n + 1), dA = A.d(n), fn = f.at(n);
    for (std::size_t i = 0; i < B.rank(n); ++i)
      for (std::size_t j = 0; j < A.rank(n); ++j, ++row) {
        rhs[row] = fn(i, j);
        if (lay.offset.count(n)) detail::add_product_terms(sys, row, i, j, &dB, nullptr, lay, n, 1);
        if (lay.offset.count(n - 1)) detail::add_product_terms(sys, row, i, j, nullptr, &dA, lay, n - 1, 1);
      }
  }
  std::optional<std::vector<Integer>> x;
  if (lay.size == 0) {
    if (std::any_of(rhs.begin(), rhs.end(), [](const Integer& v) { return v != 0; })) return std::nullopt;
    x = std::vector<Integer>{};
  } else {
    x = solve_integer(sys, rhs);
  }
  if (!x) return std::nullopt;
  HomotopyCertificate cert;
  for (const auto& [n, off] : lay.offset) {
    const auto [r, c] = lay.shape.at(n);
    IntMatrix H(r, c);
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < c; ++b) H(a, b) = (*x)[lay.index(n, a, b)];
    cert.components[n] = H;
  }
  return cert;
}

/// Checks f = dH + Hd for a certificate.
inline bool verifies_homotopy(const ChainMap& f, const HomotopyCertificate& h) {
  const FreeComplex& A = f.source();
  const FreeComplex& B = f.target();
  auto H = [&](int n) {
    auto it = h.components.find(n);
    return it == h.components.end() ? IntMatrix(B.rank(n + 1), A.rank(n)) : it->second;
  };
  for (int n = A.lo(); n <= A.hi(); ++n)
    if (!(f.at(n) == B.d(n + 1) * H(n) + H(n - 1) * A.d(n))) return false;
  return true;
}

struct Cone {
  FreeComplex complex;
  ChainMap iota;  // target -> cone
  ChainMap pi;    // cone -> source, degree -1
};

/// (C_f)_n = B_n + A_{n-1} with differential [[d, f], [0, -d]].
inline Cone cone(const ChainMap& f) {
  if (f.degree() != 0) throw std::invalid_argument("cone: degree-0 maps only");
  const FreeComplex& A = f.source();
  const FreeComplex& B = f.target();
  const int lo = std::min(B.lo(), A.lo() + 1), hi = std::max(B.hi(), A.hi() + 1);
  std::vector<std::size_t> ranks;
  std::vector<IntMatrix> d;
  for (int n = lo; n <= hi; ++n) ranks.push_back(B.rank(n) + A.rank(n - 1));
  for (int n = lo + 1; n <= hi; ++n) {
    IntMatrix m(B.rank(n - 1) + A.rank(n - 2), B.rank(n) + A.rank(n - 1));
    m.set_block(0, 0, B.d(n));
    m.set_block(0, B.rank(n), f.at(n - 1));
    m.set_block(B.rank(n - 1), B.rank(n), Integer(-1) * A.d(n - 1));
    d.push_back(m);
  }
  FreeComplex C(lo, ranks, d);
  std::map<int, IntMatrix> iota, pi;
  for (int n = lo; n <= hi; ++n) {
    IntMatrix i(C.rank(n), B.rank(n));
    i.set_block(0, 0, IntMatrix::identity(B.rank(n)));
    iota[n] = i;
    IntMatrix p(A.rank(n - 1), C.rank(n));
    p.set_block(0, B.rank(n), IntMatrix::identity(A.rank(n - 1)));
    pi[n] = p;
  }
  return {C, ChainMap(B, C, iota), ChainMap(C, A, pi, -1)};
}

/// Degree-n maps A -> B up to homotopy, by the split formula
/// (+)_i Hom(H_i A, H_{i+n} B) + Ext(H_i A, H_{i+n+1} B).
inline FgAbGroup hom_set(const FreeComplex& A, const FreeComplex& B, int n) {
  const GradedFg HA = A.homology(), HB = B.homology();
  FgAbGroup out;
  for (int i = A.lo(); i <= A.hi(); ++i)
    out = out + bifunctor(Bifunctor::Hom, HA.at(i), HB.at(i + n)) +
          bifunctor(Bifunctor::Ext, HA.at(i), HB.at(i + n + 1));
  return out;
}

/// Least S-number s with s * id nullhomotopic, among divisors of the
/// homology exponent; nullopt when the homology has free rank or torsion
/// outside S. An acyclic complex gives 1.
inline std::optional<Integer> s_finite_test(const FreeComplex& C, const PrimeSet& S) {
  const GradedFg H = C.homology();
  Integer e = 1;
  for (int n : H.degrees()) {
    if (H.at(n).rank() > 0) return std::nullopt;
    e = lcm(e, H.at(n).torsion_exponent());
  }
  if (!S.is_s_number(e)) return std::nullopt;
  for (const auto& s : divisors(e))
    if (is_nullhomotopic(ChainMap::multiplication(C, s))) return s;
  return std::nullopt;
}

struct SEquivalenceReport {
  bool cone_test = false;
  bool inverse_search = false;
  bool agree = false;
  std::optional<Integer> cone_s;      // witness from the cone
  std::optional<Integer> inverse_s;   // generator of the achievable s
  std::optional<ChainMap> inverse;    // g with gf ~ s, fg ~ s
};

/// Solves g f - s = dH + Hd, f g - s = dH' + H'd, dg = gd in (g, H, H', s).
/// The achievable s form an ideal mZ; f is an S-equivalence iff m is an
/// S-number.
inline SEquivalenceReport s_equivalence_test(const ChainMap& f, const PrimeSet& S) {
  if (f.degree() != 0) throw std::invalid_argument("s_equivalence_test: degree-0 maps only");
  SEquivalenceReport rep;
  const Cone c = cone(f);
  rep.cone_s = s_finite_test(c.complex, S);
  rep.cone_test = rep.cone_s.has_value();

  const FreeComplex& A = f.source();
  const FreeComplex& B = f.target();
  const int lo = std::min(A.lo(), B.lo()) - 1, hi = std::max(A.hi(), B.hi()) + 1;
  constexpr int G = 0, HA = 1'000'000, HB = 2'000'000, SV = 3'000'000;
  detail::BlockLayout lay;
  for (int n = lo; n <= hi; ++n) {
    if (A.rank(n) && B.rank(n)) lay.add(G + n, A.rank(n), B.rank(n));
    if (A.rank(n + 1) && A.rank(n)) lay.add(HA + n, A.rank(n + 1), A.rank(n));
    if (B.rank(n + 1) && B.rank(n)) lay.add(HB + n, B.rank(n + 1), B.rank(n));
  }
  lay.add(SV, 1, 1);
  auto has = [&](int key) { return lay.offset.count(key) > 0; };

  std::size_t eqs = 0;
  for (int n = lo; n <= hi; ++n) eqs += A.rank(n - 1) * B.rank(n) + A.rank(n) * A.rank(n) + B.rank(n) * B.rank(n);
  IntMatrix sys(eqs, lay.size);
  std::size_t row = 0;
  for (int n = lo; n <= hi; ++n) {
    // d^A g_n - g_{n-1} d^B = 0
    const IntMatrix dA = A.d(n), dB = B.d(n);
    for (std::size_t i = 0; i < A.rank(n - 1); ++i)
      for (std::size_t j = 0; j < B.rank(n); ++j, ++row) {
        if (has(G + n)) detail::add_product_terms(sys, row, i, j, &dA, nullptr, lay, G + n, 1);
        if (has(G + n - 1)) detail::add_product_terms(sys, row, i, j, nullptr, &dB, lay, G + n - 1, -1);
      }
    // g_n f_n - s - d H_n - H_{n-1} d = 0 on A_n
    const IntMatrix fn = f.at(n), dA1 = A.d(n + 1);
    for (std::size_t i = 0; i < A.rank(n); ++i)
      for (std::size_t j = 0; j < A.rank(n); ++j, ++row) {
        if (has(G + n)) detail::add_product_terms(sys, row, i, j, nullptr, &fn, lay, G + n, 1);
        if (i == j) sys(row, lay.index(SV, 0, 0)) -= 1;
        if (has(HA + n)) detail::add_product_terms(sys, row, i, j, &dA1, nullptr, lay, HA + n, -1);
        if (has(HA + n - 1)) detail::add_product_terms(sys, row, i, j, nullptr, &dA, lay, HA + n - 1, -1);
      }
    // f_n g_n - s - d H'_n - H'_{n-1} d = 0 on B_n
    const IntMatrix dB1 = B.d(n + 1);
    for (std::size_t i = 0; i < B.rank(n); ++i)
      for (std::size_t j = 0; j < B.rank(n); ++j, ++row) {
        if (has(G + n)) detail::add_product_terms(sys, row, i, j, &fn, nullptr, lay, G + n, 1);
        if (i == j) sys(row, lay.index(SV, 0, 0)) -= 1;
        if (has(HB + n)) detail::add_product_terms(sys, row, i, j, &dB1, nullptr, lay, HB + n, -1);
        if (has(HB + n - 1)) detail::add_product_terms(sys, row, i, j, nullptr, &dB, lay, HB + n - 1, -1);
      }
  }
  const IntMatrix K = kernel_basis(sys);
  const std::size_t sv = lay.index(SV, 0, 0);
  // gcd of the s-coordinates, with the combination that attains it
  Integer m = 0;
  std::vector<Integer> combo(K.cols());
  for (std::size_t c = 0; c < K.cols(); ++c) {
    const Integer v = K(sv, c);
    if (v == 0) continue;
    const Bezout b = xgcd(m, v);
    for (auto& x : combo) x *= b.x;
    combo[c] += b.y;
    m = b.g;
  }
  if (m != 0 && S.is_s_number(m)) {
    rep.inverse_search = true;
    rep.inverse_s = m;
    const std::vector<Integer> sol = K * std::span<const Integer>(combo);
    std::map<int, IntMatrix> g;
    for (int n = lo; n <= hi; ++n) {
      if (!has(G + n)) continue;
      IntMatrix gn(A.rank(n), B.rank(n));
      for (std::size_t i = 0; i < gn.rows(); ++i)
        for (std::size_t j = 0; j < gn.cols(); ++j) gn(i, j) = sol[lay.index(G + n, i, j)];
      g[n] = gn;
    }
    Integer sign = sol[sv] < 0 ? -1 : 1;
    for (auto& [n, gn] : g) gn = sign * gn;
    rep.inverse = ChainMap(B, A, g);
  }
  rep.agree = rep.cone_test == rep.inverse_search;
  return rep;
}

/// Long exact homology sequence of A -f-> B -> C_f -> A[1], over the
/// degrees where any of the three is nonzero.
inline ExactSequenceReport cone_les(const ChainMap& f) {
  const Cone c = cone(f);
  const int lo = std::min({f.source().lo(), f.target().lo(), c.complex.lo()}) - 1;
  const int hi = std::max({f.source().hi(), f.target().hi(), c.complex.hi()}) + 1;
  std::vector<std::string> labels;
  std::vector<GroupHom> maps;
  for (int n = hi; n >= lo; --n) {
    const std::string d = std::to_string(n);
    labels.insert(labels.end(), {"H_" + d + "(A)", "H_" + d + "(B)", "H_" + d + "(C)"});
    maps.push_back(f.on_homology(n));
    maps.push_back(c.iota.on_homology(n));
    maps.push_back(c.pi.on_homology(n));
  }
  labels.push_back("H_" + std::to_string(lo - 1) + "(A)");
  return check_exact(labels, maps, Closure::ZeroEnds);
}

/// Homology sequence of the octahedron C_s -> C_st -> C_t -> C_s[1] for the
/// multiplication maps on C.
inline ExactSequenceReport octahedron_check(const FreeComplex& C, const Integer& s, const Integer& t) {
  if (s < 2 || t < 2) throw Error("InvalidArgument", "octahedron_check needs s, t >= 2");
  const Cone cs = cone(ChainMap::multiplication(C, s));
  const Cone cst = cone(ChainMap::multiplication(C, s * t));
  const Cone ct = cone(ChainMap::multiplication(C, t));
  auto blocks = [&](const FreeComplex& from, const FreeComplex& to, int deg, const Integer& a, const Integer& b,
                    bool swap) {
    std::map<int, IntMatrix> m;
    for (int n = from.lo(); n <= from.hi(); ++n) {
      IntMatrix x(to.rank(n + deg), from.rank(n));
      if (!swap) {
        x.set_block(0, 0, IntMatrix::scalar(C.rank(n), a));
        x.set_block(C.rank(n), C.rank(n), IntMatrix::scalar(C.rank(n - 1), b));
      } else {
        // (x, y) -> (y, 0)
        x.set_block(0, C.rank(n), IntMatrix::identity(C.rank(n - 1)));
      }
      m[n] = x;
    }
    return ChainMap(from, to, m, deg);
  };
  const ChainMap u = blocks(cs.complex, cst.complex, 0, t, 1, false);
  const ChainMap v = blocks(cst.complex, ct.complex, 0, 1, s, false);
  const ChainMap w = blocks(ct.complex, cs.complex, -1, 0, 0, true);
  const int lo = cs.complex.lo() - 1, hi = cs.complex.hi() + 1;
  std::vector<std::string> labels;
  std::vector<GroupHom> maps;
  const std::string ss = s.get_str(), sst = Integer(s * t).get_str(), stt = t.get_str();
  for (int n = hi; n >= lo; --n) {
    const std::string d = std::to_string(n);
    labels.insert(labels.end(), {"H_" + d + "(C_" + ss + ")", "H_" + d + "(C_" + sst + ")",
                                 "H_" + d + "(C_" + stt + ")"});
    maps.push_back(u.on_homology(n));
    maps.push_back(v.on_homology(n));
    maps.push_back(w.on_homology(n));
  }
  labels.push_back("H_" + std::to_string(lo - 1) + "(C_" + ss + ")");
  return check_exact(labels, maps, Closure::ZeroEnds);
}

struct ThetaResult {
  ChainMap theta;
  std::optional<bool> composite_check;  // set when an intermediate r is supplied
};

/// C_q -> C_p for q | p: x (p/q) on the target copy, identity on the shifted
/// source copy.
inline ChainMap theta_chain_map(const FreeComplex& C, const Integer& q, const Integer& p) {
  if (q < 2 || p < 2 || !divides(q, p)) throw Error("InvalidArgument", "theta_map needs q | p with q, p >= 2");
  const Cone cq = cone(ChainMap::multiplication(C, q));
  const Cone cp = cone(ChainMap::multiplication(C, p));
  const Integer k = exact_div(p, q);
  std::map<int, IntMatrix> m;
  for (int n = cq.complex.lo(); n <= cq.complex.hi(); ++n) {
    IntMatrix x(cp.complex.rank(n), cq.complex.rank(n));
    x.set_block(0, 0, IntMatrix::scalar(C.rank(n), k));
    x.set_block(C.rank(n), C.rank(n), IntMatrix::identity(C.rank(n - 1)));
    m[n] = x;
  }
  return {cq.complex, cp.complex, m};
}

inline ThetaResult theta_map(const FreeComplex& C, const Integer& q, const Integer& p,
                             std::optional<Integer> r = std::nullopt) {
  ThetaResult out{theta_chain_map(C, q, p), std::nullopt};
  if (r) {
    if (!divides(q, *r) || !divides(*r, p)) throw Error("InvalidArgument", "theta_map needs q | r | p");
    const ChainMap composite = theta_chain_map(C, *r, p).after(theta_chain_map(C, q, *r));
    out.composite_check = is_nullhomotopic(composite - out.theta).has_value();
  }
  return out;
}

}  // namespace locoloc
