#pragma once

// Brute-force reference computations by element enumeration. Nothing here
// calls the Smith form; groups are compared through their counts
// #{x : n x = 0}, which determine a finite abelian group.

#include "locoloc/complex.hpp"

#include <functional>
#include <map>
#include <set>
#include <vector>

namespace oracle {

using Vec = std::vector<long>;

/// Z/n_1 + ... + Z/n_k with elements as coordinate vectors.
struct Finite {
  std::vector<long> orders;

  long size() const {
    long n = 1;
    for (long o : orders) n *= o;
    return n;
  }
  Vec decode(long code) const {
    Vec x(orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) {
      x[i] = code % orders[i];
      code /= orders[i];
    }
    return x;
  }
  long encode(const Vec& x) const {
    long code = 0, base = 1;
    for (std::size_t i = 0; i < orders.size(); ++i) {
      code += (((x[i] % orders[i]) + orders[i]) % orders[i]) * base;
      base *= orders[i];
    }
    return code;
  }
  Vec add(const Vec& a, const Vec& b) const {
    Vec c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = (a[i] + b[i]) % orders[i];
    return c;
  }
  Vec scale(long k, const Vec& a) const {
    Vec c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = (((k % orders[i]) * a[i]) % orders[i] + orders[i]) % orders[i];
    return c;
  }
  bool is_zero(const Vec& a) const {
    for (long v : a)
      if (v != 0) return false;
    return true;
  }
  long order_of(const Vec& a) const {
    long k = 1;
    while (!is_zero(scale(k, a))) ++k;
    return k;
  }
};

inline Finite finite_of(const locoloc::FgAbGroup& g) {
  if (!g.is_finite()) throw std::invalid_argument("oracle: group must be finite");
  Finite f;
  for (const auto& n : g.invariant_factors()) f.orders.push_back(n.get_si());
  return f;
}

/// n -> #{x : n x = 0} for n = 1..limit.
using Profile = std::map<long, long>;

inline Profile profile(const Finite& G, long limit) {
  Profile p;
  for (long n = 1; n <= limit; ++n) {
    long c = 0;
    for (long e = 0; e < G.size(); ++e)
      if (G.is_zero(G.scale(n, G.decode(e)))) ++c;
    p[n] = c;
  }
  return p;
}

/// Profile of a group given only by the orders of its elements.
inline Profile profile_from_orders(const std::vector<long>& element_orders, long limit) {
  Profile p;
  for (long n = 1; n <= limit; ++n) {
    long c = 0;
    for (long o : element_orders)
      if (n % o == 0) ++c;
    p[n] = c;
  }
  return p;
}

/// All homomorphisms Z/a_1 + ... -> B, as tuples of generator images.
inline void for_each_hom(const Finite& A, const Finite& B, const std::function<void(const std::vector<Vec>&)>& fn) {
  std::vector<std::vector<Vec>> choices;
  for (long a : A.orders) {
    std::vector<Vec> c;
    for (long e = 0; e < B.size(); ++e) {
      Vec y = B.decode(e);
      if (B.is_zero(B.scale(a, y))) c.push_back(y);
    }
    choices.push_back(std::move(c));
  }
  std::vector<Vec> cur(A.orders.size());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == choices.size()) {
      fn(cur);
      return;
    }
    for (const auto& y : choices[i]) {
      cur[i] = y;
      rec(i + 1);
    }
  };
  rec(0);
}

/// Hom(A, B) for finite groups, as a profile: a hom has the order lcm of
/// its generator images' orders.
inline Profile hom_profile(const Finite& A, const Finite& B, long limit) {
  std::vector<long> orders;
  for_each_hom(A, B, [&](const std::vector<Vec>& imgs) {
    long o = 1;
    for (const auto& y : imgs) o = std::lcm(o, B.order_of(y));
    orders.push_back(o);
  });
  return profile_from_orders(orders, limit);
}

/// The image subgroup of a hom, as element codes.
inline std::set<long> image(const Finite& A, const Finite& B, const std::vector<Vec>& imgs) {
  std::set<long> out;
  for (long e = 0; e < A.size(); ++e) {
    const Vec x = A.decode(e);
    Vec y(B.orders.size(), 0);
    for (std::size_t i = 0; i < x.size(); ++i) y = B.add(y, B.scale(x[i], imgs[i]));
    out.insert(B.encode(y));
  }
  return out;
}

/// Profile of E / H: #{cosets with n x in H} = #{x : n x in H} / |H|.
inline Profile quotient_profile(const Finite& E, const std::set<long>& H, long limit) {
  Profile p;
  for (long n = 1; n <= limit; ++n) {
    long c = 0;
    for (long e = 0; e < E.size(); ++e)
      if (H.count(E.encode(E.scale(n, E.decode(e))))) ++c;
    p[n] = c / static_cast<long>(H.size());
  }
  return p;
}

// Partitions of n, descending parts.
inline void partitions(long n, long max_part, Vec& cur, std::vector<Vec>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (long k = std::min(n, max_part); k >= 1; --k) {
    cur.push_back(k);
    partitions(n - k, k, cur, out);
    cur.pop_back();
  }
}

/// Every abelian group of order n, as lists of prime-power cyclic orders.
inline std::vector<Finite> abelian_groups_of_order(long n) {
  std::vector<std::pair<long, long>> pe;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      long e = 0;
      while (n % p == 0) n /= p, ++e;
      pe.push_back({p, e});
    }
  if (n > 1) pe.push_back({n, 1});
  std::vector<Finite> out{Finite{}};
  for (auto [p, e] : pe) {
    std::vector<Vec> parts;
    Vec cur;
    partitions(e, e, cur, parts);
    std::vector<Finite> next;
    for (const auto& g : out)
      for (const auto& part : parts) {
        Finite h = g;
        for (long k : part) {
          long q = 1;
          for (long i = 0; i < k; ++i) q *= p;
          h.orders.push_back(q);
        }
        next.push_back(h);
      }
    out = std::move(next);
  }
  return out;
}

/// Middle groups E (as profiles) of extensions A >-> E ->> C, by trying every
/// injective hom A -> E and comparing the quotient's profile with C's.
inline std::vector<Profile> extension_middles(const Finite& A, const Finite& C) {
  const long n = A.size() * C.size();
  const Profile pc = profile(C, n);
  std::vector<Profile> out;
  for (const auto& E : abelian_groups_of_order(n)) {
    bool found = false;
    for_each_hom(A, E, [&](const std::vector<Vec>& imgs) {
      if (found) return;
      const auto H = image(A, E, imgs);
      if (static_cast<long>(H.size()) != A.size()) return;
      if (quotient_profile(E, H, n) == pc) found = true;
    });
    if (found) out.push_back(profile(E, n));
  }
  return out;
}

inline locoloc::Integer det(std::vector<std::vector<locoloc::Integer>> m) {
  // Bareiss, exact for small integer matrices
  const std::size_t n = m.size();
  long sign = 1;
  locoloc::Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[r], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return n == 0 ? locoloc::Integer(1) : locoloc::Integer(sign * m[n - 1][n - 1]);
}

inline locoloc::ChainMap scaled(const locoloc::ChainMap& f, long k) {
  std::map<int, locoloc::IntMatrix> comps;
  for (const auto& [n, m] : f.components()) comps[n] = locoloc::Integer(k) * m;
  return {f.source(), f.target(), comps, f.degree()};
}

/// Degree-k chain maps A -> B between complexes with all ranks <= 1 and
/// entries in [-box, box], as degree-0 maps into B shifted by -k, grouped
/// into homotopy classes; returns the order of each class.
inline std::vector<long> homotopy_class_orders(const locoloc::FreeComplex& A, const locoloc::FreeComplex& B0, int k,
                                               long box, long max_order) {
  using namespace locoloc;
  const FreeComplex B = B0.shift(-k);
  std::vector<int> slots;
  for (int n = A.lo(); n <= A.hi(); ++n)
    if (A.rank(n) == 1 && B.rank(n) == 1) slots.push_back(n);
  std::vector<ChainMap> maps;
  std::vector<long> vals(slots.size(), -box);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == slots.size()) {
      std::map<int, IntMatrix> comps;
      for (std::size_t j = 0; j < slots.size(); ++j) comps[slots[j]] = IntMatrix::scalar(1, Integer(vals[j]));
      try {
        maps.emplace_back(A, B, comps);
      } catch (const std::invalid_argument&) {
      }
      return;
    }
    for (long v = -box; v <= box; ++v) {
      vals[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  std::vector<ChainMap> reps;
  for (const auto& f : maps) {
    bool seen = false;
    for (const auto& g : reps)
      if (is_nullhomotopic(f - g)) {
        seen = true;
        break;
      }
    if (!seen) reps.push_back(f);
  }
  std::vector<long> orders;
  for (const auto& f : reps) {
    long o = 1;
    while (o <= max_order && !is_nullhomotopic(scaled(f, o))) ++o;
    orders.push_back(o);
  }
  return orders;
}

}  // namespace oracle
