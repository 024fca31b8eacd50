#pragma once

// Smith normal form over Z and the lattice utilities built on it: integer
// linear solving, kernel lattices and coordinates in a lattice basis.

#include "locoloc/int_matrix.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace locoloc {

/// U * M * V = D with U, V unimodular and D diagonal in divisibility order.
/// The inverses are tracked only when requested.
struct SmithDecomposition {
  IntMatrix U, D, V;
  IntMatrix U_inv, V_inv;
  std::size_t rank = 0;
  std::pair<std::size_t, std::size_t> original_dims{0, 0};

  /// The first min(rows, cols) diagonal entries of D.
  std::vector<Integer> diagonal() const {
    const std::size_t n = std::min(D.rows(), D.cols());
    std::vector<Integer> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = D(i, i);
    return d;
  }
};

struct SmithOptions {
  bool left = true;
  bool left_inverse = false;
  bool right = true;
  bool right_inverse = false;
};

namespace detail {

struct SmithWork {
  IntMatrix& D;
  IntMatrix* U;
  IntMatrix* Ui;
  IntMatrix* V;
  IntMatrix* Vi;

  void swap_rows(std::size_t a, std::size_t b) {
    D.swap_rows(a, b);
    if (U) U->swap_rows(a, b);
    if (Ui) Ui->swap_cols(a, b);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    D.swap_cols(a, b);
    if (V) V->swap_cols(a, b);
    if (Vi) Vi->swap_rows(a, b);
  }
  void add_row(std::size_t dst, std::size_t src, const Integer& k) {
    D.add_row(dst, src, k);
    if (U) U->add_row(dst, src, k);
    if (Ui) Ui->add_col(src, dst, -k);
  }
  void add_col(std::size_t dst, std::size_t src, const Integer& k) {
    D.add_col(dst, src, k);
    if (V) V->add_col(dst, src, k);
    if (Vi) Vi->add_row(src, dst, -k);
  }
  void negate_row(std::size_t r) {
    D.negate_row(r);
    if (U) U->negate_row(r);
    if (Ui) Ui->negate_col(r);
  }
};

}  // namespace detail

/// Pivot rule: least nonzero absolute value in the trailing block, ties broken
/// by lowest (row, col). Every step is an exact unimodular operation.
inline SmithDecomposition smith_normal_form(const IntMatrix& M, SmithOptions opts = {}) {
  const std::size_t m = M.rows();
  const std::size_t n = M.cols();
  SmithDecomposition out;
  out.original_dims = {m, n};
  out.D = M;
  if (opts.left) out.U = IntMatrix::identity(m);
  if (opts.left_inverse) out.U_inv = IntMatrix::identity(m);
  if (opts.right) out.V = IntMatrix::identity(n);
  if (opts.right_inverse) out.V_inv = IntMatrix::identity(n);
  detail::SmithWork w{out.D, opts.left ? &out.U : nullptr,
                      opts.left_inverse ? &out.U_inv : nullptr,
                      opts.right ? &out.V : nullptr,
                      opts.right_inverse ? &out.V_inv : nullptr};
  IntMatrix& D = out.D;

  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    bool found_any = false;
    while (true) {
      // locate pivot
      std::size_t pi = m, pj = n;
      Integer best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          const Integer& x = D(i, j);
          if (x == 0) continue;
          if (pi == m || mpz_cmpabs(x.get_mpz_t(), best.get_mpz_t()) < 0) {
            best = abs(x);
            pi = i;
            pj = j;
          }
        }
      if (pi == m) break;
      found_any = true;
      w.swap_rows(t, pi);
      w.swap_cols(t, pj);

      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        const Integer q = floor_div(D(i, t), D(t, t));
        w.add_row(i, t, -q);
        if (D(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        const Integer q = floor_div(D(t, j), D(t, t));
        w.add_col(j, t, -q);
        if (D(t, j) != 0) dirty = true;
      }
      if (dirty) continue;

      // row and column are clear; enforce divisibility of the trailing block
      bool fixed = false;
      for (std::size_t i = t + 1; i < m && !fixed; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!divides(D(t, t), D(i, j))) {
            w.add_row(t, i, 1);
            fixed = true;
            break;
          }
      if (!fixed) break;
    }
    if (!found_any) break;
    if (D(t, t) < 0) w.negate_row(t);
  }
  out.rank = t;
  return out;
}

inline std::size_t matrix_rank(const IntMatrix& M) {
  return smith_normal_form(M, {false, false, false, false}).rank;
}

/// Integer solution x of A x = b, or nullopt when none exists over Z.
inline std::optional<std::vector<Integer>> solve_integer(const IntMatrix& A,
                                                         std::span<const Integer> b) {
  if (b.size() != A.rows()) throw std::invalid_argument("solve_integer: shape mismatch");
  const auto snf = smith_normal_form(A, {true, false, true, false});
  const std::vector<Integer> y = snf.U * b;
  std::vector<Integer> z(A.cols());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i < snf.rank) {
      const Integer& d = snf.D(i, i);
      if (!divides(d, y[i])) return std::nullopt;
      z[i] = exact_div(y[i], d);
    } else if (y[i] != 0) {
      return std::nullopt;
    }
  }
  return snf.V * z;
}

/// Columns form a basis of the integer kernel {x : A x = 0}.
inline IntMatrix kernel_basis(const IntMatrix& A) {
  const auto snf = smith_normal_form(A, {false, false, true, false});
  const std::size_t k = A.cols() - snf.rank;
  return snf.V.block(0, snf.rank, A.cols(), k);
}

/// A sublattice of Z^n presented by generators, with a basis and exact
/// coordinate extraction.
class Lattice {
 public:
  Lattice() = default;

  /// Span of the columns of `generators` (n x g).
  explicit Lattice(const IntMatrix& generators) : ambient_(generators.rows()) {
    snf_ = smith_normal_form(generators, {true, true, false, false});
    basis_ = IntMatrix(ambient_, snf_.rank);
    for (std::size_t i = 0; i < snf_.rank; ++i)
      for (std::size_t r = 0; r < ambient_; ++r)
        basis_(r, i) = snf_.U_inv(r, i) * snf_.D(i, i);
  }

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t rank() const noexcept { return snf_.rank; }
  const IntMatrix& basis() const noexcept { return basis_; }

  /// c with basis() * c == x, or nullopt when x is not in the lattice.
  std::optional<std::vector<Integer>> coordinates(std::span<const Integer> x) const {
    if (x.size() != ambient_) throw std::invalid_argument("Lattice: dimension mismatch");
    const std::vector<Integer> y = snf_.U * x;
    std::vector<Integer> c(snf_.rank);
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (i < snf_.rank) {
        if (!divides(snf_.D(i, i), y[i])) return std::nullopt;
        c[i] = exact_div(y[i], snf_.D(i, i));
      } else if (y[i] != 0) {
        return std::nullopt;
      }
    }
    return c;
  }

  bool contains(std::span<const Integer> x) const { return coordinates(x).has_value(); }

 private:
  std::size_t ambient_ = 0;
  SmithDecomposition snf_;
  IntMatrix basis_;
};

}  // namespace locoloc
