#pragma once

#include "locoloc/fg_group.hpp"

#include <string>

namespace locoloc {

/// Homomorphism between canonical generator systems. Column j is the image of
/// domain generator j; rows belonging to torsion generators of the codomain
/// are stored reduced into [0, order).
class GroupHom {
 public:
  GroupHom() = default;
  GroupHom(FgAbGroup domain, FgAbGroup codomain, IntMatrix matrix)
      : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != codomain_.num_generators() || matrix_.cols() != domain_.num_generators())
      throw std::invalid_argument("GroupHom: matrix shape does not match the groups");
    normalize();
    for (std::size_t j = domain_.rank(); j < domain_.num_generators(); ++j) {
      const Integer n = domain_.generator_order(j);
      std::vector<Integer> c = matrix_.col(j);
      for (auto& x : c) x *= n;
      if (!codomain_.is_zero_element(c))
        throw std::invalid_argument("GroupHom: image of a torsion generator has the wrong order");
    }
  }

  static GroupHom zero(const FgAbGroup& dom, const FgAbGroup& cod) {
    return {dom, cod, IntMatrix(cod.num_generators(), dom.num_generators())};
  }
  static GroupHom identity(const FgAbGroup& g) {
    return {g, g, IntMatrix::identity(g.num_generators())};
  }
  /// Multiplication by s on g.
  static GroupHom multiplication(const FgAbGroup& g, const Integer& s) {
    return {g, g, IntMatrix::scalar(g.num_generators(), s)};
  }

  const FgAbGroup& domain() const noexcept { return domain_; }
  const FgAbGroup& codomain() const noexcept { return codomain_; }
  const IntMatrix& matrix() const noexcept { return matrix_; }

  std::vector<Integer> apply(std::span<const Integer> x) const {
    return codomain_.reduce(matrix_ * x);
  }
  bool is_zero() const { return matrix_.is_zero(); }

  /// this ∘ f
  GroupHom after(const GroupHom& f) const {
    if (!(f.codomain_ == domain_)) throw std::invalid_argument("GroupHom: composing incompatible maps");
    return {f.domain_, codomain_, matrix_ * f.matrix_};
  }

  friend GroupHom operator+(const GroupHom& a, const GroupHom& b) {
    if (!(a.domain_ == b.domain_) || !(a.codomain_ == b.codomain_))
      throw std::invalid_argument("GroupHom: adding maps with different (co)domains");
    return {a.domain_, a.codomain_, a.matrix_ + b.matrix_};
  }
  friend GroupHom operator-(const GroupHom& a, const GroupHom& b) {
    if (!(a.domain_ == b.domain_) || !(a.codomain_ == b.codomain_))
      throw std::invalid_argument("GroupHom: subtracting maps with different (co)domains");
    return {a.domain_, a.codomain_, a.matrix_ - b.matrix_};
  }
  friend bool operator==(const GroupHom&, const GroupHom&) = default;

 private:
  void normalize() {
    for (std::size_t i = codomain_.rank(); i < codomain_.num_generators(); ++i) {
      const Integer m = codomain_.generator_order(i);
      for (std::size_t j = 0; j < matrix_.cols(); ++j) matrix_(i, j) = mod(matrix_(i, j), m);
    }
  }

  FgAbGroup domain_;
  FgAbGroup codomain_;
  IntMatrix matrix_;
};

/// A map given in presentation coordinates, re-expressed on the canonical
/// generators of both ends.
inline GroupHom hom_between_presentations(const PresentedQuotient& dom,
                                          const PresentedQuotient& cod,
                                          const IntMatrix& presentation_matrix) {
  return {dom.group, cod.group, cod.to_canonical * presentation_matrix * dom.from_canonical};
}

/// Block-diagonal sum f ⊕ g between direct sums whose canonical forms may
/// re-mix generators; the result is expressed on canonical generators.
inline GroupHom direct_sum(const GroupHom& f, const GroupHom& g) {
  auto present = [](const FgAbGroup& a, const FgAbGroup& b) {
    return present_quotient(direct_sum(a.relation_matrix(), b.relation_matrix()));
  };
  const auto dom = present(f.domain(), g.domain());
  const auto cod = present(f.codomain(), g.codomain());
  return hom_between_presentations(dom, cod, direct_sum(f.matrix(), g.matrix()));
}

struct SubquotientTriple {
  FgAbGroup kernel;
  FgAbGroup image;
  FgAbGroup cokernel;
};

namespace detail {

/// Lattice of x in Z^{dom gens} with f(x) = 0, as generator columns.
inline IntMatrix kernel_lattice(const GroupHom& f) {
  const std::size_t nd = f.domain().num_generators();
  const IntMatrix big = hstack(f.matrix(), f.codomain().relation_matrix());
  const IntMatrix k = kernel_basis(big);
  return k.block(0, 0, nd, k.cols());
}

}  // namespace detail

inline Subquotient kernel_subquotient(const GroupHom& f) {
  return {detail::kernel_lattice(f), f.domain().relation_matrix()};
}
inline Subquotient image_subquotient(const GroupHom& f) {
  return {f.matrix(), f.codomain().relation_matrix()};
}
inline PresentedQuotient cokernel_presentation(const GroupHom& f) {
  return present_quotient(hstack(f.matrix(), f.codomain().relation_matrix()));
}

inline SubquotientTriple map_subquotients(const GroupHom& f) {
  return {kernel_subquotient(f).group(), image_subquotient(f).group(),
          cokernel_presentation(f).group};
}

inline bool is_injective(const GroupHom& f) { return kernel_subquotient(f).group().is_trivial(); }
inline bool is_surjective(const GroupHom& f) { return cokernel_presentation(f).group.is_trivial(); }
inline bool is_isomorphism(const GroupHom& f) { return is_injective(f) && is_surjective(f); }

/// Homology ker(f)/im(g) at the middle of A -g-> B -f-> C; nullopt when f∘g != 0.
inline std::optional<FgAbGroup> homology_at(const GroupHom& g, const GroupHom& f) {
  if (!f.after(g).is_zero()) return std::nullopt;
  const Subquotient h(detail::kernel_lattice(f), hstack(g.matrix(), g.codomain().relation_matrix()));
  return h.group();
}

/// The inclusion of the kernel of f into its domain, with the kernel in
/// canonical form.
inline GroupHom kernel_inclusion(const GroupHom& f) {
  const Subquotient k = kernel_subquotient(f);
  IntMatrix m(f.domain().num_generators(), k.group().num_generators());
  for (std::size_t j = 0; j < k.group().num_generators(); ++j) m.set_col(j, k.representative(j));
  return {k.group(), f.domain(), m};
}

/// The projection of the codomain of f onto its cokernel.
inline GroupHom cokernel_projection(const GroupHom& f) {
  const PresentedQuotient c = cokernel_presentation(f);
  return {f.codomain(), c.group, c.to_canonical};
}

/// The map between subquotients of Z^m and Z^n induced by an ambient matrix
/// that carries numerator into numerator and denominator into denominator.
inline GroupHom induced_map(const Subquotient& from, const Subquotient& to, const IntMatrix& ambient) {
  IntMatrix m(to.group().num_generators(), from.group().num_generators());
  for (std::size_t j = 0; j < from.group().num_generators(); ++j) {
    auto c = to.coordinates(ambient * from.representative(j));
    if (!c) throw std::logic_error("induced_map: image leaves the target numerator");
    m.set_col(j, *c);
  }
  return {from.group(), to.group(), m};
}

/// A direct sum of canonical groups kept together with its presentation, so
/// block matrices of maps between summands can be turned into GroupHoms.
class SplitSum {
 public:
  SplitSum() : SplitSum(std::vector<FgAbGroup>{}) {}
  explicit SplitSum(std::vector<FgAbGroup> parts) : parts_(std::move(parts)) {
    IntMatrix rel;
    for (const auto& p : parts_) rel = direct_sum(rel, p.relation_matrix());
    pq_ = present_quotient(rel);
  }
  const std::vector<FgAbGroup>& parts() const noexcept { return parts_; }
  const FgAbGroup& group() const noexcept { return pq_.group; }
  const PresentedQuotient& presentation() const noexcept { return pq_; }
  std::size_t offset(std::size_t part) const {
    std::size_t o = 0;
    for (std::size_t i = 0; i < part; ++i) o += parts_[i].num_generators();
    return o;
  }
  std::size_t dim() const { return offset(parts_.size()); }

  /// Inclusion of summand i, on canonical generators.
  GroupHom inclusion(std::size_t i) const {
    IntMatrix m(dim(), parts_[i].num_generators());
    m.set_block(offset(i), 0, IntMatrix::identity(parts_[i].num_generators()));
    return {parts_[i], group(), pq_.to_canonical * m};
  }
  /// Projection onto summand i, on canonical generators.
  GroupHom projection(std::size_t i) const {
    IntMatrix m(parts_[i].num_generators(), dim());
    m.set_block(0, offset(i), IntMatrix::identity(parts_[i].num_generators()));
    return {group(), parts_[i], m * pq_.from_canonical};
  }

 private:
  std::vector<FgAbGroup> parts_;
  PresentedQuotient pq_;
};

/// The map between split sums whose (i, j) block is blocks[i][j] (target part
/// i, source part j); empty optionals are zero blocks.
inline GroupHom block_hom(const SplitSum& dom, const SplitSum& cod,
                          const std::vector<std::vector<std::optional<GroupHom>>>& blocks) {
  IntMatrix m(cod.dim(), dom.dim());
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (std::size_t j = 0; j < blocks[i].size(); ++j)
      if (blocks[i][j]) {
        if (!(blocks[i][j]->domain() == dom.parts()[j]) || !(blocks[i][j]->codomain() == cod.parts()[i]))
          throw std::invalid_argument("block_hom: block does not match the summands");
        m.set_block(cod.offset(i), dom.offset(j), blocks[i][j]->matrix());
      }
  return hom_between_presentations(dom.presentation(), cod.presentation(), m);
}

}  // namespace locoloc
