#pragma once

#include "strata/integer.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace strata {

/// Extreme rays (modulo the lines) and a rational basis of the lines of
/// {x : e.x = 0 for e in equalities, a.x <= 0 for a in inequalities}.
struct DoubleDescription {
  Matrix rays;
  Matrix lines;
};

DoubleDescription double_description(int n, const Matrix& equalities, const Matrix& inequalities);

/// A rational polyhedral cone in Q^n, read as its set of integer points.
///
/// Both representations are kept in canonical form:
///  * facets: primitive normals f (meaning f.x <= 0) lying in span(cone), lex sorted;
///  * equalities: HNF basis of the lattice of forms vanishing on the cone;
///  * rays: primitive extreme rays orthogonal to the lineality space, lex sorted;
///  * lineality: HNF basis of the lineality lattice (saturated).
/// Two equal cones therefore carry identical data.
class PolyCone {
 public:
  static PolyCone from_hrep(int n, const Matrix& inequalities, const Matrix& equalities = {});
  static PolyCone from_generators(int n, const Matrix& rays, const Matrix& lineality = {});
  static PolyCone full_space(int n);
  static PolyCone zero(int n);

  int ambient_dim() const { return n_; }
  const Matrix& facets() const { return facets_; }
  const Matrix& equalities() const { return equalities_; }
  const Matrix& rays() const { return rays_; }
  const Matrix& lineality() const { return lineality_; }

  /// Facets together with +-equalities, lex sorted, all read as f.x <= 0.
  Matrix hrep() const;
  int dimension() const { return n_ - static_cast<int>(equalities_.size()); }
  int lineality_rank() const { return static_cast<int>(lineality_.size()); }

  bool contains(const Vec& x) const;
  /// A form of hrep() that is positive at x, if any.
  std::optional<Vec> violated_form(const Vec& x) const;

  friend bool operator==(const PolyCone&, const PolyCone&) = default;

 private:
  PolyCone() = default;
  static PolyCone finish_from_hrep(int n, Matrix facets, Matrix equalities);

  int n_ = 0;
  Matrix facets_;
  Matrix equalities_;
  Matrix rays_;
  Matrix lineality_;
};

enum class ConvertDirection { h_to_v, v_to_h };

/// Rebuilds the cone from one of its representations.
PolyCone dd_convert(const PolyCone& cone, ConvertDirection direction);

PolyCone intersect(const PolyCone& a, const PolyCone& b);
PolyCone intersect_all(int n, const std::vector<PolyCone>& cones);
PolyCone sum_saturated(const PolyCone& a, const PolyCone& b);

/// Witness that a generator of one cone violates a form of another.
struct Certificate {
  Vec generator;
  Vec form;
  std::string role;  // "ray", "lineality" or "-lineality"
};

struct SubconeResult {
  bool holds = true;
  std::optional<Certificate> certificate;
  explicit operator bool() const { return holds; }
};

SubconeResult is_subcone(const PolyCone& a, const PolyCone& b);
bool equals(const PolyCone& a, const PolyCone& b);

class GeneratorOutsideCone : public std::invalid_argument {
 public:
  GeneratorOutsideCone(Vec generator, Vec form);
  const Vec& generator() const { return generator_; }
  const Vec& form() const { return form_; }

 private:
  Vec generator_;
  Vec form_;
};

/// Whether the cone equals the saturated hull of gens plus its lineality.
/// Throws GeneratorOutsideCone if some generator is not a member.
bool generates_modulo_kernel(const PolyCone& cone, const Matrix& gens);

/// Translates coordinates i -> i + t (mod n).
Vec sigma_shift(const Vec& v, int t);
PolyCone sigma_shift(const PolyCone& cone, int t);

/// Direct product, factor k placed on the k-th consecutive coordinate block.
PolyCone product_cone(const std::vector<PolyCone>& factors);

}  // namespace strata
