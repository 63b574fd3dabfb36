#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "artin/scalar.hpp"

namespace artin {

using Vector = std::vector<Scalar>;

/// Reduced row-echelon form of a matrix. `pivots[r]` is the pivot column of
/// row r; pivots are strictly increasing.
struct Echelon {
  std::vector<Vector> rows;
  std::vector<std::size_t> pivots;
};

/// Exact RREF. Elimination is fraction-free with primitive-part
/// normalization over the rationals; pivots are chosen by first nonzero
/// column, then smallest numerator magnitude.
Echelon rref(std::vector<Vector> rows, Field field, std::size_t ncols);

/// Basis of {v : M v = 0}, itself returned in RREF.
std::vector<Vector> nullspace(const std::vector<Vector>& rows, Field field, std::size_t ncols);

Vector zero_vector(Field field, std::size_t n);
bool is_zero(const Vector& v);

/// A subspace of K^n stored by its RREF basis.
class Subspace {
 public:
  Subspace(Field field, std::size_t ambient);
  static Subspace span(Field field, std::size_t ambient, std::vector<Vector> vectors);

  const Field& field() const noexcept { return field_; }
  std::size_t ambient() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return basis_.rows.size(); }
  const std::vector<Vector>& rows() const noexcept { return basis_.rows; }
  const std::vector<std::size_t>& pivots() const noexcept { return basis_.pivots; }

  /// v minus its projection along the pivot columns; zero iff v is inside.
  Vector residual(Vector v) const;
  bool contains(const Vector& v) const;
  bool subset_of(const Subspace& other) const;
  Subspace sum(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_.rows == b.basis_.rows;
  }

 private:
  Field field_;
  std::size_t ambient_;
  Echelon basis_;
};

using SparseVector = std::vector<std::pair<std::size_t, Scalar>>;

/// Row echelon form grown one (sparse) row at a time; used for systems with
/// many more equations than unknowns.
class IncrementalEchelon {
 public:
  IncrementalEchelon(Field field, std::size_t ncols) : field_(field), ncols_(ncols) {}

  /// Returns true if the row was independent of those already added.
  bool add(SparseVector row);
  std::size_t rank() const noexcept { return rows_.size(); }
  std::size_t ncols() const noexcept { return ncols_; }
  std::vector<Vector> dense_rows() const;
  std::vector<Vector> nullspace() const;

 private:
  Field field_;
  std::size_t ncols_;
  std::map<std::size_t, SparseVector> rows_;  // keyed by pivot column, pivot entry 1
};

}  // namespace artin
