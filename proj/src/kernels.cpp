#include "artin/kernels.hpp"

#include "artin/error.hpp"

namespace artin {

namespace {

struct Contribution {
  std::size_t i, j;
  Scalar c;
};

// For each output coordinate r, the pairs (i, j) with basis[i] * basis[j]
// contributing to r. Pairs with i > j are folded into i < j by symmetry.
std::vector<std::vector<Contribution>> inverse_table(const QuotientAlgebra& A) {
  std::vector<std::vector<Contribution>> by_output(A.dimension());
  for (std::size_t i = 0; i < A.dimension(); ++i) {
    for (std::size_t j = i; j < A.dimension(); ++j) {
      for (const auto& [r, s] : A.structure_constant(i, j)) by_output[r].push_back({i, j, s});
    }
  }
  return by_output;
}

}  // namespace

SymbolicElement symbolic_multiply(const QuotientAlgebra& A, const SymbolicElement& u, const SymbolicElement& v,
                                  bool parallel) {
  const std::size_t n = A.dimension();
  if (u.size() != n || v.size() != n) throw MismatchError("symbolic element has the wrong length");
  const ContextPtr& ctx = u[0].context();
  const Field field = u[0].field();
  A.precompute_structure_constants(parallel);
  const auto table = inverse_table(A);

  SymbolicElement out(n, Polynomial(ctx, field));
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (long r = 0; r < count; ++r) {
    Polynomial sum(ctx, field);
    for (const auto& [i, j, s] : table[static_cast<std::size_t>(r)]) {
      if (u[i].is_zero() && u[j].is_zero()) continue;
      Polynomial cross = u[i] * v[j];
      if (i != j) cross += u[j] * v[i];
      if (!cross.is_zero()) sum += cross.scaled(s);
    }
    out[static_cast<std::size_t>(r)] = std::move(sum);
  }
  return out;
}

}  // namespace artin
