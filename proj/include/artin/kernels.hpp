#pragma once

#include <cstddef>
#include <exception>
#include <type_traits>
#include <vector>

#include "artin/quotient.hpp"

namespace artin {

/// An algebra element whose coordinates are polynomials, all over one
/// context. Index i is the coefficient of basis[i].
using SymbolicElement = std::vector<Polynomial>;

/// u * v through the structure constants. With `parallel` set the output
/// coordinates are filled by an OpenMP team; otherwise serially. Both paths
/// produce identical results.
SymbolicElement symbolic_multiply(const QuotientAlgebra& A, const SymbolicElement& u, const SymbolicElement& v,
                                  bool parallel = true);

/// f(0), ..., f(count - 1), evaluated by an OpenMP team when `parallel` is
/// set. Results keep index order; the first exception (by index) is rethrown.
template <class F>
auto indexed_map(std::size_t count, F&& f, bool parallel = true) {
  using R = std::decay_t<decltype(f(std::size_t{0}))>;
  std::vector<R> out(count);
  std::vector<std::exception_ptr> errors(count);
  const long n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (long i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace artin
