#include "artin/linalg.hpp"

#include <algorithm>

#include "artin/error.hpp"

namespace artin {

namespace {

using IntRow = std::vector<mpz_class>;

IntRow to_integer_row(const Vector& v) {
  mpz_class l = 1;
  for (const auto& s : v) {
    if (!s.is_zero()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), s.rational().get_den_mpz_t());
  }
  IntRow out;
  out.reserve(v.size());
  for (const auto& s : v) out.push_back(s.is_zero() ? mpz_class(0) : mpz_class(s.rational().get_num() * (l / s.rational().get_den())));
  return out;
}

void make_primitive(IntRow& r) {
  mpz_class g = 0;
  for (const auto& e : r) {
    if (e != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
  }
  if (g > 1) {
    for (auto& e : r) {
      if (e != 0) mpz_divexact(e.get_mpz_t(), e.get_mpz_t(), g.get_mpz_t());
    }
  }
}

// Forward elimination in place; returns pivot columns of the leading rows.
std::vector<std::size_t> forward_rational(std::vector<IntRow>& m, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
    std::size_t best = m.size();
    for (std::size_t i = r; i < m.size(); ++i) {
      if (m[i][c] == 0) continue;
      if (best == m.size() || mpz_cmpabs(m[i][c].get_mpz_t(), m[best][c].get_mpz_t()) < 0) best = i;
    }
    if (best == m.size()) continue;
    std::swap(m[r], m[best]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      if (m[i][c] == 0) continue;
      const mpz_class g = gcd(m[r][c], m[i][c]);
      const mpz_class a = m[r][c] / g;
      const mpz_class b = m[i][c] / g;
      for (std::size_t k = c; k < ncols; ++k) m[i][k] = a * m[i][k] - b * m[r][k];
      make_primitive(m[i]);
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return pivots;
}

std::vector<std::size_t> forward_prime(std::vector<Vector>& m, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
    std::size_t best = m.size();
    for (std::size_t i = r; i < m.size(); ++i) {
      if (m[i][c].is_zero()) continue;
      if (best == m.size() || m[i][c].pivot_weight() < m[best][c].pivot_weight()) best = i;
    }
    if (best == m.size()) continue;
    std::swap(m[r], m[best]);
    const Scalar inv = m[r][c].inverse();
    for (std::size_t k = c; k < ncols; ++k) m[r][k] *= inv;
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      if (m[i][c].is_zero()) continue;
      const Scalar f = m[i][c];
      for (std::size_t k = c; k < ncols; ++k) m[i][k] -= f * m[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return pivots;
}

}  // namespace

Vector zero_vector(Field field, std::size_t n) { return Vector(n, Scalar::zero(field)); }

bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

Echelon rref(std::vector<Vector> rows, Field field, std::size_t ncols) {
  for (const auto& r : rows) {
    if (r.size() != ncols) throw MismatchError("matrix row has the wrong length");
  }
  Echelon out;
  if (field.is_rational()) {
    std::vector<IntRow> m;
    m.reserve(rows.size());
    for (const auto& r : rows) {
      m.push_back(to_integer_row(r));
      make_primitive(m.back());
    }
    out.pivots = forward_rational(m, ncols);
    for (auto& r : m) {
      Vector v;
      v.reserve(ncols);
      for (auto& e : r) v.emplace_back(field, mpq_class(e));
      out.rows.push_back(std::move(v));
    }
  } else {
    out.pivots = forward_prime(rows, ncols);
    out.rows = std::move(rows);
  }
  // Normalize pivots and clear above them.
  for (std::size_t r = out.rows.size(); r-- > 0;) {
    auto& row = out.rows[r];
    const std::size_t c = out.pivots[r];
    if (!row[c].is_one()) {
      const Scalar inv = row[c].inverse();
      for (std::size_t k = c; k < ncols; ++k) row[k] *= inv;
    }
    for (std::size_t i = 0; i < r; ++i) {
      if (out.rows[i][c].is_zero()) continue;
      const Scalar f = out.rows[i][c];
      for (std::size_t k = c; k < ncols; ++k) {
        if (!row[k].is_zero()) out.rows[i][k] -= f * row[k];
      }
    }
  }
  return out;
}

std::vector<Vector> nullspace(const std::vector<Vector>& rows, Field field, std::size_t ncols) {
  const Echelon e = rref(rows, field, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    Vector v = zero_vector(field, ncols);
    v[f] = Scalar::one(field);
    for (std::size_t r = 0; r < e.rows.size(); ++r) v[e.pivots[r]] = -e.rows[r][f];
    basis.push_back(std::move(v));
  }
  return rref(std::move(basis), field, ncols).rows;
}

Subspace::Subspace(Field field, std::size_t ambient) : field_(field), ambient_(ambient) {}

Subspace Subspace::span(Field field, std::size_t ambient, std::vector<Vector> vectors) {
  Subspace s(field, ambient);
  s.basis_ = rref(std::move(vectors), field, ambient);
  return s;
}

Vector Subspace::residual(Vector v) const {
  if (v.size() != ambient_) throw MismatchError("vector length does not match the ambient space");
  for (std::size_t r = 0; r < basis_.rows.size(); ++r) {
    const std::size_t c = basis_.pivots[r];
    if (v[c].is_zero()) continue;
    const Scalar f = v[c];
    for (std::size_t k = c; k < ambient_; ++k) {
      if (!basis_.rows[r][k].is_zero()) v[k] -= f * basis_.rows[r][k];
    }
  }
  return v;
}

bool Subspace::contains(const Vector& v) const { return is_zero(residual(v)); }

bool Subspace::subset_of(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw MismatchError("subspaces of different ambient spaces");
  return std::all_of(basis_.rows.begin(), basis_.rows.end(), [&](const Vector& v) { return other.contains(v); });
}

Subspace Subspace::sum(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw MismatchError("subspaces of different ambient spaces");
  std::vector<Vector> all = basis_.rows;
  all.insert(all.end(), other.basis_.rows.begin(), other.basis_.rows.end());
  return span(field_, ambient_, std::move(all));
}

Subspace Subspace::intersect(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw MismatchError("subspaces of different ambient spaces");
  // x = sum c_i u_i lies in W iff every annihilator of W kills it.
  const std::vector<Vector> ann = nullspace(other.basis_.rows, field_, ambient_);
  std::vector<Vector> system;
  for (const auto& a : ann) {
    Vector row;
    row.reserve(dim());
    for (const auto& u : basis_.rows) {
      Scalar s = Scalar::zero(field_);
      for (std::size_t k = 0; k < ambient_; ++k) {
        if (!a[k].is_zero() && !u[k].is_zero()) s += a[k] * u[k];
      }
      row.push_back(std::move(s));
    }
    system.push_back(std::move(row));
  }
  std::vector<Vector> coeffs = nullspace(system, field_, dim());
  std::vector<Vector> vectors;
  for (const auto& c : coeffs) {
    Vector v = zero_vector(field_, ambient_);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i].is_zero()) continue;
      for (std::size_t k = 0; k < ambient_; ++k) {
        if (!basis_.rows[i][k].is_zero()) v[k] += c[i] * basis_.rows[i][k];
      }
    }
    vectors.push_back(std::move(v));
  }
  return span(field_, ambient_, std::move(vectors));
}

bool IncrementalEchelon::add(SparseVector row) {
  std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::erase_if(row, [](const auto& e) { return e.second.is_zero(); });
  SparseVector scratch;
  while (!row.empty()) {
    const std::size_t lead = row.front().first;
    if (lead >= ncols_) throw MismatchError("sparse row column out of range");
    auto it = rows_.find(lead);
    if (it == rows_.end()) {
      const Scalar inv = row.front().second.inverse();
      for (auto& e : row) e.second *= inv;
      rows_.emplace(lead, std::move(row));
      return true;
    }
    // row -= row[lead] * pivot_row, merged by column.
    const Scalar f = row.front().second;
    const SparseVector& p = it->second;
    scratch.clear();
    std::size_t a = 0, b = 0;
    while (a < row.size() || b < p.size()) {
      if (b == p.size() || (a < row.size() && row[a].first < p[b].first)) {
        scratch.push_back(std::move(row[a++]));
      } else if (a == row.size() || p[b].first < row[a].first) {
        scratch.emplace_back(p[b].first, -(f * p[b].second));
        ++b;
      } else {
        Scalar s = row[a].second - f * p[b].second;
        if (!s.is_zero()) scratch.emplace_back(row[a].first, std::move(s));
        ++a;
        ++b;
      }
    }
    std::swap(row, scratch);
  }
  return false;
}

std::vector<Vector> IncrementalEchelon::dense_rows() const {
  std::vector<Vector> out;
  out.reserve(rows_.size());
  for (const auto& [pivot, row] : rows_) {
    Vector v = zero_vector(field_, ncols_);
    for (const auto& [c, s] : row) v[c] = s;
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Vector> IncrementalEchelon::nullspace() const {
  return artin::nullspace(dense_rows(), field_, ncols_);
}

}  // namespace artin
