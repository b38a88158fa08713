#include "torcon/exactlat.hpp"

#include <algorithm>
#include <utility>

namespace torcon {

namespace {

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Row-reduce in place; returns pivot columns.
template <class T>
std::vector<std::size_t> rref(Matrix<T>& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, r);
    T inv = 1 / T(m(r, c));
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      T f = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

RatVector to_rational(const IntVector& v) { return RatVector(v.begin(), v.end()); }

Rat ratio(const Int& p, const Int& q) {
  Rat r(p, q);
  r.canonicalize();
  return r;
}

Int floor_rat(const Rat& q) {
  Int out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

Int ceil_rat(const Rat& q) {
  Int out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

Rat frac(const Rat& q) { return q - Rat(floor_rat(q)); }

Int gcd_of(const IntVector& v) {
  Int g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

IntVector primitive(const IntVector& v) {
  Int g = gcd_of(v);
  if (g == 0) return v;
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

Int dot(const IntVector& a, const IntVector& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat dot(const IntVector& a, const RatVector& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
  return s;
}

Rat dot(const RatVector& a, const RatVector& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

HermiteResult hermite_normal_form(const IntMatrix& m) {
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  IntMatrix ui = IntMatrix::identity(m.rows());

  auto swap_rows = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    h.swap_rows(a, b);
    u.swap_rows(a, b);
    ui.swap_cols(a, b);
  };
  // row_i -= q * row_p
  auto sub_row = [&](std::size_t i, std::size_t p, const Int& q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < h.cols(); ++j) h(i, j) -= q * h(p, j);
    for (std::size_t j = 0; j < u.cols(); ++j) u(i, j) -= q * u(p, j);
    for (std::size_t r = 0; r < ui.rows(); ++r) ui(r, p) += q * ui(r, i);
  };
  auto negate_row = [&](std::size_t p) {
    for (std::size_t j = 0; j < h.cols(); ++j) h(p, j) = -h(p, j);
    for (std::size_t j = 0; j < u.cols(); ++j) u(p, j) = -u(p, j);
    for (std::size_t r = 0; r < ui.rows(); ++r) ui(r, p) = -ui(r, p);
  };

  std::size_t p = 0;
  for (std::size_t c = 0; c < h.cols() && p < h.rows(); ++c) {
    while (true) {
      std::size_t best = h.rows();
      for (std::size_t i = p; i < h.rows(); ++i) {
        if (h(i, c) == 0) continue;
        if (best == h.rows() || abs(h(i, c)) < abs(h(best, c))) best = i;
      }
      if (best == h.rows()) break;
      swap_rows(p, best);
      bool clean = true;
      for (std::size_t i = p + 1; i < h.rows(); ++i) {
        if (h(i, c) == 0) continue;
        sub_row(i, p, floor_div(h(i, c), h(p, c)));
        if (h(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h(p, c) == 0) continue;
    if (h(p, c) < 0) negate_row(p);
    for (std::size_t i = 0; i < p; ++i) sub_row(i, p, floor_div(h(i, c), h(p, c)));
    ++p;
  }
  return {std::move(h), std::move(u), std::move(ui)};
}

SmithResult smith_form(const IntMatrix& m) {
  IntMatrix s = m;
  IntMatrix pm = IntMatrix::identity(m.rows());
  IntMatrix qm = IntMatrix::identity(m.cols());
  const std::size_t lim = std::min(m.rows(), m.cols());
  std::vector<Int> inv;

  auto row_sub = [&](std::size_t i, std::size_t t, const Int& q) {
    for (std::size_t j = 0; j < s.cols(); ++j) s(i, j) -= q * s(t, j);
    for (std::size_t j = 0; j < pm.cols(); ++j) pm(i, j) -= q * pm(t, j);
  };
  auto col_sub = [&](std::size_t j, std::size_t t, const Int& q) {
    for (std::size_t i = 0; i < s.rows(); ++i) s(i, j) -= q * s(i, t);
    for (std::size_t i = 0; i < qm.rows(); ++i) qm(i, j) -= q * qm(i, t);
  };

  for (std::size_t t = 0; t < lim; ++t) {
    bool empty = false;
    while (true) {
      std::size_t bi = s.rows(), bj = s.cols();
      for (std::size_t i = t; i < s.rows(); ++i)
        for (std::size_t j = t; j < s.cols(); ++j) {
          if (s(i, j) == 0) continue;
          if (bi == s.rows() || abs(s(i, j)) < abs(s(bi, bj))) {
            bi = i;
            bj = j;
          }
        }
      if (bi == s.rows()) {
        empty = true;
        break;
      }
      s.swap_rows(t, bi);
      pm.swap_rows(t, bi);
      s.swap_cols(t, bj);
      qm.swap_cols(t, bj);

      bool clean = true;
      for (std::size_t i = t + 1; i < s.rows(); ++i) {
        if (s(i, t) == 0) continue;
        row_sub(i, t, floor_div(s(i, t), s(t, t)));
        if (s(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < s.cols(); ++j) {
        if (s(t, j) == 0) continue;
        col_sub(j, t, floor_div(s(t, j), s(t, t)));
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      std::size_t bad = s.rows();
      for (std::size_t i = t + 1; i < s.rows() && bad == s.rows(); ++i)
        for (std::size_t j = t + 1; j < s.cols(); ++j)
          if (s(i, j) % s(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == s.rows()) break;
      row_sub(t, bad, Int(-1));
    }
    if (empty) break;
    if (s(t, t) < 0) {
      for (std::size_t j = 0; j < s.cols(); ++j) s(t, j) = -s(t, j);
      for (std::size_t j = 0; j < pm.cols(); ++j) pm(t, j) = -pm(t, j);
    }
    inv.push_back(s(t, t));
  }
  return {std::move(s), std::move(pm), std::move(qm), std::move(inv)};
}

std::vector<Int> smith_invariants(const IntMatrix& m) { return smith_form(m).invariants; }

Int determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw LatticeError(LatticeError::Kind::Shape, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

Rat determinant(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw LatticeError(LatticeError::Kind::Shape, "determinant of non-square matrix");
  RatMatrix a = m;
  Rat det = 1;
  for (std::size_t k = 0; k < a.rows(); ++k) {
    std::size_t p = k;
    while (p < a.rows() && a(p, k) == 0) ++p;
    if (p == a.rows()) return 0;
    if (p != k) {
      a.swap_rows(k, p);
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < a.rows(); ++i) {
      if (a(i, k) == 0) continue;
      Rat f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < a.cols(); ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

std::size_t rank(const RatMatrix& m) {
  RatMatrix a = m;
  return rref(a).size();
}

std::size_t rank(const IntMatrix& m) { return rank(to_rational(m)); }

std::optional<RatMatrix> inverse(const RatMatrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw LatticeError(LatticeError::Kind::Shape, "inverse of non-square matrix");
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  RatMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  return out;
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  auto inv = inverse(to_rational(m));
  if (!inv) throw LatticeError(LatticeError::Kind::NotUnimodularSystem, "matrix is singular");
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Rat& q = (*inv)(i, j);
      if (q.get_den() != 1) throw LatticeError(LatticeError::Kind::NotUnimodularSystem, "matrix is not unimodular");
      out(i, j) = q.get_num();
    }
  return out;
}

std::optional<RatVector> solve(const RatMatrix& a, const RatVector& b) {
  if (a.rows() != b.size()) throw LatticeError(LatticeError::Kind::Shape, "solve shape");
  RatMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
  RatVector x(a.cols());
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(r, a.cols());
  return x;
}

std::optional<IntVector> solve_integral(const IntMatrix& a, const IntVector& b) {
  auto sm = smith_form(a);
  IntVector pb = sm.P * b;
  IntVector y(a.cols());
  for (std::size_t i = 0; i < pb.size(); ++i) {
    if (i < sm.invariants.size()) {
      if (pb[i] % sm.invariants[i] != 0) return std::nullopt;
      y[i] = pb[i] / sm.invariants[i];
    } else if (pb[i] != 0) {
      return std::nullopt;
    }
  }
  return sm.Q * y;
}

std::vector<RatVector> nullspace(const RatMatrix& m) {
  RatMatrix a = m;
  auto piv = rref(a);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : piv) is_pivot[c] = true;
  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVector v(m.cols());
    v[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<IntVector> unimodular_completion(const std::vector<IntVector>& vs) {
  if (vs.empty()) throw LatticeError(LatticeError::Kind::Shape, "no vectors to complete");
  const std::size_t d = vs.front().size();
  const std::size_t k = vs.size();
  IntMatrix cols = IntMatrix::from_columns(vs);
  auto inv = smith_invariants(cols);
  if (inv.size() < k) throw LatticeError(LatticeError::Kind::LinearlyDependent, "vectors are linearly dependent");
  for (const auto& x : inv)
    if (x != 1) throw LatticeError(LatticeError::Kind::NotUnimodularSystem, "vectors do not span a saturated sublattice");
  auto hnf = hermite_normal_form(cols);
  std::vector<IntVector> ws;
  for (std::size_t j = k; j < d; ++j) ws.push_back(hnf.U_inv.col(j));
  if (!ws.empty()) {
    std::vector<IntVector> all = vs;
    all.insert(all.end(), ws.begin(), ws.end());
    if (determinant(IntMatrix::from_rows(all)) < 0)
      for (auto& x : ws.back()) x = -x;
  }
  return ws;
}

IntVector complete_to_basis(const std::vector<IntVector>& vs) {
  if (vs.empty() || vs.size() + 1 != vs.front().size())
    throw LatticeError(LatticeError::Kind::Shape, "complete_to_basis expects d-1 vectors in Z^d");
  return unimodular_completion(vs).front();
}

Int lattice_index(const std::vector<IntVector>& vs) {
  if (vs.empty()) return 1;
  auto inv = smith_invariants(IntMatrix::from_rows(vs));
  if (inv.size() < vs.size()) throw LatticeError(LatticeError::Kind::LinearlyDependent, "vectors are linearly dependent");
  Int p = 1;
  for (const auto& x : inv) p *= x;
  return p;
}

Jet Jet::operator/(const Jet& o) const {
  if (o.value == 0) throw LatticeError(LatticeError::Kind::DegenerateJet, "division by a jet with zero value");
  Rat v = value / o.value;
  Rat s = (slope * o.value - value * o.slope) / (o.value * o.value);
  return {v, s};
}

std::strong_ordering Jet::operator<=>(const Jet& o) const {
  int c = cmp(value, o.value);
  if (c == 0) c = cmp(slope, o.slope);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

int Jet::sign() const {
  int s = sgn(value);
  return s != 0 ? s : sgn(slope);
}

Int jet_floor(const Jet& j) {
  if (j.value.get_den() != 1) return floor_rat(j.value);
  if (j.slope > 0) return j.value.get_num();
  if (j.slope < 0) return j.value.get_num() - 1;
  throw LatticeError(LatticeError::Kind::DegenerateJet, "floor of an integral jet with zero slope");
}

std::string to_string(const Rat& q) {
  Rat c = q;
  c.canonicalize();
  return c.get_str();
}

std::ostream& operator<<(std::ostream& os, const Jet& j) {
  return os << to_string(j.value) << (j.slope < 0 ? " - " : " + ") << to_string(abs(j.slope)) << "e";
}

}  // namespace torcon
