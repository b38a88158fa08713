#include "torcon/ehrhart.hpp"

#include <stdexcept>

namespace torcon {

namespace {

Int mod_floor(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

RatPolynomial mul(const RatPolynomial& a, const RatPolynomial& b) {
  RatPolynomial out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// binom((t - j)/m + n, n) as a polynomial in t
RatPolynomial shifted_binomial(const Int& j, const Int& m, std::size_t n) {
  RatPolynomial p{Rat(1)};
  for (std::size_t i = 1; i <= n; ++i) {
    Rat c0 = (Rat(-j) / Rat(m) + Rat(static_cast<long>(i))) / Rat(static_cast<long>(i));
    Rat c1 = Rat(1) / (Rat(m) * Rat(static_cast<long>(i)));
    p = mul(p, RatPolynomial{c0, c1});
  }
  return p;
}

Int binomial(const Int& n, unsigned long k) {
  Int out;
  mpz_bin_ui(out.get_mpz_t(), n.get_mpz_t(), k);
  return out;
}

}  // namespace

Rat evaluate(const RatPolynomial& p, const Rat& x) {
  Rat acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

IntPolynomial multiply(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.empty() || b.empty()) return {};
  IntPolynomial out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

DeltaVector delta_vector(const RationalPolytope& p) {
  DeltaVector dv;
  dv.m = order(p);
  dv.n = p.dimension();
  const unsigned long m = dv.m.get_ui();
  const std::size_t len = m * (dv.n + 1);
  std::vector<Int> counts(len);
  for (std::size_t t = 0; t < len; ++t) counts[t] = count_points(p, Int(static_cast<unsigned long>(t)));
  // multiply by (1 - z^m)^(n+1)
  dv.delta.assign(len, 0);
  for (std::size_t k = 0; k <= dv.n && k * m < len; ++k) {
    Int c = binomial(Int(static_cast<unsigned long>(dv.n + 1)), k);
    if (k % 2 == 1) c = -c;
    for (std::size_t t = 0; t + k * m < len; ++t) dv.delta[t + k * m] += c * counts[t];
  }
  for (const auto& d : dv.delta)
    if (d < 0) throw std::logic_error("negative delta coefficient");
  return dv;
}

Rat QuasiPolynomial::operator()(const Int& t) const {
  Int r = mod_floor(t, m);
  return evaluate(branches[r.get_ui()], Rat(t));
}

QuasiPolynomial ehrhart_quasipolynomial(const DeltaVector& dv) {
  QuasiPolynomial q;
  q.m = dv.m;
  const unsigned long m = dv.m.get_ui();
  q.branches.assign(m, RatPolynomial(dv.n + 1));
  for (std::size_t j = 0; j < dv.delta.size(); ++j) {
    if (dv.delta[j] == 0) continue;
    RatPolynomial b = shifted_binomial(Int(static_cast<unsigned long>(j)), dv.m, dv.n);
    auto& br = q.branches[j % m];
    for (std::size_t i = 0; i < b.size(); ++i) br[i] += Rat(dv.delta[j]) * b[i];
  }
  return q;
}

QuasiPolynomial ehrhart_quasipolynomial(const RationalPolytope& p) { return ehrhart_quasipolynomial(delta_vector(p)); }

Int InteriorSeries::at(const Int& j) const {
  Int i = j - first_index;
  if (i < 0 || i >= Int(static_cast<unsigned long>(coeffs.size()))) return 0;
  return coeffs[i.get_ui()];
}

InteriorSeries interior_series_coeffs(const DeltaVector& dv) {
  InteriorSeries s;
  const Int mn = dv.m * Int(static_cast<unsigned long>(dv.n));
  s.first_index = 1 - dv.m;
  for (Int j = s.first_index; j <= mn; ++j) s.coeffs.push_back(dv.delta[Int(mn - j).get_ui()]);
  return s;
}

Int interior_count_from_series(const InteriorSeries& s, const DeltaVector& dv, const Int& t) {
  if (t < dv.m) throw std::invalid_argument("interior series formula needs t >= m");
  const Int u = t - dv.m;
  Rat total = 0;
  for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
    Int j = s.first_index + Int(static_cast<unsigned long>(i));
    if (s.coeffs[i] == 0 || mod_floor(u - j, dv.m) != 0) continue;
    total += Rat(s.coeffs[i]) * evaluate(shifted_binomial(j, dv.m, dv.n), Rat(u));
  }
  if (total.get_den() != 1) throw std::logic_error("non-integral interior count");
  return total.get_num();
}

ReflexivityReport is_reflexive(const RationalPolytope& p) {
  ReflexivityReport rep;
  rep.integral = order(p) == 1;
  if (!rep.integral) return rep;
  DeltaVector dv = delta_vector(p);
  rep.palindromic = true;
  for (std::size_t j = 0; j <= dv.n; ++j)
    if (dv.delta[j] != dv.delta[dv.n - j]) rep.palindromic = false;
  auto inner = lattice_points(p, Region::Interior);
  if (inner.size() != 1) return rep;
  rep.interior_point = inner.front();
  rep.reflexive = true;
  for (const auto& f : p.facets())
    if (f.offset - dot(f.normal, inner.front()) != -1) rep.reflexive = false;
  return rep;
}

}  // namespace torcon
