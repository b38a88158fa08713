#include "torcon/cone.hpp"

#include <cstdint>

namespace torcon {

namespace {

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t(1) << (i % 64); }
  Bits operator&(const Bits& o) const {
    Bits b;
    b.words_.resize(words_.size());
    for (std::size_t i = 0; i < words_.size(); ++i) b.words_[i] = words_[i] & o.words_[i];
    return b;
  }
  bool subset_of(const Bits& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & ~o.words_[i]) != 0) return false;
    return true;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct Ray {
  IntVector x;
  Bits zeros;
};

}  // namespace

std::vector<IntVector> extreme_rays(const std::vector<IntVector>& rows) {
  if (rows.empty()) throw GeometryError(GeometryError::Kind::NotPointed, "cone has no constraints");
  const std::size_t d = rows.front().size();
  const std::size_t total = rows.size();

  std::vector<std::size_t> basis;
  std::vector<IntVector> chosen;
  for (std::size_t i = 0; i < total && basis.size() < d; ++i) {
    chosen.push_back(rows[i]);
    if (rank(IntMatrix::from_rows(chosen)) == chosen.size())
      basis.push_back(i);
    else
      chosen.pop_back();
  }
  if (basis.size() < d) throw GeometryError(GeometryError::Kind::NotPointed, "constraints do not span; cone is not pointed");

  auto binv = inverse(to_rational(IntMatrix::from_rows(chosen)));
  std::vector<Ray> rays;
  for (std::size_t j = 0; j < d; ++j) {
    Int den = 1;
    for (std::size_t i = 0; i < d; ++i) den = lcm(den, Int((*binv)(i, j).get_den()));
    IntVector x(d);
    for (std::size_t i = 0; i < d; ++i) {
      Rat q = (*binv)(i, j) * den;
      x[i] = q.get_num();
    }
    Ray r{primitive(x), Bits(total)};
    for (std::size_t k = 0; k < d; ++k)
      if (k != j) r.zeros.set(basis[k]);
    rays.push_back(std::move(r));
  }

  std::vector<bool> used(total, false);
  for (auto b : basis) used[b] = true;

  for (std::size_t ri = 0; ri < total; ++ri) {
    if (used[ri]) continue;
    used[ri] = true;
    const IntVector& a = rows[ri];
    std::vector<Int> val(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      val[k] = dot(a, rays[k].x);
      if (val[k] > 0) pos.push_back(k);
      else if (val[k] < 0) neg.push_back(k);
    }
    std::vector<Ray> next;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      if (val[k] < 0) continue;
      Ray r = rays[k];
      if (val[k] == 0) r.zeros.set(ri);
      next.push_back(std::move(r));
    }
    for (auto p : pos) {
      for (auto q : neg) {
        Bits common = rays[p].zeros & rays[q].zeros;
        if (common.count() + 2 < d) continue;
        bool adjacent = true;
        for (std::size_t k = 0; k < rays.size() && adjacent; ++k) {
          if (k == p || k == q) continue;
          if (common.subset_of(rays[k].zeros)) adjacent = false;
        }
        if (!adjacent) continue;
        IntVector x(d);
        for (std::size_t i = 0; i < d; ++i) x[i] = val[p] * rays[q].x[i] - val[q] * rays[p].x[i];
        Ray r{primitive(x), common};
        r.zeros.set(ri);
        next.push_back(std::move(r));
      }
    }
    rays = std::move(next);
  }

  std::vector<IntVector> out;
  out.reserve(rays.size());
  for (auto& r : rays) out.push_back(std::move(r.x));
  return out;
}

}  // namespace torcon
