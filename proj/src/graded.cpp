#include "torcon/graded.hpp"

namespace torcon {

GradedDimension::GradedDimension(Rat lo, Rat hi, Int step_den) : lo_(std::move(lo)), hi_(std::move(hi)), den_(std::move(step_den)) {}

void GradedDimension::add(const Rat& degree, const Int& count) {
  if (!in_window(degree) || count == 0) return;
  Int& slot = entries_[degree];
  slot += count;
  if (slot == 0) entries_.erase(degree);
}

Int GradedDimension::at(const Rat& degree) const {
  auto it = entries_.find(degree);
  return it == entries_.end() ? Int(0) : it->second;
}

std::vector<Rat> GradedDimension::degrees() const {
  std::vector<Rat> out;
  Rat step(2, den_);
  step.canonicalize();
  Int k = ceil_rat(lo_ / step);
  for (Rat d = Rat(k) * step; d <= hi_; d += step) out.push_back(d);
  return out;
}

std::optional<Rat> GradedDimension::first_difference(const GradedDimension& o) const {
  Rat lo = std::max(lo_, o.lo_), hi = std::min(hi_, o.hi_);
  std::map<Rat, int> keys;
  for (const auto& [d, c] : entries_) keys[d];
  for (const auto& [d, c] : o.entries_) keys[d];
  for (const auto& [d, unused] : keys) {
    if (d < lo || d > hi) continue;
    if (at(d) != o.at(d)) return d;
  }
  return std::nullopt;
}

bool GradedDimension::operator==(const GradedDimension& o) const {
  return lo_ == o.lo_ && hi_ == o.hi_ && entries_ == o.entries_;
}

GradedDimension default_window(const Int& m, std::size_t n) {
  Rat lo = Rat(-2) + Rat(2, m);
  lo.canonicalize();
  return GradedDimension(lo, Rat(static_cast<long>(2 * n + 6)), m);
}

}  // namespace torcon
