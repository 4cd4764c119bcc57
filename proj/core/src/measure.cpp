#include "stablereg/measure.hpp"

namespace stablereg {

Measure Measure::counting(const BipartiteGraph& g, Side side) {
  const std::uint32_t n = g.side_size(side);
  return Measure(side, std::vector<Int>(n, 1), Int(n), true);
}

Measure Measure::from_weights(Side side, const std::vector<Rational>& weights) {
  require(!weights.empty(), Errc::invalid_measure, "weight list is empty");
  Int den = 1;
  for (const auto& w : weights) {
    require(w >= 0, Errc::invalid_measure, "negative weight");
    den = lcm(den, denominator(w));
  }
  std::vector<Int> nums;
  nums.reserve(weights.size());
  Int total = 0;
  for (const auto& w : weights) {
    Int n = numerator(w) * (den / denominator(w));
    total += n;
    nums.push_back(std::move(n));
  }
  require(total == den, Errc::invalid_measure, "weights must sum to exactly 1");
  bool uniform = true;
  for (const auto& n : nums) uniform = uniform && n == nums.front();
  return Measure(side, std::move(nums), std::move(den), uniform);
}

Rational Measure::weight(std::uint32_t v) const {
  require(v < size(), Errc::index_out_of_range, "vertex out of range for measure");
  return Rational(nums_[v], den_);
}

Int Measure::mass_num(const Bitset& s) const {
  require(s.size() == size(), Errc::side_mismatch, "bitset size does not match measure");
  if (uniform_) return Int(nums_.front() * s.count());
  Int total = 0;
  s.for_each([&](std::uint32_t v) { total += nums_[v]; });
  return total;
}

Rational Measure::mass(const VertexSet& s) const {
  require(s.side == side_, Errc::side_mismatch, "measure and vertex set live on different sides");
  return Rational(mass_num(s.bits), den_);
}

std::vector<Rational> Measure::weights() const {
  std::vector<Rational> out;
  out.reserve(nums_.size());
  for (const auto& n : nums_) out.emplace_back(n, den_);
  return out;
}

Rational pair_mass(const Measure& mu, const Measure& nu, const VertexSet& A, const VertexSet& B,
                   const BipartiteGraph& g, bool edges) {
  require(A.side == Side::left && mu.side() == Side::left, Errc::side_mismatch,
          "pair_mass expects A and mu on the left side");
  require(B.side == Side::right && nu.side() == Side::right, Errc::side_mismatch,
          "pair_mass expects B and nu on the right side");
  require(A.bits.size() == g.n_left() && B.bits.size() == g.n_right(), Errc::side_mismatch,
          "vertex sets do not match graph dimensions");
  Int total = 0;
  A.bits.for_each([&](std::uint32_t a) {
    const Bitset hit = edges ? (g.row(a) & B.bits) : (B.bits - g.row(a));
    total += mu.num(a) * nu.mass_num(hit);
  });
  return Rational(total, mu.den() * nu.den());
}

}  // namespace stablereg
