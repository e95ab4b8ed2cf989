#include "safemerge/rng.hpp"

#include <cmath>
#include <numbers>

namespace safemerge {
namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

// splitmix64 finalizer
std::uint64_t mix(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

}  // namespace

CounterRng::CounterRng(const RngKey& key) {
  std::uint64_t s = mix(key.seed + kGamma);
  s = mix(s ^ (key.trial + kGamma));
  s = mix(s ^ (key.step + kGamma));
  s = mix(s ^ (key.vehicle + kGamma));
  state_ = s;
}

std::uint64_t CounterRng::next_u64() {
  state_ += kGamma;
  return mix(state_);
}

double CounterRng::next_unit() {
  // 53-bit mantissa shifted into (0, 1); keeps log() finite in Box-Muller
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::uniform(double lo, double hi) {
  return lo + (hi - lo) * next_unit();
}

Eigen::Vector2d CounterRng::next_normal2() {
  const double u1 = next_unit();
  const double u2 = next_unit();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(phi), r * std::sin(phi)};
}

Eigen::Matrix2d cholesky_psd2(const Eigen::Matrix2d& cov) {
  const double a = cov(0, 0);
  const double b = 0.5 * (cov(0, 1) + cov(1, 0));
  const double c = cov(1, 1);
  Eigen::Matrix2d L = Eigen::Matrix2d::Zero();
  const double l00 = std::sqrt(std::max(a, 0.0));
  L(0, 0) = l00;
  const double l10 = (l00 > 1e-150) ? b / l00 : 0.0;
  L(1, 0) = l10;
  L(1, 1) = std::sqrt(std::max(c - l10 * l10, 0.0));
  return L;
}

Eigen::Vector2d sample_gaussian2(const Eigen::Vector2d& mean,
                                 const Eigen::Matrix2d& cov, CounterRng& rng) {
  return mean + cholesky_psd2(cov) * rng.next_normal2();
}

}  // namespace safemerge
