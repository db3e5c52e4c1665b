#include "risklab/prob_space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "risklab/error.hpp"

namespace risklab {

namespace {

void require_finite(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      std::ostringstream os;
      os << "position entry " << i << " is not finite";
      throw ConfigError(os.str());
    }
  }
}

void require_same_size(const Position& x, const Position& y) {
  if (x.size() != y.size()) {
    std::ostringstream os;
    os << "dimension mismatch: " << x.size() << " vs " << y.size();
    throw ConfigError(os.str());
  }
}

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Position::Position(std::vector<double> values) : values_(std::move(values)) {
  require_finite(values_);
}

Position::Position(std::initializer_list<double> values) : values_(values) {
  require_finite(values_);
}

Position Position::constant(std::size_t n, double c) {
  return Position(std::vector<double>(n, c));
}

Position operator+(const Position& x, double c) {
  std::vector<double> out(x.values_);
  for (double& v : out) v += c;
  return Position(std::move(out), Position::Unchecked{});
}

Position operator+(const Position& x, const Position& y) {
  return combine(1.0, x, 1.0, y);
}

Position operator-(const Position& x, const Position& y) {
  return combine(1.0, x, -1.0, y);
}

Position operator*(double a, const Position& x) {
  std::vector<double> out(x.values_);
  for (double& v : out) v *= a;
  return Position(std::move(out), Position::Unchecked{});
}

Position combine(double a, const Position& x, double b, const Position& y) {
  require_same_size(x, y);
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * x[i] + b * y[i];
  return Position(std::move(out), Position::Unchecked{});
}

Position floor(const Position& x) {
  std::vector<double> out(x.values_);
  for (double& v : out) v = std::floor(v);
  return Position(std::move(out), Position::Unchecked{});
}

bool dominates(const Position& y, const Position& x) {
  require_same_size(x, y);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (y[i] < x[i]) return false;
  }
  return true;
}

ProbSpace::ProbSpace(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw ConfigError("probability space needs at least one outcome");
  double total = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    const double p = probs_[i];
    if (!std::isfinite(p) || p <= 0.0 || p > 1.0) {
      std::ostringstream os;
      os << "probability " << i << " = " << p << " must lie in (0, 1]";
      throw ConfigError(os.str());
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream os;
    os.precision(17);
    os << "probabilities sum to " << total << ", not 1 (tolerance 1e-12)";
    throw ConfigError(os.str());
  }
  for (double& p : probs_) p /= total;
}

ProbSpace ProbSpace::uniform(std::size_t n) {
  if (n == 0) throw ConfigError("probability space needs at least one outcome");
  return ProbSpace(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

void ProbSpace::check(const Position& x) const {
  if (x.size() != size()) {
    std::ostringstream os;
    os << "dimension mismatch: position has " << x.size() << " entries, space has "
       << size() << " outcomes";
    throw ConfigError(os.str());
  }
}

double expectation(const ProbSpace& space, const Position& x) {
  space.check(x);
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += space.prob(i) * x[i];
  return sum;
}

std::pair<double, double> ess_bounds(const ProbSpace& space, const Position& x) {
  space.check(x);
  const auto [lo, hi] = std::minmax_element(x.vec().begin(), x.vec().end());
  return {*lo, *hi};
}

void SamplerConfig::validate() const {
  if (count < 1) throw ConfigError("sampler count must be at least 1");
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
    std::ostringstream os;
    os << "sampler range [" << lo << ", " << hi << "] is invalid";
    throw ConfigError(os.str());
  }
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
    : key_(mix64(mix64(mix64(seed) ^ stream) ^ index)) {}

std::uint64_t CounterRng::next_u64() { return mix64(key_ ^ mix64(counter_++)); }

double CounterRng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::uniform(double lo, double hi) {
  if (lo == hi) return lo;
  return std::min(hi, lo + (hi - lo) * uniform());
}

Position sample_position(const ProbSpace& space, const SamplerConfig& sampler,
                         std::size_t index, Stream stream) {
  sampler.validate();
  CounterRng rng(sampler.seed, static_cast<std::uint64_t>(stream), index);
  std::vector<double> values(space.size());
  for (double& v : values) v = rng.uniform(sampler.lo, sampler.hi);
  return Position(std::move(values));
}

}  // namespace risklab
