#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace risklab {

/// A payoff vector indexed by outcomes. Entries are finite.
class Position {
 public:
  Position() = default;
  explicit Position(std::vector<double> values);
  Position(std::initializer_list<double> values);

  static Position constant(std::size_t n, double c);
  static Position zeros(std::size_t n) { return constant(n, 0.0); }

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }
  const std::vector<double>& vec() const { return values_; }

  bool operator==(const Position&) const = default;

  friend Position operator+(const Position& x, double c);
  friend Position operator+(const Position& x, const Position& y);
  friend Position operator-(const Position& x, const Position& y);
  friend Position operator*(double a, const Position& x);

 private:
  struct Unchecked {};
  Position(std::vector<double> values, Unchecked) : values_(std::move(values)) {}

  std::vector<double> values_;

  friend Position combine(double a, const Position& x, double b, const Position& y);
  friend Position floor(const Position& x);
};

/// a*x + b*y, componentwise.
Position combine(double a, const Position& x, double b, const Position& y);
/// Componentwise mathematical floor.
Position floor(const Position& x);
/// y >= x componentwise.
bool dominates(const Position& y, const Position& x);

/// Finite sample space with strictly positive probabilities.
class ProbSpace {
 public:
  /// Validates positivity and a unit sum (within 1e-12), then renormalizes.
  explicit ProbSpace(std::vector<double> probs);
  static ProbSpace uniform(std::size_t n);

  std::size_t size() const { return probs_.size(); }
  double prob(std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const { return probs_; }

  /// Throws ConfigError unless x has one entry per outcome.
  void check(const Position& x) const;

  bool operator==(const ProbSpace&) const = default;

 private:
  std::vector<double> probs_;
};

double expectation(const ProbSpace& space, const Position& x);

/// (min, max) of x; the essential bounds, since every atom has positive mass.
std::pair<double, double> ess_bounds(const ProbSpace& space, const Position& x);

/// Parameters for deterministic sampling of positions and auxiliary scalars.
struct SamplerConfig {
  std::uint64_t seed = 42;
  std::size_t count = 10000;
  double lo = -5.0;
  double hi = 5.0;
  /// Scalings for positive homogeneity / star-shapedness; empty selects defaults.
  std::vector<double> lambdas;
  /// Convex weights; empty selects defaults.
  std::vector<double> weights;

  void validate() const;
};

/// Counter-based generator: the output stream is a pure function of
/// (seed, stream, index), so draws do not depend on evaluation order.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

  std::uint64_t next_u64();
  /// Uniform in [0, 1).
  double uniform();
  /// Uniform in [lo, hi]; returns lo when lo == hi.
  double uniform(double lo, double hi);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Named streams so that different consumers of one (seed, index) pair draw
/// independent numbers.
enum class Stream : std::uint64_t {
  primary = 0,
  secondary = 1,
  noise = 2,
  scalar = 3,
  member = 4,
  family = 5,
};

/// Deterministic in (sampler.seed, index); entries lie in [lo, hi].
Position sample_position(const ProbSpace& space, const SamplerConfig& sampler,
                         std::size_t index, Stream stream = Stream::primary);

}  // namespace risklab
