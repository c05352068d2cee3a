#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "schottky/moebius.hpp"
#include "schottky/words.hpp"

namespace schottky {

/// Distance to a tabulated orbit point below which evaluation is refused.
inline constexpr double kNearSingularity = 1e-8;

/// Image of the canonical map at one point of the domain of discontinuity.
struct CanonicalPoint {
  ComplexPoint source;
  std::vector<Complex> coords;      // omega_1(z), ..., omega_g(z)
  std::vector<Complex> normalized;  // coords / coords[chart]
  int chart = 0;                    // 0-based index of the largest-modulus coordinate
};

/// Truncated Poincare theta series
///   omega_n(z) = sum_{f in G/<f_n>, |f| <= L} 1/(z - f(B_n)) - 1/(z - f(A_n)).
///
/// The orbit points (f(A_n), f(B_n)) are tabulated once per n in
/// length-major, breadth-first-minor order; every evaluation sums them in
/// that order so results are reproducible bit for bit. Immutable after
/// construction and safe to share between threads.
class ThetaEvaluator {
public:
  ThetaEvaluator(const SchottkyGroup& group, const WordSet& words);
  ThetaEvaluator(const SchottkyGroup& group, int max_length);

  int genus() const { return static_cast<int>(tables_.size()); }
  int truncation() const { return truncation_; }

  /// omega_n(z), n in 1..g. Throws NearSingularity within kNearSingularity
  /// of a tabulated point.
  Complex eval_omega(int n, const ComplexPoint& z) const;

  /// Same sum restricted to words of length <= max_length.
  Complex eval_omega_partial(int n, const ComplexPoint& z, int max_length) const;

  /// Partial sums for lengths 0..L in one pass.
  std::vector<Complex> omega_partials(int n, const ComplexPoint& z) const;

  /// Throws AllCoordinatesVanish if every coordinate is below 1e-14.
  CanonicalPoint canonical_map(const ComplexPoint& z) const;

  /// max_n |omega_n truncated at L - omega_n truncated at L-2|.
  double truncation_estimate(const ComplexPoint& z) const;

  struct ImagePair {
    Complex fa;  // f(A_n)
    Complex fb;  // f(B_n)
  };
  std::span<const ImagePair> table(int n) const { return tables_.at(n - 1); }

  const std::vector<CirclePair>& circle_pairs() const { return circles_; }

private:
  void build(const SchottkyGroup& group, const WordSet& words);

  int truncation_ = 0;
  std::vector<CirclePair> circles_;
  std::vector<std::vector<ImagePair>> tables_;
  // level_end_[n-1][k] = number of table entries with word length <= k.
  std::vector<std::vector<std::size_t>> level_end_;
};

enum class SamplingMode { UniformCircle, ExteriorArcs };

SamplingMode parse_sampling_mode(std::string_view name);
std::string_view to_string(SamplingMode mode);

/// Arcs [start, start + length) of the unit circle lying outside every
/// circle of the group, angles in [0, 2 pi).
std::vector<std::pair<double, double>> exterior_arcs(std::span<const CirclePair> circles);

/// N seeded samples on the unit circle (SplitMix64, angle = 2 pi u).
/// Points that hit NearSingularity are redrawn, at most 100 times each, in
/// index order after the first parallel pass so the output does not depend
/// on the thread count.
std::vector<CanonicalPoint> sample_curve(const ThetaEvaluator& ev, int count, std::uint64_t seed, SamplingMode mode,
                                         unsigned threads = 1);

/// Images of the 2g generator fixed points under words of length <= depth,
/// deduplicated at 1e-12.
std::vector<ComplexPoint> limit_set_points(const SchottkyGroup& group, int depth,
                                           std::uint64_t cap = default_word_cap());

}  // namespace schottky
