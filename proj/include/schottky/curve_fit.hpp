#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "schottky/family.hpp"
#include "schottky/polynomial.hpp"
#include "schottky/theta.hpp"

namespace schottky {

/// Genus-2 Weierstrass points x_1..x_6 = 1, -1, e^{i theta}, e^{i eta},
/// e^{i(pi - theta)}, e^{i(pi - eta)} and their images under the
/// hyperelliptic chart omega_1 / omega_2.
struct WeierstrassSet {
  std::array<ComplexPoint, 6> sources;
  std::array<Complex, 6> values;  // chart values before dropping imaginary parts
  std::array<double, 6> images;   // real parts, alpha_j
  double max_imag = 0.0;
  /// alpha_1 alpha_2, alpha_3 alpha_5, alpha_4 alpha_6.
  std::array<Complex, 3> reciprocal_products;
  double truncation_estimate = 0.0;
};

WeierstrassSet weierstrass_points_g2(const FamilyParams& params, const ThetaEvaluator& ev);

/// Real coefficients of prod_j (x - alpha_j), constant term first. Throws
/// ImaginaryResidue if a coefficient keeps an imaginary part above 1e-8.
std::vector<double> hyperelliptic_model(const WeierstrassSet& ws);

struct FitDiagnostics {
  std::vector<double> singular_values;  // descending
  bool real_projection = false;
  bool null_space_projection = false;
};

/// Homogeneous least squares min |A c| subject to |c| = 1 over the monomials
/// of `degree`, evaluated at chart-normalized coordinates. Uses the right
/// singular vector of the least singular value; when that value is below
/// 1e-10 the all-ones vector is projected onto the numerical null space
/// instead. Throws RankDeficient if the null space has dimension above one.
HomogeneousPoly fit_homogeneous(std::span<const CanonicalPoint> points, int degree,
                                FitDiagnostics* diagnostics = nullptr);

struct Residuals {
  double max = 0.0;
  double rms = 0.0;
};

/// |p| at chart-normalized coordinates of each point, p scaled to unit norm.
Residuals residuals(const HomogeneousPoly& poly, std::span<const CanonicalPoint> points);

struct SampleMeta {
  int count = 0;
  int truncation = 0;
  std::uint64_t seed = 0;
  SamplingMode mode = SamplingMode::UniformCircle;
};

struct FitReport {
  std::vector<HomogeneousPoly> polys;  // quartic, or quadric then cubic
  double residual_max = 0.0;
  double residual_rms = 0.0;
  std::vector<double> orbit_spread;  // per symmetry orbit, max deviation from the orbit mean
  SampleMeta sample_meta;
  FitDiagnostics diagnostics;

  /// Genus 3: least-squares refit restricted to orbit-symmetric quartics.
  std::optional<HomogeneousPoly> symmetric_fit;
  Residuals symmetric_residuals;

  /// Genus 4: ansatz coefficients (c1, c2, c3) and (d1, d2, d3, d4).
  std::vector<double> quadric_ansatz;
  std::vector<double> cubic_ansatz;
  bool degenerate_normalization = false;
  /// Genus 4: canonical images of the six involution-fixed points, scaled so
  /// the first coordinate is 1, and max |x_1 - x_3| over them.
  std::vector<CanonicalPoint> fixed_point_images;
  double palindrome_defect = 0.0;
};

/// Degree-4 orbits of the cyclic-plus-reversal action on three coordinates.
std::vector<std::vector<Exponents>> quartic_orbits_g3();

/// Samples `count` points, fits the plane quartic and reports per-orbit
/// spread together with the orbit-symmetric refit.
FitReport genus3_quartic(const ThetaEvaluator& ev, int count, std::uint64_t seed,
                         SamplingMode mode = SamplingMode::UniformCircle, unsigned threads = 1);

/// Fits the symmetric quadric and cubic through the canonical images of the
/// six points fixed by z -> 1/z (1, -1, e^{i theta}, e^{i(pi-theta)},
/// e^{i eta}, e^{i(pi-eta)}).
///
/// In the coordinates y_j = (-1)^j x_j both ideal generators are invariant
/// under the cyclic shift and the reversal, so the ansatz is
///   Q = c1 sum y_j^2 + c2 sum y_j y_{j+1} + c3 (y0 y2 + y1 y3)
///   T = d1 sum y_j^3 + d2 sum (y_j y_{j+1}^2 + y_j^2 y_{j+1})
///     + d3 sum y_j^2 y_{j+2} + d4 sum y_j y_{j+1} y_{j+2}
/// normalized to c3 = d4 = 1. The cubic ansatz also contains
/// Q (y0 + y1 + y2 + y3); T is taken orthogonal to it.
FitReport genus4_pair(const FamilyParams& params, const ThetaEvaluator& ev);

}  // namespace schottky
