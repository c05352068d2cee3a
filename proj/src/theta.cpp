#include "schottky/theta.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "schottky/error.hpp"
#include "schottky/parallel.hpp"
#include "schottky/rng.hpp"

namespace schottky {

using std::numbers::pi;

ThetaEvaluator::ThetaEvaluator(const SchottkyGroup& group, const WordSet& words) {
  build(group, words);
}

ThetaEvaluator::ThetaEvaluator(const SchottkyGroup& group, int max_length) {
  build(group, generate_words(group, max_length));
}

void ThetaEvaluator::build(const SchottkyGroup& group, const WordSet& words) {
  if (words.genus() != group.genus()) {
    throw Error(ErrorCode::InvalidArgument, "word set and group disagree on genus");
  }
  truncation_ = words.max_length();
  circles_ = group.circle_pairs();
  const int g = group.genus();
  tables_.assign(g, {});
  level_end_.assign(g, {});
  for (int n = 1; n <= g; ++n) {
    const auto& fp = group.fixed_points()[n - 1];
    auto& table = tables_[n - 1];
    for (int k = 0; k <= truncation_; ++k) {
      for (const auto& w : words.level(k)) {
        if (!is_coset_rep(w, n)) continue;
        const ComplexPoint fa = w.matrix(fp.attracting);
        const ComplexPoint fb = w.matrix(fp.repelling);
        if (fa.is_infinite() || fb.is_infinite()) {
          throw Error(ErrorCode::DegenerateConfiguration,
                      "a fixed point is mapped to infinity; infinity must lie in the domain");
        }
        table.push_back({fa.value(), fb.value()});
      }
      level_end_[n - 1].push_back(table.size());
    }
  }
}

std::vector<Complex> ThetaEvaluator::omega_partials(int n, const ComplexPoint& z) const {
  if (n < 1 || n > genus()) throw Error(ErrorCode::InvalidArgument, "differential index out of range");
  if (z.is_infinite()) {
    throw Error(ErrorCode::InvalidArgument, "theta series are evaluated at finite points only");
  }
  const Complex x = z.value();
  const auto& table = tables_[n - 1];
  const auto& ends = level_end_[n - 1];
  std::vector<Complex> partials;
  partials.reserve(ends.size());
  constexpr double kNear2 = kNearSingularity * kNearSingularity;
  const double xr = x.real(), xi = x.imag();
  double sr = 0.0, si = 0.0;
  std::size_t i = 0;
  for (std::size_t end : ends) {
    for (; i < end; ++i) {
      const Complex fa = table[i].fa, fb = table[i].fb;
      const double ar = xr - fa.real(), ai = xi - fa.imag();
      const double br = xr - fb.real(), bi = xi - fb.imag();
      const double na = ar * ar + ai * ai, nb = br * br + bi * bi;
      if (na < kNear2 || nb < kNear2) {
        throw Error(ErrorCode::NearSingularity,
                    "evaluation point within 1e-8 of an orbit point of a fixed point");
      }
      // 1/(x - fb) - 1/(x - fa) = (fb - fa) / ((x - fa)(x - fb)), divided
      // through the conjugate.
      const double pr = ar * br - ai * bi, pi_ = ar * bi + ai * br;
      const double dr = fb.real() - fa.real(), di = fb.imag() - fa.imag();
      const double inv = 1.0 / (na * nb);
      sr += (dr * pr + di * pi_) * inv;
      si += (di * pr - dr * pi_) * inv;
    }
    partials.emplace_back(sr, si);
  }
  return partials;
}

Complex ThetaEvaluator::eval_omega(int n, const ComplexPoint& z) const {
  return omega_partials(n, z).back();
}

Complex ThetaEvaluator::eval_omega_partial(int n, const ComplexPoint& z, int max_length) const {
  if (max_length < 0 || max_length > truncation_) {
    throw Error(ErrorCode::InvalidArgument, "partial length outside the tabulated range");
  }
  return omega_partials(n, z)[max_length];
}

CanonicalPoint ThetaEvaluator::canonical_map(const ComplexPoint& z) const {
  CanonicalPoint p;
  p.source = z;
  p.coords.reserve(genus());
  for (int n = 1; n <= genus(); ++n) p.coords.push_back(eval_omega(n, z));
  std::size_t best = 0;
  for (std::size_t k = 1; k < p.coords.size(); ++k) {
    if (std::abs(p.coords[k]) > std::abs(p.coords[best])) best = k;
  }
  if (std::abs(p.coords[best]) < 1e-14) {
    throw Error(ErrorCode::AllCoordinatesVanish, "canonical image has no nonzero coordinate");
  }
  p.chart = static_cast<int>(best);
  p.normalized.reserve(p.coords.size());
  for (Complex c : p.coords) p.normalized.push_back(c / p.coords[best]);
  return p;
}

double ThetaEvaluator::truncation_estimate(const ComplexPoint& z) const {
  const int lower = std::max(truncation_ - 2, 0);
  double est = 0.0;
  for (int n = 1; n <= genus(); ++n) {
    const auto partials = omega_partials(n, z);
    est = std::max(est, std::abs(partials[truncation_] - partials[lower]));
  }
  return est;
}

SamplingMode parse_sampling_mode(std::string_view name) {
  if (name == "uniform-circle") return SamplingMode::UniformCircle;
  if (name == "exterior-arcs") return SamplingMode::ExteriorArcs;
  throw Error(ErrorCode::InvalidArgument, "unknown sampling mode '" + std::string(name) + "'");
}

std::string_view to_string(SamplingMode mode) {
  return mode == SamplingMode::UniformCircle ? "uniform-circle" : "exterior-arcs";
}

namespace {

constexpr double kTwoPi = 2.0 * pi;

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  return t < 0.0 ? t + kTwoPi : t;
}

}  // namespace

std::vector<std::pair<double, double>> exterior_arcs(std::span<const CirclePair> circles) {
  // Covered intervals: |e^{it} - c| < r  <=>  cos(t - arg c) > (1 + |c|^2 - r^2) / (2|c|).
  std::vector<std::pair<double, double>> covered;
  auto add_disk = [&](Complex c, double r) {
    const double rho = std::abs(c);
    if (rho < 1e-300) {
      if (r > 1.0) covered.emplace_back(0.0, kTwoPi);
      return;
    }
    const double k = (1.0 + rho * rho - r * r) / (2.0 * rho);
    if (k >= 1.0) return;
    if (k <= -1.0) {
      covered.emplace_back(0.0, kTwoPi);
      return;
    }
    const double half = std::acos(k);
    const double start = wrap_angle(std::arg(c) - half);
    const double end = start + 2.0 * half;
    if (end > kTwoPi) {
      covered.emplace_back(start, kTwoPi);
      covered.emplace_back(0.0, end - kTwoPi);
    } else {
      covered.emplace_back(start, end);
    }
  };
  for (const auto& p : circles) {
    add_disk(p.center_src, p.radius);
    add_disk(p.center_dst, p.radius);
  }
  std::sort(covered.begin(), covered.end());

  std::vector<std::pair<double, double>> arcs;
  double cursor = 0.0;
  for (const auto& [lo, hi] : covered) {
    if (lo > cursor) arcs.emplace_back(cursor, lo - cursor);
    cursor = std::max(cursor, hi);
  }
  if (cursor < kTwoPi) arcs.emplace_back(cursor, kTwoPi - cursor);
  // Merge the arc through angle 0 so it is one interval.
  if (arcs.size() > 1 && arcs.front().first == 0.0 &&
      arcs.back().first + arcs.back().second >= kTwoPi) {
    arcs.back().second += arcs.front().second;
    arcs.erase(arcs.begin());
  }
  return arcs;
}

namespace {

class AngleSource {
public:
  AngleSource(const ThetaEvaluator& ev, std::uint64_t seed, SamplingMode mode)
      : rng_(seed), mode_(mode) {
    if (mode_ == SamplingMode::ExteriorArcs) {
      arcs_ = exterior_arcs(ev.circle_pairs());
      for (const auto& a : arcs_) total_ += a.second;
      if (arcs_.empty() || total_ <= 0.0) {
        throw Error(ErrorCode::DegenerateConfiguration, "no unit-circle arc lies outside the circles");
      }
    }
  }

  double next() {
    const double u = rng_.uniform();
    if (mode_ == SamplingMode::UniformCircle) return kTwoPi * u;
    double s = u * total_;
    for (const auto& [start, length] : arcs_) {
      if (s < length) return wrap_angle(start + s);
      s -= length;
    }
    return wrap_angle(arcs_.back().first + arcs_.back().second);
  }

private:
  SplitMix64 rng_;
  SamplingMode mode_;
  std::vector<std::pair<double, double>> arcs_;
  double total_ = 0.0;
};

constexpr int kMaxRetries = 100;

}  // namespace

std::vector<CanonicalPoint> sample_curve(const ThetaEvaluator& ev, int count, std::uint64_t seed,
                                         SamplingMode mode, unsigned threads) {
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "need at least one sample");
  AngleSource source(ev, seed, mode);
  std::vector<double> angles(count);
  for (auto& t : angles) t = source.next();

  std::vector<CanonicalPoint> out(count);
  std::vector<char> ok(count, 0);
  parallel_for(count, threads, [&](std::size_t i) {
    try {
      out[i] = ev.canonical_map(std::polar(1.0, angles[i]));
      ok[i] = 1;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NearSingularity) throw;
    }
  });
  for (int i = 0; i < count; ++i) {
    for (int attempt = 0; !ok[i]; ++attempt) {
      if (attempt == kMaxRetries) {
        throw Error(ErrorCode::NearSingularity,
                    "sample " + std::to_string(i) + " failed after 100 redraws");
      }
      try {
        out[i] = ev.canonical_map(std::polar(1.0, source.next()));
        ok[i] = 1;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NearSingularity) throw;
      }
    }
  }
  return out;
}

std::vector<ComplexPoint> limit_set_points(const SchottkyGroup& group, int depth,
                                           std::uint64_t cap) {
  const WordSet words = generate_words(group, depth, cap);
  std::vector<Complex> pts;
  pts.reserve(words.size() * 2 * group.genus());
  // Words ending in f_n^{+-1} only repeat shorter images of A_n, B_n, and
  // computing them cancels badly, so each pair uses coset representatives.
  words.for_each([&](const GroupWord& w) {
    for (int n = 1; n <= group.genus(); ++n) {
      if (!is_coset_rep(w, n)) continue;
      const auto& fp = group.fixed_points()[n - 1];
      for (const ComplexPoint& p : {fp.attracting, fp.repelling}) {
        const ComplexPoint q = w.matrix(p);
        if (q.is_finite()) pts.push_back(q.value());
      }
    }
  });
  // Sort-and-sweep deduplication: only neighbours within 1e-12 in the real
  // part can collide.
  constexpr double kDedup = 1e-12;
  std::sort(pts.begin(), pts.end(), [](Complex x, Complex y) {
    return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag());
  });
  std::vector<Complex> kept;
  kept.reserve(pts.size());
  std::size_t window = 0;
  for (Complex p : pts) {
    while (window < kept.size() && kept[window].real() < p.real() - kDedup) ++window;
    bool dup = false;
    for (std::size_t k = window; k < kept.size(); ++k) {
      if (std::abs(kept[k] - p) <= kDedup) {
        dup = true;
        break;
      }
    }
    if (!dup) kept.push_back(p);
  }
  return {kept.begin(), kept.end()};
}

}  // namespace schottky
