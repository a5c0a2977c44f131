#include "bkm/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <fmt/format.h>

#include "bkm/analytics.hpp"
#include "bkm/densities.hpp"
#include "bkm/error.hpp"
#include "bkm/metric.hpp"

namespace bkm {

namespace {

constexpr std::uint64_t kLargeBatch = 100000;
constexpr std::uint64_t kMediumBatch = 10000;
constexpr std::uint64_t kOracleSamples = 50000;
constexpr double kKsThreshold = 0.012;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double combined_se(double a, double b) { return std::sqrt(a * a + b * b); }

CheckResult make(std::string id, std::string title, bool passed, std::string detail) {
  return {std::move(id), std::move(title), passed, std::move(detail)};
}

// int_{-1}^{inf} (x P)(u) g(u) du with x = 2 e^{-u}; equal to int P(x) g dx.
template <typename G>
double integrate_log_axis(G g) {
  auto f = [&](double u) { return marginal_weight_log(u) * g(u); };
  boost::math::quadrature::tanh_sinh<double> edge;
  boost::math::quadrature::exp_sinh<double> tail;
  return edge.integrate(f, -1.0, 0.0, 1e-13) + tail.integrate(f, 0.0, std::numeric_limits<double>::infinity(), 1e-13);
}

double x_of(double u) { return 2.0 * std::exp(-u); }

struct Extremes {
  double r_min;
  double gap;
};

Extremes extremes(std::vector<double> r) {
  std::sort(r.begin(), r.end());
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < r.size(); ++k) gap = std::min(gap, r[k] - r[k - 1]);
  return {r.front(), gap};
}

ComplexMatrix random_traceless_unit(int n, RngStream& rng) {
  const ComplexMatrix g = sample_ginibre(n, rng);
  ComplexMatrix h = 0.5 * (g + g.adjoint());
  h -= (h.trace() / static_cast<double>(n)) * ComplexMatrix::Identity(n, n);
  return h / h.norm();
}

double ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

// Standard error of a sample standard deviation, from the excess kurtosis.
double stddev_se(const std::vector<double>& values, double sigma) {
  const ShapeStatistics shape = shape_statistics(values);
  return sigma * std::sqrt(std::max(0.0, shape.excess_kurtosis + 2.0) / (4.0 * values.size()));
}

std::vector<double> entropies(const BatchResult& batch) {
  std::vector<double> out;
  out.reserve(batch.records.size());
  for (const auto& r : batch.records) out.push_back(r.entropy);
  return out;
}

}  // namespace

Verifier::Verifier(VerifyOptions options) : options_(std::move(options)) {
  if (options_.workers < 1) throw Error(Errc::InvalidArgument, "workers must be >= 1");
}

std::uint64_t Verifier::derived_seed(std::uint64_t salt) const {
  return splitmix64(options_.seed ^ splitmix64(salt));
}

const BatchResult& Verifier::batch(EnsembleKind kind, int n, std::uint64_t samples, bool bipartite) {
  const BatchKey key{static_cast<int>(kind), n, samples, bipartite};
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  BatchConfig config;
  config.kind = kind;
  config.dim = n;
  config.samples = samples;
  config.seed = derived_seed((static_cast<std::uint64_t>(kind) << 56) ^
                             (static_cast<std::uint64_t>(n) << 32) ^ samples ^
                             (bipartite ? (1ULL << 62) : 0));
  config.workers = options_.workers;
  config.options = options_.sampler;
  config.bipartite = bipartite;
  return cache_.emplace(key, run_batch(config)).first->second;
}

CheckResult Verifier::lambert_round_trip() const {
  std::vector<std::pair<Complex, int>> points;
  const double inv_e = std::exp(-1.0);
  for (double radius : {1e-9, 1e-6, 1e-3, 0.05, 0.25}) {
    for (int k = 0; k < 100; ++k) {
      const double theta = 2.0 * std::numbers::pi * (k + 0.5) / 100.0 - std::numbers::pi;
      points.push_back({Complex(-inv_e, 0.0) + std::polar(radius, theta), 0});
    }
  }
  // Negative real axis beyond the branch point, on the cut and just below it.
  for (int k = 0; k < 150; ++k) {
    const double u = -0.999 + 13.0 * k / 149.0;
    points.push_back({Complex(-std::exp(u), 0.0), 0});
    points.push_back({Complex(-std::exp(u), -1e-10 * std::exp(u)), 0});
  }
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 10; ++j) {
      const double modulus = std::pow(10.0, -6.0 + 12.0 * i / 19.0);
      const double theta = 2.0 * std::numbers::pi * j / 10.0 + 0.1;
      points.push_back({std::polar(modulus, theta), j % 3 - 1});
    }
  }

  double worst = 0.0;
  bool cut_sign_ok = true;
  for (const auto& [z, branch] : points) {
    const Complex w = lambert_w(z, branch);
    worst = std::max(worst, std::abs(w * std::exp(w) - z) / std::abs(z));
    if (branch == 0 && z.imag() == 0.0 && z.real() < -inv_e && !(w.imag() > 0.0)) cut_sign_ok = false;
  }
  return make("lambert", "Lambert W round trip", worst < 1e-12 && cut_sign_ok,
              fmt::format("{} points, max relative residual {:.3g}, cut sign {}", points.size(), worst,
                          cut_sign_ok ? "ok" : "wrong"));
}

CheckResult Verifier::normalization_constants() const {
  const double c1 = std::exp(log_norm_const(1));
  const double c2 = std::exp(log_norm_const(2));
  const double c3 = std::exp(log_norm_const(3));
  const double e2 = std::abs(c2 * 2.0 * std::numbers::pi - 1.0);
  const bool ok = std::abs(c1 - 1.0) < 1e-14 && e2 < 1e-14 && std::abs(c3 / 0.17407 - 1.0) < 1e-4;
  return make("constants", "Normalization constants C1..C3", ok,
              fmt::format("C1 = {:.15g}, C2 = {:.15g} (1/2pi rel err {:.2g}), C3 = {:.8g}", c1, c2, e2, c3));
}

CheckResult Verifier::oracle_ks(int n) const {
  RngStream sampler_rng(derived_seed(0x5a3000 + n), 0);
  RngStream oracle_rng(derived_seed(0x0ac000 + n), 1);
  std::vector<double> min_a, gap_a, min_b, gap_b;
  for (std::uint64_t i = 0; i < kOracleSamples; ++i) {
    const Spectrum s = sample_state(EnsembleKind::BKM, n, sampler_rng, options_.sampler).spectrum();
    const Extremes e = extremes({s.values().begin(), s.values().end()});
    min_a.push_back(e.r_min);
    gap_a.push_back(e.gap);
    const SimplexPoint p = rejection_sample_bkm_spectrum(n, oracle_rng);
    const Extremes o = extremes({p.values().begin(), p.values().end()});
    min_b.push_back(o.r_min);
    gap_b.push_back(o.gap);
  }
  const double ks_min = ks_statistic(min_a, min_b);
  const double ks_gap = ks_statistic(gap_a, gap_b);
  return make(fmt::format("oracle-n{}", n), fmt::format("Sampler vs rejection oracle, N = {}", n),
              ks_min < kKsThreshold && ks_gap < kKsThreshold,
              fmt::format("KS r_min {:.4f}, KS gap {:.4f} (limit {})", ks_min, ks_gap, kKsThreshold));
}

CheckResult Verifier::mean_entropy_bkm() {
  const auto& b = batch(EnsembleKind::BKM, 70, kLargeBatch);
  const double predicted = mean_entropy(EnsembleKind::BKM, 70).value;
  const double mean = b.summary.entropy.mean();
  return make("1", "Mean BKM entropy at N = 70", std::abs(mean - predicted) < 0.01,
              fmt::format("<S> = {:.6f} +- {:.2g}, predicted {:.6f}, |diff| {:.2g} (limit 0.01)", mean,
                          b.summary.entropy.stderr_mean(), predicted, std::abs(mean - predicted)));
}

CheckResult Verifier::ensemble_ordering() {
  const auto& bkm = batch(EnsembleKind::BKM, 70, kLargeBatch).summary.entropy;
  const auto& bh = batch(EnsembleKind::BH, 70, kLargeBatch).summary.entropy;
  const auto& hs = batch(EnsembleKind::HS, 70, kLargeBatch).summary.entropy;
  const double z1 = (bh.mean() - bkm.mean()) / combined_se(bh.stderr_mean(), bkm.stderr_mean());
  const double z2 = (hs.mean() - bh.mean()) / combined_se(hs.stderr_mean(), bh.stderr_mean());
  const double bh_exact = mean_entropy(EnsembleKind::BH, 70).value;
  const double bh_err = std::abs(bh.mean() - bh_exact);
  return make("2", "Ensemble ordering BKM < BH < HS at N = 70", z1 > 5.0 && z2 > 5.0 && bh_err < 0.01,
              fmt::format("BKM {:.5f}, BH {:.5f}, HS {:.5f}; gaps {:.1f} and {:.1f} se; BH vs exact "
                          "{:.5f}, |diff| {:.2g}",
                          bkm.mean(), bh.mean(), hs.mean(), z1, z2, bh_exact, bh_err));
}

CheckResult Verifier::oracle_agreement() const {
  const CheckResult n2 = oracle_ks(2);
  const CheckResult n3 = oracle_ks(3);
  return make("3", "Sampler vs rejection oracle, N = 2 and 3", n2.passed && n3.passed,
              fmt::format("N=2: {}; N=3: {}", n2.detail, n3.detail));
}

CheckResult Verifier::normalization_integrals() const {
  // N = 2: symmetric in t <-> 1 - t.
  boost::math::quadrature::tanh_sinh<double> integrator;
  const double z2 = 2.0 * integrator.integrate(
                              [](double t) {
                                const double r[2] = {t, 1.0 - t};
                                return std::exp(log_bkm_weight(r));
                              },
                              0.0, 0.5, 1e-14);
  const double c2 = 1.0 / z2;
  const double c2_err = std::abs(c2 * 2.0 * std::numbers::pi - 1.0);

  // N = 3: importance sampling from Dirichlet(1/2); the weight ratio is
  // 2 pi prod_{pairs} (r_mu - r_nu) ln(r_mu / r_nu).
  RngStream rng(derived_seed(0xc3), 0);
  RunningMoments ratio;
  for (int i = 0; i < 1000000; ++i) {
    double r[3];
    double total = 0.0;
    for (double& x : r) total += (x = rng.gamma(0.5));
    for (double& x : r) x /= total;
    double log_half = 0.0;
    for (double x : r) log_half += 0.5 * std::log(x);
    ratio.push(2.0 * std::numbers::pi * std::exp(log_bkm_weight(r) + log_half));
  }
  const double c3 = 1.0 / ratio.mean();
  const double c3_exact = std::exp(log_norm_const(3));
  const double c3_err = std::abs(c3 / c3_exact - 1.0);
  return make("4", "Normalization constants by integration", c2_err < 1e-6 && c3_err < 0.01,
              fmt::format("C2 = {:.12g} (rel err {:.2g}, limit 1e-6); C3 = {:.5f} +- {:.1g} (rel err "
                          "{:.2g}, limit 0.01)",
                          c2, c2_err, c3, c3 * ratio.stderr_mean() / ratio.mean(), c3_err));
}

CheckResult Verifier::asymptotic_marginal() const {
  const double mass = integrate_log_axis([](double) { return 1.0; });
  const double first = integrate_log_axis([](double u) { return x_of(u); });
  const bool moments_ok = std::abs(mass - 1.0) < 1e-8 && std::abs(first - 1.0) < 1e-8;

  constexpr int kDim = 128;
  constexpr int kBins = 64;
  BatchConfig config;
  config.dim = kDim;
  config.samples = 2000;
  config.workers = options_.workers;
  config.options = options_.sampler;

  auto sup_distance = [&](EnsembleKind kind) {
    config.kind = kind;
    config.seed = derived_seed(0x3a5000 + static_cast<std::uint64_t>(kind));
    const auto spectra = collect_spectra(config);
    const Histogram hist = empirical_rescaled_marginal(spectra, kBins);
    const std::vector<double> density = hist.density();
    double sup = 0.0;
    for (int b = 0; b < kBins; ++b) {
      const double c = hist.center(b);
      if (c < 0.2 || c > 5.0) continue;
      const double lo = hist.edges()[b];
      const double hi = hist.edges()[b + 1];
      const double mean_p =
          boost::math::quadrature::gauss_kronrod<double, 61>::integrate(marginal_density_asymptotic, lo, hi,
                                                                        15, 1e-12) /
          (hi - lo);
      sup = std::max(sup, std::abs(density[b] - mean_p));
    }
    return sup;
  };
  const double sup_bkm = sup_distance(EnsembleKind::BKM);
  const double sup_hs = sup_distance(EnsembleKind::HS);
  return make("5", "Asymptotic marginal density",
              moments_ok && sup_bkm < 0.02 && sup_hs > 0.05,
              fmt::format("int P = 1 {:+.2g}, int xP = 1 {:+.2g}; histogram sup distance N=128: BKM "
                          "{:.4f} (limit 0.02), HS control {:.4f} (must exceed 0.05)",
                          mass - 1.0, first - 1.0, sup_bkm, sup_hs));
}

CheckResult Verifier::mellin_moments() {
  const double target = std::numbers::egamma + std::numbers::ln2 - 0.5;
  const double xlogx = integrate_log_axis([](double u) { return x_of(u) * (std::numbers::ln2 - u); });
  const double second = integrate_log_axis([](double u) { return x_of(u) * x_of(u); });
  const double purity_mean = batch(EnsembleKind::BKM, 100, kMediumBatch).summary.purity.mean();
  const double purity_pred = mellin_marginal(3.0) / 100.0;
  const double purity_err = std::abs(purity_mean / purity_pred - 1.0);
  const bool ok = std::abs(xlogx - target) < 1e-6 && std::abs(second - 8.0 / 3.0) < 1e-6 &&
                  std::abs(mellin_marginal(3.0) - 8.0 / 3.0) < 1e-12 && purity_err < 0.05;
  return make("6", "Mellin moments and purity",
              ok,
              fmt::format("int x ln x P = {:.10f} (target {:.10f}); int x^2 P = {:.10f}; <Tr rho^2> N=100 "
                          "= {:.6f} vs {:.6f} (rel err {:.3f}, limit 0.05)",
                          xlogx, target, second, purity_mean, purity_pred, purity_err));
}

CheckResult Verifier::metric_identities() const {
  constexpr int kDim = 3;
  constexpr double kStep = 1e-4;
  constexpr double kMixScale = 1e-3;
  RngStream rng(derived_seed(0x7e7), 0);
  const ComplexMatrix mixed = ComplexMatrix::Identity(kDim, kDim) / static_cast<double>(kDim);

  double worst_hessian = 0.0, worst_relative = 0.0, worst_mixing = 0.0;
  for (int pair = 0; pair < 100; ++pair) {
    const ComplexMatrix base = 0.5 * sample_state(EnsembleKind::HS, kDim, rng).matrix() + 0.5 * mixed;
    const DensityMatrix rho = DensityMatrix::from_hermitian(base);
    const ComplexMatrix delta = random_traceless_unit(kDim, rng);
    const TangentMatrix tangent = TangentMatrix::from(delta);
    const double ds2 = bkm_line_element(rho, tangent);

    auto at = [&](double t) { return DensityMatrix::from_hermitian(base + t * delta); };
    const double s0 = von_neumann_entropy(rho);
    const double hessian =
        -(von_neumann_entropy(at(kStep)) - 2.0 * s0 + von_neumann_entropy(at(-kStep))) / (kStep * kStep);
    const DensityMatrix plus = at(kStep);
    const DensityMatrix minus = at(-kStep);
    // d/ds d/dt D(rho_s || rho_t) at 0 equals -ds^2; D(rho_t || rho_t) = 0.
    const double mixed_derivative =
        -(0.0 - relative_entropy(plus, minus) - relative_entropy(minus, plus) + 0.0) / (4.0 * kStep * kStep);
    const double loss = mixing_information_loss(rho, TangentMatrix::from(kMixScale * delta));

    worst_hessian = std::max(worst_hessian, std::abs(hessian / ds2 - 1.0));
    worst_relative = std::max(worst_relative, std::abs(mixed_derivative / ds2 - 1.0));
    worst_mixing = std::max(worst_mixing, std::abs(loss / (kMixScale * kMixScale * ds2 / 8.0) - 1.0));
  }
  return make("7", "BKM metric identities at N = 3",
              worst_hessian < 1e-4 && worst_relative < 1e-4 && worst_mixing < 1e-3,
              fmt::format("max rel err over 100 pairs: -d2S {:.2g}, relative entropy {:.2g} (limit 1e-4); "
                          "mixing ratio {:.2g} (limit 1e-3)",
                          worst_hessian, worst_relative, worst_mixing));
}

CheckResult Verifier::entropy_concentration() {
  const int dims[] = {10, 20, 40, 70};
  std::vector<double> sigma, se;
  for (int n : dims) {
    const auto& b = batch(EnsembleKind::BKM, n, kMediumBatch);
    sigma.push_back(b.summary.entropy.stddev());
    se.push_back(stddev_se(entropies(b), sigma.back()));
  }
  bool decreasing = true;
  double min_z = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < sigma.size(); ++k) {
    const double z = (sigma[k - 1] - sigma[k]) / combined_se(se[k - 1], se[k]);
    min_z = std::min(min_z, z);
    if (!(z > 3.0)) decreasing = false;
  }
  const ShapeStatistics shape =
      shape_statistics(standardize(entropies(batch(EnsembleKind::BKM, 70, kLargeBatch))));
  const bool gaussian = std::abs(shape.skewness) < options_.max_abs_skewness &&
                        std::abs(shape.excess_kurtosis) < options_.max_abs_excess_kurtosis;
  return make("8", "Entropy concentration", decreasing && gaussian,
              fmt::format("sigma[S] N=10,20,40,70: {:.5f} {:.5f} {:.5f} {:.5f} (smallest drop {:.1f} se); "
                          "N=70 skewness {:.4f} (limit {}), excess kurtosis {:.4f} (limit {})",
                          sigma[0], sigma[1], sigma[2], sigma[3], min_z, shape.skewness,
                          options_.max_abs_skewness, shape.excess_kurtosis,
                          options_.max_abs_excess_kurtosis));
}

CheckResult Verifier::min_eigenvalue_trend() {
  const std::vector<double> dims = {8, 12, 16, 20};
  std::vector<double> log_bkm, log_hs;
  double worst_rel_se = 0.0;
  for (double n : dims) {
    const RunningMoments& r_min = batch(EnsembleKind::BKM, static_cast<int>(n), kLargeBatch).summary.r_min;
    log_bkm.push_back(std::log(r_min.mean()));
    worst_rel_se = std::max(worst_rel_se, r_min.stderr_mean() / r_min.mean());
    log_hs.push_back(std::log(batch(EnsembleKind::HS, static_cast<int>(n), kLargeBatch).summary.r_min.mean()));
  }
  const double slope_bkm = ols_slope(dims, log_bkm);
  const double slope_hs = ols_slope(dims, log_hs);
  return make("9", "Minimum-eigenvalue scaling",
              std::abs(slope_bkm + 1.0) <= 0.15 && std::abs(slope_hs) < 0.3,
              fmt::format("ln<r_min> BKM N=8..20: {:.3f} {:.3f} {:.3f} {:.3f} (rel se up to {:.2f}), slope "
                          "{:.4f} (target -1 +- 0.15); HS slope {:.4f} (limit |.| < 0.3)",
                          log_bkm[0], log_bkm[1], log_bkm[2], log_bkm[3], worst_rel_se, slope_bkm, slope_hs));
}

CheckResult Verifier::bipartite_reduction() {
  double worst = 0.0;
  for (int n : {8, 70}) {
    for (int trial = 0; trial < 10; ++trial) {
      const std::uint64_t seed = derived_seed(0xb1000 + 100 * n + trial);
      RngStream a(seed, 0), b(seed, 0);
      const BipartiteSample pure = sample_pure_bipartite(n, a, options_.sampler);
      const DensityMatrix direct = sample_state(EnsembleKind::BKM, n, b, options_.sampler);
      worst = std::max(worst, (pure.reduced.matrix() - direct.matrix()).cwiseAbs().maxCoeff());
    }
  }
  const auto& pure = batch(EnsembleKind::BKM, 70, kMediumBatch, true).summary.entropy;
  const auto& hs = batch(EnsembleKind::HS, 70, kLargeBatch).summary.entropy;
  const double z = (hs.mean() - pure.mean()) / combined_se(hs.stderr_mean(), pure.stderr_mean());
  return make("10", "Bipartite purification", worst < 1e-10 && z > 5.0,
              fmt::format("max |reduced - direct| {:.2g} (limit 1e-10); entanglement entropy N=70 {:.5f} vs "
                          "HS {:.5f}, gap {:.0f} se",
                          worst, pure.mean(), hs.mean(), z));
}

std::vector<CheckResult> Verifier::run(VerifyLevel level,
                                       const std::function<void(const CheckResult&)>& on_result) {
  std::vector<CheckResult> results;
  auto record = [&](CheckResult r) {
    if (on_result) on_result(r);
    results.push_back(std::move(r));
  };
  record(oracle_ks(2));
  record(normalization_constants());
  record(lambert_round_trip());
  if (level == VerifyLevel::Quick) return results;
  record(mean_entropy_bkm());
  record(ensemble_ordering());
  record(oracle_agreement());
  record(normalization_integrals());
  record(asymptotic_marginal());
  record(mellin_moments());
  record(metric_identities());
  record(entropy_concentration());
  record(min_eigenvalue_trend());
  record(bipartite_reduction());
  return results;
}

}  // namespace bkm
