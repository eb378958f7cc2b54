#pragma once

// Gaussian integrals over shifted contours i*xi + R^n: tensor Gauss-Hermite for
// low dimension, counter-based Monte Carlo above that, and the integrands used
// throughout (Macdonald-Mehta powers, the integral identity, deformed systems).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "bamm/arrangement.hpp"
#include "bamm/errors.hpp"
#include "bamm/exppoly.hpp"

namespace bamm {

using cplx = std::complex<double>;

// Nodes and weights for the probabilists' weight e^{-u^2/2}/sqrt(2 pi); weights sum to 1.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

namespace detail {

inline GaussHermiteRule compute_gauss_hermite(int n) {
  // Golub-Welsch start, polished by Newton steps on the orthonormal recurrence.
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    jac(k, k - 1) = jac(k - 1, k) = std::sqrt(k / 2.0);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jac, Eigen::EigenvaluesOnly);
  GaussHermiteRule rule;
  const long double pi14 = std::pow(static_cast<long double>(M_PI), -0.25L);
  if (n == 1) return {{0.0}, {1.0}};
  for (int i = 0; i < n; ++i) {
    long double t = eig.eigenvalues()(i);
    long double sum_sq = 0.0L;
    for (int iter = 0; iter < 4; ++iter) {
      long double p0 = pi14;
      long double p1 = std::sqrt(2.0L) * t * p0;
      sum_sq = p0 * p0;
      for (int k = 1; k < n; ++k) {
        sum_sq += p1 * p1;
        const long double p2 = std::sqrt(2.0L / (k + 1)) * t * p1 - std::sqrt(static_cast<long double>(k) / (k + 1)) * p0;
        p0 = p1;
        p1 = p2;
      }
      // p1 = p_n, p0 = p_{n-1}; p_n' = sqrt(2n) p_{n-1}
      t -= p1 / (std::sqrt(2.0L * n) * p0);
    }
    rule.nodes.push_back(static_cast<double>(std::sqrt(2.0L) * t));
    rule.weights.push_back(static_cast<double>(1.0L / (sum_sq * std::sqrt(static_cast<long double>(M_PI)))));
  }
  const double total = std::accumulate(rule.weights.begin(), rule.weights.end(), 0.0);
  for (auto& w : rule.weights) w /= total;
  return rule;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Uniform in (0,1) from the counter (seed, sample, slot).
inline double counter_uniform(std::uint64_t seed, std::uint64_t sample, std::uint64_t slot) {
  const std::uint64_t h = splitmix64(splitmix64(seed ^ splitmix64(sample)) + slot * 0xD1B54A32D192ED03ULL);
  return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

inline cplx pairwise_sum(std::span<const cplx> v) {
  if (v.size() <= 8) {
    cplx s = 0.0;
    for (const auto& x : v) s += x;
    return s;
  }
  const std::size_t h = v.size() / 2;
  return pairwise_sum(v.subspan(0, h)) + pairwise_sum(v.subspan(h));
}

inline double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) return std::accumulate(v.begin(), v.end(), 0.0);
  const std::size_t h = v.size() / 2;
  return pairwise_sum(v.subspan(0, h)) + pairwise_sum(v.subspan(h));
}

inline unsigned worker_count() { return std::max(1u, std::min(16u, std::thread::hardware_concurrency())); }

// Runs body(i) for i in [0, n) on a few threads; results must be written per index.
template <class F>
void parallel_for(std::size_t n, F&& body) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

inline cplx int_pow(cplx z, long e) {
  if (e < 0) return 1.0 / int_pow(z, -e);
  cplx r = 1.0;
  while (e > 0) {
    if (e & 1) r *= z;
    z *= z;
    e >>= 1;
  }
  return r;
}

inline bool is_integer_exponent(cplx e) { return e.imag() == 0.0 && e.real() == std::round(e.real()); }

inline cplx power(cplx z, cplx e) {
  if (is_integer_exponent(e)) return int_pow(z, static_cast<long>(e.real()));
  return std::pow(z, e);
}

}  // namespace detail

inline const GaussHermiteRule& gauss_hermite(int n) {
  static std::mutex mu;
  static std::map<int, GaussHermiteRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, detail::compute_gauss_hermite(n)).first;
  return it->second;
}

enum class QuadMethod { automatic, tensor_hermite, monte_carlo };

struct QuadConfig {
  QuadMethod method = QuadMethod::automatic;
  int order = 0;  // 0 selects 64 (n=1), 96 (n=2), 64 (n=3)
  std::uint64_t samples = 10'000'000;
  std::uint64_t seed = 0;
  int max_refinements = 2;
  double tol_rel = 1e-9;
  double tol_abs = 1e-13;
  double pole_distance = 2.5;
};

inline int default_order(std::size_t dim) {
  switch (dim) {
    case 0:
    case 1: return 64;
    case 2: return 96;
    default: return 64;
  }
}

struct QuadratureLevel {
  int order = 0;
  std::uint64_t samples = 0;
  cplx value;
  double error_est = 0.0;
};

struct QuadratureEstimate {
  cplx value;
  double error_est = 0.0;
  std::string method;
  int order = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double wall_time = 0.0;
  std::vector<double> xi;
  std::vector<QuadratureLevel> history;
};

// Linear form (a, x) raised to a complex power; integer powers are single-valued,
// other powers use the principal branch.
struct LinearFactor {
  std::vector<double> a;
  cplx exponent;
};

struct Integrand {
  std::size_t dim = 0;
  std::function<cplx(std::span<const cplx>)> f;
  // Orthonormal columns; when present f depends on x only through frame^T x.
  std::optional<Eigen::MatrixXd> frame;
  // Hyperplanes carrying poles or branch points.
  std::vector<std::vector<double>> singular;
  Branch branch = Branch::rational;
  bool requires_positive_chamber = false;
  std::string label;
};

// Throws NotRegular unless the contour avoids every singular hyperplane.
inline void check_contour(const Integrand& f, const ContourSpec& spec) {
  if (spec.xi.size() != f.dim) throw ArityMismatch("shift vector has wrong dimension for " + f.label);
  const double scale = std::max(1.0, detail::norm(spec.xi));
  for (const auto& a : f.singular) {
    const double d = detail::dot(a, spec.xi);
    if (std::abs(d) <= 1e-12 * scale * detail::norm(a)) throw NotRegular("contour meets a singular hyperplane of " + f.label);
    if (f.requires_positive_chamber && d < 0) {
      throw NotRegular("the principal branch of " + f.label + " is realised only for xi in the positive chamber");
    }
  }
}

namespace detail {

struct FramedProblem {
  std::size_t rank;
  std::vector<double> eta;
  std::function<cplx(std::span<const cplx>)> g;
};

inline FramedProblem frame_problem(const Integrand& f, const ContourSpec& spec) {
  FramedProblem p;
  if (!f.frame) {
    p.rank = f.dim;
    p.eta = spec.xi;
    p.g = f.f;
    return p;
  }
  const Eigen::MatrixXd b = *f.frame;
  p.rank = static_cast<std::size_t>(b.cols());
  p.eta.assign(p.rank, 0.0);
  for (std::size_t j = 0; j < p.rank; ++j) {
    for (std::size_t i = 0; i < f.dim; ++i) p.eta[j] += b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * spec.xi[i];
  }
  auto inner = f.f;
  const std::size_t dim = f.dim;
  p.g = [b, inner, dim](std::span<const cplx> y) {
    std::vector<cplx> x(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < y.size(); ++j) x[i] += b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * y[j];
    }
    return inner(x);
  };
  return p;
}

// sum over the tensor grid of w * g(u + i eta) e^{-i(u,eta)}, times e^{eta^2/2};
// second member is the same sum of absolute values.
inline std::pair<cplx, double> tensor_sum(const FramedProblem& p, int order) {
  const auto& rule = gauss_hermite(order);
  const std::size_t r = p.rank;
  const std::size_t n = static_cast<std::size_t>(order);
  const double eta2 = dot(p.eta, p.eta);
  const double pref = std::exp(eta2 / 2.0);
  if (r == 0) {
    const cplx v = p.g({});
    return {v, std::abs(v)};
  }
  std::size_t inner = 1;
  for (std::size_t d = 1; d < r; ++d) inner *= n;
  std::vector<cplx> rows(n);
  std::vector<double> abs_rows(n);
  parallel_for(n, [&](std::size_t i0) {
    std::vector<cplx> y(r);
    std::vector<std::size_t> idx(r, 0);
    idx[0] = i0;
    cplx s = 0.0;
    double sa = 0.0;
    for (std::size_t k = 0; k < inner; ++k) {
      std::size_t rem = k;
      for (std::size_t d = r; d-- > 1;) {
        idx[d] = rem % n;
        rem /= n;
      }
      double w = 1.0;
      double phase = 0.0;
      for (std::size_t d = 0; d < r; ++d) {
        const double u = rule.nodes[idx[d]];
        w *= rule.weights[idx[d]];
        y[d] = cplx(u, p.eta[d]);
        phase += u * p.eta[d];
      }
      const cplx v = w * p.g(y) * std::polar(1.0, -phase);
      s += v;
      sa += std::abs(v);
    }
    rows[i0] = s;
    abs_rows[i0] = sa;
  });
  return {pref * pairwise_sum(std::span<const cplx>(rows)), pref * pairwise_sum(std::span<const double>(abs_rows))};
}

struct McResult {
  cplx full;
  cplx half;
  double stderr_full;
};

inline McResult monte_carlo_sum(const FramedProblem& p, std::uint64_t samples, std::uint64_t seed) {
  const std::size_t r = p.rank;
  constexpr std::uint64_t block = 1 << 16;
  const std::uint64_t blocks = (samples + block - 1) / block;
  const double pref = std::exp(dot(p.eta, p.eta) / 2.0);
  std::vector<cplx> sum_all(blocks), sum_even(blocks);
  std::vector<double> sum_sq(blocks);
  const boost::math::normal normal;
  parallel_for(blocks, [&](std::size_t b) {
    std::vector<cplx> y(r);
    cplx sa = 0.0, se = 0.0;
    double sq = 0.0;
    const std::uint64_t lo = b * block;
    const std::uint64_t hi = std::min<std::uint64_t>(samples, lo + block);
    for (std::uint64_t s = lo; s < hi; ++s) {
      std::vector<double> u(r);
      // stratified first coordinate
      u[0] = boost::math::quantile(normal, (static_cast<double>(s) + counter_uniform(seed, s, 0)) / static_cast<double>(samples));
      for (std::size_t d = 1; d < r; d += 2) {
        const double u1 = counter_uniform(seed, s, d);
        const double u2 = counter_uniform(seed, s, d + 1);
        const double rad = std::sqrt(-2.0 * std::log(u1));
        u[d] = rad * std::cos(2.0 * M_PI * u2);
        if (d + 1 < r) u[d + 1] = rad * std::sin(2.0 * M_PI * u2);
      }
      double phase = 0.0;
      for (std::size_t d = 0; d < r; ++d) {
        y[d] = cplx(u[d], p.eta[d]);
        phase += u[d] * p.eta[d];
      }
      const cplx v = p.g(y) * std::polar(1.0, -phase);
      sa += v;
      if (s % 2 == 0) se += v;
      sq += std::norm(v);
    }
    sum_all[b] = sa;
    sum_even[b] = se;
    sum_sq[b] = sq;
  });
  const double n = static_cast<double>(samples);
  const cplx mean = pairwise_sum(std::span<const cplx>(sum_all)) / n;
  const cplx half = pairwise_sum(std::span<const cplx>(sum_even)) / std::ceil(n / 2.0);
  const double var = std::max(0.0, pairwise_sum(std::span<const double>(sum_sq)) / n - std::norm(mean));
  return {pref * mean, pref * half, pref * std::sqrt(var / n)};
}

inline std::string grid_label(int order, std::size_t rank) {
  std::string s = "tensor-hermite(";
  for (std::size_t d = 0; d < rank; ++d) s += (d ? "x" : "") + std::to_string(order);
  return s + ")";
}

}  // namespace detail

// Integral of f over i*xi + R^n against the standard Gaussian measure.
namespace detail {

inline bool within_tolerance(const QuadratureEstimate& est, const QuadConfig& cfg) {
  return est.error_est <= std::max(cfg.tol_abs, cfg.tol_rel * std::abs(est.value));
}

inline QuadratureEstimate integrate_unchecked(const Integrand& f, const ContourSpec& spec, const QuadConfig& cfg) {
  check_contour(f, spec);
  const auto start = std::chrono::steady_clock::now();
  const auto prob = detail::frame_problem(f, spec);
  QuadratureEstimate est;
  est.seed = cfg.seed;
  est.xi = spec.xi;
  const bool mc = cfg.method == QuadMethod::monte_carlo || (cfg.method == QuadMethod::automatic && prob.rank >= 4);
  auto done = [&] {
    est.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return est;
  };
  if (mc) {
    const auto r = detail::monte_carlo_sum(prob, cfg.samples, cfg.seed);
    est.value = r.full;
    est.error_est = std::max(std::abs(r.full - r.half), r.stderr_full);
    est.samples = cfg.samples;
    est.method = "monte-carlo(" + std::to_string(cfg.samples) + ", seed=" + std::to_string(cfg.seed) + ")";
    est.history.push_back({0, cfg.samples / 2, r.half, 0.0});
    est.history.push_back({0, cfg.samples, r.full, est.error_est});
    return done();
  }
  const int base = cfg.order > 0 ? cfg.order : default_order(prob.rank);
  std::vector<int> orders = {std::max(2, base / 4), std::max(3, base / 2), base};
  for (int k = 1; k <= cfg.max_refinements; ++k) orders.push_back(base << k);
  cplx prev = 0.0;
  for (std::size_t li = 0; li < orders.size(); ++li) {
    const auto [value, abs_sum] = detail::tensor_sum(prob, orders[li]);
    const double floor = 32.0 * std::numeric_limits<double>::epsilon() * abs_sum;
    const double err = li == 0 ? INFINITY : std::max(std::abs(value - prev), floor);
    est.history.push_back({orders[li], 0, value, err});
    est.value = value;
    est.error_est = err;
    est.order = orders[li];
    prev = value;
    if (orders[li] >= base && err <= std::max(cfg.tol_abs, cfg.tol_rel * std::abs(value))) break;
  }
  est.method = detail::grid_label(est.order, prob.rank);
  return done();
}

}  // namespace detail

inline QuadratureEstimate shifted_gaussian_integral(const Integrand& f, const ContourSpec& spec, const QuadConfig& cfg = {}) {
  auto est = detail::integrate_unchecked(f, spec, cfg);
  if (!detail::within_tolerance(est, cfg)) {
    throw NonConvergent(f.label + ": error estimate above tolerance at " + est.method, est.error_est);
  }
  return est;
}

// First candidate contour within tolerance, else the estimate with the smallest error.
inline QuadratureEstimate best_shifted_integral(const Integrand& f, const std::vector<ContourSpec>& specs,
                                                const QuadConfig& cfg = {}) {
  if (specs.empty()) throw UsageError("no candidate contours");
  std::optional<QuadratureEstimate> best;
  for (const auto& spec : specs) {
    auto est = detail::integrate_unchecked(f, spec, cfg);
    const bool ok = detail::within_tolerance(est, cfg);
    if (!best || est.error_est < best->error_est) best = std::move(est);
    if (ok) break;
  }
  if (!detail::within_tolerance(*best, cfg)) {
    throw NonConvergent(f.label + ": error estimate above tolerance at " + best->method, best->error_est);
  }
  return *best;
}

// Product scale * prod (a_j, x)^{e_j}.
inline Integrand power_product_integrand(std::size_t dim, std::vector<LinearFactor> factors, cplx scale,
                                         std::string label, bool use_frame = true) {
  Integrand in;
  in.dim = dim;
  in.label = std::move(label);
  std::vector<NumericVector> nv;
  for (const auto& fa : factors) {
    if (fa.a.size() != dim) throw ArityMismatch("linear factor has wrong dimension");
    if (!detail::is_integer_exponent(fa.exponent)) in.branch = Branch::principal_log;
    bool seen = false;
    for (const auto& s : in.singular) {
      const double c = detail::dot(s, fa.a) / (detail::norm(s) * detail::norm(fa.a));
      if (std::abs(std::abs(c) - 1.0) < 1e-12) seen = true;
    }
    if (!seen) in.singular.push_back(fa.a);
    nv.push_back({fa.a, 1, 0});
  }
  if (use_frame && !factors.empty()) {
    Eigen::MatrixXd m(dim, factors.size());
    for (std::size_t j = 0; j < factors.size(); ++j) {
      for (std::size_t i = 0; i < dim; ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = factors[j].a[i];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
      if (svd.singularValues()(i) > 1e-10 * svd.singularValues()(0)) ++rank;
    }
    if (static_cast<std::size_t>(rank) < dim) in.frame = svd.matrixU().leftCols(rank);
  }
  in.f = [factors = std::move(factors), scale](std::span<const cplx> x) {
    cplx v = scale;
    for (const auto& fa : factors) {
      cplx l = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) l += fa.a[i] * x[i];
      v *= detail::power(l, fa.exponent);
    }
    return v;
  };
  return in;
}

// prod (alpha, x)^{exponent_alpha}. With integer exponents -2 m_alpha this is the
// integrand 1/A_m(x)^2; with 2k it is the branch-tracked Macdonald-Mehta integrand.
inline Integrand mm_integrand(const NumericArrangement& a, const std::vector<cplx>& exponents) {
  if (exponents.size() != a.size()) throw ArityMismatch("one exponent per vector expected");
  std::vector<LinearFactor> fs;
  for (std::size_t i = 0; i < a.size(); ++i) fs.push_back({a.vectors()[i].coords, exponents[i]});
  auto in = power_product_integrand(a.dimension(), std::move(fs), 1.0, "Macdonald-Mehta integrand");
  in.requires_positive_chamber = in.branch == Branch::principal_log;
  return in;
}

// 1/A_m(x)^2 for the arrangement's own multiplicities.
inline Integrand inverse_am_squared_integrand(const NumericArrangement& a) {
  std::vector<cplx> e;
  for (const auto& v : a.vectors()) e.emplace_back(-2.0 * v.multiplicity);
  auto in = mm_integrand(a, e);
  in.label = "1/A_m(x)^2";
  return in;
}

// prod (alpha, x)^{2k} on the shifted contour with the principal branch.
inline Integrand mm_branch_integrand(const NumericArrangement& a, cplx k) {
  return mm_integrand(a, std::vector<cplx>(a.size(), 2.0 * k));
}

// prod |(alpha, x)|^{2k} for real x.
inline std::function<double(std::span<const double>)> mm_absolute_integrand(const NumericArrangement& a, double k) {
  return [a, k](std::span<const double> x) {
    double v = 1.0;
    for (const auto& al : a.vectors()) v *= std::pow(std::abs(detail::dot(al.coords, x)), 2.0 * k);
    return v;
  };
}

// Integral of prod |(alpha,x)|^{2k} against the Gaussian measure on R^n, for
// arrangements of rank one (moment formula) or two (polar coordinates).
inline double absolute_mm_integral(const NumericArrangement& a, double k) {
  if (!(k > -0.5 / std::max<std::size_t>(1, a.size()))) throw UsageError("absolute integral diverges for this k");
  const Eigen::MatrixXd b = a.span_basis();
  const auto rank = b.cols();
  std::vector<std::vector<double>> proj;
  for (const auto& v : a.vectors()) {
    std::vector<double> p(static_cast<std::size_t>(rank), 0.0);
    for (Eigen::Index j = 0; j < rank; ++j) {
      for (std::size_t i = 0; i < a.dimension(); ++i) p[static_cast<std::size_t>(j)] += b(static_cast<Eigen::Index>(i), j) * v.coords[i];
    }
    proj.push_back(std::move(p));
  }
  const double big_n = static_cast<double>(a.size());
  if (rank == 1) {
    double c = 1.0;
    for (const auto& p : proj) c *= std::pow(std::abs(p[0]), 2.0 * k);
    // E|y|^{2s} = 2^s Gamma(s + 1/2) / sqrt(pi)
    const double s = k * big_n;
    return c * std::pow(2.0, s) * boost::math::tgamma(s + 0.5) / std::sqrt(M_PI);
  }
  if (rank != 2) throw UsageError("absolute Macdonald-Mehta integrals are provided for rank one and two");
  std::vector<double> cuts;
  for (const auto& p : proj) {
    double t = std::atan2(p[1], p[0]) + M_PI / 2.0;
    for (int s = -2; s <= 2; ++s) {
      const double c = t + s * M_PI;
      if (c > 0.0 && c < 2.0 * M_PI) cuts.push_back(c);
    }
  }
  cuts.push_back(0.0);
  cuts.push_back(2.0 * M_PI);
  std::sort(cuts.begin(), cuts.end());
  auto ang = [&](double th) {
    const double c = std::cos(th), s = std::sin(th);
    double v = 1.0;
    for (const auto& p : proj) v *= std::pow(std::abs(p[0] * c + p[1] * s), 2.0 * k);
    return v;
  };
  boost::math::quadrature::tanh_sinh<double> ts;
  double angular = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] - cuts[i] < 1e-14) continue;
    angular += ts.integrate(ang, cuts[i], cuts[i + 1]);
  }
  const double s = k * big_n;
  // (1/2pi) int_0^inf r^{2s+1} e^{-r^2/2} dr = 2^s Gamma(s+1) / (2 pi)
  return angular * std::pow(2.0, s) * boost::math::tgamma(s + 1.0) / (2.0 * M_PI);
}

// Polynomial with floating coefficients, evaluated at complex points.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  explicit CompiledPoly(const Poly& p) : vars_(2 * p.arity()) {
    for (const auto& [m, c] : p.terms()) {
      terms_.push_back({coeff_to_complex(c), m});
      for (std::size_t i = 0; i < m.size(); ++i) max_deg_ = std::max<unsigned>(max_deg_, m[i]);
    }
  }

  // point: x block then lambda block
  cplx operator()(std::span<const cplx> point) const {
    std::vector<cplx> pw(vars_ * (max_deg_ + 1));
    for (std::size_t i = 0; i < vars_; ++i) {
      pw[i * (max_deg_ + 1)] = 1.0;
      for (unsigned d = 1; d <= max_deg_; ++d) pw[i * (max_deg_ + 1) + d] = pw[i * (max_deg_ + 1) + d - 1] * point[i];
    }
    cplx s = 0.0;
    for (const auto& t : terms_) {
      cplx v = t.c;
      for (std::size_t i = 0; i < vars_; ++i) {
        if (t.m[i]) v *= pw[i * (max_deg_ + 1) + t.m[i]];
      }
      s += v;
    }
    return s;
  }

 private:
  struct Term {
    cplx c;
    Monomial m;
  };
  std::size_t vars_ = 0;
  unsigned max_deg_ = 0;
  std::vector<Term> terms_;
};

namespace detail {

inline bool in_span(const Eigen::MatrixXd& b, std::span<const cplx> v) {
  Eigen::VectorXcd x(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) x(static_cast<Eigen::Index>(i)) = v[i];
  const Eigen::VectorXcd r = x - b.cast<cplx>() * (b.transpose().cast<cplx>() * x);
  return r.norm() <= 1e-12 * std::max(1.0, x.norm());
}

}  // namespace detail

// phi(-ix, lambda) phi(ix, mu) / A_m(x)^2.
inline Integrand identity_integrand(const ExpPoly& phi, const Arrangement& a, std::vector<cplx> lambda,
                                    std::vector<cplx> mu) {
  const std::size_t n = a.dimension();
  if (lambda.size() != n || mu.size() != n) throw ArityMismatch("spectral parameters have wrong dimension");
  const NumericArrangement na = a.numeric();
  Integrand in = inverse_am_squared_integrand(na);
  auto inv_a2 = in.f;
  in.label = "integral identity integrand";
  if (in.frame && !(detail::in_span(*in.frame, lambda) && detail::in_span(*in.frame, mu))) in.frame.reset();
  CompiledPoly p(phi.poly);
  in.f = [p, inv_a2, lambda, mu, n](std::span<const cplx> x) {
    std::vector<cplx> left(2 * n), right(2 * n);
    cplx e = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      left[i] = cplx(0.0, -1.0) * x[i];
      right[i] = cplx(0.0, 1.0) * x[i];
      left[n + i] = lambda[i];
      right[n + i] = mu[i];
      e += x[i] * (mu[i] - lambda[i]);
    }
    return p(left) * p(right) * std::exp(cplx(0.0, 1.0) * e) * inv_a2(x);
  };
  return in;
}

// e^{-(lambda^2 + mu^2)/2} phi(lambda, mu) with the complex bilinear pairing.
inline cplx identity_rhs(const ExpPoly& phi, std::span<const cplx> lambda, std::span<const cplx> mu) {
  const std::size_t n = lambda.size();
  std::vector<cplx> pt(2 * n);
  cplx l2 = 0.0, m2 = 0.0, lm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    pt[i] = lambda[i];
    pt[n + i] = mu[i];
    l2 += lambda[i] * lambda[i];
    m2 += mu[i] * mu[i];
    lm += lambda[i] * mu[i];
  }
  return std::exp(-(l2 + m2) / 2.0 + lm) * CompiledPoly(phi.poly)(pt);
}

enum class DeformedKind { A, BC };

// Deformed Macdonald-Mehta integrands in coordinates (t_1..t_n, tau_1..tau_m):
//   A:  prod (t_i - t_j)^{2/rho} prod (tau_i - tau_j)^{2 rho} / prod (sqrt(-rho) t_i - tau_j)^2
//   BC: prod t_i^{1 - 2 alpha/rho} prod tau_j^{2 alpha + 1} prod (t_i^2 - t_j^2)^{2/rho}
//       prod (tau_i^2 - tau_j^2)^{2 rho} / prod (rho t_i^2 + tau_j^2)^2
// Quadratic factors are split into linear ones, each on its principal branch.
inline Integrand deformed_integrand(DeformedKind kind, int n, int m, double rho, double alpha = 0.0) {
  if (n < 0 || m < 0) throw UsageError("n and m must be nonnegative");
  if (!(rho < 0.0)) throw UsageError("the deformed integrals need rho < 0");
  const std::size_t dim = static_cast<std::size_t>(n + m);
  const double sr = std::sqrt(-rho);
  std::vector<LinearFactor> fs;
  auto lin = [&](std::initializer_list<std::pair<std::size_t, double>> entries, cplx e) {
    std::vector<double> a(dim, 0.0);
    for (auto [i, c] : entries) a[i] = c;
    fs.push_back({a, e});
  };
  const std::size_t tau0 = static_cast<std::size_t>(n);
  cplx scale = 1.0;
  if (kind == DeformedKind::A) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) lin({{i, 1.0}, {j, -1.0}}, 2.0 / rho);
    }
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) lin({{tau0 + i, 1.0}, {tau0 + j, -1.0}}, 2.0 * rho);
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m; ++j) lin({{i, sr}, {tau0 + j, -1.0}}, -2.0);
    }
  } else {
    for (int i = 0; i < n; ++i) lin({{i, 1.0}}, 1.0 - 2.0 * alpha / rho);
    for (int j = 0; j < m; ++j) lin({{tau0 + j, 1.0}}, 2.0 * alpha + 1.0);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        lin({{i, 1.0}, {j, -1.0}}, 2.0 / rho);
        lin({{i, 1.0}, {j, 1.0}}, 2.0 / rho);
      }
    }
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        lin({{tau0 + i, 1.0}, {tau0 + j, -1.0}}, 2.0 * rho);
        lin({{tau0 + i, 1.0}, {tau0 + j, 1.0}}, 2.0 * rho);
      }
    }
    // rho t^2 + tau^2 = (tau - sqrt(-rho) t)(tau + sqrt(-rho) t)
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m; ++j) {
        lin({{tau0 + j, 1.0}, {i, -sr}}, -2.0);
        lin({{tau0 + j, 1.0}, {i, sr}}, -2.0);
      }
    }
  }
  auto in = power_product_integrand(dim, std::move(fs), scale,
                                    kind == DeformedKind::A ? "deformed A(n,m) integrand" : "deformed BC(n,m) integrand",
                                    false);
  return in;
}

// Shift for a deformed integrand obeying xi_n > ... > xi_1 > eta_m > ... > eta_1
// (and eta_1 > 0 for BC) with every singular hyperplane at distance >= pole_distance.
// The A ordering is centred at zero to keep |xi| small.
inline ContourSpec deformed_shift(const Integrand& in, DeformedKind kind, int n, int m, double pole_distance = 2.5) {
  auto margin_of = [&](const std::vector<double>& xi) {
    double mg = INFINITY;
    for (const auto& a : in.singular) mg = std::min(mg, std::abs(detail::dot(a, xi)) / detail::norm(a));
    return mg;
  };
  const int total = n + m;
  if (kind == DeformedKind::A) {
    ContourSpec spec;
    spec.branch = in.branch;
    spec.xi.assign(static_cast<std::size_t>(total), 0.0);
    for (int k = 0; k < total; ++k) {
      const double v = k - (total - 1) / 2.0;
      // k < m are the eta_j, the rest the xi_i
      if (k < m) {
        spec.xi[static_cast<std::size_t>(n + k)] = v;
      } else {
        spec.xi[static_cast<std::size_t>(k - m)] = v;
      }
    }
    const double mg = margin_of(spec.xi);
    if (!(mg > 0.0)) throw NotRegular("no regular ordered shift for this deformed integrand");
    for (auto& c : spec.xi) c *= pole_distance / mg;
    spec.margin = pole_distance;
    return spec;
  }
  ContourSpec best;
  double best_margin = -1.0;
  for (int step = 1; step <= 400; ++step) {
    ContourSpec spec = ordered_shift(n, m, 0.025 * step * pole_distance, pole_distance);
    const double mg = margin_of(spec.xi);
    if (mg > best_margin + 1e-12) {
      best = spec;
      best_margin = mg;
    }
    if (mg >= pole_distance * (1.0 - 1e-12)) break;
  }
  if (!(best_margin > 0.0)) throw NotRegular("no regular ordered shift for this deformed integrand");
  best.branch = in.branch;
  best.margin = best_margin;
  return best;
}

// Exploratory D(2,1,lambda) integrand, rescaled to the standard Gaussian measure:
// x_i = sqrt(lambda_i / 2) y_i, so that the integral over i*xi + R^3 in x equals
// (2 pi)^{3/2} prod sqrt(lambda_i/2) times the Gaussian integral in y.
inline Integrand d21_integrand(double l1, double l2, double l3) {
  const double lam[3] = {l1, l2, l3};
  for (double l : lam) {
    if (!(l > 0.0)) throw UsageError("D(2,1,lambda) integrand needs positive lambda_i");
  }
  const double mi[3] = {(l2 + l3 - l1) / (2 * l1), (l3 + l1 - l2) / (2 * l2), (l1 + l2 - l3) / (2 * l3)};
  double s[3];
  cplx scale = std::pow(2.0 * M_PI, 1.5);
  for (int i = 0; i < 3; ++i) {
    s[i] = std::sqrt(lam[i] / 2.0);
    scale *= s[i];
  }
  std::vector<LinearFactor> fs;
  for (int i = 0; i < 3; ++i) {
    std::vector<double> a(3, 0.0);
    a[i] = s[i];
    fs.push_back({a, -2.0 * mi[i]});
  }
  for (int sg2 : {1, -1}) {
    for (int sg3 : {1, -1}) fs.push_back({{s[0], sg2 * s[1], sg3 * s[2]}, -2.0});
  }
  return power_product_integrand(3, std::move(fs), scale, "D(2,1,lambda) integrand", false);
}

// Shift for the D(2,1,lambda) integrand: c (1,1,1) in the original x coordinates.
inline ContourSpec d21_shift(double l1, double l2, double l3, double c = 1.0) {
  ContourSpec spec;
  spec.branch = Branch::principal_log;
  for (double l : {l1, l2, l3}) spec.xi.push_back(c / std::sqrt(l / 2.0));
  spec.margin = c;
  return spec;
}

struct IndependenceReport {
  QuadratureEstimate first;
  QuadratureEstimate second;
  double difference = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// Checks that the shifted integral does not depend on xi.
inline IndependenceReport contour_independence_check(const Integrand& f, const ContourSpec& s1, const ContourSpec& s2,
                                                     const QuadConfig& cfg = {}) {
  IndependenceReport r;
  r.first = shifted_gaussian_integral(f, s1, cfg);
  r.second = shifted_gaussian_integral(f, s2, cfg);
  r.difference = std::abs(r.first.value - r.second.value);
  r.tolerance = r.first.error_est + r.second.error_est;
  r.pass = r.difference <= r.tolerance;
  return r;
}

}  // namespace bamm
