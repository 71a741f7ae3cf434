#include "matcoef/quad.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace matcoef::quad {

namespace {

constexpr int kGaussPoints = 16;
constexpr double kChunkWidth = 4.0;
// sinh(160)^4 stays below the double range, so integrands built from t^4 are safe.
constexpr int kMaxChunks = 40;

const GaussLegendreRule& gl16() {
  static const GaussLegendreRule rule = gauss_legendre(kGaussPoints);
  return rule;
}

template <class T>
double mag(const T& v) {
  return std::abs(v);
}

double tol_for(const QuadConfig& cfg, double value_mag) { return std::max(cfg.abs_tol, cfg.rel_tol * value_mag); }

// Nodes of one chunk [c*W, (c+1)*W] in u, mapped to t, for one axis.
struct AxisChunk {
  std::vector<double> t;
  std::vector<double> w;
};

AxisChunk make_chunk(int chunk, int panels, const LineOptions& opt) {
  const auto& rule = gl16();
  AxisChunk out;
  const double h = kChunkWidth / panels;
  const std::size_t per_side = static_cast<std::size_t>(panels) * kGaussPoints;
  out.t.reserve(opt.side == Side::both ? 2 * per_side : per_side);
  out.w.reserve(out.t.capacity());
  for (int p = 0; p < panels; ++p) {
    const double a = chunk * kChunkWidth + p * h;
    for (int i = 0; i < kGaussPoints; ++i) {
      const double u = a + 0.5 * h * (1.0 + rule.nodes[i]);
      const double wu = 0.5 * h * rule.weights[i];
      const double t = opt.scale * std::sinh(u);
      const double w = wu * opt.scale * std::cosh(u);
      out.t.push_back(t);
      out.w.push_back(w);
      if (opt.side == Side::both) {
        out.t.push_back(-t);
        out.w.push_back(w);
      }
    }
  }
  return out;
}

int initial_panels(const QuadConfig& cfg) {
  const double h0 = std::min(0.5, 8.0 / (1.0 + cfg.oscillation_scale));
  return static_cast<int>(std::ceil(kChunkWidth / h0));
}

// Ring-by-ring summation on one mesh level. Stops when two
// consecutive rings are negligible against the running sums, or at the cap.
// Returns the magnitude of the last ring per component as the tail bound.
template <class T, class EvalRing>
bool sum_level(std::size_t count, const QuadConfig& cfg, int min_rings, EvalRing&& eval_ring, std::vector<T>& total,
               std::vector<double>& tail, int& rings_used) {
  total.assign(count, T{});
  tail.assign(count, 0.0);
  std::vector<T> ring(count);
  int quiet = 0;
  int k = 0;
  for (; k < kMaxChunks; ++k) {
    std::fill(ring.begin(), ring.end(), T{});
    eval_ring(k, std::span<T>(ring));
    bool small = true;
    for (std::size_t c = 0; c < count; ++c) {
      total[c] += ring[c];
      tail[c] = mag(ring[c]);
    }
    for (std::size_t c = 0; c < count; ++c) {
      if (tail[c] > 0.1 * tol_for(cfg, mag(total[c]))) {
        small = false;
        break;
      }
    }
    quiet = small ? quiet + 1 : 0;
    if (k + 1 >= min_rings && quiet >= 2) {
      ++k;
      break;
    }
  }
  rings_used = k;
  return quiet >= 2;
}

template <class T>
BatchResult<T> refine_loop(std::size_t count, const QuadConfig& cfg,
                           const std::function<bool(int level, int min_rings, std::vector<T>&, std::vector<double>&,
                                                    int& rings, long& nodes)>& level_eval) {
  cfg.validate();
  BatchResult<T> res;
  res.err_estimate.assign(count, std::numeric_limits<double>::infinity());
  std::vector<T> prev, cur;
  std::vector<double> tail;
  int rings = 1;
  for (int level = 0; level <= cfg.max_doublings; ++level) {
    long nodes = 0;
    const bool tail_ok = level_eval(level, rings, cur, tail, rings, nodes);
    res.nodes_used += nodes;
    if (level > 0) {
      bool ok = tail_ok;
      for (std::size_t c = 0; c < count; ++c) {
        res.err_estimate[c] = mag(cur[c] - prev[c]) + tail[c];
        if (res.err_estimate[c] > tol_for(cfg, mag(cur[c]))) ok = false;
      }
      res.value = cur;
      if (ok) {
        res.converged = true;
        return res;
      }
      // A tail that still has not died out after three refinements is a
      // decay problem, not a resolution one.
      if (!tail_ok && level >= 3) return res;
    } else {
      res.value = cur;
    }
    prev.swap(cur);
  }
  return res;
}

}  // namespace

void QuadConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw std::invalid_argument("QuadConfig: tolerances must be positive");
  if (max_doublings < 1) throw std::invalid_argument("QuadConfig: max_doublings must be >= 1");
  if (!(oscillation_scale >= 0.0)) throw std::invalid_argument("QuadConfig: oscillation_scale must be >= 0");
}

QuadConfig QuadConfig::tightened(double factor) const {
  QuadConfig c = *this;
  c.rel_tol /= factor;
  c.abs_tol /= factor;
  return c;
}

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  GaussLegendreRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) {
        // one more evaluation for the derivative at the converged node
        p0 = 1.0;
        p1 = 0.0;
        for (int j = 1; j <= n; ++j) {
          const double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p2) / j;
        }
        dp = n * (x * p0 - p1) / (x * x - 1.0);
        break;
      }
    }
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = r.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

template <class T>
QuadResult BatchResult<T>::component(std::size_t k) const {
  QuadResult q;
  q.value = cplx(value.at(k));
  q.err_estimate = err_estimate.at(k);
  q.nodes_used = nodes_used;
  return q;
}

template <class T>
BatchResult<T> integrate_line_batch(std::size_t count, const LineAccumulator<T>& acc, const QuadConfig& cfg,
                                    LineOptions opt) {
  if (!(opt.scale > 0.0)) throw std::invalid_argument("integrate_line: scale must be positive");
  const int base = initial_panels(cfg);
  auto level_eval = [&](int level, int min_rings, std::vector<T>& total, std::vector<double>& tail, int& rings,
                        long& nodes) {
    const int panels = base << level;
    auto ring = [&](int k, std::span<T> sums) {
      const AxisChunk ch = make_chunk(k, panels, opt);
      for (std::size_t i = 0; i < ch.t.size(); ++i) acc(ch.t[i], ch.w[i], sums);
      nodes += static_cast<long>(ch.t.size());
    };
    return sum_level<T>(count, cfg, min_rings, ring, total, tail, rings);
  };
  return refine_loop<T>(count, cfg, level_eval);
}

template <class T>
BatchResult<T> integrate_plane_batch(std::size_t count, const PlaneAccumulator<T>& acc, const QuadConfig& cfg,
                                     LineOptions x_opt, LineOptions y_opt) {
  if (!(x_opt.scale > 0.0) || !(y_opt.scale > 0.0)) throw std::invalid_argument("integrate_plane: scale must be positive");
  const int base = initial_panels(cfg);
  auto level_eval = [&](int level, int min_rings, std::vector<T>& total, std::vector<double>& tail, int& rings,
                        long& nodes) {
    const int panels = base << level;
    std::vector<AxisChunk> xs, ys;
    auto chunk_of = [&](std::vector<AxisChunk>& cache, int k, const LineOptions& o) -> const AxisChunk& {
      while (static_cast<int>(cache.size()) <= k) cache.push_back(make_chunk(static_cast<int>(cache.size()), panels, o));
      return cache[k];
    };
    auto block = [&](const AxisChunk& cx, const AxisChunk& cy, std::span<T> sums) {
      for (std::size_t i = 0; i < cx.t.size(); ++i)
        for (std::size_t j = 0; j < cy.t.size(); ++j) acc(cx.t[i], cy.t[j], cx.w[i] * cy.w[j], sums);
      nodes += static_cast<long>(cx.t.size() * cy.t.size());
    };
    auto ring = [&](int k, std::span<T> sums) {
      const AxisChunk& xk = chunk_of(xs, k, x_opt);
      const AxisChunk& yk = chunk_of(ys, k, y_opt);
      for (int j = 0; j <= k; ++j) block(xk, chunk_of(ys, j, y_opt), sums);
      for (int i = 0; i < k; ++i) block(chunk_of(xs, i, x_opt), yk, sums);
    };
    return sum_level<T>(count, cfg, min_rings, ring, total, tail, rings);
  };
  return refine_loop<T>(count, cfg, level_eval);
}

template <class T>
BatchResult<T> integrate_periodic_batch(std::size_t count, const LineAccumulator<T>& acc, const QuadConfig& cfg) {
  cfg.validate();
  BatchResult<T> res;
  res.err_estimate.assign(count, std::numeric_limits<double>::infinity());
  long n = std::max<long>(4, static_cast<long>(std::ceil(4.0 * (1.0 + cfg.oscillation_scale))));
  std::vector<T> raw(count);  // unweighted node sum
  const double two_pi = 2.0 * std::numbers::pi;
  for (long i = 0; i < n; ++i) acc(-std::numbers::pi + two_pi * i / n, 1.0, raw);
  res.nodes_used = n;
  std::vector<T> prev(count), cur(count);
  for (std::size_t c = 0; c < count; ++c) prev[c] = raw[c] * (two_pi / n);
  res.value = prev;
  for (int d = 0; d < cfg.max_doublings; ++d) {
    for (long i = 0; i < n; ++i) acc(-std::numbers::pi + two_pi * (i + 0.5) / n, 1.0, raw);
    res.nodes_used += n;
    n *= 2;
    bool ok = true;
    for (std::size_t c = 0; c < count; ++c) {
      cur[c] = raw[c] * (two_pi / n);
      res.err_estimate[c] = mag(cur[c] - prev[c]);
      if (res.err_estimate[c] > tol_for(cfg, mag(cur[c]))) ok = false;
    }
    res.value = cur;
    if (ok) {
      res.converged = true;
      return res;
    }
    prev.swap(cur);
  }
  return res;
}

template struct BatchResult<double>;
template struct BatchResult<cplx>;
template BatchResult<double> integrate_line_batch<double>(std::size_t, const LineAccumulator<double>&,
                                                          const QuadConfig&, LineOptions);
template BatchResult<cplx> integrate_line_batch<cplx>(std::size_t, const LineAccumulator<cplx>&, const QuadConfig&,
                                                      LineOptions);
template BatchResult<double> integrate_plane_batch<double>(std::size_t, const PlaneAccumulator<double>&,
                                                           const QuadConfig&, LineOptions, LineOptions);
template BatchResult<cplx> integrate_plane_batch<cplx>(std::size_t, const PlaneAccumulator<cplx>&, const QuadConfig&,
                                                       LineOptions, LineOptions);
template BatchResult<double> integrate_periodic_batch<double>(std::size_t, const LineAccumulator<double>&,
                                                              const QuadConfig&);
template BatchResult<cplx> integrate_periodic_batch<cplx>(std::size_t, const LineAccumulator<cplx>&,
                                                          const QuadConfig&);

namespace {

QuadResult finish(const BatchResult<cplx>& b, const char* who) {
  QuadResult q = b.component(0);
  if (!b.converged) throw QuadratureError(std::string(who) + ": tolerance not met", q);
  return q;
}

}  // namespace

QuadResult integrate_periodic(const Integrand1D& f, const QuadConfig& cfg) {
  LineAccumulator<cplx> acc = [&](double th, double w, std::span<cplx> s) { s[0] += w * f(th); };
  return finish(integrate_periodic_batch<cplx>(1, acc, cfg), "integrate_periodic");
}

QuadResult integrate_line(const Integrand1D& f, const QuadConfig& cfg, double scale) {
  LineAccumulator<cplx> acc = [&](double t, double w, std::span<cplx> s) { s[0] += w * f(t); };
  return finish(integrate_line_batch<cplx>(1, acc, cfg, {scale, Side::both}), "integrate_line");
}

QuadResult integrate_halfline(const Integrand1D& f, const QuadConfig& cfg, double scale) {
  LineAccumulator<cplx> acc = [&](double t, double w, std::span<cplx> s) {
    if (t == 0.0) return;
    s[0] += (2.0 * t * w) * f(t * t);
  };
  return finish(integrate_line_batch<cplx>(1, acc, cfg, {scale, Side::positive}), "integrate_halfline");
}

QuadResult integrate_plane(const IntegrandPlane& f, const QuadConfig& cfg) {
  // Inner passes run 10x tighter so their error stays below the outer one.
  const QuadConfig inner = cfg.tightened(10.0);
  double inner_err = 0.0;
  long inner_nodes = 0;
  bool inner_failed = false;
  auto outer = [&](double x) -> cplx {
    QuadResult r;
    try {
      r = integrate_line([&](double y) { return f(cplx(x, y)); }, inner);
    } catch (const QuadratureError& e) {
      r = e.best();
      inner_failed = true;
    }
    inner_err = std::max(inner_err, r.err_estimate);
    inner_nodes += r.nodes_used;
    return r.value;
  };
  LineAccumulator<cplx> acc = [&](double x, double w, std::span<cplx> s) { s[0] += w * outer(x); };
  BatchResult<cplx> b = integrate_line_batch<cplx>(1, acc, cfg, {1.0, Side::both});
  QuadResult q = b.component(0);
  q.nodes_used = inner_nodes;
  if (!b.converged || inner_failed) throw QuadratureError("integrate_plane: tolerance not met", q);
  return q;
}

}  // namespace matcoef::quad
