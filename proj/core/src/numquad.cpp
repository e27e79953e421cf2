#include "qcoh/numquad.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

#include "qcoh/error.hpp"

namespace qcoh {

void IntegrationConfig::validate() const {
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw DomainError("IntegrationConfig: half_width must be positive and finite");
  if (!(rel_tol > 0.0)) throw DomainError("IntegrationConfig: rel_tol must be positive");
  if (!(abs_tol > 0.0)) throw DomainError("IntegrationConfig: abs_tol must be positive");
  if (max_depth < 1) throw DomainError("IntegrationConfig: max_depth must be >= 1");
  if (base_order < 2) throw DomainError("IntegrationConfig: base_order must be >= 2");
}

IntegrationConfig IntegrationConfig::widened_for(double scale) const {
  IntegrationConfig out = *this;
  out.half_width = std::max(half_width, 12.0 * std::max(scale, 0.5));
  return out;
}

// ---------------------------------------------------------------------------
// Gauss-Legendre rules

namespace {

struct RuleStorage {
  std::vector<double> nodes;
  std::vector<double> weights;
};

RuleStorage compute_rule(int n) {
  RuleStorage rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

// Neumaier compensated accumulator.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct NodeValue {
  double value;
  double inner_error;
};

struct Panel {
  double a;
  double b;
  double left;   // rule on [a, m]
  double right;  // rule on [m, b]
  double error;
  int depth;

  double value() const { return left + right; }
};

struct PanelOrder {
  bool operator()(const Panel& p, const Panel& q) const { return p.error < q.error; }
};

std::string describe_abscissa(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

// Adaptive bisection over an arbitrary node evaluator. `eval(x)` returns the
// integrand value and, for iterated integrals, the error of that value.
template <class Eval>
QuadResult adaptive(const Eval& eval, std::vector<double> breaks, const IntegrationConfig& config) {
  const GaussLegendreRule rule = gauss_legendre(config.base_order);

  struct RuleValue {
    double value;
    double inner_error;
  };
  auto apply_rule = [&](double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    double inner = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double x = mid + half * rule.nodes[i];
      const NodeValue nv = eval(x);
      sum += rule.weights[i] * nv.value;
      inner += rule.weights[i] * nv.inner_error;
    }
    return RuleValue{sum * half, inner * std::abs(half)};
  };

  auto make_panel = [&](double a, double b, double whole, int depth) {
    const double m = 0.5 * (a + b);
    const RuleValue l = apply_rule(a, m);
    const RuleValue r = apply_rule(m, b);
    const double err = std::abs(whole - (l.value + r.value)) + l.inner_error + r.inner_error;
    return Panel{a, b, l.value, r.value, err, depth};
  };

  std::vector<Panel> heap;
  std::vector<Panel> frozen;
  heap.reserve(breaks.size() * 4);
  double total_value = 0.0;
  double total_error = 0.0;
  double refinable_error = 0.0;

  auto push = [&](Panel p) {
    total_value += p.value();
    total_error += p.error;
    if (p.depth < config.max_depth) {
      refinable_error += p.error;
      heap.push_back(p);
      std::push_heap(heap.begin(), heap.end(), PanelOrder{});
    } else {
      frozen.push_back(p);
    }
  };

  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i];
    const double b = breaks[i + 1];
    push(make_panel(a, b, apply_rule(a, b).value, 0));
  }

  // Hard cap on panels; beyond it the integrand is not worth chasing.
  const std::size_t max_panels = std::max<std::size_t>(4096, 64 * breaks.size());
  bool converged = true;
  while (true) {
    const double tol = std::max(config.abs_tol, config.rel_tol * std::abs(total_value));
    if (total_error <= tol) break;
    if (heap.empty() || refinable_error <= 0.5 * tol || heap.size() + frozen.size() >= max_panels) {
      converged = false;
      break;
    }
    std::pop_heap(heap.begin(), heap.end(), PanelOrder{});
    const Panel p = heap.back();
    heap.pop_back();
    total_value -= p.value();
    total_error -= p.error;
    refinable_error -= p.error;
    const double m = 0.5 * (p.a + p.b);
    push(make_panel(p.a, m, p.left, p.depth + 1));
    push(make_panel(m, p.b, p.right, p.depth + 1));
  }

  std::vector<Panel> all = std::move(heap);
  all.insert(all.end(), frozen.begin(), frozen.end());
  std::sort(all.begin(), all.end(), [](const Panel& p, const Panel& q) { return p.a < q.a; });
  CompensatedSum value;
  CompensatedSum error;
  for (const Panel& p : all) {
    value.add(p.value());
    error.add(p.error);
  }
  QuadResult out;
  out.value = value.value();
  out.error_estimate = std::max(0.0, error.value());
  out.panels_used = static_cast<int>(all.size());
  out.converged = converged;
  return out;
}

std::vector<double> initial_breaks(double half_width, std::span<const double> extra) {
  int n = static_cast<int>(std::ceil(2.0 * half_width / kMaxInitialPanelWidth));
  n = std::max(n, 2);
  if (n % 2 == 1) ++n;  // keep x = 0 a breakpoint
  std::vector<double> breaks;
  breaks.reserve(n + 1 + extra.size());
  for (int i = 0; i <= n; ++i) breaks.push_back(-half_width + 2.0 * half_width * i / n);
  breaks.front() = -half_width;
  breaks[n / 2] = 0.0;
  breaks.back() = half_width;
  for (double e : extra)
    if (e > -half_width && e < half_width) breaks.push_back(e);
  std::sort(breaks.begin(), breaks.end());
  // Drop breakpoints that would produce degenerate panels.
  const double min_gap = 1e-12 * half_width;
  std::vector<double> clean;
  clean.reserve(breaks.size());
  for (double b : breaks)
    if (clean.empty() || b - clean.back() > min_gap) clean.push_back(b);
  clean.back() = half_width;
  return clean;
}

// Roots of f found by bracketing sign changes between consecutive nonzero
// samples at the Gauss nodes of the panels spanned by `breaks`. Exact zeros
// (underflowed tails) carry no sign information and are skipped.
template <class F>
std::vector<double> sampled_roots(const F& f, const std::vector<double>& breaks, int order) {
  const GaussLegendreRule rule = gauss_legendre(order);
  std::vector<double> roots;
  double prev_x = 0.0;
  double prev_f = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double half = 0.5 * (breaks[i + 1] - breaks[i]);
    const double mid = 0.5 * (breaks[i + 1] + breaks[i]);
    for (double node : rule.nodes) {
      const double x = mid + half * node;
      const double fx = f(x);
      if (!std::isfinite(fx))
        throw IntegrationError("integrand is not finite at x = " + describe_abscissa(x));
      if (fx == 0.0) continue;
      if (prev_f != 0.0 && std::signbit(fx) != std::signbit(prev_f)) {
        std::uintmax_t max_iter = 100;
        const auto bracket = boost::math::tools::toms748_solve(
            f, prev_x, x, prev_f, fx, boost::math::tools::eps_tolerance<double>(50), max_iter);
        roots.push_back(0.5 * (bracket.first + bracket.second));
      }
      prev_x = x;
      prev_f = fx;
    }
  }
  return roots;
}

std::vector<double> merge_breaks(std::vector<double> breaks, const std::vector<double>& extra,
                                 double half_width) {
  for (double e : extra)
    if (e > -half_width && e < half_width) breaks.push_back(e);
  std::sort(breaks.begin(), breaks.end());
  const double min_gap = 1e-12 * half_width;
  std::vector<double> clean;
  clean.reserve(breaks.size());
  for (double b : breaks)
    if (clean.empty() || b - clean.back() > min_gap) clean.push_back(b);
  clean.back() = half_width;
  return clean;
}

}  // namespace

GaussLegendreRule gauss_legendre(int order) {
  if (order < 1) throw DomainError("gauss_legendre: order must be >= 1");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<RuleStorage>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end())
    it = cache.emplace(order, std::make_unique<RuleStorage>(compute_rule(order))).first;
  return GaussLegendreRule{it->second->nodes, it->second->weights};
}

QuadResult integrate_1d(const Integrand1D& f, const IntegrationConfig& config) {
  return integrate_1d(f, config, {});
}

QuadResult integrate_1d(const Integrand1D& f, const IntegrationConfig& config,
                        std::span<const double> breakpoints) {
  config.validate();
  auto eval = [&f](double x) {
    const double v = f(x);
    if (!std::isfinite(v))
      throw IntegrationError("integrand is not finite at x = " + describe_abscissa(x));
    return NodeValue{v, 0.0};
  };
  return adaptive(eval, initial_breaks(config.half_width, breakpoints), config);
}

QuadResult integrate_2d(const Integrand2D& f, const IntegrationConfig& config) {
  config.validate();
  // Inner errors enter the outer estimate and do not shrink under outer
  // refinement, so the inner integrals run an order of magnitude tighter.
  IntegrationConfig inner_config = config;
  inner_config.rel_tol = 0.1 * config.rel_tol;
  inner_config.abs_tol = 0.1 * config.abs_tol / (2.0 * config.half_width);
  const std::vector<double> base_breaks = initial_breaks(config.half_width, {});

  auto outer = [&](double x) {
    std::vector<double> breaks = base_breaks;
    const auto pos = std::upper_bound(breaks.begin(), breaks.end(), x);
    if (pos != breaks.begin() && pos != breaks.end() && x - *(pos - 1) > 1e-12 * config.half_width &&
        *pos - x > 1e-12 * config.half_width)
      breaks.insert(pos, x);
    auto inner = [&](double xp) {
      const double v = f(x, xp);
      if (!std::isfinite(v))
        throw IntegrationError("integrand is not finite at (x, x') = (" + describe_abscissa(x) + ", " +
                               describe_abscissa(xp) + ")");
      return NodeValue{v, 0.0};
    };
    const QuadResult r = adaptive(inner, std::move(breaks), inner_config);
    return NodeValue{r.value, r.error_estimate};
  };
  return adaptive(outer, base_breaks, config);
}

QuadResult integrate_1d_abs(const Integrand1D& f, const IntegrationConfig& config,
                            std::span<const double> breakpoints) {
  config.validate();
  std::vector<double> breaks = initial_breaks(config.half_width, breakpoints);
  breaks = merge_breaks(std::move(breaks), sampled_roots(f, breaks, config.base_order),
                        config.half_width);
  auto eval = [&f](double x) {
    const double v = f(x);
    if (!std::isfinite(v))
      throw IntegrationError("integrand is not finite at x = " + describe_abscissa(x));
    return NodeValue{std::abs(v), 0.0};
  };
  return adaptive(eval, std::move(breaks), config);
}

std::vector<double> sign_change_roots(const Integrand1D& f, const IntegrationConfig& config) {
  config.validate();
  return sampled_roots(f, initial_breaks(config.half_width, {}), config.base_order);
}

QuadResult integrate_2d_abs(const Integrand2D& f, const IntegrationConfig& config,
                            std::span<const double> outer_breakpoints) {
  config.validate();
  IntegrationConfig inner_config = config;
  inner_config.rel_tol = 0.1 * config.rel_tol;
  inner_config.abs_tol = 0.1 * config.abs_tol / (2.0 * config.half_width);
  const std::vector<double> base_breaks = initial_breaks(config.half_width, {});

  auto outer = [&](double x) {
    const double diagonal[] = {x};
    try {
      const QuadResult r =
          integrate_1d_abs([&](double xp) { return f(x, xp); }, inner_config, diagonal);
      return NodeValue{r.value, r.error_estimate};
    } catch (const IntegrationError& e) {
      throw IntegrationError(std::string(e.what()) + " (as x') on the line x = " +
                             describe_abscissa(x));
    }
  };
  return adaptive(outer, initial_breaks(config.half_width, outer_breakpoints), config);
}

}  // namespace qcoh
