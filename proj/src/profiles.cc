#include "bnls/profiles.hpp"

#include <cmath>
#include <stdexcept>

#include "bnls/quadrature.hpp"

namespace bnls {
namespace {

constexpr double kQuadTol = 1e-9;

// integral of f over (0, inf) with interior splits at 1 and at the crossover
// 1 + t^{-1/(2s)}; the tail beyond the larger split is mapped by r = 1/v.
double radial_integral(const std::function<double(double)>& f, double t,
                       double s) {
  double c1 = 1.0;
  double c2 = 1.0 + std::pow(t, -1.0 / (2.0 * s));
  if (!std::isfinite(c2) || c2 > 1e12) c2 = 1e12;
  double total = 0.0;
  total += integrate(f, 0.0, c1, kQuadTol, kQuadTol).value;
  total += integrate(f, c1, c2, kQuadTol, kQuadTol).value;
  const auto tail = [&](double v) { return f(1.0 / v) / (v * v); };
  total += integrate(tail, 0.0, 1.0 / c2, kQuadTol, kQuadTol).value;
  return total;
}

double fit_slope(const std::vector<double>& lt, const std::vector<double>& lv) {
  const std::size_t n = lt.size();
  double st = 0, sv = 0, stt = 0, stv = 0;
  for (std::size_t i = 0; i < n; ++i) {
    st += lt[i];
    sv += lv[i];
    stt += lt[i] * lt[i];
    stv += lt[i] * lv[i];
  }
  const double det = n * stt - st * st;
  return (n * stv - st * sv) / det;
}

void fit_end_slopes(ProfileCurve& c) {
  c.slope0 = end_slope(c.t, c.value, -1);
  c.slope_inf = end_slope(c.t, c.value, +1);
}

std::string make_verdict(bool b0, bool binf, bool applicable) {
  if (!applicable) return "inapplicable-range";
  if (b0 && binf) return "bounded";
  if (!b0 && !binf) return "unbounded-at-both-ends";
  return b0 ? "unbounded-at-infinity" : "unbounded-at-0";
}

}  // namespace

std::vector<double> log_grid(double lo, double hi, int count) {
  std::vector<double> g(count);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < count; ++i)
    g[i] = std::exp(llo + (lhi - llo) * i / (count - 1));
  return g;
}

double end_slope(const std::vector<double>& t, const std::vector<double>& v,
                 int end) {
  std::vector<double> lt, lv;
  const double bound =
      end < 0 ? t.front() * 10.0 * (1 + 1e-12) : t.back() / 10.0 * (1 - 1e-12);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if ((end < 0 && t[i] <= bound) || (end > 0 && t[i] >= bound)) {
      lt.push_back(std::log(t[i]));
      lv.push_back(std::log(v[i]));
    }
  }
  if (lt.size() < 2) throw std::invalid_argument("t-grid too coarse for slopes");
  return fit_slope(lt, lv);
}

ProfileCurve profile_F(double s, double p, double kappa, int N,
                       const std::vector<double>& t_grid) {
  if (!(2.0 * s * p / (p - 2.0) > N))
    throw std::invalid_argument("profile_F integrability requires 2sp/(p-2) > N");
  if (!(p > 2.0 && s > 0.0 && kappa > 0.0 && kappa < 1.0))
    throw std::invalid_argument("profile_F requires p > 2, s > 0, kappa in (0,1)");
  const double beta = p / (p - 2.0);
  ProfileCurve c;
  c.t = t_grid;
  c.value.resize(t_grid.size());
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const double t = t_grid[i];
    const double w1 = std::pow(t, kappa - 1.0), w2 = std::pow(t, kappa);
    const auto f = [&](double r) {
      const double d = r >= 0 ? std::pow(r, s) - 1.0 : 0.0;
      return std::pow(w1 + w2 * d * d, -beta);
    };
    c.value[i] = 2.0 * radial_integral(f, t, s);
  }
  fit_end_slopes(c);
  const double r = (1.0 - kappa) * beta;
  c.exponent0 = r - 1.0 / (2.0 * s);
  c.exponent_inf = r - 0.5;
  c.bounded0 = c.exponent0 >= 0.0;
  c.bounded_inf = c.exponent_inf <= 0.0;
  c.applicable = true;
  c.verdict = make_verdict(c.bounded0, c.bounded_inf, true);
  return c;
}

ProfileCurve profile_G(double s, double p, double kappa, int N,
                       const std::vector<double>& t_grid) {
  if (!(N - 2.0 * s - 2.0 * N / p < 0.0))
    throw std::invalid_argument("profile_G tail requires N - 2s - 2N/p < 0");
  if (N < 2 || !(p >= (2.0 * N + 2.0) / (N - 1.0)))
    throw std::invalid_argument("profile_G requires N >= 2 and p >= (2N+2)/(N-1)");
  if (!(kappa > 0.0 && kappa < 1.0))
    throw std::invalid_argument("profile_G requires kappa in (0,1)");
  const double w = N - 1.0 - 2.0 * N / p;
  ProfileCurve c;
  c.t = t_grid;
  c.value.resize(t_grid.size());
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const double t = t_grid[i];
    const double w1 = std::pow(t, kappa - 1.0), w2 = std::pow(t, kappa);
    const auto f = [&](double r) {
      if (r <= 0.0) return 0.0;
      const double d = std::pow(r, s) - 1.0;
      return std::pow(r, w) / (w1 + w2 * d * d);
    };
    c.value[i] = radial_integral(f, t, s);
  }
  fit_end_slopes(c);
  c.exponent0 = 1.0 - kappa - (N / s) * (0.5 - 1.0 / p);
  c.exponent_inf = 0.5 - kappa;
  c.bounded0 = c.exponent0 >= 0.0;
  c.bounded_inf = c.exponent_inf <= 0.0;
  // The restriction-interpolation route reaching exponent kappa needs
  // 1 - kappa <= ((N+1)/2)(1/2 - 1/p).
  c.applicable =
      1.0 - kappa <= 0.5 * (N + 1.0) * (0.5 - 1.0 / p) + 1e-12;
  c.verdict = make_verdict(c.bounded0, c.bounded_inf, c.applicable);
  return c;
}

double profile_H_value(double t, double p, double kappa, int N,
                       const std::function<double(double)>& p1,
                       const std::function<double(double)>& p2, double split) {
  const double beta = p / (p - 2.0);
  const double w1 = std::pow(t, kappa - 1.0), w2 = std::pow(t, kappa);
  const auto f = [&](double r) {
    if (r <= 0.0) return 0.0;
    const double a = p1(r), b = p2(r);
    return std::pow(r, N - 1.0) * std::pow(w1 * a * a + w2 * b * b, -beta);
  };
  double total = 0.0;
  total += integrate(f, 0.0, split, kQuadTol, kQuadTol).value;
  const auto tail = [&](double v) { return f(1.0 / v) / (v * v); };
  total += integrate(tail, 0.0, 1.0 / split, kQuadTol, kQuadTol).value;
  return total;
}

}  // namespace bnls
