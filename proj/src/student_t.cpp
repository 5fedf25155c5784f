#include "phonosurp/student_t.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "phonosurp/errors.hpp"

namespace phonosurp {

namespace {

constexpr double kEps = 1e-15;
constexpr double kTiny = 1e-300;
constexpr int kMaxIterations = 100000;

// Continued fraction for I_x(a, b) without its prefactor (Numerical Recipes betacf,
// modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw DomainError("incomplete beta continued fraction did not converge (a=" + std::to_string(a) +
                    ", b=" + std::to_string(b) + ", x=" + std::to_string(x) + ")");
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x, double one_minus_x) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
    throw DomainError("incomplete beta requires finite a, b > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("incomplete beta requires x in [0, 1]");
  const double y = one_minus_x < 0.0 ? 1.0 - x : one_minus_x;
  if (x == 0.0) return 0.0;
  if (y == 0.0) return 1.0;

  const double log_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log(y);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, y) / b;
}

double student_t_sf(double t, double df) {
  if (!std::isfinite(t) || !std::isfinite(df)) throw DomainError("student_t_sf needs finite t and df");
  if (!(df > 0.0)) throw DomainError("student_t_sf needs df > 0");
  if (t == 0.0) return 0.5;
  const double t2 = t * t;
  const double x = df / (df + t2);
  const double y = t2 / (df + t2);
  const double tail = 0.5 * regularized_incomplete_beta(0.5 * df, 0.5, x, y);
  return t > 0.0 ? tail : 1.0 - tail;
}

double student_t_two_sided_p(double t, double df) {
  if (std::isinf(t) && std::isfinite(df) && df > 0.0) return 0.0;
  const double p = 2.0 * student_t_sf(std::fabs(t), df);
  return p > 1.0 ? 1.0 : p;
}

}  // namespace phonosurp
