#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "errp/types.hpp"

namespace errp {

struct Confusion {
  // Error is treated as the positive class.
  std::size_t true_error = 0;    // Error predicted Error
  std::size_t false_correct = 0; // Error predicted Correct
  std::size_t false_error = 0;   // Correct predicted Error
  std::size_t true_correct = 0;  // Correct predicted Correct

  std::size_t total() const {
    return true_error + false_correct + false_error + true_correct;
  }
};

inline Confusion confusion_counts(std::span<const Label> truth,
                                  std::span<const Label> predicted) {
  if (truth.size() != predicted.size())
    throw std::invalid_argument("confusion_counts: length mismatch");
  Confusion c;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] == Label::Error) {
      if (predicted[i] == Label::Error)
        ++c.true_error;
      else
        ++c.false_correct;
    } else {
      if (predicted[i] == Label::Error)
        ++c.false_error;
      else
        ++c.true_correct;
    }
  }
  return c;
}

// Arithmetic mean of the per-class recalls; chance level is 0.5 regardless of
// the class balance. Both classes must appear in the true labels.
inline double normalized_accuracy(const Confusion& c) {
  const std::size_t n_err = c.true_error + c.false_correct;
  const std::size_t n_cor = c.true_correct + c.false_error;
  if (n_err == 0 || n_cor == 0)
    throw std::invalid_argument(
        "normalized_accuracy: a class is absent from the true labels");
  const double recall_error = static_cast<double>(c.true_error) / static_cast<double>(n_err);
  const double recall_correct = static_cast<double>(c.true_correct) / static_cast<double>(n_cor);
  return 0.5 * (recall_error + recall_correct);
}

inline double normalized_accuracy(std::span<const Label> truth,
                                  std::span<const Label> predicted) {
  return normalized_accuracy(confusion_counts(truth, predicted));
}

inline double mean(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("mean: empty input");
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Sample standard deviation (n-1 denominator) divided by sqrt(n).
inline double sem(std::span<const double> v) {
  const std::size_t n = v.size();
  if (n < 2) throw std::invalid_argument("sem: need at least 2 values");
  const double m = mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  return sd / std::sqrt(static_cast<double>(n));
}

namespace stat_detail {

// log Gamma via the Lanczos approximation
inline double lgamma_approx(double x) { return std::lgamma(x); }

// Regularized incomplete beta I_x(a, b), continued fraction (Lentz).
inline double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-16;
  constexpr double kFpMin = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

inline double incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = lgamma_approx(a + b) - lgamma_approx(a) -
                          lgamma_approx(b) + a * std::log(x) +
                          b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

}  // namespace stat_detail

// Two-sided p-value of Student's t with nu degrees of freedom.
inline double t_sf_two_sided(double t, double nu) {
  const double x = nu / (nu + t * t);
  return stat_detail::incomplete_beta(nu / 2.0, 0.5, x);
}

struct TTestResult {
  double t = 0.0;
  double p = 1.0;
};

// Paired two-sided t-test on the differences a - b.
inline TTestResult paired_t_test(std::span<const double> a,
                                 std::span<const double> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("paired_t_test: length mismatch");
  const std::size_t n = a.size();
  if (n < 2) throw std::invalid_argument("paired_t_test: need at least 2 pairs");
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = a[i] - b[i];
  const double md = mean(d);
  double ss = 0.0;
  for (double x : d) ss += (x - md) * (x - md);
  if (ss <= 0.0)
    throw std::invalid_argument("paired_t_test: zero-variance differences");
  const double var = ss / static_cast<double>(n - 1);
  const double t = md / (std::sqrt(var) / std::sqrt(static_cast<double>(n)));
  return TTestResult{t, t_sf_two_sided(t, static_cast<double>(n - 1))};
}

// Squared Pearson correlation.
inline double pearson_r2(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw std::invalid_argument("pearson_r2: length mismatch");
  const std::size_t n = x.size();
  if (n < 2) throw std::invalid_argument("pearson_r2: need at least 2 points");
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0)
    throw std::invalid_argument("pearson_r2: zero variance input");
  const double r = sxy / std::sqrt(sxx * syy);
  return r * r;
}

// Pearson correlation that tolerates degenerate inputs (returns 0); used by
// the perturbation maps where a constant response is a meaningful outcome.
inline double pearson_r_or_zero(std::span<const double> x,
                                std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 2) return 0.0;
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace errp
