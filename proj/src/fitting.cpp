#include "tempnet/fitting.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "tempnet/error.hpp"
#include "tempnet/rng.hpp"
#include "tempnet/util.hpp"

namespace tempnet {

namespace {

double r_squared_from(std::span<const double> y, std::span<const double> fitted) {
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(y.size());
  double ss_tot = 0.0, ss_res = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    ss_tot += (y[i] - mean) * (y[i] - mean);
    ss_res += (y[i] - fitted[i]) * (y[i] - fitted[i]);
  }
  if (ss_tot == 0.0) return 1.0;  // constant data, residual is zero too
  return 1.0 - ss_res / ss_tot;
}

double binomial(unsigned n, unsigned k) {
  double r = 1.0;
  for (unsigned i = 0; i < k; ++i) r = r * static_cast<double>(n - i) / static_cast<double>(i + 1);
  return r;
}

}  // namespace

PolyFit fit_polynomial(std::span<const XY> points, unsigned degree) {
  if (degree < 1) throw InvalidParams("fit_polynomial: degree must be positive");
  const std::size_t n = points.size();
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = points[i].first;
  std::vector<double> distinct = xs;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < degree + 1)
    throw RankDeficient("fit_polynomial: needs degree+1 distinct x values");

  // Rescale the abscissa to [0, 1]; quartic Vandermonde systems on raw week
  // indices are badly conditioned.
  const double x0 = distinct.front();
  const double h = distinct.back() - distinct.front();

  Eigen::MatrixXd v(n, degree + 1);
  Eigen::VectorXd y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = (points[i].first - x0) / h;
    double p = 1.0;
    for (unsigned k = 0; k <= degree; ++k) {
      v(static_cast<Eigen::Index>(i), k) = p;
      p *= u;
    }
    y(static_cast<Eigen::Index>(i)) = points[i].second;
  }
  const Eigen::VectorXd scaled = v.householderQr().solve(y);
  const Eigen::VectorXd fitted = v * scaled;

  // Map c_k u^k with u = (x - x0)/h back onto powers of x.
  PolyFit fit;
  fit.coefficients.assign(degree + 1, 0.0);
  for (unsigned k = 0; k <= degree; ++k) {
    const double ck = scaled(k) * std::pow(h, -static_cast<double>(k));
    for (unsigned j = 0; j <= k; ++j)
      fit.coefficients[j] += ck * binomial(k, j) * std::pow(-x0, static_cast<double>(k - j));
  }

  std::vector<double> yv(n), fv(n);
  for (std::size_t i = 0; i < n; ++i) {
    yv[i] = points[i].second;
    fv[i] = fitted(static_cast<Eigen::Index>(i));
  }
  fit.r_squared = r_squared_from(yv, fv);
  return fit;
}

QuarticFit fit_quartic(std::span<const XY> points) {
  const PolyFit p = fit_polynomial(points, 4);
  QuarticFit q;
  std::copy(p.coefficients.begin(), p.coefficients.end(), q.coefficients.begin());
  q.r_squared = p.r_squared;
  return q;
}

namespace {

double mmf_eval(double a, double b, double c, double d, double x) {
  const double xd = x > 0.0 ? std::pow(x, d) : 0.0;
  return (a * b + c * xd) / (b + xd);
}

double mmf_sse(std::span<const XY> pts, const std::array<double, 4>& t) {
  double sse = 0.0;
  for (const auto& [x, y] : pts) {
    const double r = y - mmf_eval(t[0], t[1], t[2], t[3], x);
    sse += r * r;
  }
  return sse;
}

}  // namespace

MMFFit fit_mmf(std::span<const XY> points) {
  if (points.size() < 8) throw InvalidParams("fit_mmf: needs at least 8 points");
  for (const auto& [x, y] : points) {
    if (x < 0.0) throw InvalidParams("fit_mmf: x must be non-negative");
    if (y < 0.0 || y > 1.5) throw InvalidParams("fit_mmf: y must lie in [0, 1.5]");
  }
  std::vector<XY> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end());

  std::vector<double> xs(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) xs[i] = pts[i].first;
  const std::size_t mid = xs.size() / 2;
  const double median_x =
      xs.size() % 2 ? xs[mid] : 0.5 * (xs[mid - 1] + xs[mid]);

  std::array<double, 4> theta = {pts.front().second, 0.0, pts.back().second, 2.0};
  theta[1] = std::max(median_x * median_x, 1e-8);  // b = median(x)^d with d = 2

  double sse = mmf_sse(pts, theta);
  double lambda = 1e-3;
  MMFFit fit;
  const int n = static_cast<int>(pts.size());

  for (int iter = 0; iter < 200; ++iter) {
    Eigen::MatrixXd jac(n, 4);
    Eigen::VectorXd resid(n);
    const auto [a, b, c, d] = theta;
    for (int i = 0; i < n; ++i) {
      const double x = pts[i].first;
      const double xd = x > 0.0 ? std::pow(x, d) : 0.0;
      const double denom = b + xd;
      const double val = (a * b + c * xd) / denom;
      resid(i) = pts[i].second - val;
      jac(i, 0) = b / denom;
      jac(i, 1) = xd * (a - c) / (denom * denom);
      jac(i, 2) = xd / denom;
      jac(i, 3) = x > 0.0 ? xd * std::log(x) * b * (c - a) / (denom * denom) : 0.0;
    }
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd jtr = jac.transpose() * resid;

    bool accepted = false;
    for (int damp = 0; damp < 30; ++damp) {
      Eigen::MatrixXd lhs = jtj;
      for (int k = 0; k < 4; ++k) lhs(k, k) += lambda * std::max(jtj(k, k), 1e-12);
      const Eigen::VectorXd delta = lhs.ldlt().solve(jtr);
      std::array<double, 4> trial = theta;
      for (int k = 0; k < 4; ++k) trial[k] += delta(k);
      if (trial[1] > 0.0 && trial[3] > 0.0) {
        const double trial_sse = mmf_sse(pts, trial);
        if (trial_sse < sse) {
          double rel = 0.0;
          for (int k = 0; k < 4; ++k)
            rel = std::max(rel, std::abs(delta(k)) / (1.0 + std::abs(theta[k])));
          theta = trial;
          sse = trial_sse;
          lambda = std::max(lambda / 3.0, 1e-12);
          accepted = true;
          if (rel < 1e-8) fit.converged = true;
          break;
        }
      }
      lambda *= 10.0;
      if (lambda > 1e12) break;
    }
    if (fit.converged || !accepted) break;
  }

  fit.a = theta[0];
  fit.b = theta[1];
  fit.c = theta[2];
  fit.d = theta[3];
  std::vector<double> yv(pts.size()), fv(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    yv[i] = pts[i].second;
    fv[i] = mmf_eval(fit.a, fit.b, fit.c, fit.d, pts[i].first);
  }
  fit.r_squared = r_squared_from(yv, fv);
  return fit;
}

ExponentialFit fit_exponential(std::span<const XY> bins) {
  if (bins.size() < 10) throw InsufficientData("fit_exponential: needs at least 10 bins");
  std::vector<XY> positive;
  for (const auto& [t, p] : bins)
    if (p > 0.0) positive.emplace_back(t, p);
  if (positive.size() < 2)
    throw InsufficientData("fit_exponential: needs at least 2 positive bins");

  // Stage one: least squares on (t, ln p).
  double st = 0.0, sl = 0.0, stt = 0.0, stl = 0.0;
  for (const auto& [t, p] : positive) {
    const double lp = std::log(p);
    st += t;
    sl += lp;
    stt += t * t;
    stl += t * lp;
  }
  const double np = static_cast<double>(positive.size());
  const double det = np * stt - st * st;
  double slope = 0.0, inter = sl / np;
  if (det > 0.0) {
    slope = (np * stl - st * sl) / det;
    inter = (sl - slope * st) / np;
  }
  double a = std::exp(inter);
  double b = -slope;

  // Stage two: Levenberg-Marquardt on the original scale, zero bins included.
  double sse = 0.0;
  for (const auto& [t, p] : bins) {
    const double r = p - a * std::exp(-b * t);
    sse += r * r;
  }
  double lambda = 1e-3;
  for (int iter = 0; iter < 200; ++iter) {
    double j00 = 0.0, j01 = 0.0, j11 = 0.0, g0 = 0.0, g1 = 0.0;
    for (const auto& [t, p] : bins) {
      const double e = std::exp(-b * t);
      const double r = p - a * e;
      const double da = e;
      const double db = -a * t * e;
      j00 += da * da;
      j01 += da * db;
      j11 += db * db;
      g0 += da * r;
      g1 += db * r;
    }
    bool accepted = false;
    bool tiny_step = false;
    for (int damp = 0; damp < 30; ++damp) {
      const double l00 = j00 + lambda * std::max(j00, 1e-12);
      const double l11 = j11 + lambda * std::max(j11, 1e-12);
      const double det2 = l00 * l11 - j01 * j01;
      if (det2 == 0.0) break;
      const double d0 = (g0 * l11 - g1 * j01) / det2;
      const double d1 = (g1 * l00 - g0 * j01) / det2;
      const double ta = a + d0, tb = b + d1;
      if (ta > 0.0) {
        double trial_sse = 0.0;
        for (const auto& [t, p] : bins) {
          const double r = p - ta * std::exp(-tb * t);
          trial_sse += r * r;
        }
        if (trial_sse < sse) {
          tiny_step = std::abs(d0) / (1.0 + std::abs(a)) < 1e-12 &&
                      std::abs(d1) / (1.0 + std::abs(b)) < 1e-12;
          a = ta;
          b = tb;
          sse = trial_sse;
          lambda = std::max(lambda / 3.0, 1e-12);
          accepted = true;
          break;
        }
      }
      lambda *= 10.0;
      if (lambda > 1e12) break;
    }
    if (!accepted || tiny_step) break;
  }

  ExponentialFit fit;
  fit.amplitude = a;
  fit.rate = std::max(b, 0.0);
  fit.non_decaying = b < 1e-6;
  std::vector<double> yv(bins.size()), fv(bins.size());
  for (std::size_t i = 0; i < bins.size(); ++i) {
    yv[i] = bins[i].second;
    fv[i] = fit.amplitude * std::exp(-fit.rate * bins[i].first);
  }
  fit.r_squared = r_squared_from(yv, fv);
  return fit;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 3)
    throw InvalidParams("pearson: needs equal lengths >= 3");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw ZeroVariance("pearson: zero variance input");
  return sxy / std::sqrt(sxx * syy);
}

OlsFit ols_regression(const std::vector<std::vector<double>>& rows,
                      std::span<const double> target) {
  const std::size_t n = rows.size();
  const std::size_t p = n ? rows.front().size() : 0;
  if (n != target.size() || n < p + 1)
    throw InvalidParams("ols_regression: needs rows >= columns + 1");
  for (const auto& r : rows)
    if (r.size() != p) throw InvalidParams("ols_regression: ragged feature matrix");

  std::vector<double> mean(p, 0.0), sd(p, 0.0);
  for (const auto& r : rows)
    for (std::size_t j = 0; j < p; ++j) mean[j] += r[j];
  for (std::size_t j = 0; j < p; ++j) mean[j] /= static_cast<double>(n);
  for (const auto& r : rows)
    for (std::size_t j = 0; j < p; ++j) sd[j] += (r[j] - mean[j]) * (r[j] - mean[j]);
  for (std::size_t j = 0; j < p; ++j) {
    sd[j] = std::sqrt(sd[j] / static_cast<double>(n));
    if (sd[j] == 0.0)
      throw RankDeficient("ols_regression: constant feature column " + std::to_string(j));
  }

  Eigen::MatrixXd design(n, p + 1);
  Eigen::VectorXd y(n);
  for (std::size_t i = 0; i < n; ++i) {
    design(static_cast<Eigen::Index>(i), 0) = 1.0;
    for (std::size_t j = 0; j < p; ++j)
      design(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j + 1)) =
          (rows[i][j] - mean[j]) / sd[j];
    y(static_cast<Eigen::Index>(i)) = target[i];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < static_cast<Eigen::Index>(p + 1))
    throw RankDeficient("ols_regression: collinear features");
  const Eigen::VectorXd beta = qr.solve(y);
  const Eigen::VectorXd fitted = design * beta;

  OlsFit fit;
  fit.coefficients.resize(p);
  fit.intercept = beta(0);
  for (std::size_t j = 0; j < p; ++j) {
    fit.coefficients[j] = beta(static_cast<Eigen::Index>(j + 1)) / sd[j];
    fit.intercept -= fit.coefficients[j] * mean[j];
  }
  std::vector<double> yv(n), fv(n);
  for (std::size_t i = 0; i < n; ++i) {
    yv[i] = target[i];
    fv[i] = fitted(static_cast<Eigen::Index>(i));
  }
  fit.r_squared = r_squared_from(yv, fv);
  return fit;
}

double ols_predict(const OlsFit& fit, std::span<const double> row) {
  double v = fit.intercept;
  for (std::size_t j = 0; j < fit.coefficients.size(); ++j) v += fit.coefficients[j] * row[j];
  return v;
}

CvMetrics cross_validate(const std::vector<std::vector<double>>& rows,
                         std::span<const double> target, unsigned k, std::uint64_t seed) {
  const std::size_t n = rows.size();
  if (n != target.size()) throw InvalidParams("cross_validate: size mismatch");
  if (k < 2 || k > n) throw InvalidParams("cross_validate: invalid fold count");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = uniform_index(rng, i);
    std::swap(order[i - 1], order[j]);
  }

  CvMetrics acc;
  for (unsigned fold = 0; fold < k; ++fold) {
    std::vector<std::vector<double>> train_x;
    std::vector<double> train_y;
    std::vector<std::size_t> held;
    for (std::size_t pos = 0; pos < n; ++pos) {
      if (pos % k == fold)
        held.push_back(order[pos]);
      else {
        train_x.push_back(rows[order[pos]]);
        train_y.push_back(target[order[pos]]);
      }
    }
    const OlsFit fit = ols_regression(train_x, train_y);
    double mae = 0.0, mse = 0.0;
    for (std::size_t idx : held) {
      const double err = target[idx] - ols_predict(fit, rows[idx]);
      mae += std::abs(err);
      mse += err * err;
    }
    mae /= static_cast<double>(held.size());
    mse /= static_cast<double>(held.size());
    acc.mae += mae;
    acc.mse += mse;
    acc.rmse += std::sqrt(mse);
  }
  acc.mae /= k;
  acc.mse /= k;
  acc.rmse /= k;
  return acc;
}

std::string fit_report_line(std::string_view model, std::span<const double> params,
                            double r_squared, bool converged) {
  std::string out = "model=";
  out += model;
  out += " params=";
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) out += ',';
    out += fmt_g6(params[i]);
  }
  out += " r2=" + fmt_g6(r_squared);
  out += " converged=";
  out += converged ? '1' : '0';
  return out;
}

}  // namespace tempnet
