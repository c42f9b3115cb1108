#include "geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oco {

namespace {

void require_same_dim(const Vec& a, const Vec& b, const char* what) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  }
}

}  // namespace

double norm_sq(const Vec& w) {
  double s = 0.0;
  for (double x : w) s += x * x;
  return s;
}

double norm(const Vec& w) { return std::sqrt(norm_sq(w)); }

double inner(const Vec& w, const Vec& v) {
  require_same_dim(w, v, "inner");
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * v[i];
  return s;
}

bool all_finite(const Vec& w) {
  return std::all_of(w.begin(), w.end(), [](double x) { return std::isfinite(x); });
}

Vec axpy(const Vec& w, double s, const Vec& v) {
  require_same_dim(w, v, "axpy");
  Vec out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = w[i] + s * v[i];
  return out;
}

Vec scaled(const Vec& w, double s) {
  Vec out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = s * w[i];
  return out;
}

FeasibleSet FeasibleSet::ball(Vec center, double radius) {
  if (!all_finite(center)) throw std::invalid_argument("ball: non-finite center");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw std::invalid_argument("ball: radius must be positive");
  if (center.empty()) throw std::invalid_argument("ball: empty center");
  return FeasibleSet(Ball{std::move(center), radius});
}

FeasibleSet FeasibleSet::box(Vec lower, Vec upper) {
  require_same_dim(lower, upper, "box");
  if (lower.empty()) throw std::invalid_argument("box: empty bounds");
  if (!all_finite(lower) || !all_finite(upper)) throw std::invalid_argument("box: non-finite bounds");
  bool degenerate = true;
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (lower[i] > upper[i]) throw std::invalid_argument("box: lower > upper at coordinate " + std::to_string(i));
    if (lower[i] < upper[i]) degenerate = false;
  }
  if (degenerate) throw std::invalid_argument("box: zero diameter");
  return FeasibleSet(Box{std::move(lower), std::move(upper)});
}

std::size_t FeasibleSet::dim() const {
  if (const Ball* b = as_ball()) return b->center.size();
  return as_box()->lower.size();
}

double FeasibleSet::diameter() const {
  if (const Ball* b = as_ball()) return 2.0 * b->radius;
  const Box& bx = *as_box();
  double s = 0.0;
  for (std::size_t i = 0; i < bx.lower.size(); ++i) {
    double d = bx.upper[i] - bx.lower[i];
    s += d * d;
  }
  return std::sqrt(s);
}

Vec FeasibleSet::project(const Vec& w) const {
  if (w.size() != dim()) throw std::invalid_argument("project: dimension mismatch");
  if (const Ball* b = as_ball()) {
    Vec d = axpy(w, -1.0, b->center);
    double n = norm(d);
    // the margin absorbs the rounding of a just-projected boundary point,
    // keeping projection exactly idempotent
    if (n <= b->radius * (1.0 + 1e-12)) return w;
    return axpy(b->center, b->radius / n, d);
  }
  const Box& bx = *as_box();
  Vec out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = std::clamp(w[i], bx.lower[i], bx.upper[i]);
  return out;
}

bool FeasibleSet::contains(const Vec& w, double tol) const {
  if (w.size() != dim()) return false;
  if (const Ball* b = as_ball()) {
    return norm(axpy(w, -1.0, b->center)) <= b->radius * (1.0 + 1e-12) + tol;
  }
  const Box& bx = *as_box();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] < bx.lower[i] - tol || w[i] > bx.upper[i] + tol) return false;
  }
  return true;
}

Vec FeasibleSet::center() const {
  if (const Ball* b = as_ball()) return b->center;
  const Box& bx = *as_box();
  Vec out(bx.lower.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = 0.5 * (bx.lower[i] + bx.upper[i]);
  return out;
}

}  // namespace oco
