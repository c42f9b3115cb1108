#ifndef OCO_GEOMETRY_HPP
#define OCO_GEOMETRY_HPP

#include <cstddef>
#include <variant>
#include <vector>

namespace oco {

// Dense column vector. Dimension is fixed per run; entries must stay finite.
using Vec = std::vector<double>;

double norm_sq(const Vec& w);
double norm(const Vec& w);
double inner(const Vec& w, const Vec& v);
bool all_finite(const Vec& w);

// w + s*v
Vec axpy(const Vec& w, double s, const Vec& v);
Vec scaled(const Vec& w, double s);

struct Ball {
  Vec center;
  double radius;
};

struct Box {
  Vec lower;
  Vec upper;
};

// Convex decision set with a cheap Euclidean projection. Ball and Box are the
// two shapes the experiments need; both have closed-form projections.
class FeasibleSet {
 public:
  static FeasibleSet ball(Vec center, double radius);
  static FeasibleSet box(Vec lower, Vec upper);

  std::size_t dim() const;
  double diameter() const;

  // Nearest point of the set in Euclidean distance. Identity on members.
  Vec project(const Vec& w) const;
  bool contains(const Vec& w, double tol = 1e-12) const;

  // Ball center / box midpoint; the default initial decision.
  Vec center() const;

  const Ball* as_ball() const { return std::get_if<Ball>(&shape_); }
  const Box* as_box() const { return std::get_if<Box>(&shape_); }

 private:
  explicit FeasibleSet(std::variant<Ball, Box> shape) : shape_(std::move(shape)) {}
  std::variant<Ball, Box> shape_;
};

}  // namespace oco

#endif
