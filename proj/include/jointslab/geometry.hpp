#pragma once

#include <compare>
#include <optional>
#include <vector>

#include "jointslab/matrix.hpp"

namespace jointslab {

struct Point {
  Vec coords;

  std::size_t dim() const { return coords.size(); }
  friend bool operator==(const Point& a, const Point& b) { return a.coords == b.coords; }
  friend bool operator<(const Point& a, const Point& b) { return a.coords < b.coords; }
};

// A line in F^d stored in canonical form: the direction is scaled so its
// first nonzero coordinate is 1, and the base point is translated along the
// direction so its coordinate at that pivot is 0. Two Line values describe
// the same point set iff they compare equal.
class Line {
 public:
  Line(Point base, Vec direction);

  const Point& base() const { return base_; }
  const Vec& direction() const { return dir_; }
  std::size_t dim() const { return dir_.size(); }
  std::size_t pivot() const { return pivot_; }

  Point at(const Scalar& t) const;  // base + t * direction

  friend bool operator==(const Line& a, const Line& b) {
    return a.dir_ == b.dir_ && a.base_ == b.base_;
  }
  friend bool operator<(const Line& a, const Line& b) {
    if (a.dir_ != b.dir_) return a.dir_ < b.dir_;
    return a.base_ < b.base_;
  }

 private:
  Point base_;
  Vec dir_;
  std::size_t pivot_ = 0;
};

// A k-dimensional affine subspace in canonical form: the direction basis is
// the RREF of the spanning vectors and the base point is reduced against the
// basis (zero at every pivot column). dim 0 is a single point.
class Flat {
 public:
  Flat(Point base, std::vector<Vec> basis);

  static Flat single_point(Point p) { return Flat(std::move(p), {}); }

  const Point& base() const { return base_; }
  const std::vector<Vec>& basis() const { return basis_; }
  std::size_t flat_dim() const { return basis_.size(); }
  std::size_t ambient_dim() const { return base_.dim(); }
  bool is_point() const { return basis_.empty(); }

  Line as_line() const;  // requires flat_dim() == 1

  friend bool operator==(const Flat& a, const Flat& b) {
    return a.basis_ == b.basis_ && a.base_ == b.base_;
  }
  friend bool operator<(const Flat& a, const Flat& b) {
    if (a.basis_ != b.basis_) return a.basis_ < b.basis_;
    return a.base_ < b.base_;
  }

 private:
  Point base_;
  std::vector<Vec> basis_;
};

// x -> A x + t with A invertible.
class AffineMap {
 public:
  AffineMap(Matrix a, Vec t);

  const Matrix& matrix() const { return a_; }
  const Vec& translation() const { return t_; }

  Point apply(const Point& p) const;
  Vec apply_direction(const Vec& v) const;  // A v, no translation
  AffineMap inverted() const;

 private:
  Matrix a_;
  Vec t_;
};

struct Hyperplane {
  Vec normal;     // nonzero
  Scalar offset;  // points x with normal . x = offset
};

// Exact solution set of the system; nullopt when empty. A 0-dimensional
// result is the single intersection point.
std::optional<Flat> intersect_hyperplanes(const Field& field, std::size_t dim,
                                          const std::vector<Hyperplane>& hyperplanes);

bool directions_independent(const Field& field, const std::vector<Vec>& vectors);

bool point_on(const Point& p, const Line& line);
bool point_on(const Point& p, const Flat& flat);

// Intersection of two distinct lines: a point, or nullopt when disjoint or
// identical lines are passed.
std::optional<Point> intersect_lines(const Line& a, const Line& b);

// Full basis of F^d adapted to the flat: the first m vectors are standard
// basis vectors greedily appended to complement the flat, the last
// flat_dim() vectors are the flat's own direction basis.
std::vector<Vec> flat_frame(const Field& field, const Flat& f);

// Invertible affine map T with T(f) = {x_1 = ... = x_m = 0} where
// m = ambient_dim - flat_dim: the inverse of x -> base + sum x_i frame_i.
AffineMap flat_to_coordinates(const Field& field, const Flat& f);

}  // namespace jointslab
