#include "jointslab/geometry.hpp"

#include <algorithm>

namespace jointslab {

Line::Line(Point base, Vec direction) : base_(std::move(base)), dir_(std::move(direction)) {
  if (base_.dim() != dir_.size()) throw Error("line base/direction dimension mismatch");
  pivot_ = dir_.size();
  for (std::size_t i = 0; i < dir_.size(); ++i) {
    if (!dir_[i].is_zero()) {
      pivot_ = i;
      break;
    }
  }
  if (pivot_ == dir_.size()) throw Error("line direction must be nonzero");
  Scalar inv = dir_[pivot_].inverse();
  for (auto& x : dir_) x *= inv;
  // Zero the base coordinate at the direction pivot.
  Scalar shift = base_.coords[pivot_];
  if (!shift.is_zero()) base_.coords = vec_sub(base_.coords, vec_scale(shift, dir_));
}

Point Line::at(const Scalar& t) const { return Point{vec_add(base_.coords, vec_scale(t, dir_))}; }

Flat::Flat(Point base, std::vector<Vec> basis) : base_(std::move(base)) {
  if (!basis.empty()) {
    const Field& field = base_.coords.front().field();
    RrefResult r = rref(Matrix::from_rows(field, basis));
    if (r.rank != basis.size()) {
      throw DependentDirections("flat basis vectors are linearly dependent");
    }
    basis_.reserve(r.rank);
    for (std::size_t i = 0; i < r.rank; ++i) basis_.push_back(r.reduced.row(i));
    // Reduce the base point: zero at every pivot column. RREF rows are zero
    // at the other rows' pivots, so each subtraction is independent.
    for (std::size_t i = 0; i < r.rank; ++i) {
      Scalar shift = base_.coords[r.pivot_columns[i]];
      if (!shift.is_zero()) base_.coords = vec_sub(base_.coords, vec_scale(shift, basis_[i]));
    }
  }
}

Line Flat::as_line() const {
  if (flat_dim() != 1) throw Error("flat is not one-dimensional");
  return Line(base_, basis_.front());
}

AffineMap::AffineMap(Matrix a, Vec t) : a_(std::move(a)), t_(std::move(t)) {
  if (a_.rows() != a_.cols() || a_.rows() != t_.size()) {
    throw Error("affine map shape mismatch");
  }
  if (rank(a_) != a_.rows()) throw Error("affine map matrix is singular");
}

Point AffineMap::apply(const Point& p) const { return Point{vec_add(a_.apply(p.coords), t_)}; }

Vec AffineMap::apply_direction(const Vec& v) const { return a_.apply(v); }

AffineMap AffineMap::inverted() const {
  Matrix inv = *inverse(a_);
  Vec t = vec_scale(-Scalar::one(a_.field()), inv.apply(t_));
  return AffineMap(std::move(inv), std::move(t));
}

std::optional<Flat> intersect_hyperplanes(const Field& field, std::size_t dim,
                                          const std::vector<Hyperplane>& hyperplanes) {
  Matrix n(field, hyperplanes.size(), dim);
  Vec rhs;
  rhs.reserve(hyperplanes.size());
  for (std::size_t r = 0; r < hyperplanes.size(); ++r) {
    if (hyperplanes[r].normal.size() != dim) throw Error("hyperplane dimension mismatch");
    n.set_row(r, hyperplanes[r].normal);
    rhs.push_back(hyperplanes[r].offset);
  }
  std::optional<Vec> particular = solve(n, rhs);
  if (!particular) return std::nullopt;
  return Flat(Point{*particular}, kernel_basis(n));
}

bool directions_independent(const Field& field, const std::vector<Vec>& vectors) {
  if (vectors.empty()) return true;
  return rank(Matrix::from_rows(field, vectors)) == vectors.size();
}

bool point_on(const Point& p, const Line& line) {
  Vec v = vec_sub(p.coords, line.base().coords);
  if (vec_is_zero(v)) return true;
  Scalar t = v[line.pivot()];  // direction has a 1 at the pivot
  return v == vec_scale(t, line.direction());
}

bool point_on(const Point& p, const Flat& flat) {
  Vec v = vec_sub(p.coords, flat.base().coords);
  if (vec_is_zero(v)) return true;
  if (flat.basis().empty()) return false;
  const Field& field = p.coords.front().field();
  std::vector<Vec> rows = flat.basis();
  rows.push_back(v);
  return rank(Matrix::from_rows(field, rows)) == flat.basis().size();
}

std::optional<Point> intersect_lines(const Line& a, const Line& b) {
  const Field& field = a.base().coords.front().field();
  std::size_t d = a.dim();
  Matrix m(field, d, 2);
  for (std::size_t i = 0; i < d; ++i) {
    m.at(i, 0) = a.direction()[i];
    m.at(i, 1) = -b.direction()[i];
  }
  if (rank(m) < 2) return std::nullopt;  // parallel or identical
  Vec rhs = vec_sub(b.base().coords, a.base().coords);
  std::optional<Vec> st = solve(m, rhs);
  if (!st) return std::nullopt;
  return a.at((*st)[0]);
}

std::vector<Vec> flat_frame(const Field& field, const Flat& f) {
  std::size_t d = f.ambient_dim();
  std::vector<Vec> span = f.basis();
  std::vector<Vec> appended;
  for (std::size_t j = 0; j < d && span.size() < d; ++j) {
    Vec e(d, Scalar::zero(field));
    e[j] = Scalar::one(field);
    span.push_back(e);
    if (rank(Matrix::from_rows(field, span)) == span.size()) {
      appended.push_back(e);
    } else {
      span.pop_back();
    }
  }
  // Complement first, the flat's own directions last, so the flat maps into
  // {x_1 = ... = x_m = 0} under the inverse frame map.
  std::vector<Vec> frame = std::move(appended);
  for (const auto& v : f.basis()) frame.push_back(v);
  return frame;
}

AffineMap flat_to_coordinates(const Field& field, const Flat& f) {
  std::size_t d = f.ambient_dim();
  std::vector<Vec> frame = flat_frame(field, f);
  Matrix c(field, d, d);
  for (std::size_t col = 0; col < d; ++col) {
    for (std::size_t r = 0; r < d; ++r) c.at(r, col) = frame[col][r];
  }
  Matrix a = *inverse(c);
  Vec t = vec_scale(-Scalar::one(field), a.apply(f.base().coords));
  return AffineMap(std::move(a), std::move(t));
}

}  // namespace jointslab
