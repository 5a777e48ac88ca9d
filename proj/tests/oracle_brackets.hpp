#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

// Brackets written directly from the matrix and vector models of each algebra,
// without structure constants. Used to check the library's tables.
namespace oracle {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline Eigen::Vector3d cross(const Vector& a, int ia, const Vector& b, int ib) {
  return Eigen::Vector3d(a.segment<3>(ia)).cross(Eigen::Vector3d(b.segment<3>(ib)));
}

// sl(2,R) in the basis H, E, F as 2x2 matrices.
inline Eigen::Matrix2d sl2_matrix(const Vector& a) {
  Eigen::Matrix2d m;
  m << a(0), a(1), a(2), -a(0);
  return m;
}

inline Vector bracket(const std::string& name, const Vector& a, const Vector& b) {
  if (name == "so3") {
    return cross(a, 0, b, 0);
  }
  if (name == "sl2r") {
    const Eigen::Matrix2d x = sl2_matrix(a);
    const Eigen::Matrix2d y = sl2_matrix(b);
    const Eigen::Matrix2d c = x * y - y * x;
    Vector out(3);
    out << c(0, 0), c(0, 1), c(1, 0);
    return out;
  }
  if (name == "so3xso3") {
    Vector out(6);
    out << cross(a, 0, b, 0), cross(a, 3, b, 3);
    return out;
  }
  if (name == "se3") {
    // (w, v): [(w,v), (w',v')] = (w x w', w x v' - w' x v)
    Vector out(6);
    out << cross(a, 0, b, 0), cross(a, 0, b, 3) - cross(b, 0, a, 3);
    return out;
  }
  throw std::invalid_argument("no oracle for " + name);
}

inline int dimension(const std::string& name) { return name == "so3" || name == "sl2r" ? 3 : 6; }

// K(a, b) = Tr(ad a ad b) by summing over the standard basis.
inline Matrix killing(const std::string& name) {
  const int n = dimension(name);
  auto ad = [&](int i) {
    Matrix m(n, n);
    for (int j = 0; j < n; ++j) m.col(j) = bracket(name, Vector::Unit(n, i), Vector::Unit(n, j));
    return m;
  };
  Matrix k(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Matrix ai = ad(i);
      const Matrix aj = ad(j);
      double trace = 0.0;
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) trace += ai(r, s) * aj(s, r);
      k(i, j) = trace;
    }
  return k;
}

}  // namespace oracle
