#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <string_view>

namespace tetroc {

/// Exact rational scalar. Expression templates are off so the type composes
/// with Eigen's dense kernels.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Vector3i = Vector3<std::int64_t>;
using Matrix3i = Matrix3<std::int64_t>;
using Vector3q = Vector3<Rational>;
using Vector3d = Vector3<double>;

/// Lexicographic order on 3-vectors; gives containers a deterministic order.
template <typename Scalar>
bool lex_less(const Vector3<Scalar>& a, const Vector3<Scalar>& b) {
  for (int k = 0; k < 3; ++k) {
    if (a[k] < b[k]) return true;
    if (b[k] < a[k]) return false;
  }
  return false;
}

struct LexLess {
  template <typename Scalar>
  bool operator()(const Vector3<Scalar>& a, const Vector3<Scalar>& b) const {
    return lex_less(a, b);
  }
};

template <typename Scalar>
Vector3q to_rational(const Vector3<Scalar>& v) {
  return Vector3q(Rational(v[0]), Rational(v[1]), Rational(v[2]));
}

/// "p/q" with q > 0; integers are written "p/1".
std::string to_string(const Rational& r);

/// Accepts "p/q", "p" and plain decimal literals such as "0.25".
Rational parse_rational(std::string_view text);

/// Nearest rational with denominator `denominator` (round half away from zero).
Rational snap(double value, std::int64_t denominator);
Rational snap(const Rational& value, std::int64_t denominator);

double to_double(const Rational& r);

}  // namespace tetroc
