#ifndef ORBITOOL_NUMERIC_HPP
#define ORBITOOL_NUMERIC_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbitool {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Exponent vector of a (Laurent) monomial; entries may be negative.
using ExpVec = std::vector<int>;
/// Integer lattice vector (exact, arbitrary precision).
using IVec = std::vector<Int>;
/// Exact rational point or direction in R^n.
using QVec = std::vector<Rat>;

/// Input that violates a contract (bad group spec, broken fan, ...).
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A configured resource bound was exceeded (enumeration cap, degree bound).
class ResourceError : public std::runtime_error {
public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

inline Int num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rat& q) { return boost::multiprecision::denominator(q); }

inline Int int_gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int int_lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

/// Least common multiple of the coordinate denominators.
inline Int lcm_denominators(const QVec& v) {
  Int l = 1;
  for (const Rat& q : v) l = int_lcm(l, den(q));
  return l;
}

inline QVec operator*(const Rat& s, const QVec& v) {
  QVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
  return r;
}

inline QVec operator+(const QVec& a, const QVec& b) {
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline QVec operator-(const QVec& a, const QVec& b) {
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Rat dot(const QVec& a, const QVec& b) {
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rat dot(const QVec& a, const ExpVec& b) {
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline bool is_zero(const QVec& v) {
  for (const Rat& q : v) if (q != 0) return false;
  return true;
}

inline QVec to_qvec(const ExpVec& e) {
  QVec r(e.size());
  for (size_t i = 0; i < e.size(); ++i) r[i] = e[i];
  return r;
}

inline QVec to_qvec(const IVec& e) {
  QVec r(e.size());
  for (size_t i = 0; i < e.size(); ++i) r[i] = Rat(e[i]);
  return r;
}

/// Scale a nonzero rational direction to the primitive integer vector
/// pointing the same way.
inline IVec primitive_direction(const QVec& v) {
  Int l = lcm_denominators(v);
  IVec w(v.size());
  Int g = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    Rat q = v[i] * l;
    w[i] = num(q);
    g = int_gcd(g, w[i]);
  }
  if (g == 0) throw ValidationError("primitive_direction: zero vector");
  for (Int& x : w) x /= g;
  return w;
}

inline std::string rat_str(const Rat& q) {
  std::string s = num(q).str();
  if (den(q) != 1) s += "/" + den(q).str();
  return s;
}

inline std::string vec_str(const QVec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += rat_str(v[i]);
  }
  return s + ")";
}

inline std::string vec_str(const ExpVec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

}  // namespace orbitool

#endif
