#ifndef PBRACK_RATIONAL_HPP
#define PBRACK_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

#include "pbrack/errors.hpp"

namespace pbrack {

using Rational = mpq_class;

// Exact complex rational re + im*I. The whole symbolic path computes in this
// field; nothing is ever rounded.
struct GaussianRational {
  Rational re, im;

  GaussianRational() : re(0), im(0) {}
  GaussianRational(long n) : re(n), im(0) {}  // NOLINT: implicit by design
  GaussianRational(Rational r) : re(std::move(r)), im(0) {}
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  bool is_one() const { return re == 1 && sgn(im) == 0; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = r;
    return *this;
  }
};

inline GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
inline GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
inline GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
inline GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }

inline GaussianRational inverse(const GaussianRational& a) {
  if (a.is_zero()) throw DivisionByZero();
  Rational n = a.re * a.re + a.im * a.im;
  return {a.re / n, -a.im / n};
}

inline GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
  return a * inverse(b);
}

inline bool operator==(const GaussianRational& a, const GaussianRational& b) {
  return a.re == b.re && a.im == b.im;
}
inline bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

// Total order used only to make container iteration deterministic.
inline int compare(const GaussianRational& a, const GaussianRational& b) {
  int c = cmp(a.re, b.re);
  if (c != 0) return c;
  return cmp(a.im, b.im);
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational rational_from_string(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0) throw Error("bad rational literal '" + s + "'");
  r.canonicalize();
  return r;
}

}  // namespace pbrack

#endif
