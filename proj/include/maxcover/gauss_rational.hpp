#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <string_view>

namespace maxcover {

/// Exact element of Q(i): re + im·i with rational parts.
class GaussRational {
public:
  GaussRational() = default;
  GaussRational(long re) : re_(re) {}  // NOLINT: implicit from integers is intended
  GaussRational(mpq_class re) : re_(std::move(re)) { re_.canonicalize(); }
  GaussRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static GaussRational i() { return {mpq_class(0), mpq_class(1)}; }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussRational conj() const { return {re_, -im_}; }
  GaussRational operator-() const { return {-re_, -im_}; }

  GaussRational& operator+=(const GaussRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussRational& operator-=(const GaussRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussRational& operator*=(const GaussRational& o);
  GaussRational& operator/=(const GaussRational& o);

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }

  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// |z|^2, exact.
  mpq_class norm2() const { return re_ * re_ + im_ * im_; }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  /// Canonical text: `3/2`, `-i`, `1/2i`, `(3/2+1/2i)`.
  std::string to_string() const;

  /// Parses the output of to_string() (and plain `a/b`, `ai`, `a/bi`).
  static GaussRational parse(std::string_view text);

private:
  mpq_class re_{0};
  mpq_class im_{0};
};

}  // namespace maxcover
