#include "maxcover/gauss_rational.hpp"

#include <cctype>
#include <stdexcept>

namespace maxcover {

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
  const mpq_class den = o.norm2();
  if (sgn(den) == 0) throw std::domain_error("GaussRational: division by zero");
  mpq_class re = (re_ * o.re_ + im_ * o.im_) / den;
  mpq_class im = (im_ * o.re_ - re_ * o.im_) / den;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string GaussRational::to_string() const {
  if (sgn(im_) == 0) return re_.get_str();
  auto imag = [](const mpq_class& q) -> std::string {
    if (q == 1) return "i";
    if (q == -1) return "-i";
    return q.get_str() + "i";
  };
  if (sgn(re_) == 0) return imag(im_);
  std::string out = "(" + re_.get_str();
  if (sgn(im_) > 0) out += "+";
  out += imag(im_);
  out += ")";
  return out;
}

GaussRational GaussRational::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  if (s.empty()) throw std::invalid_argument("GaussRational: empty coefficient");

  GaussRational out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      if (s[pos] == '-') sign = -1;
      ++pos;
    }
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    std::string term = s.substr(pos, end - pos);
    if (term.empty()) throw std::invalid_argument("GaussRational: malformed '" + s + "'");
    bool imaginary = term.back() == 'i';
    if (imaginary) term.pop_back();
    mpq_class value(1);
    if (!term.empty()) {
      for (char c : term)
        if (!std::isdigit(static_cast<unsigned char>(c)) && c != '/')
          throw std::invalid_argument("GaussRational: malformed '" + s + "'");
      if (value.set_str(term, 10) != 0 || sgn(value.get_den()) == 0)
        throw std::invalid_argument("GaussRational: malformed '" + s + "'");
      value.canonicalize();
    }
    value *= sign;
    if (imaginary)
      out += GaussRational(mpq_class(0), value);
    else
      out += GaussRational(value);
    pos = end;
  }
  return out;
}

}  // namespace maxcover
