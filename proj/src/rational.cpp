#include "germ/rational.hpp"

#include "germ/errors.hpp"

namespace germ {

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (o.is_real()) {
    re_ *= o.re_;
    im_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw InputError("division by zero");
  if (o.is_real()) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  const mpq_class n = o.norm2();
  mpq_class re = (re_ * o.re_ + im_ * o.im_) / n;
  mpq_class im = (im_ * o.re_ - re_ * o.im_) / n;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string GaussianRational::to_string() const {
  if (is_real()) return re_.get_str();
  std::string imag;
  const mpq_class mag = abs(im_);
  imag = (mag == 1) ? "i" : mag.get_str() + "*i";
  if (sgn(re_) == 0) return (sgn(im_) < 0 ? "-" : "") + imag;
  return "(" + re_.get_str() + (sgn(im_) < 0 ? "-" : "+") + imag + ")";
}

}  // namespace germ
