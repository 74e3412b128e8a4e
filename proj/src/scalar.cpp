#include "mfcat/scalar.hpp"

#include <stdexcept>

namespace mfcat {

Scalar Scalar::of_fraction(long num, long den) {
    if (den == 0) throw std::invalid_argument("Scalar: zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(q);
}

Scalar& Scalar::operator+=(const Scalar& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

Scalar Scalar::inv() const {
    mpq_class n = re_ * re_ + im_ * im_;
    if (n == 0) throw std::domain_error("Scalar: division by zero");
    return Scalar(re_ / n, -im_ / n);
}

Scalar& Scalar::operator/=(const Scalar& o) {
    *this *= o.inv();
    return *this;
}

std::string Scalar::str() const {
    auto q_str = [](const mpq_class& q) { return q.get_str(); };
    if (im_ == 0) return q_str(re_);
    std::string s;
    if (re_ != 0) {
        s = q_str(re_);
        s += (im_ > 0) ? "+" : "-";
        mpq_class a = abs(im_);
        if (a != 1) s += a.get_str() + "*";
        s += "i";
        return s;
    }
    if (im_ == 1) return "i";
    if (im_ == -1) return "-i";
    return q_str(im_) + "*i";
}

} // namespace mfcat
