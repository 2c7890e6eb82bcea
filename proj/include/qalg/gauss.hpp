#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>

#include "qalg/errors.hpp"

namespace qalg {

/// Element re + im*i of the Gaussian rationals Q(i).
class GaussRat {
public:
    GaussRat() = default;
    GaussRat(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
    explicit GaussRat(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussRat i() { return GaussRat(0, 1); }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    GaussRat conj() const { return GaussRat(re_, -im_); }
    mpq_class norm() const { return re_ * re_ + im_ * im_; }

    GaussRat inverse() const {
        if (is_zero()) throw DivisionByZero();
        if (is_real()) return GaussRat(1 / re_);
        mpq_class n = norm();
        return GaussRat(re_ / n, -im_ / n);
    }

    GaussRat operator-() const { return GaussRat(-re_, -im_); }

    GaussRat& operator+=(const GaussRat& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussRat& operator-=(const GaussRat& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussRat& operator*=(const GaussRat& o) {
        if (is_real() && o.is_real()) {
            re_ *= o.re_;
        } else {
            mpq_class r = re_ * o.re_ - im_ * o.im_;
            im_ = re_ * o.im_ + im_ * o.re_;
            re_ = std::move(r);
        }
        return *this;
    }
    GaussRat& operator/=(const GaussRat& o) {
        if (o.is_real()) {
            if (sgn(o.re_) == 0) throw DivisionByZero();
            re_ /= o.re_;
            im_ /= o.re_;
            return *this;
        }
        return *this *= o.inverse();
    }

    friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
    friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
    friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
    friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }

    friend bool operator==(const GaussRat& a, const GaussRat& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    /// Total order used only for canonical tie-breaking.
    friend int compare(const GaussRat& a, const GaussRat& b) {
        int c = cmp(a.re_, b.re_);
        if (c != 0) return c < 0 ? -1 : 1;
        c = cmp(a.im_, b.im_);
        return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }

    /// Canonical text: "3/2", "-i", "2*i", "(1-3*i)".
    std::string str() const {
        if (is_real()) return re_.get_str();
        std::string ims = imag_part(abs(im_));
        if (sgn(re_) == 0) return (sgn(im_) < 0 ? "-" : "") + ims;
        return "(" + re_.get_str() + (sgn(im_) < 0 ? "-" : "+") + ims + ")";
    }

    static std::string imag_part(const mpq_class& a) {
        if (a == 1) return "i";
        return a.get_str() + "*i";
    }

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

}  // namespace qalg
