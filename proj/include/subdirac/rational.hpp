#pragma once

#include <complex>
#include <string>

#include <gmpxx.h>

namespace subdirac {

// Exact Gaussian rational a + b*i.  All Clifford-word bookkeeping is done in
// this type so that trace identities can be asserted with equality rather than
// tolerances.  Conversion from double is exact (every finite double is a
// dyadic rational), so curvature data enters the symbolic layer losslessly.
struct GaussianRational {
    mpq_class re{0};
    mpq_class im{0};

    GaussianRational() = default;
    GaussianRational(int r) : re(r) {}
    GaussianRational(long r) : re(r) {}
    GaussianRational(const mpq_class& r) : re(r) {}
    GaussianRational(const mpq_class& r, const mpq_class& i) : re(r), im(i) {}
    explicit GaussianRational(double r) : re(r) {}

    static GaussianRational unit_i() { return {mpq_class(0), mpq_class(1)}; }

    // i^k for k >= 0
    static GaussianRational i_power(long k) {
        switch (((k % 4) + 4) % 4) {
            case 0: return {mpq_class(1), mpq_class(0)};
            case 1: return {mpq_class(0), mpq_class(1)};
            case 2: return {mpq_class(-1), mpq_class(0)};
            default: return {mpq_class(0), mpq_class(-1)};
        }
    }

    bool is_zero() const { return re == 0 && im == 0; }

    GaussianRational operator-() const { return {mpq_class(-re), mpq_class(-im)}; }

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
        mpq_class r = re * o.re - im * o.im;
        mpq_class i = re * o.im + im * o.re;
        re = r;
        im = i;
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }

    GaussianRational conj() const { return {re, mpq_class(-im)}; }

    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

    std::string str() const {
        if (im == 0) return re.get_str();
        return re.get_str() + (im > 0 ? "+" : "") + im.get_str() + "i";
    }
};

} // namespace subdirac
