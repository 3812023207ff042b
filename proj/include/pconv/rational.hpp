#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <sstream>
#include <string>

namespace pconv {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Exact conversion: every finite double is a dyadic rational.
inline Rat rat_from_double(double x) {
    if (x == 0.0) return Rat(0);
    if (!std::isfinite(x)) throw std::invalid_argument("rat_from_double: non-finite value");
    int exp = 0;
    double m = std::frexp(x, &exp);  // x = m * 2^exp, 0.5 <= |m| < 1
    auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
    exp -= 53;
    Rat r(mant);
    if (exp >= 0) {
        r *= Rat(BigInt(1) << exp);
    } else {
        r /= Rat(BigInt(1) << (-exp));
    }
    return r;
}

inline double rat_to_double(const Rat& r) { return r.template convert_to<double>(); }

// Complex number with exact rational real/imaginary parts.
struct CoefC {
    Rat re{0};
    Rat im{0};

    CoefC() = default;
    CoefC(Rat r, Rat i = Rat(0)) : re(std::move(r)), im(std::move(i)) {}
    static CoefC integer(long v) { return CoefC(Rat(v)); }

    bool is_zero() const { return re == 0 && im == 0; }

    CoefC operator+(const CoefC& o) const { return {re + o.re, im + o.im}; }
    CoefC operator-(const CoefC& o) const { return {re - o.re, im - o.im}; }
    CoefC operator-() const { return {-re, -im}; }
    CoefC operator*(const CoefC& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    CoefC& operator+=(const CoefC& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    bool operator==(const CoefC& o) const { return re == o.re && im == o.im; }

    std::complex<double> to_complex() const { return {rat_to_double(re), rat_to_double(im)}; }

    // |re| + |im| as double; coarse magnitude used for tolerance scales.
    double magnitude() const {
        return std::abs(rat_to_double(re)) + std::abs(rat_to_double(im));
    }

    std::string to_string() const {
        std::ostringstream os;
        if (im == 0) {
            os << re;
        } else if (re == 0) {
            os << im << "i";
        } else {
            os << "(" << re << (im > 0 ? "+" : "") << im << "i)";
        }
        return os.str();
    }
};

}  // namespace pconv
