#pragma once

// Complex scalars in two arithmetic modes.
//
//   exact : GaussianRational, re/im are GMP rationals (closed under + - * / conj)
//   float : std::complex<double>, all comparisons take an explicit tolerance
//
// Generic code goes through scalar_traits<T> so both modes share one
// implementation of every algorithm.

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <concepts>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mlqfa {

using Rational = mpq_class;
using Complexd = std::complex<double>;

enum class Mode { exact, floating };

inline std::string_view to_string(Mode m) { return m == Mode::exact ? "exact" : "float"; }

inline Mode parse_mode(std::string_view s) {
    if (s == "exact") return Mode::exact;
    if (s == "float") return Mode::floating;
    throw std::invalid_argument("unknown mode '" + std::string(s) + "' (expected exact|float)");
}

/// Parses "p/q" or "p" (decimal, optional leading '-') into a canonical rational.
inline Rational parse_rational(std::string_view text) {
    auto digits = [](std::string_view d) {
        if (d.empty()) return false;
        for (char c : d)
            if (c < '0' || c > '9') return false;
        return true;
    };
    std::string_view body = text;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
    auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
    if (!digits(num) || (slash != std::string_view::npos && !digits(den)))
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    Rational r;
    std::string s(text.front() == '+' ? text.substr(1) : text);
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    r.canonicalize();
    return r;
}

/// Always "p/q" with q > 0 and gcd(p, q) = 1, including integers ("3/1").
inline std::string format_rational(const Rational& r) {
    return r.get_num().get_str(10) + "/" + r.get_den().get_str(10);
}

/// Complex number with rational real and imaginary parts.
struct GaussianRational {
    Rational re{0};
    Rational im{0};

    GaussianRational() = default;
    GaussianRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {
        re.canonicalize();
        im.canonicalize();
    }
    GaussianRational(long r) : re(r), im(0) {}

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
    GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator-(const GaussianRational& a) { return canonical(-a.re, -a.im); }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        if (a.im == 0 && b.im == 0) return canonical(a.re * b.re, Rational(0));
        return canonical(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        Rational d = b.re * b.re + b.im * b.im;
        if (d == 0) throw std::domain_error("division by zero Gaussian rational");
        return canonical((a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d);
    }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    // GMP arithmetic results are already in lowest terms.
    static GaussianRational canonical(Rational r, Rational i) {
        GaussianRational z;
        z.re = std::move(r);
        z.im = std::move(i);
        return z;
    }

    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) {
        return os << "(" << format_rational(z.re) << ", " << format_rational(z.im) << ")";
    }
};

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<GaussianRational> {
    using real_type = Rational;
    static constexpr bool exact = true;
    static constexpr Mode mode = Mode::exact;

    static GaussianRational zero() { return {}; }
    static GaussianRational one() { return {Rational(1), Rational(0)}; }
    static GaussianRational conj(const GaussianRational& z) { return GaussianRational::canonical(z.re, -z.im); }
    static Rational norm2(const GaussianRational& z) { return z.re * z.re + z.im * z.im; }
    // Pivot ranking only; exact elimination never compares against a tolerance.
    static double magnitude(const GaussianRational& z) { return std::sqrt(norm2(z).get_d()); }
    static bool is_zero(const GaussianRational& z, double /*tol*/ = 0) { return z.re == 0 && z.im == 0; }
    static bool real_equal(const Rational& a, const Rational& b, double /*tol*/ = 0) { return a == b; }
    static double to_double(const Rational& r) { return r.get_d(); }
    static Complexd to_complex(const GaussianRational& z) { return {z.re.get_d(), z.im.get_d()}; }
};

template <>
struct scalar_traits<Complexd> {
    using real_type = double;
    static constexpr bool exact = false;
    static constexpr Mode mode = Mode::floating;

    static Complexd zero() { return {0.0, 0.0}; }
    static Complexd one() { return {1.0, 0.0}; }
    static Complexd conj(const Complexd& z) { return std::conj(z); }
    static double norm2(const Complexd& z) { return std::norm(z); }
    static double magnitude(const Complexd& z) { return std::abs(z); }
    static bool is_zero(const Complexd& z, double tol) { return std::abs(z) <= tol; }
    static bool real_equal(double a, double b, double tol) { return std::abs(a - b) <= tol; }
    static double to_double(double r) { return r; }
    static Complexd to_complex(const Complexd& z) { return z; }
};

template <class T>
concept Scalar = requires { typename scalar_traits<T>::real_type; } &&
                 requires(T a, T b) {
                     { a + b } -> std::convertible_to<T>;
                     { a * b } -> std::convertible_to<T>;
                     { a - b } -> std::convertible_to<T>;
                 };

template <Scalar T>
using real_t = typename scalar_traits<T>::real_type;

/// Exact scalars convert losslessly to float; the reverse direction is not offered.
template <Scalar To, Scalar From>
To scalar_cast(const From& z) {
    if constexpr (std::same_as<To, From>)
        return z;
    else if constexpr (std::same_as<To, Complexd>)
        return scalar_traits<From>::to_complex(z);
    else
        static_assert(!sizeof(To), "float -> exact conversion is not supported");
}

template <Scalar T>
double real_to_double(const real_t<T>& r) {
    return scalar_traits<T>::to_double(r);
}

}  // namespace mlqfa
