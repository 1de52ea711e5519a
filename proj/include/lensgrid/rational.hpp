#pragma once
// Exact rationals for grading bookkeeping. int64 storage, 128-bit intermediates.
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <functional>

namespace lensgrid {

class Rational {
public:
    Rational() = default;
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) { set(n, d); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool isInteger() const { return den_ == 1; }

    // floor for integral checks and bucketing
    std::int64_t floor() const {
        std::int64_t q = num_ / den_;
        if ((num_ % den_) != 0 && num_ < 0) --q;
        return q;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return make(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                    static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return make(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
                    static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        return make(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
    }
    Rational operator-() const { Rational r; r.num_ = -num_; r.den_ = den_; return r; }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend auto operator<=>(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num_) * b.den_ <=> static_cast<__int128>(b.num_) * a.den_;
    }

    // "n" for integers, "n/d" otherwise
    std::string str() const {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }
    static Rational parse(const std::string& s) {
        auto k = s.find('/');
        if (k == std::string::npos) return Rational(std::stoll(s));
        return Rational(std::stoll(s.substr(0, k)), std::stoll(s.substr(k + 1)));
    }

private:
    std::int64_t num_ = 0, den_ = 1;

    void set(std::int64_t n, std::int64_t d) {
        if (d == 0) throw std::domain_error("zero denominator");
        if (d < 0) { n = -n; d = -d; }
        std::int64_t g = std::gcd(n < 0 ? -n : n, d);
        num_ = n / g; den_ = d / g;
    }
    static Rational make(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 a = n < 0 ? -n : n, b = d;
        while (b) { __int128 t = a % b; a = b; b = t; }
        if (a > 1) { n /= a; d /= a; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX) throw std::overflow_error("rational overflow");
        Rational r; r.num_ = static_cast<std::int64_t>(n); r.den_ = static_cast<std::int64_t>(d);
        return r;
    }
};

inline std::string to_string(const Rational& r) { return r.str(); }

}  // namespace lensgrid

template <>
struct std::hash<lensgrid::Rational> {
    std::size_t operator()(const lensgrid::Rational& r) const noexcept {
        return std::hash<std::int64_t>()(r.num()) * 1000003u ^ std::hash<std::int64_t>()(r.den());
    }
};
