#ifndef HYPTAIL_INTERVAL_HPP
#define HYPTAIL_INTERVAL_HPP

#include "hyptail/rational.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cstdlib>
#include <string>
#include <string_view>
#include <utility>

namespace hyptail {

// Owning wrapper around an mpfr_t.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t precision = 64)
    {
        mpfr_init2(value_, precision);
        mpfr_set_zero(value_, 1);
    }

    BigFloat(const BigFloat& other)
    {
        mpfr_init2(value_, mpfr_get_prec(other.value_));
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }

    BigFloat(BigFloat&& other) noexcept
    {
        mpfr_init2(value_, MPFR_PREC_MIN);
        mpfr_swap(value_, other.value_);
    }

    BigFloat& operator=(const BigFloat& other)
    {
        if (this != &other) {
            mpfr_set_prec(value_, mpfr_get_prec(other.value_));
            mpfr_set(value_, other.value_, MPFR_RNDN);
        }
        return *this;
    }

    BigFloat& operator=(BigFloat&& other) noexcept
    {
        mpfr_swap(value_, other.value_);
        return *this;
    }

    ~BigFloat() { mpfr_clear(value_); }

    static BigFloat from_rational(const ExactRational& q, mpfr_prec_t precision, mpfr_rnd_t rnd)
    {
        BigFloat r(precision);
        mpfr_set_q(r.value_, q.get_mpq_t(), rnd);
        return r;
    }

    // Parses a decimal (or "inf"/"-inf"/"nan") string at the given precision.
    static BigFloat parse(std::string_view text, mpfr_prec_t precision)
    {
        BigFloat r(precision);
        if (mpfr_set_str(r.value_, std::string(text).c_str(), 10, MPFR_RNDN) != 0) {
            throw std::invalid_argument("not a decimal float: " + std::string(text));
        }
        return r;
    }

    mpfr_ptr get() { return value_; }
    mpfr_srcptr get() const { return value_; }
    mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

    int sign() const { return mpfr_sgn(value_); }
    bool is_nan() const { return mpfr_nan_p(value_) != 0; }
    bool is_finite() const { return mpfr_number_p(value_) != 0; }
    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

    // Compares against an exact rational without rounding.
    int compare(const ExactRational& q) const { return mpfr_cmp_q(value_, q.get_mpq_t()); }

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.value_, b.value_); }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.value_, b.value_); }

    // Shortest decimal string that parses back (at this precision, round to
    // nearest) to exactly this value.
    std::string to_string() const;

private:
    mpfr_t value_;
};

namespace detail {

inline std::string format_decimal(const std::string& digits_in, mpfr_exp_t exponent)
{
    // digits_in is "[-]d1d2...", value = 0.d1d2... * 10^exponent
    std::string sign;
    std::string digits = digits_in;
    if (!digits.empty() && digits[0] == '-') {
        sign = "-";
        digits.erase(0, 1);
    }
    while (digits.size() > 1 && digits.back() == '0') {
        digits.pop_back();
    }
    const long point = static_cast<long>(exponent);
    const long nd = static_cast<long>(digits.size());
    std::string out;
    if (point > 21 || point < -5) {
        out = digits.substr(0, 1);
        if (nd > 1) {
            out += "." + digits.substr(1);
        }
        out += "e" + std::to_string(point - 1);
    } else if (point <= 0) {
        out = "0." + std::string(static_cast<std::size_t>(-point), '0') + digits;
    } else if (point >= nd) {
        out = digits + std::string(static_cast<std::size_t>(point - nd), '0');
    } else {
        out = digits.substr(0, static_cast<std::size_t>(point)) + "." + digits.substr(static_cast<std::size_t>(point));
    }
    return sign + out;
}

}  // namespace detail

inline std::string BigFloat::to_string() const
{
    if (mpfr_nan_p(value_)) {
        return "nan";
    }
    if (mpfr_inf_p(value_)) {
        return mpfr_sgn(value_) > 0 ? "inf" : "-inf";
    }
    if (mpfr_zero_p(value_)) {
        return "0";
    }
    const auto max_digits = mpfr_get_str_ndigits(10, mpfr_get_prec(value_));
    BigFloat back(mpfr_get_prec(value_));
    for (std::size_t nd = 1; nd <= max_digits; ++nd) {
        mpfr_exp_t exponent = 0;
        char* raw = mpfr_get_str(nullptr, &exponent, 10, nd, value_, MPFR_RNDN);
        std::string text = detail::format_decimal(raw, exponent);
        mpfr_free_str(raw);
        mpfr_set_str(back.value_, text.c_str(), 10, MPFR_RNDN);
        if (mpfr_equal_p(back.value_, value_) || nd == max_digits) {
            return text;
        }
    }
    return "nan";
}

/// Closed enclosure [lo, hi] of a real number. lo is rounded toward -inf and
/// hi toward +inf by every operation that produces one.
struct Interval {
    BigFloat lo;
    BigFloat hi;
    int precision_bits = 64;

    Interval() = default;
    Interval(BigFloat l, BigFloat h, int bits) : lo(std::move(l)), hi(std::move(h)), precision_bits(bits) {}

    static Interval from_rational(const ExactRational& q, int bits)
    {
        return Interval(BigFloat::from_rational(q, bits, MPFR_RNDD), BigFloat::from_rational(q, bits, MPFR_RNDU), bits);
    }

    // Upper bound on hi - lo.
    BigFloat width() const
    {
        BigFloat w(precision_bits);
        mpfr_sub(w.get(), hi.get(), lo.get(), MPFR_RNDU);
        return w;
    }

    bool contains(const ExactRational& q) const { return lo.compare(q) <= 0 && hi.compare(q) >= 0; }
    bool contains_zero() const { return lo.sign() <= 0 && hi.sign() >= 0; }
};

}  // namespace hyptail

#endif  // HYPTAIL_INTERVAL_HPP
