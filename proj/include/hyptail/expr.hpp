#ifndef HYPTAIL_EXPR_HPP
#define HYPTAIL_EXPR_HPP

#include "hyptail/interval.hpp"
#include "hyptail/rational.hpp"

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <utility>

namespace hyptail {

// Immutable expression tree for the right-hand sides of the inequalities:
// rational literals, pi, + - * /, negation, sqrt, exp and natural log.
class Expr {
public:
    enum class Op { Literal, Pi, Neg, Add, Sub, Mul, Div, Sqrt, Exp, Log };

    Expr(const ExactRational& q) : node_(std::make_shared<const Node>(Node{Op::Literal, q, {}, {}})) {}  // NOLINT
    Expr(long v) : Expr(ExactRational(v)) {}  // NOLINT
    Expr(int v) : Expr(ExactRational(v)) {}   // NOLINT

    static Expr literal(const ExactRational& q) { return Expr(q); }
    static Expr pi() { return Expr(Op::Pi, {}, {}); }

    Op op() const { return node_->op; }
    const ExactRational& value() const { return node_->literal; }
    const Expr& left() const { return *node_->lhs; }
    const Expr& right() const { return *node_->rhs; }
    bool is_literal() const { return node_->op == Op::Literal; }

    friend Expr operator+(const Expr& a, const Expr& b) { return Expr(Op::Add, a, b); }
    friend Expr operator-(const Expr& a, const Expr& b) { return Expr(Op::Sub, a, b); }
    friend Expr operator*(const Expr& a, const Expr& b) { return Expr(Op::Mul, a, b); }
    friend Expr operator/(const Expr& a, const Expr& b) { return Expr(Op::Div, a, b); }
    friend Expr operator-(const Expr& a) { return Expr(Op::Neg, a, {}); }

    friend Expr sqrt(const Expr& a) { return Expr(Op::Sqrt, a, {}); }
    friend Expr exp(const Expr& a) { return Expr(Op::Exp, a, {}); }
    friend Expr log(const Expr& a) { return Expr(Op::Log, a, {}); }

    std::string to_string() const;

private:
    struct Node {
        Op op;
        ExactRational literal;
        std::shared_ptr<const Expr> lhs;
        std::shared_ptr<const Expr> rhs;
    };

    Expr(Op op, std::optional<Expr> a, std::optional<Expr> b)
    {
        Node n{op, ExactRational(0), nullptr, nullptr};
        if (a) {
            n.lhs = std::make_shared<const Expr>(std::move(*a));
        }
        if (b) {
            n.rhs = std::make_shared<const Expr>(std::move(*b));
        }
        node_ = std::make_shared<const Node>(std::move(n));
    }

    std::shared_ptr<const Node> node_;
};

inline std::string Expr::to_string() const
{
    switch (op()) {
    case Op::Literal: {
        const std::string s = hyptail::to_string(value());
        return (value() < 0 || value().get_den() != 1) ? "(" + s + ")" : s;
    }
    case Op::Pi: return "pi";
    case Op::Neg: return "-" + left().to_string();
    case Op::Add: return "(" + left().to_string() + " + " + right().to_string() + ")";
    case Op::Sub: return "(" + left().to_string() + " - " + right().to_string() + ")";
    case Op::Mul: return left().to_string() + "*" + right().to_string();
    case Op::Div: return left().to_string() + "/" + right().to_string();
    case Op::Sqrt: return "sqrt(" + left().to_string() + ")";
    case Op::Exp: return "exp(" + left().to_string() + ")";
    case Op::Log: return "log(" + left().to_string() + ")";
    }
    return "?";
}

namespace detail {

inline std::optional<ExactRational> exact_sqrt(const ExactRational& q)
{
    if (q < 0) {
        throw DomainError("sqrt of a negative value");
    }
    if (mpz_perfect_square_p(q.get_num_mpz_t()) == 0 || mpz_perfect_square_p(q.get_den_mpz_t()) == 0) {
        return std::nullopt;
    }
    BigInt num;
    BigInt den;
    mpz_sqrt(num.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(den.get_mpz_t(), q.get_den_mpz_t());
    return make_rational(num, den);
}

}  // namespace detail

/// Exact value of an expression when it folds to a rational (no pi, sqrt
/// only of perfect squares, exp only of 0, log only of 1); nullopt otherwise.
inline std::optional<ExactRational> exact_value(const Expr& e)
{
    using Op = Expr::Op;
    switch (e.op()) {
    case Op::Literal: return e.value();
    case Op::Pi: return std::nullopt;
    case Op::Neg: {
        auto a = exact_value(e.left());
        if (!a) {
            return std::nullopt;
        }
        return ExactRational(-*a);
    }
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: {
        auto a = exact_value(e.left());
        auto b = exact_value(e.right());
        if (e.op() == Op::Div && b && *b == 0) {
            throw DomainError("division by zero");
        }
        if (!a || !b) {
            return std::nullopt;
        }
        switch (e.op()) {
        case Op::Add: return ExactRational(*a + *b);
        case Op::Sub: return ExactRational(*a - *b);
        case Op::Mul: return ExactRational(*a * *b);
        default: return ExactRational(*a / *b);
        }
    }
    case Op::Sqrt: {
        auto a = exact_value(e.left());
        if (!a) {
            return std::nullopt;
        }
        return detail::exact_sqrt(*a);
    }
    case Op::Exp: {
        auto a = exact_value(e.left());
        if (a && *a == 0) {
            return ExactRational(1);
        }
        return std::nullopt;
    }
    case Op::Log: {
        auto a = exact_value(e.left());
        if (a && *a <= 0) {
            throw DomainError("log of a nonpositive value");
        }
        if (a && *a == 1) {
            return ExactRational(0);
        }
        return std::nullopt;
    }
    }
    return std::nullopt;
}

namespace detail {

inline Interval mul_interval(const Interval& a, const Interval& b, int bits)
{
    BigFloat lo(bits);
    BigFloat hi(bits);
    BigFloat t(bits);
    bool first = true;
    const std::array<mpfr_srcptr, 2> as{a.lo.get(), a.hi.get()};
    const std::array<mpfr_srcptr, 2> bs{b.lo.get(), b.hi.get()};
    for (auto x : as) {
        for (auto y : bs) {
            mpfr_mul(t.get(), x, y, MPFR_RNDD);
            if (first || mpfr_less_p(t.get(), lo.get())) {
                mpfr_set(lo.get(), t.get(), MPFR_RNDD);
            }
            mpfr_mul(t.get(), x, y, MPFR_RNDU);
            if (first || mpfr_greater_p(t.get(), hi.get())) {
                mpfr_set(hi.get(), t.get(), MPFR_RNDU);
            }
            first = false;
        }
    }
    return Interval(std::move(lo), std::move(hi), bits);
}

inline Interval div_interval(const Interval& a, const Interval& b, int bits)
{
    if (b.contains_zero()) {
        throw DomainError("division by an interval containing zero");
    }
    BigFloat lo(bits);
    BigFloat hi(bits);
    BigFloat t(bits);
    bool first = true;
    const std::array<mpfr_srcptr, 2> as{a.lo.get(), a.hi.get()};
    const std::array<mpfr_srcptr, 2> bs{b.lo.get(), b.hi.get()};
    for (auto x : as) {
        for (auto y : bs) {
            mpfr_div(t.get(), x, y, MPFR_RNDD);
            if (first || mpfr_less_p(t.get(), lo.get())) {
                mpfr_set(lo.get(), t.get(), MPFR_RNDD);
            }
            mpfr_div(t.get(), x, y, MPFR_RNDU);
            if (first || mpfr_greater_p(t.get(), hi.get())) {
                mpfr_set(hi.get(), t.get(), MPFR_RNDU);
            }
            first = false;
        }
    }
    return Interval(std::move(lo), std::move(hi), bits);
}

using MpfrUnary = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

// Monotone increasing unary function applied endpoint-wise.
inline Interval monotone(MpfrUnary f, const Interval& a, int bits)
{
    BigFloat lo(bits);
    BigFloat hi(bits);
    f(lo.get(), a.lo.get(), MPFR_RNDD);
    f(hi.get(), a.hi.get(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi), bits);
}

}  // namespace detail

/// Enclosure of the real value of `e` computed with `precision_bits` of
/// mantissa throughout. Throws DomainError when a subexpression leaves the
/// reals (division by an interval containing 0, sqrt of an interval entirely
/// below 0, log of an interval entirely at or below 0).
inline Interval eval_interval(const Expr& e, int precision_bits)
{
    using Op = Expr::Op;
    const int bits = precision_bits;
    switch (e.op()) {
    case Op::Literal: return Interval::from_rational(e.value(), bits);
    case Op::Pi: {
        BigFloat lo(bits);
        BigFloat hi(bits);
        mpfr_const_pi(lo.get(), MPFR_RNDD);
        mpfr_const_pi(hi.get(), MPFR_RNDU);
        return Interval(std::move(lo), std::move(hi), bits);
    }
    case Op::Neg: {
        Interval a = eval_interval(e.left(), bits);
        mpfr_neg(a.lo.get(), a.lo.get(), MPFR_RNDD);
        mpfr_neg(a.hi.get(), a.hi.get(), MPFR_RNDU);
        std::swap(a.lo, a.hi);
        return a;
    }
    case Op::Add:
    case Op::Sub: {
        const Interval a = eval_interval(e.left(), bits);
        const Interval b = eval_interval(e.right(), bits);
        BigFloat lo(bits);
        BigFloat hi(bits);
        if (e.op() == Op::Add) {
            mpfr_add(lo.get(), a.lo.get(), b.lo.get(), MPFR_RNDD);
            mpfr_add(hi.get(), a.hi.get(), b.hi.get(), MPFR_RNDU);
        } else {
            mpfr_sub(lo.get(), a.lo.get(), b.hi.get(), MPFR_RNDD);
            mpfr_sub(hi.get(), a.hi.get(), b.lo.get(), MPFR_RNDU);
        }
        return Interval(std::move(lo), std::move(hi), bits);
    }
    case Op::Mul: return detail::mul_interval(eval_interval(e.left(), bits), eval_interval(e.right(), bits), bits);
    case Op::Div: return detail::div_interval(eval_interval(e.left(), bits), eval_interval(e.right(), bits), bits);
    case Op::Sqrt: {
        Interval a = eval_interval(e.left(), bits);
        if (a.hi.sign() < 0) {
            throw DomainError("sqrt of a negative interval");
        }
        if (a.lo.sign() < 0) {
            mpfr_set_zero(a.lo.get(), 1);
        }
        return detail::monotone(mpfr_sqrt, a, bits);
    }
    case Op::Exp: return detail::monotone(mpfr_exp, eval_interval(e.left(), bits), bits);
    case Op::Log: {
        Interval a = eval_interval(e.left(), bits);
        if (a.hi.sign() <= 0) {
            throw DomainError("log of a nonpositive interval");
        }
        Interval r = detail::monotone(mpfr_log, a, bits);
        if (a.lo.sign() <= 0) {
            mpfr_set_inf(r.lo.get(), -1);
        }
        return r;
    }
    }
    throw DomainError("unknown expression node");
}

}  // namespace hyptail

#endif  // HYPTAIL_EXPR_HPP
