#include "liouville/expression.hpp"

#include "liouville/error.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

namespace liouville {

enum class Op { constant, coordinate, distance, distance_squared, level, neg, add, sub, mul, div, pow, call1, call2 };

struct Expression::Node {
    Op op = Op::constant;
    double value = 0.0;
    int index = 0;
    double (*f1)(double) = nullptr;
    double (*f2)(double, double) = nullptr;
    std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

double fn_exp(double x) { return std::exp(x); }
double fn_log(double x) { return std::log(x); }
double fn_sqrt(double x) { return std::sqrt(x); }
double fn_abs(double x) { return std::abs(x); }
double fn_sin(double x) { return std::sin(x); }
double fn_cos(double x) { return std::cos(x); }
double fn_tanh(double x) { return std::tanh(x); }
double fn_pow(double x, double y) { return std::pow(x, y); }
double fn_min(double x, double y) { return std::min(x, y); }
double fn_max(double x, double y) { return std::max(x, y); }

class Parser {
public:
    explicit Parser(const std::string& text) : s_(text) {}

    NodePtr run() {
        auto e = sum();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

    int arity = 0;
    bool uses_r = false;
    bool uses_n = false;

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw SpecError("expression \"" + s_ + "\", column " + std::to_string(pos_ + 1) + ": " + what);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    static NodePtr make(Op op, NodePtr a = nullptr, NodePtr b = nullptr) {
        auto n = std::make_shared<Expression::Node>();
        n->op = op;
        n->a = std::move(a);
        n->b = std::move(b);
        return n;
    }

    NodePtr sum() {
        auto left = product();
        for (;;) {
            if (eat('+')) left = make(Op::add, left, product());
            else if (eat('-')) left = make(Op::sub, left, product());
            else return left;
        }
    }

    NodePtr product() {
        auto left = unary();
        for (;;) {
            if (eat('*')) left = make(Op::mul, left, unary());
            else if (eat('/')) left = make(Op::div, left, unary());
            else return left;
        }
    }

    // -a^b is -(a^b)
    NodePtr unary() {
        if (eat('-')) return make(Op::neg, unary());
        if (eat('+')) return unary();
        return power();
    }

    NodePtr power() {
        auto base = atom();
        if (eat('^')) return make(Op::pow, base, unary());
        return base;
    }

    NodePtr atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            auto e = sum();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return name();
        fail("unexpected '" + std::string(1, c) + "'");
    }

    NodePtr number() {
        auto n = std::make_shared<Expression::Node>();
        const auto [end, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), n->value);
        if (ec != std::errc()) fail("malformed number");
        pos_ = static_cast<std::size_t>(end - s_.data());
        return n;
    }

    NodePtr name() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        const std::string id = s_.substr(start, pos_ - start);

        if (id.size() == 2 && id[0] == 'x' && id[1] >= '1' && id[1] <= '9') {
            auto n = std::make_shared<Expression::Node>();
            n->op = Op::coordinate;
            n->index = id[1] - '1';
            arity = std::max(arity, n->index + 1);
            return n;
        }
        if (id == "r") return uses_r = true, make(Op::distance);
        if (id == "r2") return uses_r = true, make(Op::distance_squared);
        if (id == "n") return uses_n = true, make(Op::level);
        if (id == "pi") {
            auto n = std::make_shared<Expression::Node>();
            n->value = std::numbers::pi;
            return n;
        }

        static const std::pair<const char*, double (*)(double)> unary_fns[] = {
            {"exp", fn_exp}, {"log", fn_log}, {"sqrt", fn_sqrt}, {"abs", fn_abs},
            {"sin", fn_sin}, {"cos", fn_cos}, {"tanh", fn_tanh}};
        static const std::pair<const char*, double (*)(double, double)> binary_fns[] = {
            {"pow", fn_pow}, {"min", fn_min}, {"max", fn_max}};
        for (const auto& [key, f] : unary_fns) {
            if (id != key) continue;
            if (!eat('(')) fail("expected '(' after " + id);
            auto n = std::make_shared<Expression::Node>();
            n->op = Op::call1;
            n->f1 = f;
            n->a = sum();
            if (!eat(')')) fail("expected ')' closing " + id);
            return n;
        }
        for (const auto& [key, f] : binary_fns) {
            if (id != key) continue;
            if (!eat('(')) fail("expected '(' after " + id);
            auto n = std::make_shared<Expression::Node>();
            n->op = Op::call2;
            n->f2 = f;
            n->a = sum();
            if (!eat(',')) fail(id + " takes two arguments");
            n->b = sum();
            if (!eat(')')) fail("expected ')' closing " + id);
            return n;
        }
        pos_ = start;
        fail("unknown name '" + id + "'");
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

double eval(const Expression::Node& n, const ExpressionInputs& in) {
    switch (n.op) {
        case Op::constant: return n.value;
        case Op::coordinate:
            if (static_cast<std::size_t>(n.index) >= in.coordinates.size())
                throw EvaluationError("x" + std::to_string(n.index + 1) + " is not defined on this family (" +
                                      std::to_string(in.coordinates.size()) + " coordinates)");
            return in.coordinates[static_cast<std::size_t>(n.index)];
        case Op::distance:
            if (!in.has_r) throw EvaluationError("r is not defined on this family");
            return in.r;
        case Op::distance_squared:
            if (!in.has_r) throw EvaluationError("r2 is not defined on this family");
            return in.r2;
        case Op::level:
            if (!in.has_n) throw EvaluationError("n is not defined on this family");
            return in.n;
        case Op::neg: return -eval(*n.a, in);
        case Op::add: return eval(*n.a, in) + eval(*n.b, in);
        case Op::sub: return eval(*n.a, in) - eval(*n.b, in);
        case Op::mul: return eval(*n.a, in) * eval(*n.b, in);
        case Op::div: return eval(*n.a, in) / eval(*n.b, in);
        case Op::pow: return std::pow(eval(*n.a, in), eval(*n.b, in));
        case Op::call1: return n.f1(eval(*n.a, in));
        case Op::call2: return n.f2(eval(*n.a, in), eval(*n.b, in));
    }
    return NAN;
}

}  // namespace

Expression Expression::parse(const std::string& text) {
    Parser p(text);
    Expression e;
    e.text_ = text;
    e.root_ = p.run();
    e.arity_ = p.arity;
    e.uses_r_ = p.uses_r;
    e.uses_n_ = p.uses_n;
    return e;
}

double Expression::evaluate(const ExpressionInputs& in) const { return eval(*root_, in); }

}  // namespace liouville
