#pragma once

// Adjacency functions as small expression trees over field elements.
// Variables are l<i> / p<i> (1-based), read from an argument list laid out as
// (l1, p1, l2, p2, ...). Numeric literals are field-element encodings.

#include <polarpart/gf.hpp>

#include <nlohmann/json.hpp>

#include <array>
#include <cctype>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace polarpart {

class ExprError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class Expr {
  public:
    enum class Op : std::uint8_t { var, constant, add, sub, mul, neg, pow };

    static Expr var(std::uint32_t slot) { return Expr(std::make_shared<Node>(Node{Op::var, slot, {}, {}})); }
    /// Line coordinate l_i as a variable (slot 2(i-1)).
    static Expr line(std::uint32_t i) { return var(2 * (i - 1)); }
    /// Point coordinate p_i as a variable (slot 2(i-1)+1).
    static Expr point(std::uint32_t i) { return var(2 * (i - 1) + 1); }
    static Expr constant(std::uint64_t code) { return Expr(std::make_shared<Node>(Node{Op::constant, code, {}, {}})); }

    friend Expr operator+(Expr a, Expr b) { return binary(Op::add, std::move(a), std::move(b)); }
    friend Expr operator-(Expr a, Expr b) { return binary(Op::sub, std::move(a), std::move(b)); }
    friend Expr operator*(Expr a, Expr b) { return binary(Op::mul, std::move(a), std::move(b)); }
    friend Expr operator-(Expr a) { return Expr(std::make_shared<Node>(Node{Op::neg, 0, a.node_, {}})); }
    Expr pow(std::uint64_t e) const { return Expr(std::make_shared<Node>(Node{Op::pow, e, node_, {}})); }

    Op op() const { return node_->op; }

    /// Highest variable slot referenced plus one (0 for closed expressions).
    std::uint32_t arity() const { return arity(*node_); }

    /// Same expression with every l_i and p_i exchanged.
    Expr swapped() const { return Expr(swap(node_)); }

    std::string to_string() const
    {
        std::string out;
        print(*node_, out, 0);
        return out;
    }

    nlohmann::json to_json() const { return to_json(*node_); }

    static Expr from_json(const nlohmann::json& j)
    {
        if (j.is_string())
            return parse(j.get<std::string>());
        if (j.is_number_unsigned() || j.is_number_integer())
            return constant(j.get<std::uint64_t>());
        if (!j.is_object())
            throw ExprError("expression must be a string, integer or object");
        if (j.contains("var"))
            return parse(j.at("var").get<std::string>());
        if (j.contains("const"))
            return constant(j.at("const").get<std::uint64_t>());
        const auto op = j.at("op").get<std::string>();
        const auto& args = j.at("args");
        auto arg = [&](std::size_t i) { return from_json(args.at(i)); };
        if (op == "add")
            return arg(0) + arg(1);
        if (op == "sub")
            return arg(0) - arg(1);
        if (op == "mul")
            return arg(0) * arg(1);
        if (op == "neg")
            return -arg(0);
        if (op == "pow")
            return arg(0).pow(j.at("exp").get<std::uint64_t>());
        throw ExprError("unknown operator '" + op + "'");
    }

    /// Parses e.g. "l1*p1^2 - p2*l3 + 1".
    static Expr parse(std::string_view text)
    {
        Parser ps{text, 0};
        Expr e = ps.sum();
        ps.skip();
        if (ps.pos != text.size())
            throw ExprError("unexpected '" + std::string(text.substr(ps.pos)) + "' in expression");
        return e;
    }

    /// Flattened postfix form for evaluation.
    class Program {
      public:
        std::uint32_t eval(const gf::Field& f, std::span<const std::uint32_t> args) const
        {
            std::array<std::uint32_t, 64> stack{};
            std::size_t top = 0;
            for (const auto& ins : code_) {
                switch (ins.op) {
                case Op::var:
                    stack[top++] = args[ins.value];
                    break;
                case Op::constant:
                    stack[top++] = static_cast<std::uint32_t>(ins.value);
                    break;
                case Op::add:
                    --top;
                    stack[top - 1] = f.raw_add(stack[top - 1], stack[top]);
                    break;
                case Op::sub:
                    --top;
                    stack[top - 1] = f.raw_sub(stack[top - 1], stack[top]);
                    break;
                case Op::mul:
                    --top;
                    stack[top - 1] = f.raw_mul(stack[top - 1], stack[top]);
                    break;
                case Op::neg:
                    stack[top - 1] = f.raw_neg(stack[top - 1]);
                    break;
                case Op::pow:
                    stack[top - 1] = f.raw_pow(stack[top - 1], ins.value);
                    break;
                }
            }
            return stack[0];
        }

      private:
        friend class Expr;
        struct Ins {
            Op op;
            std::uint64_t value;
        };
        std::vector<Ins> code_;
    };

    /// Compiles against a field; constants are range-checked here.
    Program compile(const gf::Field& f) const
    {
        Program prog;
        std::size_t depth = 0;
        std::size_t max_depth = 0;
        emit(*node_, f, prog, depth, max_depth);
        if (max_depth > 64)
            throw ExprError("expression too deep");
        return prog;
    }

    gf::Elem eval(const gf::Field& f, std::span<const gf::Elem> args) const
    {
        std::vector<std::uint32_t> raw;
        raw.reserve(args.size());
        for (auto a : args)
            raw.push_back(f.encode(a));
        if (arity() > raw.size())
            throw ExprError("expression needs " + std::to_string(arity()) + " arguments");
        return f.at(compile(f).eval(f, raw));
    }

  private:
    struct Node {
        Op op;
        std::uint64_t value; // slot, constant code or exponent
        std::shared_ptr<const Node> a;
        std::shared_ptr<const Node> b;
    };
    using NodePtr = std::shared_ptr<const Node>;

    explicit Expr(NodePtr n) : node_(std::move(n)) {}

    static Expr binary(Op op, Expr a, Expr b)
    {
        return Expr(std::make_shared<Node>(Node{op, 0, std::move(a.node_), std::move(b.node_)}));
    }

    static std::uint32_t arity(const Node& n)
    {
        switch (n.op) {
        case Op::var:
            return static_cast<std::uint32_t>(n.value) + 1;
        case Op::constant:
            return 0;
        case Op::neg:
        case Op::pow:
            return arity(*n.a);
        default:
            return std::max(arity(*n.a), arity(*n.b));
        }
    }

    static NodePtr swap(const NodePtr& n)
    {
        switch (n->op) {
        case Op::var:
            return std::make_shared<Node>(Node{Op::var, n->value ^ 1u, {}, {}});
        case Op::constant:
            return n;
        case Op::neg:
        case Op::pow:
            return std::make_shared<Node>(Node{n->op, n->value, swap(n->a), {}});
        default:
            return std::make_shared<Node>(Node{n->op, 0, swap(n->a), swap(n->b)});
        }
    }

    static std::string var_name(std::uint64_t slot)
    {
        return std::string(slot % 2 == 0 ? "l" : "p") + std::to_string(slot / 2 + 1);
    }

    static int precedence(Op op)
    {
        switch (op) {
        case Op::add:
        case Op::sub:
            return 1;
        case Op::mul:
            return 2;
        case Op::neg:
            return 3;
        case Op::pow:
            return 4;
        default:
            return 5;
        }
    }

    static void print(const Node& n, std::string& out, int parent)
    {
        const int prec = precedence(n.op);
        const bool paren = prec < parent;
        if (paren)
            out += '(';
        switch (n.op) {
        case Op::var:
            out += var_name(n.value);
            break;
        case Op::constant:
            out += std::to_string(n.value);
            break;
        case Op::add:
            print(*n.a, out, prec);
            out += " + ";
            print(*n.b, out, prec);
            break;
        case Op::sub:
            print(*n.a, out, prec);
            out += " - ";
            print(*n.b, out, prec + 1);
            break;
        case Op::mul:
            print(*n.a, out, prec);
            out += '*';
            print(*n.b, out, prec);
            break;
        case Op::neg:
            out += '-';
            print(*n.a, out, prec);
            break;
        case Op::pow:
            print(*n.a, out, prec + 1);
            out += '^';
            out += std::to_string(n.value);
            break;
        }
        if (paren)
            out += ')';
    }

    static nlohmann::json to_json(const Node& n)
    {
        switch (n.op) {
        case Op::var:
            return {{"var", var_name(n.value)}};
        case Op::constant:
            return {{"const", n.value}};
        case Op::neg:
            return {{"op", "neg"}, {"args", {to_json(*n.a)}}};
        case Op::pow:
            return {{"op", "pow"}, {"exp", n.value}, {"args", {to_json(*n.a)}}};
        case Op::add:
            return {{"op", "add"}, {"args", {to_json(*n.a), to_json(*n.b)}}};
        case Op::sub:
            return {{"op", "sub"}, {"args", {to_json(*n.a), to_json(*n.b)}}};
        case Op::mul:
            return {{"op", "mul"}, {"args", {to_json(*n.a), to_json(*n.b)}}};
        }
        return {};
    }

    static void emit(const Node& n, const gf::Field& f, Program& prog, std::size_t& depth,
                     std::size_t& max_depth)
    {
        auto push = [&] {
            ++depth;
            max_depth = std::max(max_depth, depth);
        };
        switch (n.op) {
        case Op::var:
            prog.code_.push_back({Op::var, n.value});
            push();
            return;
        case Op::constant:
            if (n.value >= f.order())
                throw ExprError("constant " + std::to_string(n.value) + " is not a field element");
            prog.code_.push_back({Op::constant, n.value});
            push();
            return;
        case Op::neg:
        case Op::pow:
            emit(*n.a, f, prog, depth, max_depth);
            prog.code_.push_back({n.op, n.value});
            return;
        default:
            emit(*n.a, f, prog, depth, max_depth);
            emit(*n.b, f, prog, depth, max_depth);
            prog.code_.push_back({n.op, 0});
            --depth;
            return;
        }
    }

    struct Parser {
        std::string_view s;
        std::size_t pos;

        void skip()
        {
            while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
                ++pos;
        }
        bool eat(char c)
        {
            skip();
            if (pos < s.size() && s[pos] == c) {
                ++pos;
                return true;
            }
            return false;
        }
        std::uint64_t number()
        {
            skip();
            if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
                throw ExprError("expected a number at offset " + std::to_string(pos));
            std::uint64_t v = 0;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
                v = v * 10 + static_cast<std::uint64_t>(s[pos++] - '0');
            return v;
        }
        Expr sum()
        {
            Expr e = product();
            for (;;) {
                if (eat('+'))
                    e = e + product();
                else if (eat('-'))
                    e = e - product();
                else
                    return e;
            }
        }
        Expr product()
        {
            Expr e = unary();
            while (eat('*'))
                e = e * unary();
            return e;
        }
        Expr unary()
        {
            if (eat('-'))
                return -unary();
            Expr e = atom();
            if (eat('^'))
                e = e.pow(number());
            return e;
        }
        Expr atom()
        {
            skip();
            if (eat('(')) {
                Expr e = sum();
                if (!eat(')'))
                    throw ExprError("missing ')'");
                return e;
            }
            if (pos < s.size() && (s[pos] == 'l' || s[pos] == 'p')) {
                const char side = s[pos++];
                const std::uint64_t i = number();
                if (i == 0)
                    throw ExprError("coordinate indices start at 1");
                const auto slot = static_cast<std::uint32_t>(2 * (i - 1) + (side == 'p' ? 1 : 0));
                return var(slot);
            }
            return constant(number());
        }
    };

    NodePtr node_;
};

} // namespace polarpart
