#include "bihardy/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace bihardy::expr {

namespace {

std::string join(const std::set<std::string>& items) {
    std::string out;
    for (const auto& s : items) {
        if (!out.empty()) out += ", ";
        out += s;
    }
    return out;
}

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, comma, end };

struct Token {
    Tok kind;
    std::size_t offset;
    std::string text;
    double number = 0.0;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        tok_ = Token{Tok::end, pos_, {}, 0.0};
        if (pos_ >= src_.size()) return;
        const char c = src_[pos_];
        const std::size_t start = pos_;
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t i = pos_;
            while (i < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i]))) ++i;
            if (i < src_.size() && src_[i] == '.') {
                ++i;
                while (i < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i]))) ++i;
            }
            if (i < src_.size() && (src_[i] == 'e' || src_[i] == 'E')) {
                std::size_t j = i + 1;
                if (j < src_.size() && (src_[j] == '+' || src_[j] == '-')) ++j;
                if (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) {
                    while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
                    i = j;
                }
            }
            const std::string text(src_.substr(start, i - start));
            double value = 0.0;
            auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
            if (ec != std::errc() || ptr != text.data() + text.size())
                throw ParseError(start, {"number"}, "malformed number '" + text + "'");
            tok_ = Token{Tok::number, start, text, value};
            pos_ = i;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t i = pos_;
            while (i < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[i])) || src_[i] == '_'))
                ++i;
            tok_ = Token{Tok::ident, start, std::string(src_.substr(start, i - start))};
            pos_ = i;
            return;
        }
        Tok kind;
        switch (c) {
            case '+': kind = Tok::plus; break;
            case '-': kind = Tok::minus; break;
            case '*': kind = Tok::star; break;
            case '/': kind = Tok::slash; break;
            case '^': kind = Tok::caret; break;
            case '(': kind = Tok::lparen; break;
            case ')': kind = Tok::rparen; break;
            case ',': kind = Tok::comma; break;
            default:
                throw ParseError(start, {"number", "identifier", "(", "-"},
                                 std::string("unexpected character '") + c + "'");
        }
        tok_ = Token{kind, start, std::string(1, c)};
        ++pos_;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    Token tok_{Tok::end, 0, {}};
};

using NodePtr = std::shared_ptr<const Node>;

NodePtr make(NodeKind kind, std::vector<NodePtr> args = {}) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->args = std::move(args);
    return n;
}

// expr   := term (("+"|"-") term)*
// term   := unary (("*"|"/") unary)*
// unary  := "-" unary | power
// power  := atom ("^" unary)?
//
// Exponentiation binds tighter than unary minus, so -x^2 = -(x^2), while an
// exponent may itself carry a sign (x^-2).
class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) {}

    NodePtr parse_all() {
        NodePtr e = parse_expr();
        if (lex_.peek().kind != Tok::end)
            throw ParseError(lex_.peek().offset, {"+", "-", "*", "/", "^", "end of input"},
                             "unexpected token '" + lex_.peek().text + "'");
        return e;
    }

private:
    NodePtr parse_expr() {
        NodePtr lhs = parse_term();
        for (;;) {
            const Tok k = lex_.peek().kind;
            if (k != Tok::plus && k != Tok::minus) return lhs;
            lex_.take();
            lhs = make(k == Tok::plus ? NodeKind::add : NodeKind::sub, {lhs, parse_term()});
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_unary();
        for (;;) {
            const Tok k = lex_.peek().kind;
            if (k != Tok::star && k != Tok::slash) return lhs;
            lex_.take();
            lhs = make(k == Tok::star ? NodeKind::mul : NodeKind::div, {lhs, parse_unary()});
        }
    }

    NodePtr parse_unary() {
        if (lex_.peek().kind == Tok::minus) {
            lex_.take();
            return make(NodeKind::neg, {parse_unary()});
        }
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_atom();
        if (lex_.peek().kind == Tok::caret) {
            lex_.take();
            return make(NodeKind::pow, {base, parse_unary()});
        }
        return base;
    }

    NodePtr parse_atom() {
        const Token t = lex_.peek();
        switch (t.kind) {
            case Tok::number: {
                lex_.take();
                auto n = std::make_shared<Node>();
                n->kind = NodeKind::number;
                n->number = t.number;
                return n;
            }
            case Tok::lparen: {
                lex_.take();
                NodePtr e = parse_expr();
                expect(Tok::rparen, ")");
                return e;
            }
            case Tok::ident: return parse_ident();
            default:
                throw ParseError(t.offset, {"number", "identifier", "(", "-"},
                                 t.kind == Tok::end ? "unexpected end of input"
                                                    : "unexpected token '" + t.text + "'");
        }
    }

    NodePtr parse_ident() {
        const Token t = lex_.take();
        if (lex_.peek().kind == Tok::lparen) {
            static const std::map<std::string, std::pair<Function, int>> table = {
                {"exp", {Function::exp, 1}},   {"log", {Function::log, 1}},
                {"sqrt", {Function::sqrt, 1}}, {"abs", {Function::abs, 1}},
                {"pow", {Function::pow, 2}}};
            auto it = table.find(t.text);
            if (it == table.end())
                throw ParseError(t.offset, {"exp", "log", "sqrt", "abs", "pow"},
                                 "unknown function '" + t.text + "'");
            lex_.take();
            std::vector<NodePtr> args{parse_expr()};
            while (lex_.peek().kind == Tok::comma) {
                lex_.take();
                args.push_back(parse_expr());
            }
            expect(Tok::rparen, ")");
            if (static_cast<int>(args.size()) != it->second.second)
                throw ParseError(t.offset, {std::to_string(it->second.second) + " argument(s)"},
                                 "wrong number of arguments to '" + t.text + "'");
            auto n = std::make_shared<Node>();
            n->kind = NodeKind::call;
            n->fn = it->second.first;
            n->name = t.text;
            n->args = std::move(args);
            return n;
        }
        auto n = std::make_shared<Node>();
        if (t.text == "x") {
            n->kind = NodeKind::variable;
        } else if (t.text == "pi") {
            n->kind = NodeKind::number;
            n->number = std::numbers::pi;
            n->name = "pi";
        } else if (t.text == "e") {
            n->kind = NodeKind::number;
            n->number = std::numbers::e;
            n->name = "e";
        } else {
            n->kind = NodeKind::parameter;
            n->name = t.text;
        }
        return n;
    }

    void expect(Tok kind, const char* text) {
        if (lex_.peek().kind != kind)
            throw ParseError(lex_.peek().offset, {text},
                             std::string("expected '") + text + "'");
        lex_.take();
    }

    Lexer lex_;
};

void collect_params(const Node& n, std::set<std::string>& out) {
    if (n.kind == NodeKind::parameter) out.insert(n.name);
    for (const auto& a : n.args) collect_params(*a, out);
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string print(const Node& n) {
    switch (n.kind) {
        case NodeKind::number: return n.name.empty() ? format_number(n.number) : n.name;
        case NodeKind::variable: return "x";
        case NodeKind::parameter: return n.name;
        case NodeKind::add: return "(" + print(*n.args[0]) + " + " + print(*n.args[1]) + ")";
        case NodeKind::sub: return "(" + print(*n.args[0]) + " - " + print(*n.args[1]) + ")";
        case NodeKind::mul: return "(" + print(*n.args[0]) + " * " + print(*n.args[1]) + ")";
        case NodeKind::div: return "(" + print(*n.args[0]) + " / " + print(*n.args[1]) + ")";
        case NodeKind::pow: return "(" + print(*n.args[0]) + " ^ " + print(*n.args[1]) + ")";
        case NodeKind::neg: return "(-" + print(*n.args[0]) + ")";
        case NodeKind::call: {
            std::string s = n.name + "(";
            for (std::size_t i = 0; i < n.args.size(); ++i) {
                if (i) s += ", ";
                s += print(*n.args[i]);
            }
            return s + ")";
        }
    }
    return {};
}

bool equal_nodes(const Node& a, const Node& b) {
    if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
    switch (a.kind) {
        case NodeKind::number:
            if (a.number != b.number) return false;
            break;
        case NodeKind::parameter:
            if (a.name != b.name) return false;
            break;
        case NodeKind::call:
            if (a.fn != b.fn) return false;
            break;
        default: break;
    }
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!equal_nodes(*a.args[i], *b.args[i])) return false;
    return true;
}

double checked_pow(double base, double ex) {
    if (base < 0.0 && std::floor(ex) != ex)
        throw DomainError("negative base " + format_number(base) + " raised to non-integer power " +
                          format_number(ex));
    if (base == 0.0 && ex < 0.0) throw DomainError("zero raised to a negative power");
    return std::pow(base, ex);
}

}  // namespace

ParseError::ParseError(std::size_t offset, std::set<std::string> expected, const std::string& what)
    : ValidationError("parse error at offset " + std::to_string(offset) + ": " + what +
                      " (expected: " + join(expected) + ")"),
      offset_(offset),
      expected_(std::move(expected)) {}

UnboundParameter::UnboundParameter(const std::string& name)
    : ValidationError("unbound parameter '" + name + "'"), name_(name) {}

DensityExpr DensityExpr::parse(std::string_view source) {
    if (source.find_first_not_of(" \t\r\n") == std::string_view::npos)
        throw ParseError(0, {"number", "identifier", "(", "-"}, "empty expression");
    DensityExpr e;
    e.root_ = Parser(source).parse_all();
    e.source_ = std::string(source);
    return e;
}

Compiled DensityExpr::compile(const ParamBindings& params) const {
    if (!root_) throw ValidationError("empty expression");
    Compiled c;
    std::size_t depth = 0;
    auto emit = [&](Compiled::Op op, double v, int pops, int pushes) {
        c.code_.push_back({op, v});
        depth = depth - static_cast<std::size_t>(pops) + static_cast<std::size_t>(pushes);
        c.max_depth_ = std::max(c.max_depth_, depth);
    };
    auto rec = [&](auto&& self, const Node& n) -> void {
        using Op = Compiled::Op;
        switch (n.kind) {
            case NodeKind::number: emit(Op::push, n.number, 0, 1); return;
            case NodeKind::variable: emit(Op::var, 0.0, 0, 1); return;
            case NodeKind::parameter: {
                auto it = params.find(n.name);
                if (it == params.end()) throw UnboundParameter(n.name);
                emit(Op::push, it->second, 0, 1);
                return;
            }
            case NodeKind::neg:
                self(self, *n.args[0]);
                emit(Op::neg, 0.0, 1, 1);
                return;
            case NodeKind::call:
                for (const auto& a : n.args) self(self, *a);
                switch (n.fn) {
                    case Function::exp: emit(Op::exp, 0.0, 1, 1); return;
                    case Function::log: emit(Op::log, 0.0, 1, 1); return;
                    case Function::sqrt: emit(Op::sqrt, 0.0, 1, 1); return;
                    case Function::abs: emit(Op::abs, 0.0, 1, 1); return;
                    case Function::pow: emit(Op::pow, 0.0, 2, 1); return;
                }
                return;
            default: break;
        }
        self(self, *n.args[0]);
        self(self, *n.args[1]);
        switch (n.kind) {
            case NodeKind::add: emit(Op::add, 0.0, 2, 1); break;
            case NodeKind::sub: emit(Op::sub, 0.0, 2, 1); break;
            case NodeKind::mul: emit(Op::mul, 0.0, 2, 1); break;
            case NodeKind::div: emit(Op::div, 0.0, 2, 1); break;
            case NodeKind::pow: emit(Op::pow, 0.0, 2, 1); break;
            default: break;
        }
    };
    rec(rec, *root_);
    return c;
}

double Compiled::operator()(double x) const {
    constexpr std::size_t kInline = 32;
    double small[kInline] = {};
    std::vector<double> big;
    double* st = small;
    if (max_depth_ > kInline) {
        big.resize(max_depth_);
        st = big.data();
    }
    std::size_t sp = 0;
    for (const Instr& in : code_) {
        switch (in.op) {
            case Op::push: st[sp++] = in.value; break;
            case Op::var: st[sp++] = x; break;
            case Op::add: --sp; st[sp - 1] += st[sp]; break;
            case Op::sub: --sp; st[sp - 1] -= st[sp]; break;
            case Op::mul: --sp; st[sp - 1] *= st[sp]; break;
            case Op::div:
                --sp;
                if (st[sp] == 0.0) throw DomainError("division by zero");
                st[sp - 1] /= st[sp];
                break;
            case Op::pow:
                --sp;
                st[sp - 1] = checked_pow(st[sp - 1], st[sp]);
                break;
            case Op::neg: st[sp - 1] = -st[sp - 1]; break;
            case Op::exp: st[sp - 1] = std::exp(st[sp - 1]); break;
            case Op::log:
                if (!(st[sp - 1] > 0.0))
                    throw DomainError("log of nonpositive value " + format_number(st[sp - 1]));
                st[sp - 1] = std::log(st[sp - 1]);
                break;
            case Op::sqrt:
                if (st[sp - 1] < 0.0)
                    throw DomainError("sqrt of negative value " + format_number(st[sp - 1]));
                st[sp - 1] = std::sqrt(st[sp - 1]);
                break;
            case Op::abs: st[sp - 1] = std::fabs(st[sp - 1]); break;
        }
    }
    return st[0];
}

double DensityExpr::evaluate(double x, const ParamBindings& params) const {
    return compile(params)(x);
}

std::set<std::string> DensityExpr::parameters() const {
    std::set<std::string> out;
    if (root_) collect_params(*root_, out);
    return out;
}

std::string DensityExpr::to_string() const { return root_ ? print(*root_) : std::string(); }

bool structurally_equal(const DensityExpr& a, const DensityExpr& b) {
    if (!a.root_ || !b.root_) return a.root_ == b.root_;
    return equal_nodes(*a.root_, *b.root_);
}

}  // namespace bihardy::expr
