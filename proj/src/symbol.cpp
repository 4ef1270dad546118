#include "dirichlet/symbol.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <vector>

#include "dirichlet/error.hpp"

namespace dirichlet {

struct SymbolMap::Node {
    enum class Op { Const, Var, Add, Mul, Exp };
    Op op;
    Complex value;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const SymbolMap::Node>;
using Op = SymbolMap::Node::Op;
using Poly = std::vector<Complex>;

NodePtr make_node(Op op, Complex value = {}, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
    return std::make_shared<const SymbolMap::Node>(SymbolMap::Node{op, value, std::move(lhs), std::move(rhs)});
}

void trim(Poly& p) {
    while (p.size() > 1 && p.back() == Complex{}) p.pop_back();
}

// Polynomial coefficients in z, or nullopt when the tree contains exp of a non-constant.
std::optional<Poly> normalize(const SymbolMap::Node& node) {
    switch (node.op) {
        case Op::Const: return Poly{node.value};
        case Op::Var: return Poly{Complex{}, Complex{1.0, 0.0}};
        case Op::Add: {
            auto l = normalize(*node.lhs);
            auto r = normalize(*node.rhs);
            if (!l || !r) return std::nullopt;
            Poly out(std::max(l->size(), r->size()));
            for (std::size_t i = 0; i < l->size(); ++i) out[i] += (*l)[i];
            for (std::size_t i = 0; i < r->size(); ++i) out[i] += (*r)[i];
            trim(out);
            return out;
        }
        case Op::Mul: {
            auto l = normalize(*node.lhs);
            auto r = normalize(*node.rhs);
            const bool l_zero = l && l->size() == 1 && (*l)[0] == Complex{};
            const bool r_zero = r && r->size() == 1 && (*r)[0] == Complex{};
            if (l_zero || r_zero) return Poly{Complex{}};
            if (!l || !r) return std::nullopt;
            Poly out(l->size() + r->size() - 1);
            for (std::size_t i = 0; i < l->size(); ++i) {
                for (std::size_t j = 0; j < r->size(); ++j) out[i + j] += (*l)[i] * (*r)[j];
            }
            trim(out);
            return out;
        }
        case Op::Exp: {
            auto arg = normalize(*node.lhs);
            if (!arg || arg->size() != 1) return std::nullopt;
            return Poly{std::exp((*arg)[0])};
        }
    }
    return std::nullopt;
}

SymbolClass classify_tree(const SymbolMap::Node& root) {
    const auto poly = normalize(root);
    if (!poly) return {SymbolKind::NonAffine, {}, {}};
    if (poly->size() == 1) return {SymbolKind::Constant, {}, (*poly)[0]};
    if (poly->size() == 2) {
        const Complex a = (*poly)[1];
        const Complex b = (*poly)[0];
        if (a == Complex{1.0, 0.0}) return {SymbolKind::UnitAffine, a, b};
        return {SymbolKind::OtherAffine, a, b};
    }
    return {SymbolKind::NonAffine, {}, {}};
}

Complex eval(const SymbolMap::Node& node, Complex z) {
    switch (node.op) {
        case Op::Const: return node.value;
        case Op::Var: return z;
        case Op::Add: return eval(*node.lhs, z) + eval(*node.rhs, z);
        case Op::Mul: return eval(*node.lhs, z) * eval(*node.rhs, z);
        case Op::Exp: return std::exp(eval(*node.lhs, z));
    }
    return {};
}

std::string format_real(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_complex(Complex c) {
    if (c.imag() == 0.0) return format_real(c.real());
    if (c.real() == 0.0) return format_real(c.imag()) + "i";
    return "(" + format_real(c.real()) + (c.imag() < 0 ? "" : "+") + format_real(c.imag()) + "i)";
}

std::string print(const SymbolMap::Node& node) {
    switch (node.op) {
        case Op::Const: return format_complex(node.value);
        case Op::Var: return "z";
        case Op::Add: return "(" + print(*node.lhs) + " + " + print(*node.rhs) + ")";
        case Op::Mul: return print(*node.lhs) + "*" + print(*node.rhs);
        case Op::Exp: return "exp(" + print(*node.lhs) + ")";
    }
    return {};
}

class Parser {
public:
    explicit Parser(std::string_view text) {
        // Accept the Unicode minus sign (U+2212) as '-'.
        for (std::size_t i = 0; i < text.size(); ++i) {
            if (text.compare(i, 3, "\xE2\x88\x92") == 0) {
                src_ += '-';
                i += 2;
            } else if (!std::isspace(static_cast<unsigned char>(text[i]))) {
                src_ += text[i];
            }
        }
    }

    NodePtr parse() {
        if (src_.empty()) fail("empty expression");
        NodePtr root = expr();
        if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
        return root;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(ErrorCode::ParseError, msg + " at offset " + std::to_string(pos_) + " in \"" + src_ + "\"");
    }

    char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    bool starts_primary() const {
        const char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'z' || c == 'i' || c == '(' ||
               src_.compare(pos_, 3, "exp") == 0;
    }

    NodePtr expr() {
        NodePtr node = term();
        while (true) {
            if (accept('+')) {
                node = make_node(Op::Add, {}, node, term());
            } else if (accept('-')) {
                node = make_node(Op::Add, {}, node, make_node(Op::Mul, {}, make_node(Op::Const, -1.0), term()));
            } else {
                return node;
            }
        }
    }

    NodePtr term() {
        NodePtr node = unary();
        while (true) {
            if (accept('*')) {
                node = make_node(Op::Mul, {}, node, unary());
            } else if (starts_primary()) {
                node = make_node(Op::Mul, {}, node, unary());
            } else {
                return node;
            }
        }
    }

    NodePtr unary() {
        if (accept('-')) return make_node(Op::Mul, {}, make_node(Op::Const, -1.0), unary());
        if (accept('+')) return unary();
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (!accept('^')) return base;
        const std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) fail("expected a non-negative integer exponent");
        const unsigned long k = std::strtoul(src_.substr(start, pos_ - start).c_str(), nullptr, 10);
        if (k > 64) fail("exponent too large");
        NodePtr out = make_node(Op::Const, 1.0);
        for (unsigned long j = 0; j < k; ++j) out = j == 0 ? base : make_node(Op::Mul, {}, out, base);
        return out;
    }

    NodePtr primary() {
        const char c = peek();
        if (c == 'z') {
            ++pos_;
            return make_node(Op::Var);
        }
        if (c == 'i') {
            ++pos_;
            return make_node(Op::Const, Complex{0.0, 1.0});
        }
        if (src_.compare(pos_, 3, "exp") == 0) {
            pos_ += 3;
            if (!accept('(')) fail("expected '(' after exp");
            NodePtr arg = expr();
            if (!accept(')')) fail("expected ')'");
            return make_node(Op::Exp, {}, arg);
        }
        if (accept('(')) {
            NodePtr inner = expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        fail(c == '\0' ? "unexpected end of expression" : "unexpected '" + std::string(1, c) + "'");
    }

    NodePtr number() {
        const std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') ++pos_;
        if (peek() == 'e' || peek() == 'E') {
            std::size_t look = pos_ + 1;
            if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
            if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
                pos_ = look;
                while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            }
        }
        const std::string text = src_.substr(start, pos_ - start);
        char* end = nullptr;
        const double v = std::strtod(text.c_str(), &end);
        if (end != text.c_str() + text.size()) fail("malformed number '" + text + "'");
        if (accept('i')) return make_node(Op::Const, Complex{0.0, v});
        return make_node(Op::Const, Complex{v, 0.0});
    }

    std::string src_;
    std::size_t pos_ = 0;
};

}  // namespace

std::string_view to_string(SymbolKind kind) {
    switch (kind) {
        case SymbolKind::Constant: return "Constant";
        case SymbolKind::UnitAffine: return "UnitAffine";
        case SymbolKind::OtherAffine: return "OtherAffine";
        case SymbolKind::NonAffine: return "NonAffine";
    }
    return "NonAffine";
}

SymbolMap::SymbolMap(std::shared_ptr<const Node> root) : root_(std::move(root)), class_(classify_tree(*root_)) {}

SymbolMap SymbolMap::parse(std::string_view text) { return SymbolMap(Parser(text).parse()); }

SymbolMap SymbolMap::constant(Complex c) { return SymbolMap(make_node(Op::Const, c)); }

SymbolMap SymbolMap::identity() { return SymbolMap(make_node(Op::Var)); }

SymbolMap SymbolMap::affine(Complex a, Complex b) {
    return SymbolMap(make_node(Op::Add, {}, make_node(Op::Mul, {}, make_node(Op::Const, a), make_node(Op::Var)),
                               make_node(Op::Const, b)));
}

SymbolMap operator+(const SymbolMap& lhs, const SymbolMap& rhs) {
    return SymbolMap(make_node(Op::Add, {}, lhs.root_, rhs.root_));
}

SymbolMap operator*(const SymbolMap& lhs, const SymbolMap& rhs) {
    return SymbolMap(make_node(Op::Mul, {}, lhs.root_, rhs.root_));
}

SymbolMap exp(const SymbolMap& arg) { return SymbolMap(make_node(Op::Exp, {}, arg.root_)); }

Complex SymbolMap::operator()(Complex z) const { return eval(*root_, z); }

std::string SymbolMap::to_string() const { return print(*root_); }

}  // namespace dirichlet
