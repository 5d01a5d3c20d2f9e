#include "isomean/error.hpp"
#include "isomean/expr.hpp"

#include <cctype>
#include <charconv>
#include <numbers>

namespace isomean {

namespace {

// expr  := term (('+'|'-') term)*
// term  := unary (('*'|'/') unary)*
// unary := '-' unary | power
// power := atom ('^' unary)?
// atom  := number | 'x' | 'y' | 'pi' | 'e' | ident '(' expr ')' | '(' expr ')'
class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expr parse() {
        skip_space();
        if (pos_ == text_.size())
            throw ParseError(0, "empty expression");
        Expr e = expr();
        skip_space();
        if (pos_ != text_.size())
            throw ParseError(pos_, "unexpected '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            if (pos_ >= text_.size())
                throw ParseError(pos_, std::string("expected '") + c + "' before end of input");
            throw ParseError(pos_, std::string("expected '") + c + "'");
        }
    }

    Expr expr() {
        Expr lhs = term();
        for (;;) {
            if (accept('+'))
                lhs = lhs + term();
            else if (accept('-'))
                lhs = lhs - term();
            else
                return lhs;
        }
    }

    Expr term() {
        Expr lhs = unary();
        for (;;) {
            if (accept('*'))
                lhs = lhs * unary();
            else if (accept('/'))
                lhs = lhs / unary();
            else
                return lhs;
        }
    }

    Expr unary() {
        if (accept('-'))
            return -unary();
        return power();
    }

    Expr power() {
        Expr base = atom();
        if (accept('^'))
            return isomean::pow(base, unary());
        return base;
    }

    Expr atom() {
        skip_space();
        if (pos_ >= text_.size())
            throw ParseError(pos_, "unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
            return identifier();
        throw ParseError(pos_, "unexpected '" + std::string(1, c) + "'");
    }

    Expr number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            std::size_t n = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
                ++n;
            }
            return n;
        };
        std::size_t n = digits();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            n += digits();
        }
        if (n == 0)
            throw ParseError(start, "malformed number");
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t p = pos_ + 1;
            if (p < text_.size() && (text_[p] == '+' || text_[p] == '-'))
                ++p;
            if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
                pos_ = p;
                digits();
            }
        }
        double v = 0.0;
        const char* first = text_.data() + start;
        const char* last = text_.data() + pos_;
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last)
            throw ParseError(start, "malformed number");
        return Expr(v);
    }

    Expr identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        const std::string_view id = text_.substr(start, pos_ - start);
        if (id == "x" || id == "y") {
            if (var_letter_ != 0 && var_letter_ != id[0])
                throw ParseError(start, "expression mixes variables x and y");
            var_letter_ = id[0];
            return Expr::variable();
        }
        if (id == "pi")
            return Expr::named_constant("pi", std::numbers::pi);
        if (id == "e")
            return Expr::named_constant("e", std::numbers::e);

        static constexpr std::pair<std::string_view, Op> functions[] = {
            {"ln", Op::Ln},     {"exp", Op::Exp},   {"sin", Op::Sin},   {"cos", Op::Cos},
            {"tan", Op::Tan},   {"sinh", Op::Sinh}, {"cosh", Op::Cosh}, {"abs", Op::Abs},
        };
        const bool is_sqrt = id == "sqrt";
        Op fn = Op::Const;
        for (const auto& [name, op] : functions)
            if (name == id)
                fn = op;
        if (!is_sqrt && fn == Op::Const)
            throw ParseError(start, "unknown identifier '" + std::string(id) + "'");
        expect('(');
        Expr arg = expr();
        expect(')');
        return is_sqrt ? isomean::sqrt(arg) : apply(fn, arg);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    char var_letter_ = 0;
};

} // namespace

Expr parse(std::string_view text) {
    return Parser(text).parse();
}

} // namespace isomean
