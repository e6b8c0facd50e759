#include "wkc/parser.hpp"

#include <cctype>

#include "wkc/errors.hpp"

namespace wkc {

namespace {

struct Token {
    enum Type { Ident, True, False, Not, And, Or, Implies, Iff, LParen, RParen, End };
    Type type;
    std::string text;
    int line;
    int column;
};

class Lexer {
public:
    Lexer(const std::string& text, const std::string& source)
        : text_(text), source_(source) {
        next();
    }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        next();
        return t;
    }

    [[noreturn]] void fail(const std::string& message, const Token& at) const {
        throw ParseError(message, source_, at.line, at.column);
    }

private:
    void next() {
        skip_space();
        tok_.line = line_;
        tok_.column = column_;
        if (pos_ >= text_.size()) {
            tok_.type = Token::End;
            tok_.text = "<end of input>";
            return;
        }
        char c = text_[pos_];
        if (c == '(') { advance(); set(Token::LParen, "("); return; }
        if (c == ')') { advance(); set(Token::RParen, ")"); return; }
        if (c == '~') { advance(); set(Token::Not, "~"); return; }
        if (c == '&') { advance(); set(Token::And, "&"); return; }
        if (c == '|') { advance(); set(Token::Or, "|"); return; }
        if (c == '<') {
            if (text_.compare(pos_, 3, "<->") == 0) {
                advance(); advance(); advance();
                set(Token::Iff, "<->");
                return;
            }
            throw ParseError("unexpected '<'", source_, line_, column_);
        }
        if (c == '-') {
            if (text_.compare(pos_, 2, "->") == 0) {
                advance(); advance();
                set(Token::Implies, "->");
                return;
            }
            throw ParseError("unexpected '-'", source_, line_, column_);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                name += text_[pos_];
                advance();
            }
            if (name == "true") set(Token::True, name);
            else if (name == "false") set(Token::False, name);
            else set(Token::Ident, name);
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", source_, line_, column_);
    }

    void set(Token::Type type, std::string text) {
        tok_.type = type;
        tok_.text = std::move(text);
    }

    void skip_space() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    void advance() {
        if (text_[pos_] == '\n') { ++line_; column_ = 1; }
        else ++column_;
        ++pos_;
    }

    const std::string& text_;
    std::string source_;
    size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
    Token tok_;
};

class Parser {
public:
    explicit Parser(Lexer& lex) : lex_(lex) {}

    Formula formula() {
        Formula f = iff();
        if (lex_.peek().type != Token::End)
            lex_.fail("unexpected token '" + lex_.peek().text + "'", lex_.peek());
        return f;
    }

private:
    Formula iff() {
        Formula f = imp();
        while (lex_.peek().type == Token::Iff) {
            lex_.take();
            f = Formula::iff(std::move(f), imp());
        }
        return f;
    }

    Formula imp() {
        Formula f = disj();
        if (lex_.peek().type == Token::Implies) {
            lex_.take();
            return Formula::implies(std::move(f), imp());
        }
        return f;
    }

    Formula disj() {
        std::vector<Formula> parts{conj()};
        while (lex_.peek().type == Token::Or) {
            lex_.take();
            parts.push_back(conj());
        }
        return parts.size() == 1 ? std::move(parts.front()) : Formula::disj(std::move(parts));
    }

    Formula conj() {
        std::vector<Formula> parts{neg()};
        while (lex_.peek().type == Token::And) {
            lex_.take();
            parts.push_back(neg());
        }
        return parts.size() == 1 ? std::move(parts.front()) : Formula::conj(std::move(parts));
    }

    Formula neg() {
        if (lex_.peek().type == Token::Not) {
            lex_.take();
            return Formula::negation(neg());
        }
        return atom();
    }

    Formula atom() {
        Token t = lex_.take();
        switch (t.type) {
        case Token::True: return Formula::constant(true);
        case Token::False: return Formula::constant(false);
        case Token::Ident: return Formula::lit(t.text, true);
        case Token::LParen: {
            Formula f = iff();
            Token close = lex_.take();
            if (close.type != Token::RParen)
                lex_.fail("expected ')', found '" + close.text + "'", close);
            return f;
        }
        default:
            lex_.fail("expected formula, found '" + t.text + "'", t);
        }
    }

    Lexer& lex_;
};

} // namespace

Formula parse_formula(const std::string& text, const std::string& source) {
    Lexer lex(text, source);
    if (lex.peek().type == Token::End)
        throw ParseError("empty formula", source, lex.peek().line, lex.peek().column);
    Parser parser(lex);
    return parser.formula();
}

} // namespace wkc
