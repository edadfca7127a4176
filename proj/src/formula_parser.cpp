#include "cellcheck/errors.hpp"
#include "cellcheck/formula.hpp"

#include <cctype>
#include <cstdlib>

namespace cellcheck {

std::string_view operator_symbol(BinaryOperator op) {
    switch (op) {
        case BinaryOperator::Add: return "+";
        case BinaryOperator::Subtract: return "-";
        case BinaryOperator::Multiply: return "*";
        case BinaryOperator::Divide: return "/";
        case BinaryOperator::Power: return "^";
        case BinaryOperator::Concat: return "&";
        case BinaryOperator::Equal: return "=";
        case BinaryOperator::NotEqual: return "<>";
        case BinaryOperator::Less: return "<";
        case BinaryOperator::LessEqual: return "<=";
        case BinaryOperator::Greater: return ">";
        case BinaryOperator::GreaterEqual: return ">=";
    }
    return "?";
}

std::string_view operator_symbol(UnaryOperator op) {
    switch (op) {
        case UnaryOperator::Negate: return "-";
        case UnaryOperator::Plus: return "+";
        case UnaryOperator::Percent: return "%";
    }
    return "?";
}

int precedence(BinaryOperator op) {
    switch (op) {
        case BinaryOperator::Equal:
        case BinaryOperator::NotEqual:
        case BinaryOperator::Less:
        case BinaryOperator::LessEqual:
        case BinaryOperator::Greater:
        case BinaryOperator::GreaterEqual: return 1;
        case BinaryOperator::Concat: return 2;
        case BinaryOperator::Add:
        case BinaryOperator::Subtract: return 3;
        case BinaryOperator::Multiply:
        case BinaryOperator::Divide: return 4;
        case BinaryOperator::Power: return 5;
    }
    return 0;
}

Expr number(std::string text) {
    double value = std::strtod(text.c_str(), nullptr);
    return Expr{NumberLiteral{std::move(text), value}};
}
Expr text(std::string value) { return Expr{TextLiteral{std::move(value)}}; }
Expr boolean(bool value) { return Expr{BooleanLiteral{value}}; }
Expr cell(int column, int row, bool col_absolute, bool row_absolute, std::optional<std::string> sheet) {
    return Expr{CellRef{std::move(sheet), column, row, col_absolute, row_absolute}};
}
Expr range(CellRef start, CellRef end) {
    end.sheet = start.sheet;
    return Expr{RangeRef{std::move(start), std::move(end)}};
}
Expr call(std::string name, std::vector<Expr> args) {
    return Expr{FunctionCall{to_upper(name), std::move(args)}};
}
Expr binary(BinaryOperator op, Expr left, Expr right) {
    return Expr{BinaryOp{op, std::move(left), std::move(right)}};
}
Expr unary(UnaryOperator op, Expr operand) { return Expr{UnaryOp{op, std::move(operand)}}; }
Expr paren(Expr inner) { return Expr{Paren{std::move(inner)}}; }

namespace {

enum class TokenKind {
    Number, String, Word, QuotedSheet, Bang, Colon, Comma, LParen, RParen,
    Plus, Minus, Star, Slash, Caret, Ampersand, Percent,
    Equal, NotEqual, Less, LessEqual, Greater, GreaterEqual, End,
};

struct Token {
    TokenKind kind;
    std::string text;
    std::size_t position;
};

bool is_word_char(char ch) {
    auto c = static_cast<unsigned char>(ch);
    return std::isalnum(c) || c == '_' || c == '.' || c == '$';
}

std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> tokens;
    std::size_t i = 1;  // skip "="
    while (true) {
        while (i < src.size() && std::isspace(static_cast<unsigned char>(src[i]))) ++i;
        if (i >= src.size()) break;
        std::size_t start = i;
        char ch = src[i];
        auto single = [&](TokenKind kind) {
            tokens.push_back({kind, std::string(1, ch), start});
            ++i;
        };
        if (std::isdigit(static_cast<unsigned char>(ch)) ||
            (ch == '.' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
            while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
            if (i < src.size() && src[i] == '.') {
                ++i;
                while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
            }
            if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
                std::size_t j = i + 1;
                if (j < src.size() && (src[j] == '+' || src[j] == '-')) ++j;
                if (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
                    while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
                    i = j;
                } else {
                    throw ParseError(i, "malformed number exponent");
                }
            }
            if (i < src.size() && (std::isalpha(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
                throw ParseError(start, "malformed number");
            }
            std::string text(src.substr(start, i - start));
            for (auto& c : text) {
                if (c == 'e') c = 'E';
            }
            tokens.push_back({TokenKind::Number, std::move(text), start});
        } else if (ch == '"') {
            std::string value;
            ++i;
            bool closed = false;
            while (i < src.size()) {
                if (src[i] == '"') {
                    if (i + 1 < src.size() && src[i + 1] == '"') {
                        value.push_back('"');
                        i += 2;
                        continue;
                    }
                    closed = true;
                    ++i;
                    break;
                }
                value.push_back(src[i++]);
            }
            if (!closed) throw ParseError(start, "unterminated string literal");
            tokens.push_back({TokenKind::String, std::move(value), start});
        } else if (ch == '\'') {
            std::string value;
            ++i;
            bool closed = false;
            while (i < src.size()) {
                if (src[i] == '\'') {
                    if (i + 1 < src.size() && src[i + 1] == '\'') {
                        value.push_back('\'');
                        i += 2;
                        continue;
                    }
                    closed = true;
                    ++i;
                    break;
                }
                value.push_back(src[i++]);
            }
            if (!closed) throw ParseError(start, "unterminated sheet name");
            if (value.empty()) throw ParseError(start, "empty sheet name");
            tokens.push_back({TokenKind::QuotedSheet, std::move(value), start});
        } else if (is_word_char(ch)) {
            while (i < src.size() && is_word_char(src[i])) ++i;
            tokens.push_back({TokenKind::Word, std::string(src.substr(start, i - start)), start});
        } else {
            switch (ch) {
                case '!': single(TokenKind::Bang); break;
                case ':': single(TokenKind::Colon); break;
                case ',': single(TokenKind::Comma); break;
                case '(': single(TokenKind::LParen); break;
                case ')': single(TokenKind::RParen); break;
                case '+': single(TokenKind::Plus); break;
                case '-': single(TokenKind::Minus); break;
                case '*': single(TokenKind::Star); break;
                case '/': single(TokenKind::Slash); break;
                case '^': single(TokenKind::Caret); break;
                case '&': single(TokenKind::Ampersand); break;
                case '%': single(TokenKind::Percent); break;
                case '=': single(TokenKind::Equal); break;
                case '<':
                    if (i + 1 < src.size() && src[i + 1] == '>') {
                        tokens.push_back({TokenKind::NotEqual, "<>", start});
                        i += 2;
                    } else if (i + 1 < src.size() && src[i + 1] == '=') {
                        tokens.push_back({TokenKind::LessEqual, "<=", start});
                        i += 2;
                    } else {
                        single(TokenKind::Less);
                    }
                    break;
                case '>':
                    if (i + 1 < src.size() && src[i + 1] == '=') {
                        tokens.push_back({TokenKind::GreaterEqual, ">=", start});
                        i += 2;
                    } else {
                        single(TokenKind::Greater);
                    }
                    break;
                default:
                    throw ParseError(start, std::string("unexpected character '") + ch + "'");
            }
        }
    }
    tokens.push_back({TokenKind::End, "", src.size()});
    return tokens;
}

std::optional<BinaryOperator> binary_operator(TokenKind kind) {
    switch (kind) {
        case TokenKind::Plus: return BinaryOperator::Add;
        case TokenKind::Minus: return BinaryOperator::Subtract;
        case TokenKind::Star: return BinaryOperator::Multiply;
        case TokenKind::Slash: return BinaryOperator::Divide;
        case TokenKind::Caret: return BinaryOperator::Power;
        case TokenKind::Ampersand: return BinaryOperator::Concat;
        case TokenKind::Equal: return BinaryOperator::Equal;
        case TokenKind::NotEqual: return BinaryOperator::NotEqual;
        case TokenKind::Less: return BinaryOperator::Less;
        case TokenKind::LessEqual: return BinaryOperator::LessEqual;
        case TokenKind::Greater: return BinaryOperator::Greater;
        case TokenKind::GreaterEqual: return BinaryOperator::GreaterEqual;
        default: return std::nullopt;
    }
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    Expr parse() {
        if (peek().kind == TokenKind::End) throw ParseError(peek().position, "empty formula");
        Expr result = expression(1);
        if (peek().kind != TokenKind::End) {
            if (peek().kind == TokenKind::RParen) throw ParseError(peek().position, "unbalanced ')'");
            throw ParseError(peek().position, "unexpected '" + peek().text + "'");
        }
        return result;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        std::size_t index = pos_ + ahead;
        return index < tokens_.size() ? tokens_[index] : tokens_.back();
    }
    const Token& advance() { return tokens_[pos_++]; }

    static bool dangles(TokenKind kind) {
        return binary_operator(kind).has_value() || kind == TokenKind::Minus || kind == TokenKind::Plus;
    }

    Expr expression(int min_precedence) {
        Expr left = prefix();
        while (true) {
            auto op = binary_operator(peek().kind);
            if (!op || precedence(*op) < min_precedence) break;
            advance();
            Expr right = expression(precedence(*op) + 1);
            left = binary(*op, std::move(left), std::move(right));
        }
        return left;
    }

    Expr prefix() {
        if (peek().kind == TokenKind::Minus || peek().kind == TokenKind::Plus) {
            auto op = advance().kind == TokenKind::Minus ? UnaryOperator::Negate : UnaryOperator::Plus;
            return unary(op, prefix());
        }
        return postfix();
    }

    Expr postfix() {
        Expr operand = primary();
        while (peek().kind == TokenKind::Percent) {
            advance();
            operand = unary(UnaryOperator::Percent, std::move(operand));
        }
        return operand;
    }

    Expr primary() {
        const Token& tok = peek();
        switch (tok.kind) {
            case TokenKind::Number: {
                advance();
                return number(tok.text);
            }
            case TokenKind::String: {
                advance();
                return text(tok.text);
            }
            case TokenKind::LParen: {
                advance();
                Expr inner = expression(1);
                expect(TokenKind::RParen, "expected ')'");
                return paren(std::move(inner));
            }
            case TokenKind::QuotedSheet: {
                advance();
                expect(TokenKind::Bang, "expected '!' after sheet name");
                return reference(tok.text);
            }
            case TokenKind::Word: {
                if (peek(1).kind == TokenKind::Bang) {
                    advance();
                    advance();
                    return reference(tok.text);
                }
                if (peek(1).kind == TokenKind::LParen) return function_call();
                if (parse_a1(tok.text)) return reference(std::nullopt);
                std::string upper = to_upper(tok.text);
                if (upper == "TRUE" || upper == "FALSE") {
                    advance();
                    return boolean(upper == "TRUE");
                }
                throw ParseError(tok.position, "unknown name '" + tok.text + "'");
            }
            case TokenKind::End:
                if (pos_ > 0 && dangles(tokens_[pos_ - 1].kind)) {
                    throw ParseError(tokens_[pos_ - 1].position, "dangling operator '" + tokens_[pos_ - 1].text + "'");
                }
                throw ParseError(tok.position, "unexpected end of formula");
            case TokenKind::RParen:
                throw ParseError(tok.position, "unbalanced ')'");
            default:
                throw ParseError(tok.position, "dangling operator '" + tok.text + "'");
        }
    }

    CellRef cell_reference(const std::optional<std::string>& sheet) {
        const Token& tok = peek();
        if (tok.kind != TokenKind::Word) throw ParseError(tok.position, "expected cell reference");
        auto a1 = parse_a1(tok.text);
        if (!a1) throw ParseError(tok.position, "malformed reference '" + tok.text + "'");
        advance();
        return CellRef{sheet, a1->column, a1->row, a1->col_absolute, a1->row_absolute};
    }

    Expr reference(const std::optional<std::string>& sheet) {
        CellRef start = cell_reference(sheet);
        if (peek().kind != TokenKind::Colon) return Expr{std::move(start)};
        advance();
        std::optional<std::string> end_sheet = sheet;
        if (peek().kind == TokenKind::QuotedSheet || (peek().kind == TokenKind::Word && peek(1).kind == TokenKind::Bang)) {
            const Token& qualifier = advance();
            if (qualifier.kind == TokenKind::QuotedSheet) {
                expect(TokenKind::Bang, "expected '!' after sheet name");
            } else {
                advance();
            }
            if (!sheet || !iequals(*sheet, qualifier.text)) {
                throw ParseError(qualifier.position, "range spans different worksheets");
            }
        }
        CellRef end = cell_reference(end_sheet);
        return range(std::move(start), std::move(end));
    }

    Expr function_call() {
        const Token& name = advance();
        if (name.text.find('$') != std::string::npos) {
            throw ParseError(name.position, "malformed function name '" + name.text + "'");
        }
        advance();  // "("
        std::vector<Expr> args;
        if (peek().kind == TokenKind::RParen) {
            advance();
            return call(name.text, std::move(args));
        }
        while (true) {
            args.push_back(expression(1));
            if (peek().kind == TokenKind::Comma) {
                advance();
                continue;
            }
            expect(TokenKind::RParen, "expected ')' to close " + to_upper(name.text) + "(");
            break;
        }
        return call(name.text, std::move(args));
    }

    void expect(TokenKind kind, const std::string& message) {
        if (peek().kind != kind) throw ParseError(peek().position, message);
        advance();
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr parse_formula(std::string_view source) {
    if (source.empty() || source.front() != '=') throw ParseError(0, "formula must begin with '='");
    return Parser(tokenize(source)).parse();
}

}  // namespace cellcheck
