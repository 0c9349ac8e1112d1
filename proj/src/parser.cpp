#include "chaselab/parser.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>

namespace chaselab {

ParseError::ParseError(const std::string& message, int line, int column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { Ident, Quoted, LParen, RParen, Comma, Colon, Dot, Arrow, Equals, End };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int column;
};

bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_' || c >= 0x80; }

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_space();
        Token t{Tok::End, "", line_, col_};
        if (pos_ >= src_.size()) return t;
        char c = src_[pos_];
        if (ident_char(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < src_.size() && ident_char(static_cast<unsigned char>(src_[pos_]))) advance();
            t.kind = Tok::Ident;
            t.text = std::string(src_.substr(start, pos_ - start));
            return t;
        }
        if (c == '\'') {
            advance();
            std::size_t start = pos_;
            while (pos_ < src_.size() && src_[pos_] != '\'' && src_[pos_] != '\n') advance();
            if (pos_ >= src_.size() || src_[pos_] != '\'')
                throw ParseError("unterminated quoted constant", t.line, t.column);
            t.kind = Tok::Quoted;
            t.text = std::string(src_.substr(start, pos_ - start));
            advance();
            if (t.text.empty()) throw ParseError("empty quoted constant", t.line, t.column);
            return t;
        }
        if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
            advance();
            advance();
            t.kind = Tok::Arrow;
            return t;
        }
        advance();
        switch (c) {
        case '(': t.kind = Tok::LParen; return t;
        case ')': t.kind = Tok::RParen; return t;
        case ',': t.kind = Tok::Comma; return t;
        case ':': t.kind = Tok::Colon; return t;
        case '.': t.kind = Tok::Dot; return t;
        case '=': t.kind = Tok::Equals; return t;
        default: break;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", t.line, t.column);
    }

private:
    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_space() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

const char* describe(Tok k) {
    switch (k) {
    case Tok::Ident: return "identifier";
    case Tok::Quoted: return "quoted constant";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::Dot: return "'.'";
    case Tok::Arrow: return "'->'";
    case Tok::Equals: return "'='";
    case Tok::End: return "end of input";
    }
    return "token";
}

struct PendingAtom {
    Atom atom;
    int line;
    int column;
};

class Parser {
public:
    Parser(std::string_view src, bool instance_mode) : lex_(src), instance_mode_(instance_mode) {
        cur_ = lex_.next();
        peek_ = lex_.next();
    }

    ConstraintSet constraints() {
        std::vector<Constraint> out;
        std::map<std::string, std::pair<int, int>> seen;
        while (cur_.kind != Tok::End) {
            Token start = cur_;
            std::string label;
            if (cur_.kind == Tok::Ident && peek_.kind == Tok::Colon) {
                label = cur_.text;
                shift();
                shift();
            } else {
                label = "c" + std::to_string(out.size() + 1);
            }
            if (seen.count(label)) throw ParseError("duplicate label " + label, start.line, start.column);
            seen[label] = {start.line, start.column};

            std::vector<PendingAtom> body;
            if (cur_.kind == Tok::Ident && cur_.text == "true" && peek_.kind == Tok::Arrow) {
                shift();
            } else {
                body = atoms();
            }
            expect(Tok::Arrow);

            std::vector<Term> ex;
            std::vector<PendingAtom> head;
            std::optional<std::pair<Term, Term>> equality;
            Token head_start = cur_;
            if (cur_.kind == Tok::Ident && cur_.text == "exists" && peek_.kind != Tok::LParen) {
                shift();
                while (cur_.kind == Tok::Ident) {
                    ex.push_back(Term::variable(cur_.text));
                    shift();
                    if (cur_.kind != Tok::Comma) break;
                    shift();
                }
                expect(Tok::Colon);
                head = atoms();
            } else if (cur_.kind == Tok::Ident && peek_.kind == Tok::Equals) {
                Term l = term();
                expect(Tok::Equals);
                Term r = term();
                equality.emplace(l, r);
            } else {
                head = atoms();
            }
            expect(Tok::Dot);

            for (const auto& a : body) check_arity(a);
            for (const auto& a : head) check_arity(a);
            try {
                std::vector<Atom> b;
                for (auto& a : body) b.push_back(std::move(a.atom));
                if (equality) {
                    if (b.empty()) throw ConstraintError("EGD with empty body");
                    out.push_back(Constraint::egd(label, std::move(b), equality->first, equality->second));
                } else {
                    std::vector<Atom> h;
                    for (auto& a : head) h.push_back(std::move(a.atom));
                    out.push_back(Constraint::tgd(label, std::move(b), std::move(ex), std::move(h)));
                }
            } catch (const ConstraintError& e) {
                throw ParseError(e.what(), head_start.line, head_start.column);
            }
        }
        return ConstraintSet(std::move(out));
    }

    Instance instance(const Schema* schema) {
        if (schema) schema_ = *schema;
        Instance inst;
        while (cur_.kind != Tok::End) {
            auto atom_list = atoms();
            expect(Tok::Dot);
            for (auto& a : atom_list) {
                check_arity(a);
                inst.insert(a.atom);
            }
        }
        return inst;
    }

private:
    void shift() {
        cur_ = peek_;
        peek_ = lex_.next();
    }

    [[noreturn]] void fail(const std::string& what) {
        throw ParseError(what + ", found " + describe(cur_.kind) + (cur_.text.empty() ? "" : " '" + cur_.text + "'"),
                         cur_.line, cur_.column);
    }

    void expect(Tok k) {
        if (cur_.kind != k) fail(std::string("expected ") + describe(k));
        shift();
    }

    void check_arity(const PendingAtom& a) {
        auto [it, fresh] = schema_.emplace(a.atom.predicate, a.atom.arity());
        if (!fresh && it->second != a.atom.arity())
            throw ParseError("arity mismatch: " + std::string(a.atom.predicate.str()) + " has arity " +
                                 std::to_string(it->second) + " but is used with " +
                                 std::to_string(a.atom.arity()) + " arguments",
                             a.line, a.column);
    }

    Term term() {
        if (cur_.kind == Tok::Quoted) {
            Term t = Term::constant(cur_.text);
            shift();
            return t;
        }
        if (cur_.kind != Tok::Ident) fail("expected a term");
        std::string text = cur_.text;
        shift();
        if (instance_mode_) {
            if (text.size() > 1 && text[0] == '_') return Term::null(text.substr(1));
            return Term::constant(text);
        }
        return Term::variable(text);
    }

    PendingAtom atom() {
        if ((cur_.kind == Tok::Ident || cur_.kind == Tok::Quoted) && peek_.kind == Tok::Equals)
            throw ParseError("equality atom in a TGD or a rule body", cur_.line, cur_.column);
        if (cur_.kind != Tok::Ident) fail("expected an atom");
        PendingAtom a{Atom(Symbol(cur_.text), {}), cur_.line, cur_.column};
        shift();
        expect(Tok::LParen);
        a.atom.args.push_back(term());
        while (cur_.kind == Tok::Comma) {
            shift();
            a.atom.args.push_back(term());
        }
        expect(Tok::RParen);
        return a;
    }

    std::vector<PendingAtom> atoms() {
        std::vector<PendingAtom> out;
        out.push_back(atom());
        while (cur_.kind == Tok::Comma) {
            shift();
            out.push_back(atom());
        }
        return out;
    }

    Lexer lex_;
    bool instance_mode_;
    Token cur_;
    Token peek_;
    Schema schema_;
};

std::string slurp(std::istream& in) {
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool bare_identifier(std::string_view s) {
    if (s.empty() || s[0] == '_' || s == "true" || s == "exists") return false;
    for (char c : s)
        if (!ident_char(static_cast<unsigned char>(c))) return false;
    return true;
}

} // namespace

ConstraintSet parse_constraints(std::string_view text) { return Parser(text, false).constraints(); }

ConstraintSet parse_constraints(std::istream& in) { return parse_constraints(slurp(in)); }

Instance parse_instance(std::string_view text, const Schema* schema) {
    return Parser(text, true).instance(schema);
}

Instance parse_instance(std::istream& in, const Schema* schema) { return parse_instance(slurp(in), schema); }

std::string serialize(const ConstraintSet& s) { return to_string(s); }

std::string serialize(const Term& t) {
    if (t.is_null()) return "_" + std::string(t.name());
    if (t.is_constant() && bare_identifier(t.name())) return std::string(t.name());
    if (t.is_constant()) return "'" + std::string(t.name()) + "'";
    return std::string(t.name());
}

std::string serialize(const Atom& a) {
    std::string out(a.predicate.str());
    out += "(";
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i) out += ", ";
        out += serialize(a.args[i]);
    }
    return out + ")";
}

std::string serialize(const Instance& inst) {
    std::string out;
    for (const auto& a : inst) {
        out += a.predicate.str();
        out += "(";
        for (std::size_t i = 0; i < a.args.size(); ++i) {
            if (i) out += ", ";
            out += serialize(a.args[i]);
        }
        out += ").\n";
    }
    return out;
}

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return slurp(in);
}

} // namespace

ConstraintSet load_constraints(const std::string& path) { return parse_constraints(read_file(path)); }

Instance load_instance(const std::string& path, const Schema* schema) {
    return parse_instance(read_file(path), schema);
}

} // namespace chaselab
