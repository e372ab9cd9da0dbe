#pragma once

// A self-contained reference evaluator for CONSTRUCT queries of the shape
// the artifact renders. It tokenizes and parses the query text itself and
// evaluates with its own solution-mapping machinery over plain string
// triples; it shares no code with the production graph or query modules, so
// it can serve as an independent check of both the rendered query text and
// the extraction semantics.
//
// Supported grammar:
//   Query  := 'CONSTRUCT' '{' Pattern '}' 'WHERE'
//             '{' Values Group 'UNION' Group '}'
//   Values := 'VALUES' Var '{' IRI+ '}'
//   Group  := '{' Pattern '.'? Bind? '}'
//   Bind   := 'BIND' '(' Var 'as' Var ')'
//   Pattern:= Term Term Term      Term := Var | IRI

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace refsparql {

struct RefTerm {
    enum class Kind { Iri, Lit };
    Kind kind = Kind::Iri;
    std::string value;
    std::string datatype;

    auto operator<=>(const RefTerm&) const = default;
};

struct RefTriple {
    RefTerm s, p, o;
    auto operator<=>(const RefTriple&) const = default;
};

namespace detail {

struct Token {
    enum class Kind { Keyword, Var, Iri, Punct, End };
    Kind kind = Kind::End;
    std::string text;
};

class Tokenizer {
public:
    explicit Tokenizer(const std::string& text) : text_(text) {}

    Token next() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        if (pos_ >= text_.size()) return {Token::Kind::End, ""};
        const char c = text_[pos_];
        if (c == '{' || c == '}' || c == '(' || c == ')' || c == '.') {
            ++pos_;
            return {Token::Kind::Punct, std::string(1, c)};
        }
        if (c == '?') {
            std::size_t start = ++pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            if (pos_ == start) throw std::runtime_error("empty variable name");
            return {Token::Kind::Var, text_.substr(start, pos_ - start)};
        }
        if (c == '<') {
            const auto end = text_.find('>', pos_);
            if (end == std::string::npos) throw std::runtime_error("unterminated IRI");
            Token t{Token::Kind::Iri, text_.substr(pos_ + 1, end - pos_ - 1)};
            pos_ = end + 1;
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   std::isalnum(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
            return {Token::Kind::Keyword, text_.substr(start, pos_ - start)};
        }
        throw std::runtime_error(std::string("unexpected character '") + c + "' in query");
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0;
};

struct PatternTerm {
    bool is_var = false;
    std::string text;  // variable name or IRI
};

struct Group {
    PatternTerm pattern[3];
    bool has_bind = false;
    std::string bind_from, bind_to;
};

struct Query {
    PatternTerm construct_template[3];
    std::string values_var;
    std::vector<std::string> values_iris;
    Group branches[2];
};

class Parser {
public:
    explicit Parser(const std::string& text) : tokens_(text) { advance(); }

    Query parse() {
        Query q;
        expect_keyword("CONSTRUCT");
        expect_punct("{");
        parse_pattern(q.construct_template);
        expect_punct("}");
        expect_keyword("WHERE");
        expect_punct("{");
        expect_keyword("VALUES");
        q.values_var = expect_var();
        expect_punct("{");
        while (current_.kind == Token::Kind::Iri) {
            q.values_iris.push_back(current_.text);
            advance();
        }
        if (q.values_iris.empty()) throw std::runtime_error("VALUES list is empty");
        expect_punct("}");
        q.branches[0] = parse_group();
        expect_keyword("UNION");
        q.branches[1] = parse_group();
        expect_punct("}");
        if (current_.kind != Token::Kind::End) throw std::runtime_error("trailing tokens");
        return q;
    }

private:
    void advance() { current_ = tokens_.next(); }

    void expect_keyword(const std::string& kw) {
        if (current_.kind != Token::Kind::Keyword || current_.text != kw) {
            throw std::runtime_error("expected keyword " + kw + ", got '" + current_.text + "'");
        }
        advance();
    }

    void expect_punct(const std::string& p) {
        if (current_.kind != Token::Kind::Punct || current_.text != p) {
            throw std::runtime_error("expected '" + p + "', got '" + current_.text + "'");
        }
        advance();
    }

    std::string expect_var() {
        if (current_.kind != Token::Kind::Var) {
            throw std::runtime_error("expected variable, got '" + current_.text + "'");
        }
        std::string name = current_.text;
        advance();
        return name;
    }

    void parse_pattern(PatternTerm out[3]) {
        for (int i = 0; i < 3; ++i) {
            if (current_.kind == Token::Kind::Var) {
                out[i] = {true, current_.text};
            } else if (current_.kind == Token::Kind::Iri) {
                out[i] = {false, current_.text};
            } else {
                throw std::runtime_error("expected var or IRI in pattern");
            }
            advance();
        }
    }

    Group parse_group() {
        Group g;
        expect_punct("{");
        parse_pattern(g.pattern);
        if (current_.kind == Token::Kind::Punct && current_.text == ".") advance();
        if (current_.kind == Token::Kind::Keyword && current_.text == "BIND") {
            advance();
            expect_punct("(");
            g.bind_from = expect_var();
            expect_keyword("as");
            g.bind_to = expect_var();
            expect_punct(")");
            g.has_bind = true;
        }
        expect_punct("}");
        return g;
    }

    Tokenizer tokens_;
    Token current_;
};

using Bindings = std::map<std::string, RefTerm>;

inline std::optional<Bindings> match(const PatternTerm pattern[3], const RefTriple& triple,
                                     const Bindings& seed) {
    const RefTerm* parts[3] = {&triple.s, &triple.p, &triple.o};
    Bindings bound = seed;
    for (int i = 0; i < 3; ++i) {
        if (pattern[i].is_var) {
            auto it = bound.find(pattern[i].text);
            if (it == bound.end()) {
                bound.emplace(pattern[i].text, *parts[i]);
            } else if (it->second != *parts[i]) {
                return std::nullopt;
            }
        } else {
            if (parts[i]->kind != RefTerm::Kind::Iri || parts[i]->value != pattern[i].text) {
                return std::nullopt;
            }
        }
    }
    return bound;
}

}  // namespace detail

inline std::set<RefTriple> execute_construct(const std::string& query_text,
                                             const std::vector<RefTriple>& data) {
    using namespace detail;
    const Query query = Parser(query_text).parse();

    std::vector<Bindings> solutions;
    for (const auto& iri : query.values_iris) {
        Bindings seed;
        seed.emplace(query.values_var, RefTerm{RefTerm::Kind::Iri, iri, ""});
        for (const auto& group : query.branches) {
            for (const auto& triple : data) {
                auto bound = match(group.pattern, triple, seed);
                if (!bound) continue;
                if (group.has_bind) {
                    auto from = bound->find(group.bind_from);
                    if (from == bound->end()) continue;
                    auto [it, inserted] = bound->emplace(group.bind_to, from->second);
                    if (!inserted && it->second != from->second) continue;
                }
                solutions.push_back(std::move(*bound));
            }
        }
    }

    std::set<RefTriple> out;
    for (const auto& solution : solutions) {
        RefTriple triple;
        RefTerm* parts[3] = {&triple.s, &triple.p, &triple.o};
        bool complete = true;
        for (int i = 0; i < 3; ++i) {
            const auto& t = query.construct_template[i];
            if (t.is_var) {
                auto it = solution.find(t.text);
                if (it == solution.end()) {
                    complete = false;
                    break;
                }
                *parts[i] = it->second;
            } else {
                *parts[i] = RefTerm{RefTerm::Kind::Iri, t.text, ""};
            }
        }
        if (complete) out.insert(std::move(triple));
    }
    return out;
}

}  // namespace refsparql
