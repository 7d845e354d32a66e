#include "rht/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace rht::dsl {

namespace {

MorphismPtr share(Morphism m) { return std::make_shared<const Morphism>(std::move(m)); }

// ---------------------------------------------------------------- lexer

struct Token {
    enum Kind { Ident, Int, Punct, End };
    Kind kind = End;
    std::string text;
    int line = 1, col = 1;
};

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto advance = [&](size_t k) {
        for (size_t j = 0; j < k; ++j) {
            if (text[i + j] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        i += k;
    };
    while (i < text.size()) {
        char ch = text[i];
        if (ch == '#') {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') {
            advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.col = col;
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            size_t j = i;
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                                       text[j] == '_'))
                ++j;
            t.kind = Token::Ident;
            t.text = text.substr(i, j - i);
            advance(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(ch))) {
            size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            t.kind = Token::Int;
            t.text = text.substr(i, j - i);
            advance(j - i);
        } else if (ch == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            t.kind = Token::Punct;
            t.text = "->";
            advance(2);
        } else if (std::string("{}():;=+-*^,/").find(ch) != std::string::npos) {
            t.kind = Token::Punct;
            t.text = std::string(1, ch);
            advance(1);
        } else {
            throw ParseError(line, col, std::string("unexpected character '") + ch + "'");
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.kind = Token::End;
    end.text = "<end of input>";
    end.line = line;
    end.col = col;
    out.push_back(std::move(end));
    return out;
}

// ---------------------------------------------------------------- cursor

struct Cursor {
    const std::vector<Token>* toks;
    size_t i = 0;

    const Token& peek() const { return (*toks)[i]; }
    const Token& get() {
        const Token& t = (*toks)[i];
        if (t.kind != Token::End) ++i;
        return t;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        throw ParseError(t.line, t.col, msg + " (got '" + t.text + "')");
    }
    bool at_punct(const char* s) const {
        return peek().kind == Token::Punct && peek().text == s;
    }
    bool at_ident(const char* s) const {
        return peek().kind == Token::Ident && peek().text == s;
    }
    bool accept_punct(const char* s) {
        if (!at_punct(s)) return false;
        get();
        return true;
    }
    void expect_punct(const char* s) {
        if (!at_punct(s)) fail(std::string("expected '") + s + "'");
        get();
    }
    void expect_kw(const char* kw) {
        if (!at_ident(kw)) fail(std::string("expected '") + kw + "'");
        get();
    }
    Token expect_ident(const char* what) {
        if (peek().kind != Token::Ident) fail(std::string("expected ") + what);
        return get();
    }
    int expect_int(const char* what) {
        if (peek().kind != Token::Int) fail(std::string("expected ") + what);
        const Token& t = get();
        if (t.text.size() > 9) throw ParseError(t.line, t.col, "number too large");
        return std::stoi(t.text);
    }
};

// ------------------------------------------------------- expressions

// expr := ['-'] term (('+'|'-') term)*
// term := factor ('*' factor)*
// factor := atom ['^' INT]
// atom := INT ['/' INT] | NAME | '(' expr ')'
// Names resolve to generators of the ambient algebra; in parameter contexts a
// single lowercase letter that is not a generator is a named parameter.
PPoly parse_expr(Cursor& c, const AlgebraPtr& alg, bool params_ok);

PPoly parse_atom(Cursor& c, const AlgebraPtr& alg, bool params_ok) {
    const Token& t = c.peek();
    if (t.kind == Token::Ident) {
        c.get();
        if (auto gi = alg->find(t.text)) return PPoly::generator(alg, *gi);
        if (params_ok && t.text.size() == 1 && std::islower(static_cast<unsigned char>(t.text[0])))
            return PPoly::unit(alg, LinExpr::param(t.text));
        throw ParseError(t.line, t.col, "unknown generator '" + t.text + "'");
    }
    if (c.at_punct("(")) {
        c.get();
        PPoly p = parse_expr(c, alg, params_ok);
        c.expect_punct(")");
        return p;
    }
    c.fail("expected an expression");
}

PPoly parse_factor(Cursor& c, const AlgebraPtr& alg, bool params_ok) {
    // rational literal: INT [ '/' INT ]
    if (c.peek().kind == Token::Int) {
        const Token& t = c.get();
        Rational q = Rational(Int(t.text));
        if (c.accept_punct("/")) {
            const Token& d = c.peek();
            if (d.kind != Token::Int) c.fail("expected an integer denominator");
            c.get();
            Int den(d.text);
            if (den == 0) throw ParseError(d.line, d.col, "zero denominator");
            q /= Rational(den);
        }
        PPoly p = PPoly::unit(alg, LinExpr(q));
        if (c.accept_punct("^")) {
            int e = c.expect_int("an integer exponent");
            p = p.pow(e);
        }
        return p;
    }
    const Token& at = c.peek();
    PPoly p = parse_atom(c, alg, params_ok);
    if (c.accept_punct("^")) {
        int e = c.expect_int("an integer exponent");
        try {
            p = p.pow(e);
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e2) {
            throw ParseError(at.line, at.col, e2.what());
        }
    }
    return p;
}

PPoly parse_term(Cursor& c, const AlgebraPtr& alg, bool params_ok) {
    PPoly p = parse_factor(c, alg, params_ok);
    while (c.at_punct("*")) {
        const Token& op = c.get();
        PPoly q = parse_factor(c, alg, params_ok);
        try {
            p = p * q;
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError(op.line, op.col, e.what());
        }
    }
    return p;
}

PPoly parse_expr(Cursor& c, const AlgebraPtr& alg, bool params_ok) {
    bool neg = c.accept_punct("-");
    PPoly p = parse_term(c, alg, params_ok);
    if (neg) p = -p;
    while (c.at_punct("+") || c.at_punct("-")) {
        bool minus = c.get().text == "-";
        PPoly q = parse_term(c, alg, params_ok);
        p = minus ? p - q : p + q;
    }
    return p;
}

// scalar variant over LinExpr (section, class, command-line values)
LinExpr parse_scalar_expr(Cursor& c);

LinExpr parse_scalar_factor(Cursor& c) {
    const Token& t = c.peek();
    LinExpr v;
    if (t.kind == Token::Int) {
        c.get();
        Rational q = Rational(Int(t.text));
        if (c.accept_punct("/")) {
            const Token& d = c.peek();
            if (d.kind != Token::Int) c.fail("expected an integer denominator");
            c.get();
            Int den(d.text);
            if (den == 0) throw ParseError(d.line, d.col, "zero denominator");
            q /= Rational(den);
        }
        v = LinExpr(q);
    } else if (t.kind == Token::Ident) {
        c.get();
        if (t.text.size() == 1 && std::islower(static_cast<unsigned char>(t.text[0])))
            v = LinExpr::param(t.text);
        else
            throw ParseError(t.line, t.col,
                             "expected a rational or a single-letter parameter, got '" + t.text +
                                 "'");
    } else if (c.accept_punct("(")) {
        v = parse_scalar_expr(c);
        c.expect_punct(")");
    } else {
        c.fail("expected a scalar expression");
    }
    if (c.accept_punct("^")) {
        const Token& et = c.peek();
        int e = c.expect_int("an integer exponent");
        LinExpr r(1);
        try {
            for (int k = 0; k < e; ++k) r = r * v;
        } catch (const std::exception& ex) {
            throw ParseError(et.line, et.col, ex.what());
        }
        v = r;
    }
    return v;
}

LinExpr parse_scalar_term(Cursor& c) {
    LinExpr v = parse_scalar_factor(c);
    while (c.at_punct("*")) {
        const Token& op = c.get();
        LinExpr w = parse_scalar_factor(c);
        try {
            v = v * w;
        } catch (const std::exception& e) {
            throw ParseError(op.line, op.col, e.what());
        }
    }
    return v;
}

LinExpr parse_scalar_expr(Cursor& c) {
    bool neg = c.accept_punct("-");
    LinExpr v = parse_scalar_term(c);
    if (neg) v = -v;
    while (c.at_punct("+") || c.at_punct("-")) {
        bool minus = c.get().text == "-";
        LinExpr w = parse_scalar_term(c);
        v = minus ? v - w : v + w;
    }
    return v;
}

// ------------------------------------------------------- block parsing

struct Builder {
    const std::vector<Token>* toks;
    Document doc;

    const AlgebraBlock* need_algebra(const Token& t) const {
        if (const auto* a = doc.algebra(t.text)) return a;
        throw ParseError(t.line, t.col, "unknown algebra '" + t.text + "'");
    }
    const MorphismBlock* need_morphism(const Token& t) const {
        if (const auto* m = doc.morphism(t.text)) return m;
        throw ParseError(t.line, t.col, "unknown morphism '" + t.text + "'");
    }
    void check_fresh_algebra(const Token& t) const {
        if (doc.algebra(t.text))
            throw ParseError(t.line, t.col, "algebra '" + t.text + "' is already defined");
    }
    void check_fresh_morphism(const Token& t) const {
        if (doc.morphism(t.text))
            throw ParseError(t.line, t.col, "morphism '" + t.text + "' is already defined");
    }
};

// wrap kernel validation with the block's location
template <class Fn>
auto located(int line, int col, const std::string& what, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const ParseError&) {
        throw;
    } catch (const validation_error& e) {
        throw ParseError(line, col, "in " + what + ": " + e.what());
    }
}

void skim_statement(Cursor& c) {
    while (!c.at_punct(";")) {
        if (c.peek().kind == Token::End) c.fail("unterminated statement (missing ';')");
        c.get();
    }
    c.get();
}

void parse_algebra(Cursor& c, Builder& b) {
    const Token& head = c.get(); // "algebra"
    Token name = c.expect_ident("an algebra name");
    b.check_fresh_algebra(name);
    c.expect_punct("{");

    std::vector<Generator> gens;
    struct DStmt {
        Token gen;
        size_t expr_at;
    };
    std::vector<DStmt> ds;
    std::vector<Token> truncs;
    auto find_gen = [&](const std::string& g) -> int {
        for (size_t k = 0; k < gens.size(); ++k)
            if (gens[k].name == g) return static_cast<int>(k);
        return -1;
    };
    while (!c.accept_punct("}")) {
        Token kw = c.expect_ident("a statement (gen, trunc, or d)");
        if (kw.text == "gen") {
            Token g = c.expect_ident("a generator name");
            if (find_gen(g.text) >= 0)
                throw ParseError(g.line, g.col, "generator '" + g.text + "' is already declared");
            c.expect_punct(":");
            int deg = c.expect_int("a degree");
            c.expect_punct(";");
            gens.push_back({g.text, deg, 0});
        } else if (kw.text == "trunc") {
            Token g = c.expect_ident("a generator name");
            int cap = c.expect_int("a truncation order");
            if (cap != 2)
                throw ParseError(kw.line, kw.col, "the only supported truncation is 2");
            c.expect_punct(";");
            truncs.push_back(g);
        } else if (kw.text == "d") {
            Token g = c.expect_ident("a generator name");
            c.expect_punct("=");
            ds.push_back({g, c.i});
            skim_statement(c);
        } else {
            throw ParseError(kw.line, kw.col,
                             "unknown statement '" + kw.text + "' (expected gen, trunc, or d)");
        }
    }
    for (const Token& t : truncs) {
        int k = find_gen(t.text);
        if (k < 0)
            throw ParseError(t.line, t.col, "trunc of undeclared generator '" + t.text + "'");
        gens[k].cap = 2;
    }

    auto alg = located(head.line, head.col, "algebra '" + name.text + "'",
                       [&] { return FreeCGA::make(gens); });
    std::vector<Polynomial> d_values(alg->size(), Polynomial::zero(alg));
    std::vector<bool> seen(alg->size(), false);
    for (const DStmt& s : ds) {
        int k = find_gen(s.gen.text);
        if (k < 0)
            throw ParseError(s.gen.line, s.gen.col,
                             "d of undeclared generator '" + s.gen.text + "'");
        if (seen[k])
            throw ParseError(s.gen.line, s.gen.col, "d " + s.gen.text + " is given twice");
        seen[k] = true;
        Cursor c2{b.toks, s.expr_at};
        PPoly p = parse_expr(c2, alg, false);
        c2.expect_punct(";");
        d_values[k] = demote(p);
    }
    auto model = located(head.line, head.col, "algebra '" + name.text + "'",
                         [&] { return CDGA::make(alg, std::move(d_values)); });
    b.doc.blocks.push_back(AlgebraBlock{name.text, model});
}

void parse_morphism(Cursor& c, Builder& b) {
    const Token& head = c.get(); // "morphism"
    Token name = c.expect_ident("a morphism name");
    b.check_fresh_morphism(name);
    c.expect_punct(":");
    Token src = c.expect_ident("a source algebra name");
    const AlgebraBlock* sa = b.need_algebra(src);
    c.expect_punct("->");
    Token tgt = c.expect_ident("a target algebra name");
    const AlgebraBlock* ta = b.need_algebra(tgt);
    c.expect_punct("{");

    const auto& salg = sa->model->algebra();
    const auto& talg = ta->model->algebra();
    std::vector<Polynomial> values(salg->size(), Polynomial::zero(talg));
    std::vector<bool> seen(salg->size(), false);
    while (!c.accept_punct("}")) {
        Token g = c.expect_ident("a source generator name");
        auto gi = salg->find(g.text);
        if (!gi)
            throw ParseError(g.line, g.col, "unknown generator '" + g.text + "'");
        if (seen[*gi])
            throw ParseError(g.line, g.col, "value for '" + g.text + "' is given twice");
        seen[*gi] = true;
        c.expect_punct("=");
        PPoly p = parse_expr(c, talg, false);
        c.expect_punct(";");
        values[*gi] = demote(p);
    }
    auto m = located(head.line, head.col, "morphism '" + name.text + "'", [&] {
        return share(Morphism::make(sa->model, ta->model, std::move(values)));
    });
    b.doc.blocks.push_back(MorphismBlock{name.text, src.text, tgt.text, m});
}

void parse_ks(Cursor& c, Builder& b) {
    const Token& head = c.get(); // "ks"
    Token name = c.expect_ident("a ks name");
    c.expect_kw("over");
    Token baseName = c.expect_ident("a base algebra name");
    const AlgebraBlock* base = b.need_algebra(baseName);
    c.expect_kw("fiber");
    c.expect_punct("(");
    std::vector<Generator> gens = base->model->algebra()->gens();
    int base_count = static_cast<int>(gens.size());
    do {
        Token g = c.expect_ident("a fiber generator name");
        c.expect_punct(":");
        int deg = c.expect_int("a degree");
        gens.push_back({g.text, deg, 0});
    } while (c.accept_punct(","));
    c.expect_punct(")");
    c.expect_punct("{");

    auto talg = located(head.line, head.col, "ks '" + name.text + "'",
                        [&] { return FreeCGA::make(gens); });
    int fc = talg->size() - base_count;
    std::vector<Polynomial> fiber_d(fc, Polynomial::zero(talg));
    std::vector<bool> seen(fc, false);
    while (!c.accept_punct("}")) {
        Token kw = c.expect_ident("a statement (D)");
        if (kw.text != "D")
            throw ParseError(kw.line, kw.col, "unknown statement '" + kw.text + "' (expected D)");
        Token g = c.expect_ident("a fiber generator name");
        auto gi = talg->find(g.text);
        if (!gi)
            throw ParseError(g.line, g.col, "unknown generator '" + g.text + "'");
        if (*gi < base_count)
            throw ParseError(g.line, g.col,
                             "'" + g.text + "' is a base generator; D is given on fiber "
                             "generators only");
        if (seen[*gi - base_count])
            throw ParseError(g.line, g.col, "D " + g.text + " is given twice");
        seen[*gi - base_count] = true;
        c.expect_punct("=");
        PPoly p = parse_expr(c, talg, false);
        c.expect_punct(";");
        fiber_d[*gi - base_count] = demote(p);
    }
    auto ks = located(head.line, head.col, "ks '" + name.text + "'",
                      [&] { return make_ks(base->model, talg, std::move(fiber_d)); });
    b.doc.blocks.push_back(KsBlock{name.text, baseName.text, std::move(ks)});
}

// shared by twist and certificate: "theta g = expr;" lines over X
struct ThetaAccum {
    std::vector<PPoly> values;
    std::vector<bool> seen;
};

void read_theta(Cursor& c, const CdgaPtr& X, int n, ThetaAccum& acc) {
    const auto& xalg = X->algebra();
    Token g = c.expect_ident("a generator name");
    auto gi = xalg->find(g.text);
    if (!gi) throw ParseError(g.line, g.col, "unknown generator '" + g.text + "'");
    if (acc.seen[*gi]) throw ParseError(g.line, g.col, "theta " + g.text + " is given twice");
    acc.seen[*gi] = true;
    c.expect_punct("=");
    PPoly p = parse_expr(c, xalg, true);
    c.expect_punct(";");
    int want = xalg->gen(*gi).degree - (n - 1);
    if (!p.is_zero() && (!p.degree() || *p.degree() != want))
        throw ParseError(g.line, g.col,
                         "theta value for '" + g.text + "' must be homogeneous of degree " +
                             std::to_string(want));
    acc.values[*gi] = std::move(p);
}

PDerivation finish_theta(const Token& head, const CdgaPtr& X, int n, ThetaAccum&& acc) {
    PDerivation theta{share(Morphism::identity(X)), n - 1, std::move(acc.values)};
    if (n >= 2) {
        PDerivation dt = delta(theta);
        for (size_t i = 0; i < dt.values.size(); ++i)
            if (!dt.values[i].is_zero())
                throw ParseError(head.line, head.col,
                                 "the twist is not a delta-cocycle: delta theta (" +
                                     X->algebra()->gen(static_cast<int>(i)).name + ") = " +
                                     dt.values[i].str());
    }
    return theta;
}

void parse_twist(Cursor& c, Builder& b) {
    const Token& head = c.get(); // "twist"
    std::string name;
    if (!c.at_ident("over")) name = c.expect_ident("a twist name or 'over'").text;
    c.expect_kw("over");
    c.expect_kw("sphere");
    int n = c.expect_int("a sphere dimension");
    if (n < 1) throw ParseError(head.line, head.col, "sphere dimension must be >= 1");
    c.expect_kw("on");
    Token xname = c.expect_ident("an algebra name");
    const AlgebraBlock* X = b.need_algebra(xname);
    c.expect_punct("{");

    const auto& xalg = X->model->algebra();
    ThetaAccum acc{std::vector<PPoly>(xalg->size(), PPoly::zero(xalg)),
                   std::vector<bool>(xalg->size(), false)};
    while (!c.accept_punct("}")) {
        Token kw = c.expect_ident("a statement (theta)");
        if (kw.text != "theta")
            throw ParseError(kw.line, kw.col,
                             "unknown statement '" + kw.text + "' (expected theta)");
        read_theta(c, X->model, n, acc);
    }
    PSphereTwist tw{X->model, n, finish_theta(head, X->model, n, std::move(acc))};
    b.doc.blocks.push_back(TwistBlock{name, xname.text, std::move(tw)});
}

void parse_certificate(Cursor& c, Builder& b) {
    const Token& head = c.get(); // "certificate"
    std::string name;
    if (!c.at_ident("for")) name = c.expect_ident("a certificate name or 'for'").text;
    c.expect_kw("for");
    Token fname = c.expect_ident("a morphism name");
    const MorphismBlock* fb = b.need_morphism(fname);
    c.expect_kw("over");
    c.expect_kw("sphere");
    int n = c.expect_int("a sphere dimension");
    if (n < 1) throw ParseError(head.line, head.col, "sphere dimension must be >= 1");
    c.expect_punct("{");

    const CdgaPtr& Y = fb->map->source();
    const CdgaPtr& X = fb->map->target();
    const auto& yalg = Y->algebra();
    const auto& xalg = X->algebra();
    if (xalg->find("x"))
        throw ParseError(head.line, head.col,
                         "the target model already uses the reserved sphere coordinate 'x'");
    std::vector<Generator> tg{{"x", n, 2}};
    for (const auto& g : xalg->gens()) tg.push_back(g);
    auto total_alg = located(head.line, head.col, "certificate", [&] { return FreeCGA::make(tg); });

    ThetaAccum acc{std::vector<PPoly>(xalg->size(), PPoly::zero(xalg)),
                   std::vector<bool>(xalg->size(), false)};
    std::vector<PPoly> F(yalg->size(), PPoly::zero(total_alg));
    std::vector<bool> fseen(yalg->size(), false);
    std::map<std::string, LinExpr> section;
    Functional cls;
    cls.n = n;

    while (!c.accept_punct("}")) {
        Token kw = c.expect_ident("a statement (theta, F, section, or class)");
        if (kw.text == "theta") {
            read_theta(c, X, n, acc);
        } else if (kw.text == "F") {
            Token g = c.expect_ident("a source generator name");
            auto gi = yalg->find(g.text);
            if (!gi) throw ParseError(g.line, g.col, "unknown generator '" + g.text + "'");
            if (fseen[*gi]) throw ParseError(g.line, g.col, "F " + g.text + " is given twice");
            fseen[*gi] = true;
            c.expect_punct("=");
            PPoly p = parse_expr(c, total_alg, true);
            c.expect_punct(";");
            int want = yalg->gen(*gi).degree;
            if (!p.is_zero() && (!p.degree() || *p.degree() != want))
                throw ParseError(g.line, g.col,
                                 "F value for '" + g.text + "' must be homogeneous of degree " +
                                     std::to_string(want));
            F[*gi] = std::move(p);
        } else if (kw.text == "section") {
            Token g = c.expect_ident("a fiber generator name");
            auto gi = xalg->find(g.text);
            if (!gi) throw ParseError(g.line, g.col, "unknown generator '" + g.text + "'");
            if (xalg->gen(*gi).degree != n)
                throw ParseError(g.line, g.col,
                                 "section coefficients are given on degree-" + std::to_string(n) +
                                     " fiber generators");
            if (section.count(g.text))
                throw ParseError(g.line, g.col, "section " + g.text + " is given twice");
            c.expect_punct("=");
            LinExpr v = parse_scalar_expr(c);
            c.expect_punct(";");
            section[g.text] = std::move(v);
        } else if (kw.text == "class") {
            Token g = c.expect_ident("a source generator name");
            auto gi = yalg->find(g.text);
            if (!gi) throw ParseError(g.line, g.col, "unknown generator '" + g.text + "'");
            if (yalg->gen(*gi).degree != n)
                throw ParseError(g.line, g.col,
                                 "class coefficients are given on degree-" + std::to_string(n) +
                                     " source generators");
            if (cls.coeffs.count(g.text))
                throw ParseError(g.line, g.col, "class " + g.text + " is given twice");
            c.expect_punct("=");
            LinExpr v = parse_scalar_expr(c);
            c.expect_punct(";");
            cls.coeffs[g.text] = std::move(v);
        } else {
            throw ParseError(kw.line, kw.col,
                             "unknown statement '" + kw.text +
                                 "' (expected theta, F, section, or class)");
        }
    }
    CertificateBlock blk;
    blk.name = name;
    blk.map = fname.text;
    blk.n = n;
    blk.theta = finish_theta(head, X, n, std::move(acc));
    blk.source_alg = yalg;
    blk.total_alg = total_alg;
    blk.F = std::move(F);
    blk.section = std::move(section);
    blk.cls = std::move(cls);
    b.doc.blocks.push_back(std::move(blk));
}

} // namespace

// ---------------------------------------------------------------- document

const AlgebraBlock* Document::algebra(const std::string& name) const {
    for (const auto& b : blocks)
        if (const auto* a = std::get_if<AlgebraBlock>(&b))
            if (a->name == name) return a;
    return nullptr;
}

const MorphismBlock* Document::morphism(const std::string& name) const {
    for (const auto& b : blocks)
        if (const auto* m = std::get_if<MorphismBlock>(&b))
            if (m->name == name) return m;
    return nullptr;
}

template <class T> static std::vector<const T*> collect(const std::vector<Block>& blocks) {
    std::vector<const T*> out;
    for (const auto& b : blocks)
        if (const auto* t = std::get_if<T>(&b)) out.push_back(t);
    return out;
}

std::vector<const AlgebraBlock*> Document::algebras() const {
    return collect<AlgebraBlock>(blocks);
}
std::vector<const MorphismBlock*> Document::morphisms() const {
    return collect<MorphismBlock>(blocks);
}
std::vector<const KsBlock*> Document::extensions() const { return collect<KsBlock>(blocks); }
std::vector<const TwistBlock*> Document::twists() const { return collect<TwistBlock>(blocks); }
std::vector<const CertificateBlock*> Document::certificates() const {
    return collect<CertificateBlock>(blocks);
}

Document parse_document(const std::string& text) {
    auto toks = lex(text);
    Builder b;
    b.toks = &toks;
    Cursor c{&toks, 0};
    while (c.peek().kind != Token::End) {
        if (c.peek().kind != Token::Ident)
            c.fail("expected a block (algebra, morphism, ks, twist, or certificate)");
        const std::string& kw = c.peek().text;
        if (kw == "algebra")
            parse_algebra(c, b);
        else if (kw == "morphism")
            parse_morphism(c, b);
        else if (kw == "ks")
            parse_ks(c, b);
        else if (kw == "twist")
            parse_twist(c, b);
        else if (kw == "certificate")
            parse_certificate(c, b);
        else
            c.fail("expected a block (algebra, morphism, ks, twist, or certificate)");
    }
    return std::move(b.doc);
}

LinExpr parse_scalar(const std::string& text) {
    auto toks = lex(text);
    Cursor c{&toks, 0};
    LinExpr v = parse_scalar_expr(c);
    if (c.peek().kind != Token::End) c.fail("trailing input after the scalar");
    return v;
}

// ---------------------------------------------------------------- printing

namespace {

void print_algebra(std::ostringstream& out, const AlgebraBlock& a) {
    const auto& alg = a.model->algebra();
    out << "algebra " << a.name << " {\n";
    for (const auto& g : alg->gens())
        out << "  gen " << g.name << " : " << g.degree << ";\n";
    for (const auto& g : alg->gens())
        if (g.cap == 2) out << "  trunc " << g.name << " 2;\n";
    for (int i = 0; i < alg->size(); ++i)
        if (!a.model->d_gen(i).is_zero())
            out << "  d " << alg->gen(i).name << " = " << a.model->d_gen(i).str() << ";\n";
    out << "}\n";
}

void print_morphism(std::ostringstream& out, const MorphismBlock& m) {
    const auto& salg = m.map->source()->algebra();
    out << "morphism " << m.name << " : " << m.source << " -> " << m.target << " {\n";
    for (int i = 0; i < salg->size(); ++i)
        out << "  " << salg->gen(i).name << " = " << m.map->value(i).str() << ";\n";
    out << "}\n";
}

void print_ks(std::ostringstream& out, const KsBlock& k) {
    const auto& talg = k.ks.total->algebra();
    out << "ks " << k.name << " over " << k.base << " fiber (";
    for (size_t j = 0; j < k.ks.fiber_gens.size(); ++j) {
        const auto& g = talg->gen(k.ks.fiber_gens[j]);
        if (j) out << ", ";
        out << g.name << " : " << g.degree;
    }
    out << ") {\n";
    for (int idx : k.ks.fiber_gens)
        out << "  D " << talg->gen(idx).name << " = " << k.ks.total->d_gen(idx).str() << ";\n";
    out << "}\n";
}

void print_twist(std::ostringstream& out, const TwistBlock& t) {
    const auto& xalg = t.twist.X->algebra();
    out << "twist ";
    if (!t.name.empty()) out << t.name << " ";
    out << "over sphere " << t.twist.n << " on " << t.on << " {\n";
    for (int i = 0; i < xalg->size(); ++i)
        if (!t.twist.theta.values[i].is_zero())
            out << "  theta " << xalg->gen(i).name << " = " << t.twist.theta.values[i].str()
                << ";\n";
    out << "}\n";
}

void print_certificate(std::ostringstream& out, const CertificateBlock& cb) {
    const auto& xalg = cb.theta.phi->source()->algebra();
    out << "certificate ";
    if (!cb.name.empty()) out << cb.name << " ";
    out << "for " << cb.map << " over sphere " << cb.n << " {\n";
    for (int i = 0; i < xalg->size(); ++i)
        if (!cb.theta.values[i].is_zero())
            out << "  theta " << xalg->gen(i).name << " = " << cb.theta.values[i].str() << ";\n";
    for (size_t i = 0; i < cb.F.size(); ++i)
        out << "  F " << cb.source_alg->gen(static_cast<int>(i)).name << " = " << cb.F[i].str()
            << ";\n";
    for (const auto& [g, v] : cb.section)
        if (!v.is_zero()) out << "  section " << g << " = " << v.str() << ";\n";
    for (const auto& [g, v] : cb.cls.coeffs)
        if (!v.is_zero()) out << "  class " << g << " = " << v.str() << ";\n";
    out << "}\n";
}

} // namespace

std::string print_document(const Document& doc) {
    std::ostringstream out;
    bool first = true;
    for (const auto& b : doc.blocks) {
        if (!first) out << "\n";
        first = false;
        if (const auto* a = std::get_if<AlgebraBlock>(&b))
            print_algebra(out, *a);
        else if (const auto* m = std::get_if<MorphismBlock>(&b))
            print_morphism(out, *m);
        else if (const auto* k = std::get_if<KsBlock>(&b))
            print_ks(out, *k);
        else if (const auto* t = std::get_if<TwistBlock>(&b))
            print_twist(out, *t);
        else if (const auto* cb = std::get_if<CertificateBlock>(&b))
            print_certificate(out, *cb);
    }
    return out.str();
}

// ---------------------------------------------------------------- selection

static const char* kind_name(int which) {
    switch (which) {
        case 0: return "morphism";
        case 1: return "ks";
        case 2: return "twist";
        default: return "certificate";
    }
}

template <class T>
static const T& only_block(const std::vector<const T*>& v, int which) {
    if (v.empty())
        throw validation_error(std::string("the document has no ") + kind_name(which) + " block");
    if (v.size() > 1)
        throw validation_error(std::string("the document has several ") + kind_name(which) +
                               " blocks; split the file");
    return *v.front();
}

const MorphismBlock& only_morphism(const Document& doc) {
    return only_block(doc.morphisms(), 0);
}
const KsBlock& only_ks(const Document& doc) { return only_block(doc.extensions(), 1); }
const TwistBlock& only_twist(const Document& doc) { return only_block(doc.twists(), 2); }
const CertificateBlock& only_certificate(const Document& doc) {
    return only_block(doc.certificates(), 3);
}

CdgaPtr select_model(const Document& doc, const std::string& name) {
    if (!name.empty()) {
        if (const auto* a = doc.algebra(name)) return a->model;
        for (const auto* k : doc.extensions())
            if (k->name == name) return k->ks.total;
        throw validation_error("no algebra or ks block named '" + name + "'");
    }
    auto as = doc.algebras();
    if (as.size() == 1) return as.front()->model;
    auto ms = doc.morphisms();
    if (ms.size() == 1) return ms.front()->map->target();
    std::string names;
    for (const auto* a : as) names += (names.empty() ? "" : ", ") + a->name;
    throw validation_error("ambiguous model; name one of: " + names);
}

MapModel to_map_model(const Document& doc) {
    auto ms = doc.morphisms();
    auto ks = doc.extensions();
    if (ms.size() > 1 || ks.size() > 1)
        throw validation_error("the document must present a single map");
    MapModel m;
    if (!ms.empty()) {
        m.f = *ms.front()->map;
        m.Y = ms.front()->map->source();
        if (!ks.empty()) m.ks = ks.front()->ks;
    } else if (!ks.empty()) {
        m.ks = ks.front()->ks;
        m.Y = ks.front()->ks.base;
    } else {
        throw validation_error("the document does not present a map "
                               "(add a morphism or ks block)");
    }
    return m;
}

// ---------------------------------------------------------------- twists

static void check_bound(const std::vector<std::string>& params,
                        const std::map<std::string, Rational>& bindings) {
    for (const auto& p : params)
        if (!bindings.count(p))
            throw validation_error("unbound parameter '" + p + "' (bind it with --set " + p +
                                   "=VALUE)");
}

SphereTwist concrete_twist(const TwistBlock& t, const std::map<std::string, Rational>& bindings) {
    std::vector<std::string> params;
    for (const auto& v : t.twist.theta.values) collect_params(v, params);
    check_bound(params, bindings);
    std::vector<Polynomial> values;
    for (const auto& v : t.twist.theta.values) values.push_back(demote(substitute(v, bindings)));
    Derivation theta(t.twist.theta.phi, t.twist.n - 1, std::move(values));
    return SphereTwist{t.twist.X, t.twist.n, std::move(theta)};
}

static bool model_matches(const CdgaPtr& a, const CdgaPtr& b) {
    const auto& aa = a->algebra();
    const auto& ba = b->algebra();
    if (aa->size() != ba->size()) return false;
    for (int i = 0; i < aa->size(); ++i) {
        const auto& g = aa->gen(i);
        const auto& h = ba->gen(i);
        if (g.name != h.name || g.degree != h.degree || g.cap != h.cap) return false;
        if (transport(a->d_gen(i), ba) != b->d_gen(i)) return false;
    }
    return true;
}

PSphereTwist retarget(const PSphereTwist& t, const CdgaPtr& X) {
    if (t.X == X) return t;
    if (!model_matches(t.X, X))
        throw validation_error("the twist's model does not match the map's target");
    PDerivation theta{share(Morphism::identity(X)), t.theta.n, {}};
    for (const auto& v : t.theta.values) theta.values.push_back(transport_t(v, X->algebra()));
    return PSphereTwist{X, t.n, std::move(theta)};
}

// ---------------------------------------------------------------- certificates

MaterializedCertificate materialize(const CertificateBlock& c, const Document& doc,
                                    const std::map<std::string, Rational>& bindings) {
    const MorphismBlock* fb = doc.morphism(c.map);
    if (!fb) throw validation_error("certificate references unknown morphism '" + c.map + "'");
    const CdgaPtr& Y = fb->map->source();
    const CdgaPtr& X = fb->map->target();

    std::vector<std::string> params;
    for (const auto& v : c.theta.values) collect_params(v, params);
    for (const auto& v : c.F) collect_params(v, params);
    for (const auto& [g, l] : c.section) l.collect_params(params);
    for (const auto& [g, l] : c.cls.coeffs) l.collect_params(params);
    check_bound(params, bindings);

    try {
        std::vector<Polynomial> tv;
        for (const auto& v : c.theta.values) tv.push_back(demote(substitute(v, bindings)));
        Derivation theta(share(Morphism::identity(X)), c.n - 1, std::move(tv));
        KSExtension ks = twist_to_extension(SphereTwist{X, c.n, std::move(theta)});

        const auto& talg = ks.total->algebra();
        std::vector<Polynomial> fv;
        for (const auto& v : c.F) fv.push_back(transport(demote(substitute(v, bindings)), talg));
        Morphism F = Morphism::make(Y, ks.total, std::move(fv));

        Polynomial xb = Polynomial::generator(ks.base->algebra(), 0);
        std::vector<Polynomial> rv(talg->size(), Polynomial::zero(ks.base->algebra()));
        rv[0] = xb;
        for (const auto& [g, l] : c.section) {
            LinExpr v = l.substitute(bindings);
            rv[*talg->find(g)] = xb.scaled(v.constant());
        }
        Morphism r = Morphism::make(ks.total, ks.base, std::move(rv));

        Functional a;
        a.n = c.n;
        for (const auto& [g, l] : c.cls.coeffs) a.coeffs[g] = l.substitute(bindings);
        return MaterializedCertificate{std::move(ks), std::move(F), std::move(r), std::move(a)};
    } catch (const validation_error& e) {
        throw validation_error(std::string("invalid certificate: ") + e.what());
    }
}

Document certificate_document(const Morphism& f, const TrivialBuild& build, const Functional& a) {
    const CdgaPtr& Y = f.source();
    const CdgaPtr& X = f.target();
    Document doc;
    doc.blocks.push_back(AlgebraBlock{"Y", Y});
    std::string xname = "X";
    if (X == Y)
        xname = "Y";
    else
        doc.blocks.push_back(AlgebraBlock{"X", X});
    doc.blocks.push_back(MorphismBlock{"f", "Y", xname, share(f)});

    const auto& talg = build.ks.total->algebra();
    const auto& xalg = X->algebra();
    int n = build.ks.base->algebra()->gen(0).degree;

    // extract the twist: D(v) = d_X(v) + x u_v and theta(v) = -u_v
    CertificateBlock cb;
    cb.map = "f";
    cb.n = n;
    cb.theta.phi = share(Morphism::identity(X));
    cb.theta.n = n - 1;
    for (size_t j = 0; j < build.ks.fiber_gens.size(); ++j) {
        int idx = build.ks.fiber_gens[j];
        Polynomial diff = build.ks.total->d_gen(idx) - transport(X->d_gen(static_cast<int>(j)), talg);
        auto [x_free, stripped] = split_x(0, diff);
        if (!x_free.is_zero())
            throw inconsistency_error("built extension is not a sphere twist of its fiber");
        cb.theta.values.push_back(promote(-transport(stripped, xalg)));
    }
    cb.source_alg = Y->algebra();
    cb.total_alg = talg;
    for (const auto& v : build.F.values()) cb.F.push_back(promote(v));

    Monomial xm = Monomial::one(1);
    xm.e[0] = 1;
    for (int idx : build.ks.fiber_gens) {
        const auto& g = talg->gen(idx);
        if (g.degree != n) continue;
        Rational t = build.s.value(idx).coeff(xm);
        if (t != 0) cb.section[g.name] = LinExpr(t);
    }
    cb.cls = a;
    doc.blocks.push_back(std::move(cb));
    return doc;
}

} // namespace rht::dsl
