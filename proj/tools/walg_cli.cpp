// Command-line surface of the engine: load an algebra, evaluate expressions
// in a small language over the reduction complexes, and run the full
// verification suite with a machine-readable report.
//
// Exit codes: 0 all requested checks pass, 1 verification failure,
// 2 usage or expression errors.

#include "walg/brst.hpp"
#include "walg/env.hpp"
#include "walg/linalg.hpp"
#include "walg/verify.hpp"
#include "walg/zhu.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

using namespace walg;
using nlohmann::ordered_json;

namespace {

struct UsageError {
    std::string msg;
    size_t pos = std::string::npos;  // position in the expression, if any
};

AlgebraSpec load_algebra(const std::string& name, const std::string& spec_file) {
    if (!spec_file.empty()) return AlgebraSpec::load_file(spec_file);
    if (name == "osp12") return AlgebraSpec::osp12();
    if (name == "sl21") return AlgebraSpec::sl21();
    throw UsageError{"unknown algebra '" + name + "' (use osp12, sl21, or --spec-file)"};
}

// ---------------------------------------------------------------------------
// expression language
// ---------------------------------------------------------------------------

struct Value {
    enum Kind { Scalar, Letters, Field, Lambda, Bracket, Finite, Envelope } kind;
    LevelScalar s;        // Scalar
    AbsPoly abs;          // Letters: element of the reduced complex
    VPoly vp;             // Field: element of the ambient vertex algebra
    LambdaSuperPoly lsp;  // Lambda: result of a Lambda bracket
    LPoly lp;             // Bracket: result of a lambda bracket
    PbwPoly pb;           // Finite (Zhu algebra) or Envelope (doubled algebra)
};

const char* kind_name(Value::Kind k) {
    switch (k) {
        case Value::Scalar: return "scalar";
        case Value::Letters: return "letters";
        case Value::Field: return "field";
        case Value::Lambda: return "Lambda bracket";
        case Value::Bracket: return "lambda bracket";
        case Value::Finite: return "finite";
        case Value::Envelope: return "envelope";
    }
    return "?";
}

struct Token {
    enum Kind { Ident, Number, Punct, End } kind;
    std::string text;
    size_t pos;
};

std::vector<Token> tokenize(const std::string& src) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < src.size()) {
        char c = src[i];
        if (c == ' ' || c == '\t' || c == '\n') {
            ++i;
            continue;
        }
        if (isdigit((unsigned char)c)) {
            size_t j = i;
            while (j < src.size() && isdigit((unsigned char)src[j])) ++j;
            out.push_back({Token::Number, src.substr(i, j - i), i});
            i = j;
            continue;
        }
        if (isalpha((unsigned char)c) || c == '_') {
            size_t j = i;
            while (j < src.size() &&
                   (isalnum((unsigned char)src[j]) || src[j] == '_'))
                ++j;
            out.push_back({Token::Ident, src.substr(i, j - i), i});
            i = j;
            continue;
        }
        if (std::string("()[],+-*/").find(c) != std::string::npos) {
            out.push_back({Token::Punct, std::string(1, c), i});
            ++i;
            continue;
        }
        throw UsageError{std::string("unexpected character '") + c + "'", i};
    }
    out.push_back({Token::End, "", src.size()});
    return out;
}

// evaluation context; the heavier complexes are built on first use
struct Ctx {
    AlgebraSpec g;
    Flavor flavor;
    std::unique_ptr<BrstComplex> c;
    std::unique_ptr<ZhuComplex> z;
    std::unique_ptr<TakiffAlgebra> t;
    LevelScalar ell;  // character parameter of the envelope reduction

    Ctx(AlgebraSpec alg, Flavor f) : g(std::move(alg)), flavor(f) {}

    BrstComplex& complex() {
        if (!c) c = std::make_unique<BrstComplex>(g, flavor);
        return *c;
    }
    ZhuComplex& zhu() {
        if (flavor != Flavor::susy)
            throw UsageError{"the finite quotient is defined over the susy flavor"};
        if (!z) z = std::make_unique<ZhuComplex>(g);
        return *z;
    }
    TakiffAlgebra& envelope() {
        if (!t) {
            // the worked example instance for osp12 (level one, rescaled
            // Cartan, character parameter 1/2); the generic instance otherwise
            if (g.name == "osp12") {
                t = std::make_unique<TakiffAlgebra>(g, LevelScalar(1L), true);
                ell = LevelScalar(mpq_class(1, 2));
            } else {
                t = std::make_unique<TakiffAlgebra>(
                    g, LevelScalar::k() + LevelScalar(g.dual_coxeter), false);
                ell = LevelScalar(1L);
            }
        }
        return *t;
    }
};

struct Parser {
    const std::vector<Token>& toks;
    size_t at = 0;
    Ctx& ctx;

    Parser(const std::vector<Token>& t, Ctx& c) : toks(t), ctx(c) {}

    const Token& peek() const { return toks[at]; }
    Token next() { return toks[at++]; }
    bool accept(const std::string& p) {
        if (peek().kind == Token::Punct && peek().text == p) {
            ++at;
            return true;
        }
        return false;
    }
    void expect(const std::string& p) {
        if (!accept(p))
            throw UsageError{"expected '" + p + "'", peek().pos};
    }

    Value expr() {
        Value v = term();
        for (;;) {
            size_t pos = peek().pos;
            if (accept("+"))
                v = add(v, term(), 1, pos);
            else if (accept("-"))
                v = add(v, term(), -1, pos);
            else
                return v;
        }
    }

    Value term() {
        Value v = unary();
        for (;;) {
            size_t pos = peek().pos;
            if (accept("*"))
                v = mul(v, unary(), pos);
            else if (accept("/"))
                v = divide(v, unary(), pos);
            else
                return v;
        }
    }

    Value unary() {
        size_t pos = peek().pos;
        if (accept("-")) {
            Value v = unary();
            Value m;
            m.kind = Value::Scalar;
            m.s = LevelScalar(-1L);
            return mul(m, v, pos);
        }
        return primary();
    }

    Value primary() {
        const Token& tk = peek();
        if (tk.kind == Token::Number) {
            next();
            Value v;
            v.kind = Value::Scalar;
            v.s = LevelScalar(mpq_class(tk.text));
            return v;
        }
        if (tk.kind == Token::Punct && tk.text == "(") {
            next();
            Value v = expr();
            expect(")");
            return v;
        }
        if (tk.kind == Token::Ident) return ident_led(next());
        throw UsageError{"expected a value", tk.pos};
    }

    std::string bracket_name() {
        expect("[");
        std::string name;
        while (!(peek().kind == Token::Punct && peek().text == "]")) {
            if (peek().kind == Token::End)
                throw UsageError{"unterminated '['", peek().pos};
            name += next().text;
        }
        expect("]");
        return name;
    }

    Value ident_led(const Token& tk) {
        const std::string& id = tk.text;
        if (id == "k" && !starts_call()) {
            Value v;
            v.kind = Value::Scalar;
            v.s = LevelScalar::k();
            return v;
        }
        if (id == "i" && !starts_call()) {
            Value v;
            v.kind = Value::Scalar;
            v.s = LevelScalar(QQi::unit_i());
            return v;
        }
        if (peek().kind == Token::Punct && peek().text == "[")
            return letter_atom(id, tk.pos);
        if (starts_call()) return call(id, tk.pos);
        throw UsageError{"unknown name '" + id + "'", tk.pos};
    }

    bool starts_call() const {
        return peek().kind == Token::Punct && peek().text == "(";
    }

    Value letter_atom(const std::string& prefix, size_t pos) {
        std::string name = bracket_name();
        if (prefix == "U") {
            TakiffAlgebra& t = ctx.envelope();
            size_t gi;
            try {
                gi = t.u.index_of(name);
            } catch (const std::exception&) {
                throw UsageError{"unknown generator '" + name + "'", pos};
            }
            Value v;
            v.kind = Value::Envelope;
            v.pb = t.u.gen(gi);
            return v;
        }
        if (prefix != "J" && prefix != "DJ" && prefix != "Phi")
            throw UsageError{"unknown letter family '" + prefix + "'", pos};
        std::string full = prefix + "[" + name + "]";
        BrstComplex& c = ctx.complex();
        const auto& ls = c.letters();
        for (size_t idx = 0; idx < ls.size(); ++idx)
            if (ls[idx].name == full) {
                Value v;
                v.kind = Value::Letters;
                v.abs[AbsMono{{(uint32_t)idx, 0}}] = LevelScalar(1L);
                return v;
            }
        throw UsageError{"unknown generator '" + full + "'", pos};
    }

    std::vector<Value> args(size_t n, size_t pos) {
        expect("(");
        std::vector<Value> out;
        if (!accept(")")) {
            out.push_back(expr());
            while (accept(",")) out.push_back(expr());
            expect(")");
        }
        if (out.size() != n)
            throw UsageError{"expected " + std::to_string(n) + " argument(s)", pos};
        return out;
    }

    VPoly as_field(const Value& v, size_t pos) {
        if (v.kind == Value::Field) return v.vp;
        if (v.kind == Value::Letters) return ctx.complex().realize(v.abs);
        if (v.kind == Value::Scalar)
            return vp_scaled(ctx.complex().eng.vacuum(), v.s);
        throw UsageError{std::string("expected a field, got ") + kind_name(v.kind),
                         pos};
    }

    AbsPoly as_letters(const Value& v, size_t pos) {
        if (v.kind == Value::Letters) return v.abs;
        throw UsageError{
            std::string("expected an element in the reduced letters, got ") +
                kind_name(v.kind),
            pos};
    }

    Value call(const std::string& id, size_t pos) {
        if (id == "omega") {
            expect("(");
            if (peek().kind != Token::Ident)
                throw UsageError{"omega expects a generator name", peek().pos};
            std::string name = next().text;
            expect(")");
            return omega(name, pos);
        }
        if (id == "Lambda") {
            auto a = args(2, pos);
            if (ctx.flavor != Flavor::susy)
                throw UsageError{"Lambda brackets require --flavor susy", pos};
            Value v;
            v.kind = Value::Lambda;
            v.lsp = ctx.complex().susy.Lambda_bracket(as_field(a[0], pos),
                                                      as_field(a[1], pos));
            return v;
        }
        if (id == "lb") {
            auto a = args(2, pos);
            Value v;
            v.kind = Value::Bracket;
            v.lp = ctx.complex().eng.lb(as_field(a[0], pos), as_field(a[1], pos));
            return v;
        }
        if (id == "no") {
            auto a = args(2, pos);
            Value v;
            v.kind = Value::Field;
            v.vp = ctx.complex().eng.no_mul(as_field(a[0], pos), as_field(a[1], pos));
            return v;
        }
        if (id == "D") {
            auto a = args(1, pos);
            Value v;
            if (a[0].kind == Value::Letters) {
                v.kind = Value::Letters;
                v.abs = ctx.complex().D_letters(a[0].abs);
                return v;
            }
            if (ctx.flavor != Flavor::susy)
                throw UsageError{"D requires --flavor susy", pos};
            v.kind = Value::Field;
            v.vp = ctx.complex().susy.D(as_field(a[0], pos));
            return v;
        }
        if (id == "d0") {
            auto a = args(1, pos);
            Value v;
            v.kind = Value::Field;
            v.vp = ctx.complex().d0(as_field(a[0], pos));
            return v;
        }
        if (id == "miura") {
            auto a = args(1, pos);
            Value v;
            v.kind = Value::Letters;
            v.abs = ctx.complex().miura(as_letters(a[0], pos));
            return v;
        }
        if (id == "realize") {
            auto a = args(1, pos);
            Value v;
            v.kind = Value::Field;
            v.vp = ctx.complex().realize(as_letters(a[0], pos));
            return v;
        }
        if (id == "zhu") {
            auto a = args(1, pos);
            Value v;
            v.kind = Value::Finite;
            v.pb = ctx.zhu().project(as_field(a[0], pos));
            return v;
        }
        if (id == "Q") {
            auto a = args(1, pos);
            Value v;
            v.kind = Value::Finite;
            PbwPoly x = a[0].kind == Value::Finite ? a[0].pb
                                                   : ctx.zhu().project(as_field(a[0], pos));
            v.pb = ctx.zhu().Q(x);
            return v;
        }
        if (id == "reduce") {
            auto a = args(1, pos);
            if (a[0].kind != Value::Envelope)
                throw UsageError{"reduce expects an envelope element (use U[...])", pos};
            TakiffAlgebra& t = ctx.envelope();
            Value v;
            v.kind = Value::Envelope;
            v.pb = t.reduce(a[0].pb, ctx.ell);
            return v;
        }
        if (id == "ad") {
            auto a = args(2, pos);
            if (a[0].kind != Value::Envelope || a[1].kind != Value::Envelope)
                throw UsageError{"ad expects envelope elements (use U[...])", pos};
            if (a[0].pb.size() != 1 || a[0].pb.begin()->first.size() != 1)
                throw UsageError{"the first argument of ad must be a single letter",
                                 pos};
            TakiffAlgebra& t = ctx.envelope();
            Value v;
            v.kind = Value::Envelope;
            v.pb = t.ad(a[0].pb.begin()->first[0], a[1].pb, ctx.ell);
            return v;
        }
        throw UsageError{"unknown function '" + id + "'", pos};
    }

    // canonical kernel generator whose single-letter leading term is J[name]:
    // the reduced echelon representative over the monomial order that puts
    // that monomial first
    Value omega(const std::string& name, size_t pos) {
        BrstComplex& c = ctx.complex();
        std::string full = "J[" + name + "]";
        const auto& ls = c.letters();
        size_t idx = ls.size();
        for (size_t j = 0; j < ls.size(); ++j)
            if (ls[j].name == full) idx = j;
        if (idx == ls.size())
            throw UsageError{"unknown generator '" + full + "'", pos};
        std::vector<AbsPoly> ker = c.kernel_at(ls[idx].weight);
        AbsMono lead{{(uint32_t)idx, 0}};
        std::map<AbsMono, size_t> cols;
        cols[lead] = 0;
        for (const auto& v : ker)
            for (const auto& [m, cf] : v) cols.emplace(m, 0);
        size_t nc = 0;
        for (auto& [m, j] : cols) j = 0;
        cols[lead] = nc++;
        for (auto& [m, j] : cols)
            if (!(m == lead)) j = nc++;
        std::vector<AbsMono> monos(nc);
        for (const auto& [m, j] : cols) monos[j] = m;
        Mat<LevelScalar> mat(ker.size(), nc);
        for (size_t r = 0; r < ker.size(); ++r)
            for (const auto& [m, cf] : ker[r]) mat.at(r, cols[m]) = cf;
        std::vector<size_t> piv = rref(mat);
        for (size_t r = 0; r < piv.size(); ++r)
            if (piv[r] == 0) {
                Value v;
                v.kind = Value::Letters;
                for (size_t cix = 0; cix < nc; ++cix)
                    if (!mat.at(r, cix).is_zero()) v.abs[monos[cix]] = mat.at(r, cix);
                return v;
            }
        throw UsageError{"no kernel generator led by '" + full + "'", pos};
    }

    Value add(const Value& a, const Value& b, int sign, size_t pos) {
        if (a.kind != b.kind)
            throw UsageError{std::string("cannot add ") + kind_name(a.kind) + " and " +
                                 kind_name(b.kind),
                             pos};
        LevelScalar sg((long)sign);
        Value v;
        v.kind = a.kind;
        switch (a.kind) {
            case Value::Scalar: v.s = a.s + sg * b.s; return v;
            case Value::Letters: {
                v.abs = a.abs;
                for (const auto& [m, cf] : b.abs) {
                    auto it = v.abs.find(m);
                    LevelScalar nv = (it == v.abs.end() ? LevelScalar(0L) : it->second) +
                                     sg * cf;
                    if (nv.is_zero())
                        v.abs.erase(m);
                    else
                        v.abs[m] = nv;
                }
                return v;
            }
            case Value::Field:
                v.vp = a.vp;
                vp_acc(v.vp, b.vp, sg);
                return v;
            case Value::Finite:
            case Value::Envelope:
                v.pb = a.pb;
                pb_acc(v.pb, b.pb, sg);
                return v;
            default:
                throw UsageError{std::string("cannot add values of type ") +
                                     kind_name(a.kind),
                                 pos};
        }
    }

    Value scale(const Value& a, const LevelScalar& c) {
        Value v;
        v.kind = a.kind;
        switch (a.kind) {
            case Value::Scalar: v.s = a.s * c; break;
            case Value::Letters:
                for (const auto& [m, cf] : a.abs)
                    if (!(cf * c).is_zero()) v.abs[m] = cf * c;
                break;
            case Value::Field: v.vp = vp_scaled(a.vp, c); break;
            case Value::Finite:
            case Value::Envelope: v.pb = pb_scaled(a.pb, c); break;
            case Value::Bracket:
                v.lp.resize(a.lp.size());
                for (size_t j = 0; j < a.lp.size(); ++j) v.lp[j] = vp_scaled(a.lp[j], c);
                break;
            case Value::Lambda:
                v.lsp.part0.resize(a.lsp.part0.size());
                for (size_t j = 0; j < a.lsp.part0.size(); ++j)
                    v.lsp.part0[j] = vp_scaled(a.lsp.part0[j], c);
                v.lsp.part1.resize(a.lsp.part1.size());
                for (size_t j = 0; j < a.lsp.part1.size(); ++j)
                    v.lsp.part1[j] = vp_scaled(a.lsp.part1[j], c);
                break;
        }
        return v;
    }

    Value mul(const Value& a, const Value& b, size_t pos) {
        if (a.kind == Value::Scalar) return scale(b, a.s);
        if (b.kind == Value::Scalar) return scale(a, b.s);
        if (a.kind == Value::Envelope && b.kind == Value::Envelope) {
            Value v;
            v.kind = Value::Envelope;
            v.pb = ctx.envelope().u.mul(a.pb, b.pb);
            return v;
        }
        if (a.kind == Value::Finite && b.kind == Value::Finite) {
            Value v;
            v.kind = Value::Finite;
            v.pb = ctx.zhu().u.mul(a.pb, b.pb);
            return v;
        }
        if (a.kind == Value::Field && b.kind == Value::Field)
            throw UsageError{"fields have no associative product; use no(a, b)", pos};
        throw UsageError{std::string("cannot multiply ") + kind_name(a.kind) + " and " +
                             kind_name(b.kind),
                         pos};
    }

    Value divide(const Value& a, const Value& b, size_t pos) {
        if (b.kind != Value::Scalar)
            throw UsageError{"division by a non-scalar", pos};
        if (b.s.is_zero()) throw UsageError{"division by zero", pos};
        return scale(a, LevelScalar(1L) / b.s);
    }
};

std::string render(Ctx& ctx, const Value& v) {
    switch (v.kind) {
        case Value::Scalar: return v.s.str();
        case Value::Letters: return ctx.complex().str(v.abs);
        case Value::Field: return ctx.complex().eng.str(v.vp);
        case Value::Bracket: return ctx.complex().eng.str(v.lp);
        case Value::Lambda: {
            std::string p0 = ctx.complex().eng.str(v.lsp.part0);
            std::string p1 = ctx.complex().eng.str(v.lsp.part1);
            return p0 + " + chi (" + p1 + ")";
        }
        case Value::Finite: return ctx.zhu().u.str(v.pb);
        case Value::Envelope: return ctx.envelope().u.str(v.pb);
    }
    return "";
}

// ---------------------------------------------------------------------------
// commands
// ---------------------------------------------------------------------------

int run_verify(const std::string& algebra, const std::string& spec_file,
               const VerifyOptions& opt, bool json_out) {
    std::vector<AlgebraSpec> algs;
    if (!spec_file.empty() || algebra != "all") {
        algs.push_back(load_algebra(algebra == "all" ? "osp12" : algebra, spec_file));
    } else {
        algs.push_back(AlgebraSpec::osp12());
        algs.push_back(AlgebraSpec::sl21());
    }
    bool all_ok = true;
    ordered_json out;
    out["schema"] = "walg.report/1";
    out["command"] = "verify-paper";
    out["algebras"] = ordered_json::array();
    for (const AlgebraSpec& g : algs) {
        VerifyReport rep = verify_reduction(g, opt);
        all_ok = all_ok && rep.ok();
        if (json_out) {
            ordered_json ja;
            ja["algebra"] = g.name;
            ja["checks"] = ordered_json::array();
            for (const auto& l : rep.lines) {
                ordered_json jc;
                jc["name"] = l.name;
                jc["ok"] = l.ok;
                jc["failures"] = l.failures;
                ja["checks"].push_back(std::move(jc));
            }
            ja["ok"] = rep.ok();
            out["algebras"].push_back(std::move(ja));
        } else {
            std::cout << "algebra " << g.name << "\n";
            for (const auto& l : rep.lines) {
                std::cout << "  check " << l.name << ": " << (l.ok ? "ok" : "FAILED")
                          << "\n";
                for (const auto& f : l.failures) std::cout << "    " << f << "\n";
            }
        }
    }
    if (json_out) {
        out["ok"] = all_ok;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "verify-paper: " << (all_ok ? "PASS" : "FAIL") << "\n";
    }
    return all_ok ? 0 : 1;
}

int run_compute(const std::string& command, const std::string& expression,
                const std::string& algebra, const std::string& spec_file,
                const std::string& flavor, bool json_out) {
    AlgebraSpec g = load_algebra(algebra, spec_file);
    Flavor f = flavor == "nonsusy" ? Flavor::nonsusy : Flavor::susy;
    Ctx ctx(std::move(g), f);
    std::vector<Token> toks = tokenize(expression);
    Parser p(toks, ctx);
    Value v = p.expr();
    if (p.peek().kind != Token::End)
        throw UsageError{"unexpected trailing input", p.peek().pos};
    if (command == "miura") {
        size_t pos = 0;
        Value m;
        m.kind = Value::Letters;
        m.abs = ctx.complex().miura(p.as_letters(v, pos));
        v = std::move(m);
    }
    std::string text = render(ctx, v);
    if (json_out) {
        ordered_json out;
        out["schema"] = "walg.report/1";
        out["command"] = command;
        out["expression"] = expression;
        out["type"] = kind_name(v.kind);
        out["result"] = text;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << text << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symbolic engine for vertex superalgebra reductions"};
    app.require_subcommand(1);

    std::string algebra = "all", spec_file, flavor = "susy", corrupt, expression;
    std::vector<long> sample_k{1, 2, 5};
    long cutoff = 1;
    bool json_out = false;

    CLI::App* verify = app.add_subcommand(
        "verify-paper", "run the full verification suite and report each check");
    verify->add_option("--algebra", algebra, "built-in algebra (osp12, sl21, all)");
    verify->add_option("--spec-file", spec_file, "load the algebra from a spec file");
    verify->add_option("--sample-k", sample_k, "levels for numeric cross checks");
    verify->add_option("--cutoff", cutoff, "weight cutoff of the vertex axiom scan")
        ->check(CLI::NonNegativeNumber);
    verify->add_option("--corrupt", corrupt,
                       "negative control: break one axiom (jacobi, skew)");
    verify->add_flag("--json", json_out, "structured report");

    auto add_compute = [&](const char* name, const char* desc) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("expression", expression, "expression to evaluate")->required();
        sub->add_option("--algebra", algebra, "built-in algebra (osp12, sl21)");
        sub->add_option("--spec-file", spec_file, "load the algebra from a spec file");
        sub->add_option("--flavor", flavor, "complex flavor")
            ->check(CLI::IsMember({"susy", "nonsusy"}));
        sub->add_flag("--json", json_out, "structured output");
        return sub;
    };
    add_compute("compute", "evaluate an expression over the reduction complex");
    add_compute("bracket", "evaluate a bracket expression (alias of compute)");
    add_compute("miura",
                "evaluate an expression in the reduced letters and print its "
                "free-field image");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) {
            if (!corrupt.empty() && corrupt != "jacobi" && corrupt != "skew")
                throw UsageError{"unknown --corrupt axiom '" + corrupt +
                                 "' (use jacobi or skew)"};
            VerifyOptions opt;
            opt.corrupt = corrupt;
            opt.cutoff = (size_t)cutoff;
            opt.sample_k.clear();
            AlgebraSpec probe = load_algebra(algebra == "all" ? "osp12" : algebra,
                                             spec_file);
            for (long k0 : sample_k) {
                if (mpq_class(k0) + probe.dual_coxeter == 0)
                    throw UsageError{"sampled level " + std::to_string(k0) +
                                     " hits the critical level"};
                opt.sample_k.push_back(k0);
            }
            return run_verify(algebra, spec_file, opt, json_out);
        }
        std::string cmd = app.get_subcommands().front()->get_name();
        if (algebra == "all") algebra = "osp12";
        return run_compute(cmd, expression, algebra, spec_file, flavor, json_out);
    } catch (const UsageError& e) {
        if (e.pos == std::string::npos)
            std::cerr << "error: " << e.msg << "\n";
        else
            std::cerr << "parse error at position " << e.pos + 1 << ": " << e.msg
                      << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
