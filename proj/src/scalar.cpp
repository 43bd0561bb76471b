#include "walg/scalar.hpp"

#include <cctype>
#include <sstream>

namespace walg {

// ---------------------------------------------------------------- QQi

QQi QQi::operator/(const QQi& o) const {
    if (o.is_zero()) throw std::runtime_error("QQi: division by zero");
    mpq_class n = o.re * o.re + o.im * o.im;
    return QQi((re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n);
}

std::string QQi::str() const {
    std::ostringstream out;
    if (im == 0) {
        out << re;
    } else if (re == 0) {
        if (im == 1) out << "i";
        else if (im == -1) out << "-i";
        else out << im << "*i";
    } else {
        out << "(" << re;
        if (im == 1) out << "+i";
        else if (im == -1) out << "-i";
        else if (im > 0) out << "+" << im << "*i";
        else out << im << "*i";
        out << ")";
    }
    return out.str();
}

// ---------------------------------------------------------------- KPoly

KPoly KPoly::var() {
    KPoly p;
    p.c = {QQi(), QQi(1L)};
    return p;
}

void KPoly::trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

KPoly KPoly::operator-() const {
    KPoly r = *this;
    for (auto& v : r.c) v = -v;
    return r;
}

KPoly KPoly::operator+(const KPoly& o) const {
    KPoly r;
    r.c.resize(std::max(c.size(), o.c.size()));
    for (size_t j = 0; j < r.c.size(); ++j) r.c[j] = coeff(j) + o.coeff(j);
    r.trim();
    return r;
}

KPoly KPoly::operator-(const KPoly& o) const { return *this + (-o); }

KPoly KPoly::operator*(const KPoly& o) const {
    if (is_zero() || o.is_zero()) return KPoly();
    KPoly r;
    r.c.assign(c.size() + o.c.size() - 1, QQi());
    for (size_t j = 0; j < c.size(); ++j)
        for (size_t l = 0; l < o.c.size(); ++l) r.c[j + l] = r.c[j + l] + c[j] * o.c[l];
    r.trim();
    return r;
}

KPoly KPoly::scaled(const QQi& v) const {
    if (v.is_zero()) return KPoly();
    KPoly r = *this;
    for (auto& x : r.c) x = x * v;
    return r;
}

void KPoly::divmod(const KPoly& a, const KPoly& b, KPoly& q, KPoly& r) {
    if (b.is_zero()) throw std::runtime_error("KPoly: division by zero polynomial");
    q = KPoly();
    r = a;
    if (a.is_zero()) return;
    q.c.assign(std::max<int>(0, a.deg() - b.deg() + 1), QQi());
    while (!r.is_zero() && r.deg() >= b.deg()) {
        QQi f = r.lead() / b.lead();
        int sh = r.deg() - b.deg();
        q.c[sh] = q.c[sh] + f;
        // r -= f * x^sh * b
        for (size_t j = 0; j < b.c.size(); ++j)
            r.c[j + sh] = r.c[j + sh] - f * b.c[j];
        r.trim();
    }
    q.trim();
}

KPoly KPoly::gcd(const KPoly& a, const KPoly& b) {
    KPoly x = a, y = b;
    while (!y.is_zero()) {
        KPoly q, r;
        divmod(x, y, q, r);
        x = y;
        y = r;
    }
    if (x.is_zero()) return x;
    return x.monic();
}

KPoly KPoly::monic() const {
    if (is_zero()) return *this;
    return scaled(QQi(1L) / lead());
}

QQi KPoly::eval(const mpq_class& k0) const {
    QQi v;
    for (size_t j = c.size(); j-- > 0;) v = v * QQi(k0) + c[j];
    return v;
}

std::optional<KPoly> KPoly::sqrt_exact() const {
    if (is_zero()) return KPoly();
    if (deg() % 2 != 0) return std::nullopt;
    // Candidate root r with r^2 = p, constructed from the top down.
    // Work over QQi: need sqrt of the leading coefficient to be rational or
    // rational*i; only handle leading coefficients that are squares in QQi of
    // a "nice" element.  For our use (perfect-square detection in adjoin) a
    // rational-square leading coefficient suffices.
    const KPoly& p = *this;
    QQi lc = p.lead();
    if (!lc.is_real() || lc.re < 0) return std::nullopt;
    mpq_class ln = lc.re;
    mpz_class n2 = ln.get_num(), d2 = ln.get_den(), ns, ds;
    if (mpz_perfect_square_p(n2.get_mpz_t()) == 0) return std::nullopt;
    if (mpz_perfect_square_p(d2.get_mpz_t()) == 0) return std::nullopt;
    mpz_sqrt(ns.get_mpz_t(), n2.get_mpz_t());
    mpz_sqrt(ds.get_mpz_t(), d2.get_mpz_t());
    int m = deg() / 2;
    KPoly r;
    r.c.assign(m + 1, QQi());
    r.c[m] = QQi(mpq_class(ns) / mpq_class(ds));
    for (int j = m - 1; j >= 0; --j) {
        // coefficient of x^{m+j} in r^2 must match p
        QQi acc;
        for (int t = j + 1; t < m; ++t)
            if (m + j - t <= m && m + j - t > j) acc = acc + r.c[t] * r.c[m + j - t];
        QQi target = p.coeff(m + j) - acc;
        r.c[j] = target / (QQi(2L) * r.c[m]);
    }
    if (r * r == p) { r.trim(); return r; }
    return std::nullopt;
}

// ---------------------------------------------------------------- RatFun

void RatFun::assign(const KPoly& n, const KPoly& d) {
    if (d.is_zero()) throw std::runtime_error("RatFun: zero denominator");
    if (n.is_zero()) { num = KPoly(); den = KPoly(1L); return; }
    KPoly g = KPoly::gcd(n, d);
    KPoly qn, qd, r;
    KPoly::divmod(n, g, qn, r);
    KPoly::divmod(d, g, qd, r);
    QQi lc = qd.lead();
    num = qn.scaled(QQi(1L) / lc);
    den = qd.scaled(QQi(1L) / lc);
}

RatFun RatFun::operator-() const {
    RatFun r;
    r.num = -num;
    r.den = den;
    return r;
}

RatFun RatFun::operator+(const RatFun& o) const {
    return RatFun(num * o.den + o.num * den, den * o.den);
}

RatFun RatFun::operator-(const RatFun& o) const {
    return RatFun(num * o.den - o.num * den, den * o.den);
}

RatFun RatFun::operator*(const RatFun& o) const {
    return RatFun(num * o.num, den * o.den);
}

RatFun RatFun::operator/(const RatFun& o) const {
    if (o.is_zero()) throw std::runtime_error("RatFun: division by zero");
    return RatFun(num * o.den, den * o.num);
}

QQi RatFun::eval(const mpq_class& k0) const {
    QQi d = den.eval(k0);
    if (d.is_zero()) throw std::runtime_error("RatFun: pole at sample point");
    return num.eval(k0) / d;
}

// ---------------------------------------------------------------- LevelScalar

LevelScalar LevelScalar::k() { return from_poly(KPoly::var()); }

LevelScalar LevelScalar::i() { return LevelScalar(QQi::unit_i()); }

LevelScalar LevelScalar::sqrt_of(const KPoly& qpoly) {
    if (qpoly.is_zero()) throw std::runtime_error("sqrt_of: zero radicand");
    if (auto r = qpoly.sqrt_exact()) return from_poly(*r);
    LevelScalar s;
    s.b = RatFun(KPoly(1L));
    s.q = std::make_shared<KPoly>(qpoly);
    return s;
}

void LevelScalar::normalize_root() {
    if (b.is_zero()) q.reset();
    if (!b.is_zero() && !q) throw std::runtime_error("LevelScalar: root part without session root");
}

void LevelScalar::merge_roots(const LevelScalar& x, const LevelScalar& y,
                              std::shared_ptr<const KPoly>& out) {
    if (x.q && y.q) {
        if (*x.q != *y.q)
            throw std::runtime_error("LevelScalar: mixing two different adjoined roots");
        out = x.q;
    } else {
        out = x.q ? x.q : y.q;
    }
}

LevelScalar LevelScalar::operator-() const {
    LevelScalar r = *this;
    r.a = -r.a;
    r.b = -r.b;
    return r;
}

LevelScalar LevelScalar::operator+(const LevelScalar& o) const {
    LevelScalar r;
    merge_roots(*this, o, r.q);
    r.a = a + o.a;
    r.b = b + o.b;
    r.normalize_root();
    return r;
}

LevelScalar LevelScalar::operator-(const LevelScalar& o) const { return *this + (-o); }

LevelScalar LevelScalar::operator*(const LevelScalar& o) const {
    LevelScalar r;
    merge_roots(*this, o, r.q);
    if (r.q) {
        RatFun qq(*r.q);
        r.a = a * o.a + b * o.b * qq;
        r.b = a * o.b + b * o.a;
    } else {
        r.a = a * o.a;
    }
    r.normalize_root();
    return r;
}

LevelScalar LevelScalar::inv() const {
    if (is_zero()) throw std::runtime_error("LevelScalar: division by zero");
    if (!q) {
        LevelScalar r;
        r.a = RatFun(KPoly(1L)) / a;
        return r;
    }
    RatFun qq(*q);
    RatFun nrm = a * a - b * b * qq;
    if (nrm.is_zero())
        throw std::runtime_error("LevelScalar: adjoined root is rational (degenerate session)");
    LevelScalar r;
    r.q = q;
    r.a = a / nrm;
    r.b = -b / nrm;
    r.normalize_root();
    return r;
}

LevelScalar LevelScalar::operator/(const LevelScalar& o) const { return *this * o.inv(); }

bool LevelScalar::operator==(const LevelScalar& o) const {
    if (a != o.a || b != o.b) return false;
    if (b.is_zero()) return true;
    return *q == *o.q;
}

QQi LevelScalar::evaluate(const mpq_class& k0) const {
    QQi v = a.eval(k0);
    if (!b.is_zero()) {
        QQi q0 = q->eval(k0);
        if (!q0.is_real() || q0.re < 0)
            throw std::runtime_error("LevelScalar: root square not a nonnegative rational at sample");
        mpz_class n2 = q0.re.get_num(), d2 = q0.re.get_den(), ns, ds;
        if (mpz_perfect_square_p(n2.get_mpz_t()) == 0 ||
            mpz_perfect_square_p(d2.get_mpz_t()) == 0)
            throw std::runtime_error("LevelScalar: root square not a rational square at sample");
        mpz_sqrt(ns.get_mpz_t(), n2.get_mpz_t());
        mpz_sqrt(ds.get_mpz_t(), d2.get_mpz_t());
        QQi s0(mpq_class(ns) / mpq_class(ds));
        v = v + b.eval(k0) * s0;
    }
    return v;
}

LevelScalar operator*(long v, const LevelScalar& x) { return LevelScalar(v) * x; }

// ---------------------------------------------------------------- printing

std::string kpoly_str(const KPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int j = p.deg(); j >= 0; --j) {
        QQi cj = p.coeff(j);
        if (cj.is_zero()) continue;
        std::string cs = cj.str();
        if (!first) {
            if (cs.size() && cs[0] == '-' ) { out << " - "; cs = cs.substr(1); }
            else out << " + ";
        }
        first = false;
        if (j == 0) {
            out << cs;
        } else {
            if (cs == "1") ;
            else if (cs == "-1") out << "-";
            else out << cs << "*";
            out << "k";
            if (j > 1) out << "^" << j;
        }
    }
    return out.str();
}

std::string ratfun_str(const RatFun& r) {
    if (r.is_zero()) return "0";
    std::string n = kpoly_str(r.num);
    if (r.den.deg() == 0) return n.find(' ') == std::string::npos ? n : "(" + n + ")";
    return "(" + n + ")/(" + kpoly_str(r.den) + ")";
}

std::string LevelScalar::str() const {
    if (is_zero()) return "0";
    std::string out;
    if (!a.is_zero()) out = ratfun_str(a);
    if (!b.is_zero()) {
        std::string bs = ratfun_str(b) + "*s";
        if (out.empty()) out = bs;
        else out += " + " + bs;
    }
    return out;
}

// ---------------------------------------------------------------- parsing

namespace {

struct Parser {
    const std::string& s;
    size_t p = 0;
    const KPoly* session_q;  // root square for s, may be null

    explicit Parser(const std::string& text, const KPoly* q) : s(text), session_q(q) {}

    void skip() { while (p < s.size() && std::isspace((unsigned char)s[p])) ++p; }
    bool eat(char c) {
        skip();
        if (p < s.size() && s[p] == c) { ++p; return true; }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw std::runtime_error("parse error at position " + std::to_string(p) + ": " + msg);
    }

    LevelScalar expr() {
        LevelScalar v = term();
        for (;;) {
            skip();
            if (eat('+')) v = v + term();
            else if (eat('-')) v = v - term();
            else return v;
        }
    }
    LevelScalar term() {
        LevelScalar v = factor();
        for (;;) {
            skip();
            if (eat('*')) v = v * factor();
            else if (eat('/')) v = v / factor();
            else return v;
        }
    }
    LevelScalar factor() {
        skip();
        bool neg = false;
        while (eat('-')) neg = !neg;
        LevelScalar v = primary();
        skip();
        if (eat('^')) {
            skip();
            size_t start = p;
            while (p < s.size() && std::isdigit((unsigned char)s[p])) ++p;
            if (start == p) fail("expected nonnegative integer exponent");
            long e = std::stol(s.substr(start, p - start));
            LevelScalar r(1L);
            for (long j = 0; j < e; ++j) r = r * v;
            v = r;
        }
        return neg ? -v : v;
    }
    LevelScalar primary() {
        skip();
        if (p >= s.size()) fail("unexpected end of input");
        char c = s[p];
        if (c == '(') {
            ++p;
            LevelScalar v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (std::isdigit((unsigned char)c)) {
            size_t start = p;
            while (p < s.size() && std::isdigit((unsigned char)s[p])) ++p;
            return LevelScalar(mpq_class(s.substr(start, p - start)));
        }
        if (c == 'i') { ++p; return LevelScalar::i(); }
        if (c == 'k') { ++p; return LevelScalar::k(); }
        if (c == 's') {
            ++p;
            if (!session_q) fail("'s' used without an adjoined root in scope");
            return LevelScalar::sqrt_of(*session_q);
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

thread_local const KPoly* g_parse_root = nullptr;

}  // namespace

LevelScalar LevelScalar::parse(const std::string& text) {
    Parser pr(text, g_parse_root);
    LevelScalar v = pr.expr();
    pr.skip();
    if (pr.p != text.size()) pr.fail("trailing input");
    return v;
}

}  // namespace walg

namespace walg {
// Sets the root square used when parsing the symbol 's'; returns previous.
const KPoly* set_parse_root(const KPoly* q) {
    const KPoly* old = g_parse_root;
    g_parse_root = q;
    return old;
}
}  // namespace walg
