#ifndef WALG_SCALAR_HPP
#define WALG_SCALAR_HPP

#include <gmpxx.h>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace walg {

// Gaussian rational a + b*i with exact mpq components.
struct QQi {
    mpq_class re, im;

    QQi() : re(0), im(0) {}
    QQi(long v) : re(v), im(0) {}
    QQi(const mpq_class& r) : re(r), im(0) {}
    QQi(const mpq_class& r, const mpq_class& m) : re(r), im(m) {}

    static QQi unit_i() { return QQi(mpq_class(0), mpq_class(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    QQi operator-() const { return QQi(-re, -im); }
    QQi operator+(const QQi& o) const { return QQi(re + o.re, im + o.im); }
    QQi operator-(const QQi& o) const { return QQi(re - o.re, im - o.im); }
    QQi operator*(const QQi& o) const {
        return QQi(re * o.re - im * o.im, re * o.im + im * o.re);
    }
    QQi operator/(const QQi& o) const;
    bool operator==(const QQi& o) const { return re == o.re && im == o.im; }
    bool operator!=(const QQi& o) const { return !(*this == o); }

    std::string str() const;
};

// Dense polynomial in the level variable k over QQi.  Coefficients are stored
// ascending by degree with no trailing zeros; the zero polynomial is empty.
class KPoly {
public:
    std::vector<QQi> c;

    KPoly() {}
    KPoly(const QQi& c0) { if (!c0.is_zero()) c.push_back(c0); }
    KPoly(long v) : KPoly(QQi(v)) {}

    static KPoly var();  // the polynomial k

    bool is_zero() const { return c.empty(); }
    int deg() const { return (int)c.size() - 1; }  // -1 for zero
    const QQi& lead() const { return c.back(); }
    QQi coeff(size_t j) const { return j < c.size() ? c[j] : QQi(); }
    void trim();

    KPoly operator-() const;
    KPoly operator+(const KPoly& o) const;
    KPoly operator-(const KPoly& o) const;
    KPoly operator*(const KPoly& o) const;
    KPoly scaled(const QQi& v) const;
    bool operator==(const KPoly& o) const { return c == o.c; }
    bool operator!=(const KPoly& o) const { return !(*this == o); }

    // Quotient and remainder; divisor must be nonzero.
    static void divmod(const KPoly& a, const KPoly& b, KPoly& q, KPoly& r);
    static KPoly gcd(const KPoly& a, const KPoly& b);  // monic gcd

    KPoly monic() const;
    QQi eval(const mpq_class& k0) const;
    // Exact polynomial square root if one exists.
    std::optional<KPoly> sqrt_exact() const;
};

// Reduced rational function num/den in k, den monic.
class RatFun {
public:
    KPoly num, den;

    RatFun() : num(), den(1L) {}
    RatFun(const KPoly& n) : num(n), den(1L) {}
    RatFun(const KPoly& n, const KPoly& d) { assign(n, d); }

    void assign(const KPoly& n, const KPoly& d);

    bool is_zero() const { return num.is_zero(); }
    bool is_one() const { return den.deg() == 0 && num == den; }

    RatFun operator-() const;
    RatFun operator+(const RatFun& o) const;
    RatFun operator-(const RatFun& o) const;
    RatFun operator*(const RatFun& o) const;
    RatFun operator/(const RatFun& o) const;
    bool operator==(const RatFun& o) const { return num == o.num && den == o.den; }
    bool operator!=(const RatFun& o) const { return !(*this == o); }

    QQi eval(const mpq_class& k0) const;  // throws on pole
};

// Field element a + b*s where a, b are rational functions in k and s is an
// adjoined square root with s^2 = q(k).  At most one root per value; mixing
// values carrying different q(k) is an error.  When b = 0 the root is dropped,
// so plain rational functions combine freely with any session.
class LevelScalar {
public:
    RatFun a, b;
    std::shared_ptr<const KPoly> q;  // root square; null iff b = 0

    LevelScalar() {}
    LevelScalar(long v) : a(KPoly(v)) {}
    LevelScalar(const mpq_class& v) : a(KPoly(QQi(v))) {}
    LevelScalar(const QQi& v) : a(KPoly(v)) {}
    LevelScalar(const RatFun& r) : a(r) {}

    static LevelScalar k();                  // the level variable
    static LevelScalar i();                  // imaginary unit
    static LevelScalar from_poly(const KPoly& p) { return LevelScalar(RatFun(p)); }
    // Square root of polynomial q(k).  If q is a perfect square the root is
    // resolved to the (monic-principal) polynomial; otherwise s is adjoined.
    static LevelScalar sqrt_of(const KPoly& qpoly);

    bool has_root() const { return (bool)q; }
    bool is_zero() const { return a.is_zero() && b.is_zero(); }
    bool is_one() const { return b.is_zero() && a.is_one(); }

    LevelScalar operator-() const;
    LevelScalar operator+(const LevelScalar& o) const;
    LevelScalar operator-(const LevelScalar& o) const;
    LevelScalar operator*(const LevelScalar& o) const;
    LevelScalar operator/(const LevelScalar& o) const;
    LevelScalar& operator+=(const LevelScalar& o) { return *this = *this + o; }
    LevelScalar& operator-=(const LevelScalar& o) { return *this = *this - o; }
    LevelScalar& operator*=(const LevelScalar& o) { return *this = *this * o; }
    LevelScalar& operator/=(const LevelScalar& o) { return *this = *this / o; }
    bool operator==(const LevelScalar& o) const;
    bool operator!=(const LevelScalar& o) const { return !(*this == o); }

    LevelScalar inv() const;

    // Exact value at k = k0.  Requires q(k0) to be the square of a rational
    // if the root part is present (principal nonnegative root taken).
    QQi evaluate(const mpq_class& k0) const;

    std::string str() const;
    static LevelScalar parse(const std::string& text);

private:
    void normalize_root();
    static void merge_roots(const LevelScalar& x, const LevelScalar& y,
                            std::shared_ptr<const KPoly>& out);
};

LevelScalar operator*(long v, const LevelScalar& x);

std::string kpoly_str(const KPoly& p);
std::string ratfun_str(const RatFun& r);

// Root square used when LevelScalar::parse encounters the symbol 's'.
// Returns the previous setting (thread-local).
const KPoly* set_parse_root(const KPoly* q);

}  // namespace walg

#endif
