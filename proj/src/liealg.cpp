#include "walg/liealg.hpp"
#include "walg/linalg.hpp"

#include <array>
#include <fstream>
#include <sstream>

namespace walg {

size_t AlgebraSpec::index_of(const std::string& n) const {
    for (size_t i = 0; i < basis_names.size(); ++i)
        if (basis_names[i] == n) return i;
    throw std::runtime_error("unknown basis element: " + n);
}

AlgElem AlgebraSpec::basis_elem(size_t i) const {
    AlgElem v(dim());
    v[i] = QQi(1L);
    return v;
}

AlgElem AlgebraSpec::bracket(const AlgElem& x, const AlgElem& y) const {
    AlgElem out(dim());
    for (size_t i = 0; i < dim(); ++i) {
        if (x[i].is_zero()) continue;
        for (size_t j = 0; j < dim(); ++j) {
            if (y[j].is_zero()) continue;
            QQi c = x[i] * y[j];
            const AlgElem& br = structure[i][j];
            for (size_t m = 0; m < dim(); ++m)
                if (!br[m].is_zero()) out[m] = out[m] + c * br[m];
        }
    }
    return out;
}

QQi AlgebraSpec::form_value(const AlgElem& x, const AlgElem& y) const {
    QQi out;
    for (size_t i = 0; i < dim(); ++i)
        for (size_t j = 0; j < dim(); ++j)
            if (!x[i].is_zero() && !y[j].is_zero()) out = out + x[i] * y[j] * form[i][j];
    return out;
}

int AlgebraSpec::elem_parity(const AlgElem& x) const {
    int p = -1;
    for (size_t i = 0; i < dim(); ++i) {
        if (x[i].is_zero()) continue;
        if (p == -1) p = parity[i];
        else if (p != parity[i]) return -1;
    }
    return p;
}

static bool is_zero_elem(const AlgElem& v) {
    for (const auto& c : v)
        if (!c.is_zero()) return false;
    return true;
}

static AlgElem add_scaled(AlgElem a, const AlgElem& b, const QQi& c) {
    for (size_t i = 0; i < a.size(); ++i) a[i] = a[i] + c * b[i];
    return a;
}

CheckReport AlgebraSpec::check_algebra() const {
    CheckReport rep;
    size_t n = dim();
    auto note = [&](const std::string& s) { rep.failures.push_back(s); };

    // super skew-symmetry
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            QQi sg = (parity[i] && parity[j]) ? QQi(1L) : QQi(-1L);
            AlgElem d = add_scaled(structure[i][j], structure[j][i], -sg);
            if (!is_zero_elem(d))
                note("skew-symmetry fails at (" + basis_names[i] + "," + basis_names[j] + ")");
        }
    // super Jacobi: [a,[b,c]] = [[a,b],c] + (-1)^{p(a)p(b)}[b,[a,c]]
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t l = 0; l < n; ++l) {
                AlgElem lhs = bracket(basis_elem(i), structure[j][l]);
                AlgElem r1 = bracket(structure[i][j], basis_elem(l));
                AlgElem r2 = bracket(basis_elem(j), structure[i][l]);
                QQi sg = (parity[i] && parity[j]) ? QQi(-1L) : QQi(1L);
                AlgElem d = add_scaled(add_scaled(lhs, r1, QQi(-1L)), r2, -sg);
                if (!is_zero_elem(d))
                    note("Jacobi fails at (" + basis_names[i] + "," + basis_names[j] + "," +
                         basis_names[l] + ")");
            }
    // form: even, supersymmetric, invariant, nondegenerate
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (parity[i] != parity[j] && !form[i][j].is_zero())
                note("form not even at (" + basis_names[i] + "," + basis_names[j] + ")");
            QQi sg = (parity[i] && parity[j]) ? QQi(-1L) : QQi(1L);
            if (form[i][j] != sg * form[j][i])
                note("form not supersymmetric at (" + basis_names[i] + "," + basis_names[j] + ")");
        }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t l = 0; l < n; ++l) {
                QQi lhs = form_value(structure[i][j], basis_elem(l));
                QQi rhs = form_value(basis_elem(i), structure[j][l]);
                if (lhs != rhs)
                    note("form invariance fails at (" + basis_names[i] + "," + basis_names[j] +
                         "," + basis_names[l] + ")");
            }
    {
        Mat<QQi> g(n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) g.at(i, j) = form[i][j];
        if (rank(g) != n) note("form degenerate");
    }
    // grading compatibility: ad(H) diagonal with rational eigenvalues and
    // [g_i, g_j] in g_{i+j}
    try {
        GradingData gd = grade_decompose();
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                mpq_class w = gd.j[i] + gd.j[j];
                for (size_t m = 0; m < n; ++m)
                    if (!structure[i][j][m].is_zero() && gd.j[m] != w)
                        note("grading incompatibility at (" + basis_names[i] + "," +
                             basis_names[j] + ")");
            }
    } catch (const std::runtime_error& e) {
        note(std::string("grading: ") + e.what());
    }
    // kappa = 2 h^vee (.|.)
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            QQi lhs = killing(basis_elem(i), basis_elem(j));
            QQi rhs = QQi(mpq_class(2) * dual_coxeter) * form[i][j];
            if (lhs != rhs)
                note("kappa != 2 h^vee (.|.) at (" + basis_names[i] + "," + basis_names[j] + ")");
        }
    return rep;
}

GradingData AlgebraSpec::grade_decompose() const {
    GradingData g;
    size_t n = dim();
    g.j.resize(n);
    AlgElem H = basis_elem(h_element);
    for (size_t i = 0; i < n; ++i) {
        AlgElem br = bracket(H, basis_elem(i));
        // must be a multiple of u_i
        QQi c = br[i];
        AlgElem rem = add_scaled(br, basis_elem(i), -c);
        if (!is_zero_elem(rem))
            throw std::runtime_error("ad(H) not diagonal on basis element " + basis_names[i]);
        if (!c.is_real()) throw std::runtime_error("non-rational grading eigenvalue");
        g.j[i] = c.re / 2;
    }
    for (size_t i = 0; i < n; ++i) {
        if (g.j[i] > 0) g.I_plus.push_back(i);
        if (g.j[i] == mpq_class(1, 2)) g.I_half.push_back(i);
        if (g.j[i] == 1) g.I_one.push_back(i);
        if (g.j[i] < 0) g.n_minus.push_back(i);
        if (g.j[i] == 0) g.g_zero.push_back(i);
    }
    return g;
}

std::vector<AlgElem> AlgebraSpec::centralizer(const AlgElem& v) const {
    size_t n = dim();
    Mat<QQi> m(n, n);
    for (size_t j = 0; j < n; ++j) {
        AlgElem br = bracket(v, basis_elem(j));
        for (size_t i = 0; i < n; ++i) m.at(i, j) = br[i];
    }
    return kernel_basis(std::move(m));
}

std::vector<AlgElem> AlgebraSpec::dual_basis_nminus(const GradingData& g) const {
    size_t np = g.I_plus.size();
    if (np != g.n_minus.size()) throw std::runtime_error("n_+ and n_- dimension mismatch");
    std::vector<AlgElem> out;
    for (size_t a = 0; a < np; ++a) {
        Mat<QQi> m(np, np);
        std::vector<QQi> rhs(np);
        for (size_t b = 0; b < np; ++b) {
            for (size_t c = 0; c < np; ++c) m.at(b, c) = form[g.I_plus[b]][g.n_minus[c]];
            rhs[b] = (a == b) ? QQi(1L) : QQi();
        }
        std::vector<QQi> sol = solve(std::move(m), std::move(rhs));
        if (sol.empty()) throw std::runtime_error("degenerate n_+/n_- pairing");
        AlgElem v(dim());
        for (size_t c = 0; c < np; ++c) v[g.n_minus[c]] = sol[c];
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<AlgElem> AlgebraSpec::dual_basis_full() const {
    size_t n = dim();
    std::vector<AlgElem> out;
    for (size_t a = 0; a < n; ++a) {
        Mat<QQi> m(n, n);
        std::vector<QQi> rhs(n);
        for (size_t b = 0; b < n; ++b) {
            for (size_t c = 0; c < n; ++c) m.at(b, c) = form[c][b];
            rhs[b] = (a == b) ? QQi(1L) : QQi();
        }
        std::vector<QQi> sol = solve(std::move(m), std::move(rhs));
        if (sol.empty()) throw std::runtime_error("degenerate form");
        out.push_back(std::move(sol));
    }
    return out;
}

QQi AlgebraSpec::killing(const AlgElem& x, const AlgElem& y) const {
    QQi out;
    for (size_t i = 0; i < dim(); ++i) {
        AlgElem v = bracket(x, bracket(y, basis_elem(i)));
        QQi t = v[i];
        out = out + (parity[i] ? -t : t);
    }
    return out;
}

QQi AlgebraSpec::killing_on(const std::vector<size_t>& subspace, const AlgElem& x,
                            const AlgElem& y) const {
    QQi out;
    for (size_t i : subspace) {
        AlgElem v = bracket(x, bracket(y, basis_elem(i)));
        QQi t = v[i];
        out = out + (parity[i] ? -t : t);
    }
    return out;
}

mpq_class AlgebraSpec::sdim() const {
    mpq_class s = 0;
    for (int p : parity) s += p ? -1 : 1;
    return s;
}

mpq_class AlgebraSpec::sdim_subspace(const std::vector<size_t>& idx) const {
    mpq_class s = 0;
    for (size_t i : idx) s += parity[i] ? -1 : 1;
    return s;
}

// ------------------------------------------------------------------ builtins

namespace {

void set_bracket(AlgebraSpec& a, const char* x, const char* y,
                 std::initializer_list<std::pair<const char*, mpq_class>> terms) {
    size_t i = a.index_of(x), j = a.index_of(y);
    AlgElem v(a.dim());
    for (auto& t : terms) v[a.index_of(t.first)] = QQi(t.second);
    a.structure[i][j] = v;
    // fill the super-skew partner if not set explicitly later
    AlgElem w(a.dim());
    mpq_class sg = (a.parity[i] && a.parity[j]) ? 1 : -1;
    for (size_t m = 0; m < a.dim(); ++m) w[m] = QQi(sg) * v[m];
    a.structure[j][i] = w;
}

void set_form(AlgebraSpec& a, const char* x, const char* y, mpq_class v) {
    size_t i = a.index_of(x), j = a.index_of(y);
    a.form[i][j] = QQi(v);
    mpq_class sg = (a.parity[i] && a.parity[j]) ? -1 : 1;
    a.form[j][i] = QQi(sg * v);
}

}  // namespace

AlgebraSpec AlgebraSpec::osp12() {
    AlgebraSpec a;
    a.name = "osp12";
    a.basis_names = {"E", "e", "H", "f", "F"};
    a.parity = {0, 1, 0, 1, 0};
    size_t n = 5;
    a.structure.assign(n, std::vector<AlgElem>(n, AlgElem(n)));
    a.form.assign(n, std::vector<QQi>(n));
    a.h_element = a.index_of("H");
    a.dual_coxeter = mpq_class(3, 2);
    a.osp = {a.index_of("E"), a.index_of("e"), a.index_of("H"), a.index_of("f"), a.index_of("F")};
    a.simple_roots = {a.index_of("e")};

    set_bracket(a, "H", "E", {{"E", 2}});
    set_bracket(a, "H", "e", {{"e", 1}});
    set_bracket(a, "H", "f", {{"f", -1}});
    set_bracket(a, "H", "F", {{"F", -2}});
    set_bracket(a, "E", "F", {{"H", 1}});
    set_bracket(a, "e", "e", {{"E", 2}});
    set_bracket(a, "f", "f", {{"F", -2}});
    set_bracket(a, "e", "f", {{"H", -1}});
    set_bracket(a, "E", "f", {{"e", 1}});
    set_bracket(a, "F", "e", {{"f", 1}});
    set_bracket(a, "E", "e", {});
    set_bracket(a, "F", "f", {});
    set_bracket(a, "E", "E", {});
    set_bracket(a, "F", "F", {});
    set_bracket(a, "H", "H", {});

    set_form(a, "E", "F", 1);
    set_form(a, "H", "H", 2);
    set_form(a, "e", "f", -2);
    return a;
}

AlgebraSpec AlgebraSpec::sl21() {
    // Constructed from the 3x3 supermatrix realization (indices 1,2 even and
    // 3 odd): E = E12, H = E11 - E22, F = E21, U = -(E11 + E22 + 2 E33),
    // e = E13 + E32, f = E23 - E31, et = E13 - E32, ft = -E23 - E31,
    // with (a|b) = str(ab) = tr(upper block) - tr(lower block).
    AlgebraSpec a;
    a.name = "sl21";
    a.basis_names = {"E", "e", "et", "H", "U", "f", "ft", "F"};
    a.parity = {0, 1, 1, 0, 0, 1, 1, 0};
    size_t n = 8;
    a.structure.assign(n, std::vector<AlgElem>(n, AlgElem(n)));
    a.form.assign(n, std::vector<QQi>(n));
    a.h_element = a.index_of("H");
    a.dual_coxeter = 1;
    a.osp = {a.index_of("E"), a.index_of("e"), a.index_of("H"), a.index_of("f"), a.index_of("F")};
    a.simple_roots = {a.index_of("e"), a.index_of("et")};

    using M = std::array<std::array<mpq_class, 3>, 3>;
    auto unit = [](int i, int j) {
        M m{};
        m[i][j] = 1;
        return m;
    };
    auto madd = [](M x, const M& y, mpq_class c) {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) x[i][j] += c * y[i][j];
        return x;
    };
    auto mmul = [](const M& x, const M& y) {
        M r{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int l = 0; l < 3; ++l) r[i][j] += x[i][l] * y[l][j];
        return r;
    };
    std::vector<M> rep(n);
    rep[a.index_of("E")] = unit(0, 1);
    rep[a.index_of("H")] = madd(unit(0, 0), unit(1, 1), -1);
    rep[a.index_of("F")] = unit(1, 0);
    rep[a.index_of("U")] = madd(madd(M{}, unit(0, 0), -1), madd(unit(1, 1), unit(2, 2), 2), -1);
    rep[a.index_of("e")] = madd(unit(0, 2), unit(2, 1), 1);
    rep[a.index_of("f")] = madd(unit(1, 2), unit(2, 0), -1);
    rep[a.index_of("et")] = madd(unit(0, 2), unit(2, 1), -1);
    rep[a.index_of("ft")] = madd(madd(M{}, unit(1, 2), -1), unit(2, 0), -1);

    // express a matrix in the basis (solve 9 equations in 8 unknowns)
    auto to_coords = [&](const M& m) {
        Mat<QQi> sys(9, n);
        std::vector<QQi> rhs(9);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                for (size_t b = 0; b < n; ++b) sys.at(i * 3 + j, b) = QQi(rep[b][i][j]);
                rhs[i * 3 + j] = QQi(m[i][j]);
            }
        std::vector<QQi> x = solve(std::move(sys), std::move(rhs));
        if (x.empty()) throw std::runtime_error("sl21: matrix outside the basis span");
        return x;
    };
    auto str = [](const M& m) { return mpq_class(m[0][0] + m[1][1] - m[2][2]); };

    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            M xy = mmul(rep[i], rep[j]);
            M yx = mmul(rep[j], rep[i]);
            mpq_class sg = (a.parity[i] && a.parity[j]) ? 1 : -1;
            a.structure[i][j] = to_coords(madd(xy, yx, sg));
            a.form[i][j] = QQi(str(xy));
            if (a.parity[i] != a.parity[j]) a.form[i][j] = QQi();  // odd part of str
        }
    return a;
}

// ------------------------------------------------------------------ file I/O

static std::string coeff_str(const QQi& c) {
    if (!c.is_real()) throw std::runtime_error("algebra files support rational coefficients only");
    return c.re.get_str();
}

std::string AlgebraSpec::to_file_text() const {
    std::ostringstream out;
    out << "algebra " << name << "\n";
    for (size_t i = 0; i < dim(); ++i)
        out << "basis " << basis_names[i] << " " << parity[i] << "\n";
    out << "hvee " << dual_coxeter.get_str() << "\n";
    out << "H " << basis_names[h_element] << "\n";
    out << "osp " << basis_names[osp.E] << " " << basis_names[osp.e] << " " << basis_names[osp.H]
        << " " << basis_names[osp.f] << " " << basis_names[osp.F] << "\n";
    out << "simple";
    for (size_t s : simple_roots) out << " " << basis_names[s];
    out << "\n";
    for (size_t i = 0; i < dim(); ++i)
        for (size_t j = i; j < dim(); ++j) {
            if (is_zero_elem(structure[i][j])) continue;
            out << "bracket " << basis_names[i] << " " << basis_names[j];
            for (size_t m = 0; m < dim(); ++m)
                if (!structure[i][j][m].is_zero())
                    out << " " << coeff_str(structure[i][j][m]) << " " << basis_names[m];
            out << "\n";
        }
    for (size_t i = 0; i < dim(); ++i)
        for (size_t j = i; j < dim(); ++j)
            if (!form[i][j].is_zero())
                out << "form " << basis_names[i] << " " << basis_names[j] << " "
                    << coeff_str(form[i][j]) << "\n";
    return out.str();
}

AlgebraSpec AlgebraSpec::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open algebra spec file: " + path);
    AlgebraSpec a;
    std::string line;
    std::vector<std::string> bracket_lines, form_lines;
    std::string osp_line, h_line, simple_line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw) || kw[0] == '#') continue;
        if (kw == "algebra") {
            ls >> a.name;
        } else if (kw == "basis") {
            std::string nm;
            int p;
            if (!(ls >> nm >> p)) throw std::runtime_error("bad basis line: " + line);
            a.basis_names.push_back(nm);
            a.parity.push_back(p);
        } else if (kw == "hvee") {
            std::string v;
            ls >> v;
            a.dual_coxeter = mpq_class(v);
            a.dual_coxeter.canonicalize();
        } else if (kw == "H") {
            std::getline(ls, h_line);
        } else if (kw == "osp") {
            std::getline(ls, osp_line);
        } else if (kw == "simple") {
            std::getline(ls, simple_line);
        } else if (kw == "bracket") {
            std::string rest;
            std::getline(ls, rest);
            bracket_lines.push_back(rest);
        } else if (kw == "form") {
            std::string rest;
            std::getline(ls, rest);
            form_lines.push_back(rest);
        } else {
            throw std::runtime_error("unknown keyword in algebra file: " + kw);
        }
    }
    size_t n = a.dim();
    if (n == 0) throw std::runtime_error("algebra file has no basis");
    a.structure.assign(n, std::vector<AlgElem>(n, AlgElem(n)));
    a.form.assign(n, std::vector<QQi>(n));
    {
        std::istringstream ls(h_line);
        std::string nm;
        ls >> nm;
        a.h_element = a.index_of(nm);
    }
    {
        std::istringstream ls(osp_line);
        std::string E, e, H, f, F;
        if (!(ls >> E >> e >> H >> f >> F)) throw std::runtime_error("bad osp line");
        a.osp = {a.index_of(E), a.index_of(e), a.index_of(H), a.index_of(f), a.index_of(F)};
    }
    {
        std::istringstream ls(simple_line);
        std::string nm;
        while (ls >> nm) a.simple_roots.push_back(a.index_of(nm));
    }
    for (const auto& bl : bracket_lines) {
        std::istringstream ls(bl);
        std::string x, y, cs, nm;
        ls >> x >> y;
        size_t i = a.index_of(x), j = a.index_of(y);
        AlgElem v(n);
        while (ls >> cs >> nm) {
            mpq_class c(cs);
            c.canonicalize();
            v[a.index_of(nm)] = v[a.index_of(nm)] + QQi(c);
        }
        a.structure[i][j] = v;
        AlgElem w(n);
        mpq_class sg = (a.parity[i] && a.parity[j]) ? 1 : -1;
        for (size_t m = 0; m < n; ++m) w[m] = QQi(sg) * v[m];
        a.structure[j][i] = w;
    }
    for (const auto& fl : form_lines) {
        std::istringstream ls(fl);
        std::string x, y, cs;
        ls >> x >> y >> cs;
        mpq_class c(cs);
        c.canonicalize();
        size_t i = a.index_of(x), j = a.index_of(y);
        a.form[i][j] = QQi(c);
        mpq_class sg = (a.parity[i] && a.parity[j]) ? -1 : 1;
        a.form[j][i] = QQi(sg * c);
    }
    return a;
}

}  // namespace walg
