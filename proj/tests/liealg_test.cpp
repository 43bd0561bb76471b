#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "walg/liealg.hpp"
#include "walg/linalg.hpp"

#include <cstdio>
#include <fstream>

using namespace walg;

static AlgElem named(const AlgebraSpec& a, const char* n) { return a.basis_elem(a.index_of(n)); }

TEST_CASE("osp(1|2) axioms") {
    AlgebraSpec a = AlgebraSpec::osp12();
    CheckReport rep = a.check_algebra();
    for (const auto& f : rep.failures) MESSAGE(f);
    CHECK(rep.ok());
}

TEST_CASE("sl(2|1) axioms") {
    AlgebraSpec a = AlgebraSpec::sl21();
    CheckReport rep = a.check_algebra();
    for (const auto& f : rep.failures) MESSAGE(f);
    CHECK(rep.ok());
}

TEST_CASE("osp(1|2) brackets match the fixed conventions") {
    AlgebraSpec a = AlgebraSpec::osp12();
    // [x,e] = e/2 i.e. [H,e] = e
    AlgElem he = a.bracket(named(a, "H"), named(a, "e"));
    CHECK(he == named(a, "e"));
    // [e,f] = -2x = -H
    AlgElem ef = a.bracket(named(a, "e"), named(a, "f"));
    AlgElem mh = named(a, "H");
    for (auto& c : mh) c = -c;
    CHECK(ef == mh);
    // F = -1/2 [f,f]
    AlgElem ff = a.bracket(named(a, "f"), named(a, "f"));
    AlgElem mf2 = named(a, "F");
    for (auto& c : mf2) c = c * QQi(-2L);
    CHECK(ff == mf2);
    // [E,f] = e, [F,e] = f, [E,E] = 0
    CHECK(a.bracket(named(a, "E"), named(a, "f")) == named(a, "e"));
    CHECK(a.bracket(named(a, "F"), named(a, "e")) == named(a, "f"));
    CHECK(a.elem_parity(a.bracket(named(a, "E"), named(a, "E"))) == -1);
    // form values: (e|f) = -2, (f|e) = 2, (E|F) = 1, (H|H) = 2
    CHECK(a.form_value(named(a, "e"), named(a, "f")) == QQi(-2L));
    CHECK(a.form_value(named(a, "f"), named(a, "e")) == QQi(2L));
    CHECK(a.form_value(named(a, "E"), named(a, "F")) == QQi(1L));
    CHECK(a.form_value(named(a, "H"), named(a, "H")) == QQi(2L));
}

TEST_CASE("sl(2|1) osp-subalgebra relations") {
    AlgebraSpec a = AlgebraSpec::sl21();
    // (E,H,F,e,f) is an osp(1|2): [e,e] = 2E, [f,f] = -2F, [e,f] = -H
    AlgElem ee = a.bracket(named(a, "e"), named(a, "e"));
    AlgElem e2 = named(a, "E");
    for (auto& c : e2) c = c * QQi(2L);
    CHECK(ee == e2);
    // (-E,H,-F,et,ft): [et,et] = -2E, [ft,ft] = 2F
    AlgElem tt = a.bracket(named(a, "et"), named(a, "et"));
    AlgElem me2 = named(a, "E");
    for (auto& c : me2) c = c * QQi(-2L);
    CHECK(tt == me2);
    // [f,ft] = [e,et] = 0; [e,ft] = [et,f] = U
    CHECK(a.elem_parity(a.bracket(named(a, "f"), named(a, "ft"))) == -1);
    CHECK(a.elem_parity(a.bracket(named(a, "e"), named(a, "et"))) == -1);
    CHECK(a.bracket(named(a, "e"), named(a, "ft")) == named(a, "U"));
    CHECK(a.bracket(named(a, "et"), named(a, "f")) == named(a, "U"));
    // simple coroots h1 = (H-U)/2, h2 = (H+U)/2 pair as (h1|h1)=(h2|h2)=0, (h1|h2)=1
    AlgElem h1(a.dim()), h2(a.dim());
    h1[a.index_of("H")] = QQi(mpq_class(1, 2));
    h1[a.index_of("U")] = QQi(mpq_class(-1, 2));
    h2[a.index_of("H")] = QQi(mpq_class(1, 2));
    h2[a.index_of("U")] = QQi(mpq_class(1, 2));
    CHECK(a.form_value(h1, h1) == QQi());
    CHECK(a.form_value(h2, h2) == QQi());
    CHECK(a.form_value(h1, h2) == QQi(1L));
}

TEST_CASE("gradings") {
    AlgebraSpec a = AlgebraSpec::osp12();
    GradingData g = a.grade_decompose();
    CHECK(g.j[a.index_of("E")] == 1);
    CHECK(g.j[a.index_of("e")] == mpq_class(1, 2));
    CHECK(g.j[a.index_of("H")] == 0);
    CHECK(g.j[a.index_of("f")] == mpq_class(-1, 2));
    CHECK(g.j[a.index_of("F")] == -1);
    CHECK(g.I_plus.size() == 2);
    CHECK(g.I_half.size() == 1);

    AlgebraSpec b = AlgebraSpec::sl21();
    GradingData gb = b.grade_decompose();
    CHECK(gb.g_zero.size() == 2);  // Cartan {H, U}
    CHECK(gb.I_plus.size() == 3);  // {E, e, et}
    CHECK(gb.I_half.size() == 2);
}

TEST_CASE("centralizers of f") {
    AlgebraSpec a = AlgebraSpec::osp12();
    auto ca = a.centralizer(named(a, "f"));
    REQUIRE(ca.size() == 1);
    CHECK(!ca[0][a.index_of("F")].is_zero());

    AlgebraSpec b = AlgebraSpec::sl21();
    auto cb = b.centralizer(named(b, "f"));
    CHECK(cb.size() == 2);  // span{ft, F}
    for (const auto& v : cb)
        for (size_t i = 0; i < b.dim(); ++i)
            if (!v[i].is_zero())
                CHECK((b.basis_names[i] == "ft" || b.basis_names[i] == "F"));
    // centralizer of 0 is everything
    CHECK(a.centralizer(AlgElem(a.dim())).size() == a.dim());
}

TEST_CASE("g^F = g^f + [e, g^f]") {
    for (AlgebraSpec a : {AlgebraSpec::osp12(), AlgebraSpec::sl21()}) {
        auto gF = a.centralizer(a.basis_elem(a.osp.F));
        auto gf = a.centralizer(a.basis_elem(a.osp.f));
        std::vector<AlgElem> spanv = gf;
        for (const auto& v : gf) spanv.push_back(a.bracket(a.basis_elem(a.osp.e), v));
        // dim check and containment
        Mat<QQi> m(spanv.size(), a.dim());
        for (size_t r = 0; r < spanv.size(); ++r)
            for (size_t c = 0; c < a.dim(); ++c) m.at(r, c) = spanv[r][c];
        CHECK(rank(m) == gF.size());
        Mat<QQi> m2(spanv.size() + gF.size(), a.dim());
        for (size_t r = 0; r < spanv.size(); ++r)
            for (size_t c = 0; c < a.dim(); ++c) m2.at(r, c) = spanv[r][c];
        for (size_t r = 0; r < gF.size(); ++r)
            for (size_t c = 0; c < a.dim(); ++c) m2.at(spanv.size() + r, c) = gF[r][c];
        CHECK(rank(m2) == gF.size());
    }
}

TEST_CASE("dual bases") {
    AlgebraSpec a = AlgebraSpec::osp12();
    GradingData g = a.grade_decompose();
    auto duals = a.dual_basis_nminus(g);
    REQUIRE(duals.size() == g.I_plus.size());
    for (size_t x = 0; x < duals.size(); ++x)
        for (size_t y = 0; y < g.I_plus.size(); ++y) {
            QQi v = a.form_value(a.basis_elem(g.I_plus[y]), duals[x]);
            CHECK(v == (x == y ? QQi(1L) : QQi()));
        }
    // dual of e is -f/2, dual of E is F
    for (size_t x = 0; x < g.I_plus.size(); ++x) {
        if (g.I_plus[x] == a.index_of("e"))
            CHECK(duals[x][a.index_of("f")] == QQi(mpq_class(-1, 2)));
        if (g.I_plus[x] == a.index_of("E"))
            CHECK(duals[x][a.index_of("F")] == QQi(1L));
    }
    auto full = a.dual_basis_full();
    for (size_t x = 0; x < a.dim(); ++x)
        for (size_t y = 0; y < a.dim(); ++y)
            CHECK(a.form_value(full[x], a.basis_elem(y)) == (x == y ? QQi(1L) : QQi()));
}

TEST_CASE("supertrace identity str(ad a ad b) = 2 h^vee (a|b)") {
    AlgebraSpec a = AlgebraSpec::osp12();
    AlgElem x(a.dim());
    x[a.index_of("H")] = QQi(mpq_class(1, 2));
    CHECK(a.killing(x, x) == QQi(mpq_class(3, 2)));
}

TEST_CASE("negative control: corrupted form breaks invariance") {
    AlgebraSpec a = AlgebraSpec::osp12();
    size_t e = a.index_of("e"), f = a.index_of("f");
    a.form[e][f] = QQi(2L);
    a.form[f][e] = QQi(-2L);
    CheckReport rep = a.check_algebra();
    CHECK(!rep.ok());
}

TEST_CASE("file round-trip") {
    AlgebraSpec a = AlgebraSpec::sl21();
    std::string path = "sl21_roundtrip.alg";
    {
        std::ofstream out(path);
        out << a.to_file_text();
    }
    AlgebraSpec b = AlgebraSpec::load_file(path);
    std::remove(path.c_str());
    CHECK(b.dim() == a.dim());
    CHECK(b.check_algebra().ok());
    for (size_t i = 0; i < a.dim(); ++i)
        for (size_t j = 0; j < a.dim(); ++j) {
            CHECK(b.structure[i][j] == a.structure[i][j]);
            CHECK(b.form[i][j] == a.form[i][j]);
        }
}
