#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "racah/casimir.hpp"

using namespace racah;

TEST_CASE("symmetric traces") {
  RunConfig cfg;
  InvariantWorkspace ws(3, cfg);
  Representation def = defining_rep(ws.basis());
  SymTraceEngine eng(def, cfg.caps);
  SymTensor t2 = eng.tensor(2);
  CHECK(sym_diff_max(t2, sym_scale(delta_tensor(8), 0.5)) < 1e-13);

  Caps tiny;
  tiny.sym_trace_cost_cap = 10;
  SymTraceEngine eng2(def, tiny);
  CHECK_THROWS_AS(eng2.tensor(4), CapExceeded);
}

TEST_CASE("casimir eigenvalues against the closed-form bank") {
  RunConfig cfg;
  InvariantWorkspace ws3(3, cfg);
  Representation def3 = defining_rep(ws3.basis());
  CHECK(casimir_eigenvalue(ws3, 2, def3).c ==
        doctest::Approx(4.0).epsilon(1e-10));
  CHECK(casimir_eigenvalue(ws3, 3, def3).c ==
        doctest::Approx(10.0 / 3.0).epsilon(1e-10));
  CHECK(casimir_eigenvalue(ws3, 4, def3).absent);

  InvariantWorkspace ws4(4, cfg);
  Representation ad4 = adjoint_rep(ws4.sc());
  CHECK(casimir_eigenvalue(ws4, 2, ad4).c ==
        doctest::Approx(16.0).epsilon(1e-10));

  // Dynkin-label oracles at the labels the builders realize
  CHECK(*closed_form::su3_c2(1, 0) == doctest::Approx(4.0));
  CHECK(*closed_form::su3_c3(1, 0) == doctest::Approx(10.0 / 3.0));
  CHECK(*closed_form::su3_c2(1, 1) ==
        doctest::Approx(casimir_eigenvalue(ws3, 2, adjoint_rep(ws3.sc())).c));
  CHECK(*closed_form::su3_c3(0, 1) == doctest::Approx(-10.0 / 3.0));
  CHECK(*closed_form::su4_c2(1, 0, 0) ==
        doctest::Approx(casimir_eigenvalue(ws4, 2, defining_rep(ws4.basis())).c));
  CHECK(*closed_form::su4_c2(1, 0, 1) == doctest::Approx(16.0));
  CHECK(*closed_form::su4_c2(2, 0, 0) ==
        doctest::Approx(
            casimir_eigenvalue(ws4, 2, sym_power_rep(ws4.basis(), 2)).c));
}

TEST_CASE("materialized operator is scalar at n=3") {
  RunConfig cfg;
  InvariantWorkspace ws(3, cfg);
  for (const auto& rep :
       {defining_rep(ws.basis()), adjoint_rep(ws.sc())}) {
    for (int m : {2, 3}) {
      CMatrix op = casimir_operator(ws, m, rep);
      CMatrix off = op;
      off.diagonal().setZero();
      CHECK(off.cwiseAbs().maxCoeff() < 1e-9);
      const Complex mean = op.trace() / static_cast<double>(rep.dim);
      double spread = 0.0;
      for (int i = 0; i < rep.dim; ++i)
        spread = std::max(spread, std::abs(op(i, i) - mean));
      CHECK(spread < 1e-9);
    }
  }
}

TEST_CASE("index reports from the eigenvalue route") {
  RunConfig cfg;
  InvariantWorkspace ws4(4, cfg);
  for (int m = 2; m <= 4; ++m) {
    IndexReport r = gdi_from_eigenvalue(ws4, m, defining_rep(ws4.basis()));
    CHECK(r.gdi_value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.residual_int < 1e-9);
  }
  IndexReport ad4 = gdi_from_eigenvalue(ws4, 4, adjoint_rep(ws4.sc()));
  CHECK(ad4.gdi_rounded == 8);
  IndexReport abs5 = gdi_from_eigenvalue(ws4, 5, defining_rep(ws4.basis()));
  CHECK(abs5.absent);
}

TEST_CASE("antisymmetrized trace components") {
  RunConfig cfg;
  InvariantWorkspace ws(3, cfg);
  Representation def = defining_rep(ws.basis());

  int rep_idx[3] = {0, 0, 2};
  CHECK(std::abs(antisym_trace_component(def, {rep_idx, 3})) == 0.0);

  // Tr D_[123] = i/4 for the defining su(3) matrices (3!-term hand sum)
  int t[3] = {0, 1, 2};
  const Complex v = antisym_trace_component(def, {t, 3});
  CHECK(std::abs(v - Complex(0.0, 0.25)) < 1e-13);

  // odd-order adjoint traces vanish
  Representation ad = adjoint_rep(ws.sc());
  int t5[5] = {0, 1, 2, 3, 4};
  CHECK(std::abs(antisym_trace_component(ad, {t5, 5})) < 1e-12);
}

TEST_CASE("single-component route and cross-route agreement") {
  RunConfig cfg;
  InvariantWorkspace ws(3, cfg);
  Representation def = defining_rep(ws.basis());
  IndexReport r = gdi_single_component(ws, 3, def);
  CHECK(r.gdi_value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.residual_imag < 1e-10);

  InvariantWorkspace ws4(4, cfg);
  for (int m = 2; m <= 4; ++m) {
    for (const auto& rep : {defining_rep(ws4.basis()), adjoint_rep(ws4.sc()),
                            fund_rep(ws4.basis(), 2)}) {
      IndexReport a = gdi_from_eigenvalue(ws4, m, rep);
      IndexReport b = gdi_single_component(ws4, m, rep);
      CAPTURE(m);
      CAPTURE(rep.name);
      CHECK(std::abs(a.gdi_value - b.gdi_value) < 1e-8);
    }
  }
}

TEST_CASE("closed-form bank values and applicability guards") {
  CHECK(*closed_form::c_defining(4, 4) == doctest::Approx(7.0));
  CHECK(*closed_form::c_defining(3, 2) == doctest::Approx(4.0));
  CHECK(*closed_form::gdi_sym2(3, 2) == doctest::Approx(5.0));
  CHECK(*closed_form::gdi_fund(6, 4, 3) == doctest::Approx(-6.0));
  CHECK(*closed_form::gdi_fund3_m5(5) == doctest::Approx(11.0));
  CHECK(*closed_form::gdi_fund3_m5(6) == doctest::Approx(0.0));
  CHECK(!closed_form::gdi_fund3_m5(4).has_value());
  CHECK(!closed_form::gdi_adjoint(3, 4).has_value());  // order above rank
  CHECK(*closed_form::gdi_adjoint(4, 4) == doctest::Approx(8.0));
  CHECK(*closed_form::gdi_adjoint(4, 3) == doctest::Approx(0.0));
  CHECK(*closed_form::gdi_spinor(3, 2) == doctest::Approx(12.0));
  CHECK(*closed_form::gdi_spinor(4, 4) == doctest::Approx(-64.0));
  CHECK(*closed_form::c_spinor(3, 2) == doctest::Approx(9.0));
  CHECK(*closed_form::gdi_fund2(5, 5) == doctest::Approx(-11.0));
  // p = 1 symmetric powers collapse to the defining value 1
  for (int m = 2; m <= 4; ++m)
    CHECK(*closed_form::gdi_sym_power(5, m, 1) == doctest::Approx(1.0));
  // dispatcher
  int params[1] = {2};
  CHECK(*closed_form::eval("gdi_Sp", 3, 2, {params, 1}) ==
        doctest::Approx(5.0));
  CHECK(!closed_form::eval("nope", 3, 2, {params, 1}).has_value());
}

TEST_CASE("conjugation checks") {
  RunConfig cfg;
  InvariantWorkspace ws3(3, cfg);
  Representation def = defining_rep(ws3.basis());
  ConjugationReport c = conjugation_check(ws3, def, 3);
  CHECK(c.c == doctest::Approx(10.0 / 3.0).epsilon(1e-10));
  CHECK(c.c_conj == doctest::Approx(-10.0 / 3.0).epsilon(1e-10));
  CHECK(c.residual < 1e-10);

  InvariantWorkspace ws4(4, cfg);
  ConjugationReport a = conjugation_check(ws4, adjoint_rep(ws4.sc()), 3);
  CHECK(a.self_conjugate);
  CHECK(a.self_conj_residual < 1e-9);
  ConjugationReport f = conjugation_check(ws4, fund_rep(ws4.basis(), 2), 3);
  CHECK(f.self_conjugate);
  CHECK(f.self_conj_residual < 1e-9);
}

TEST_CASE("trace lemmas at n=3") {
  RunConfig cfg;
  InvariantWorkspace ws(3, cfg);
  for (const auto& c : verify_trace_lemmas(ws)) {
    if (!c.applicable) continue;
    CAPTURE(c.name);
    CHECK(c.residual < std::max(1e-9, 1e-9 * c.scale));
  }
}

TEST_CASE("permutation sums: worker pool and checkpointing") {
  RunConfig cfg;
  InvariantWorkspace ws(4, cfg);
  Representation ad = adjoint_rep(ws.sc());
  int t[7] = {0, 1, 2, 5, 8, 11, 14};

  const Complex serial = antisym_trace_component(ad, {t, 7});

  PermTraceOptions par;
  par.threads = 2;
  CHECK(std::abs(antisym_trace_component(ad, {t, 7}, par) - serial) < 1e-13);

  const std::string ck = "ck_test_partials.txt";
  std::remove(ck.c_str());
  PermTraceOptions with_ck;
  with_ck.checkpoint_file = ck;
  CHECK(std::abs(antisym_trace_component(ad, {t, 7}, with_ck) - serial) <
        1e-13);
  {  // partials were flushed per first-level branch
    std::ifstream in(ck);
    int lines = 0;
    std::string line;
    while (std::getline(in, line)) ++lines;
    CHECK(lines == 6);
  }
  // a resumed run reuses them and agrees
  CHECK(std::abs(antisym_trace_component(ad, {t, 7}, with_ck) - serial) <
        1e-13);
  std::remove(ck.c_str());
}

TEST_CASE("permutation budget refusal names the cost") {
  RunConfig cfg;
  InvariantWorkspace ws(4, cfg);
  Representation ad = adjoint_rep(ws.sc());
  int t[7] = {0, 1, 2, 5, 8, 11, 14};
  PermTraceOptions tiny;
  tiny.flop_cap = 10.0;
  CHECK_THROWS_WITH_AS(antisym_trace_component(ad, {t, 7}, tiny),
                       doctest::Contains("exceeds cap"), CapExceeded);
}
