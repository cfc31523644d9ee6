#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "fixtures.hpp"

using namespace pturan;
using namespace fixtures;

TEST_CASE("exact terms") {
  TermTable motz(motzkin());
  CHECK(motz.term(4) == 9);
  CHECK(motz.terms(0, 6) == R({1, 1, 2, 4, 9, 21, 51}));
  TermTable b(b_sequence());
  CHECK(b.term(2) == 7);
  TermTable fr(franel());
  CHECK(fr.term(2) == 10);
  CHECK(fr.term(3) == 56);
  CHECK_THROWS_AS(motz.term(-1), Error);
}

TEST_CASE("recurrence validation") {
  CHECK_THROWS_AS(Recurrence::from_sum_form("x", {P({1}), P({1})}, {}), Error);
  CHECK_THROWS_AS(Recurrence::from_sum_form("x", {P({1}), Poly()}, R({1})), Error);
  // a leading coefficient that vanishes at n = 2
  auto bad = Recurrence::from_sum_form("x", {P({-1}), P({-2, 1})}, R({1}));
  TermTable t(bad);
  CHECK(t.term(2) == Rat(1, 2));
  CHECK_THROWS_WITH_AS(t.term(3), doctest::Contains("n = 2"), Error);
  // redundant initial values are checked
  auto inconsistent = Recurrence::from_sum_form("x", {P({-3, -3}), P({-5, -2}), P({4, 1})}, R({1, 1, 3}));
  CHECK_THROWS_AS(TermTable{inconsistent}, Error);
}

TEST_CASE("sum form round trip") {
  auto r = franel();
  auto back = Recurrence::from_sum_form(r.name, r.sum_form(), r.initials);
  CHECK(back.coeffs == r.coeffs);
  CHECK(back.fingerprint() == r.fingerprint());
  CHECK(motzkin().fingerprint() != franel().fingerprint());
}

TEST_CASE("u values and transforms") {
  auto inv = make_table(inverse_factorial());
  SequenceView v(inv, {});
  CHECK(v.u(3) == Rat(3, 4));
  for (long n = 1; n < 20; ++n) CHECK(v.u(n) == Rat(n, n + 1));

  auto ic = make_table(inverse_catalan());
  CHECK(ic->terms(0, 2) == std::vector<Rat>{Rat(1), Rat(1), Rat(1, 2)});
  CHECK(SequenceView(ic, {}).u(1) == Rat(1, 2));

  // phi of n^2: a(n+1) = (n+1)^2/n^2 a(n) does not start at 0, so build by hand
  std::vector<Rat> squares;
  for (long k = 0; k <= 4; ++k) squares.emplace_back(k * k);
  auto phi = apply_phi(squares);
  CHECK(phi[1] == 7);  // b_2 = 16 - 1*9

  // motzkin / n!
  auto motz = make_table(motzkin());
  SequenceView scaled(motz, Transform{1, 0});
  CHECK(scaled.term(4) == Rat(3, 8));
  CHECK(scaled.u(2) == Rat(2, 3));

  CHECK(Transform::parse("/n!") == Transform{1, 0});
  CHECK(Transform::parse("/(n!)^2 phi^3") == Transform{2, 3});
  CHECK(Transform::parse("phi") == Transform{0, 1});
  CHECK(Transform::parse("") == Transform{});
  CHECK(Transform{1, 2}.str() == "/n! phi^2");
  CHECK(Transform::parse(Transform{3, 1}.str()) == Transform{3, 1});
  CHECK_THROWS_AS(Transform::parse("sqrt"), Error);
}

TEST_CASE("zero terms are reported") {
  auto b = make_table(b_sequence());
  // b = -1, 1, 7, ...; phi level 1 at index 1: 1 - (-1)(7) = 8
  SequenceView phi(b, Transform{0, 1});
  CHECK(phi.term(1) == 8);
  auto zero = Recurrence::from_sum_form("z", {P({0, 1}), P({1})}, R({0}));
  SequenceView z(make_table(zero), {});
  CHECK_THROWS_WITH_AS(z.u(1), doctest::Contains("zero term at index 1"), Error);
}

TEST_CASE("inequality range checks") {
  SequenceView inv(make_table(inverse_factorial()), {});
  CHECK(check_inequality_range(inv, Inequality::turan3, 1, 50).empty());
  SequenceView motz(make_table(motzkin()), Transform{1, 0});
  // the sequence from index 1 on: the first inequality involves a(1), a(2), a(3), a(4)
  CHECK(check_inequality_range(motz, Inequality::turan3, 2, 75).empty());
  CHECK(check_inequality_range(motz, Inequality::turan3, 1, 1) == std::vector<long>{1});
  SequenceView fact(make_table(factorial()), {});
  auto v = check_inequality_range(fact, Inequality::log_concave, 1, 10);
  CHECK(v.size() == 10);
  CHECK(v.front() == 1);
  CHECK(v.back() == 10);
  // raw Motzkin numbers are not Turan from the start
  SequenceView raw(make_table(motzkin()), {});
  CHECK(check_inequality_range(raw, Inequality::turan3, 1, 300) ==
        check_inequality_range_serial(raw, Inequality::turan3, 1, 300));
  CHECK(turan_t(Rat(1), Rat(1)) == 0);
  CHECK(turan_t(Rat(1, 2), Rat(1, 2)) == Rat(7, 16));
}

TEST_CASE("turan form agrees with t(u(n), u(n+1))") {
  SequenceView f(make_table(franel()), Transform{1, 0});
  auto a = f.terms(0, 40);
  for (std::size_t i = 1; i + 2 < a.size(); ++i) {
    Rat x = a[i - 1] * a[i + 1] / (a[i] * a[i]);
    Rat y = a[i] * a[i + 2] / (a[i + 1] * a[i + 1]);
    CHECK(turan3_form(a[i - 1], a[i], a[i + 1], a[i + 2]) == turan_t(x, y) * a[i] * a[i] * a[i + 1] * a[i + 1]);
  }
}

TEST_CASE("recurrence residual, scaling and phi identity") {
  for (auto rec : {motzkin(), franel(), b_sequence(), inverse_catalan()}) {
    auto table = make_table(rec);
    auto a = table->terms(0, 300);
    const int d = rec.order();
    for (long k = d; k <= 300; ++k) {
      Rat n(k - d);
      Rat res = rec.coeffs[0](n) * a[static_cast<std::size_t>(k)];
      for (int j = 1; j <= d; ++j) res -= rec.coeffs[static_cast<std::size_t>(j)](n) * a[static_cast<std::size_t>(k - j)];
      CHECK(is_zero(res));
    }
    auto scaled_rec = rec;
    for (auto& v : scaled_rec.initials) v *= Rat(-7, 3);
    SequenceView s1(table, {}), s2(make_table(scaled_rec), {});
    CHECK(s1.u_values(10, 60) == s2.u_values(10, 60));

    // b_{n-1} b_{n+1} / b_n^2 = u_n^2 (u_{n-1}-1)(u_{n+1}-1)/(u_n-1)^2
    SequenceView phi(table, Transform{0, 1});
    auto u = s1.u_values(5, 120);
    auto bu = phi.u_values(6, 119);
    for (std::size_t i = 1; i + 1 < u.size(); ++i) {
      Rat rhs = u[i] * u[i] * (u[i - 1] - 1) * (u[i + 1] - 1) / ((u[i] - 1) * (u[i] - 1));
      CHECK(bu[i - 1] == rhs);
    }
  }
}

TEST_CASE("term cache round trip") {
  auto dir = std::filesystem::temp_directory_path() / "pturan-cache-test";
  std::filesystem::remove_all(dir);
  {
    TermTable t(franel(), dir);
    t.term(200);
    t.flush();
  }
  TermTable again(franel(), dir);
  CHECK(again.size() == 201);
  TermTable fresh(franel());
  CHECK(again.term(200) == fresh.term(200));
  again.term(250);
  again.flush();
  CHECK(TermTable(franel(), dir).size() == 251);

  // a truncated file is ignored rather than trusted
  for (auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.path().extension() == ".terms") std::filesystem::resize_file(e.path(), 100);
  }
  TermTable recovered(franel(), dir);
  CHECK(recovered.size() == 2);
  CHECK(recovered.term(250) == fresh.term(250));
  std::filesystem::remove_all(dir);
}
