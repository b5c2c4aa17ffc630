#include "doctest.h"
#include "ellfib/field.hpp"

using namespace ellfib;

TEST_CASE("rational scalars behave like mpq") {
  QElem half(Rat(1, 2));
  QElem third(Rat(1, 3));
  CHECK((half + third).a() == Rat(5, 6));
  CHECK((half * third).a() == Rat(1, 6));
  CHECK((half - half).is_zero());
  CHECK((half / third).a() == Rat(3, 2));
  CHECK(half.inverse().a() == 2);
  CHECK_THROWS_AS(QElem(0).inverse(), arith_error);
}

TEST_CASE("sqrt(5) squares to 5 and distributes") {
  QElem s5 = QElem::sqrt_gen(5);
  CHECK((s5 * s5) == QElem(5));
  QElem x(Rat(2), Rat(3), 5);   // 2 + 3 sqrt 5
  QElem y(Rat(-1), Rat(1), 5);  // -1 + sqrt 5
  CHECK((x + y) == QElem(Rat(1), Rat(4), 5));
  // (2+3s)(-1+s) = -2 + 2s - 3s + 3*5 = 13 - s
  CHECK((x * y) == QElem(Rat(13), Rat(-1), 5));
  QElem z(Rat(1, 2), Rat(-2), 5);
  CHECK(((x + y) * z) == (x * z + y * z));
  CHECK((x * x.inverse()).is_one());
}

TEST_CASE("distributivity on pseudo-random triples over Q(sqrt 5)") {
  // Tiny deterministic LCG; exactness matters, not statistical quality.
  unsigned long state = 12345;
  auto next = [&]() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<long>((state >> 33) % 19) - 9;
  };
  for (int i = 0; i < 50; ++i) {
    QElem a{Rat(next(), 1 + (i % 3)), Rat(next()), 5};
    QElem b{Rat(next()), Rat(next(), 2), 5};
    QElem c{Rat(next()), Rat(next()), 5};
    CHECK((a * (b + c)) == (a * b + a * c));
    CHECK(((a + b) * c) == (a * c + b * c));
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("mixing distinct quadratic fields is rejected") {
  QElem s5 = QElem::sqrt_gen(5);
  QElem s2 = QElem::sqrt_gen(2);
  CHECK_THROWS_AS(s5 + s2, arith_error);
  CHECK_THROWS_AS(s5 * s2, arith_error);
  CHECK((s5 + QElem(1)).d() == 5);  // rationals embed anywhere
}

TEST_CASE("exact square roots") {
  CHECK(*rat_sqrt(Rat(9, 4)) == Rat(3, 2));
  CHECK(!rat_sqrt(Rat(2)));
  CHECK(!rat_sqrt(Rat(-4)));
  // sqrt(5) inside Q(sqrt 5): 5 = (sqrt 5)^2.
  auto r = qelem_sqrt(QElem(5), 5);
  REQUIRE(r);
  CHECK(*r == QElem::sqrt_gen(5));
  // sqrt(6 + 2 sqrt 5) = 1 + sqrt 5.
  auto s = qelem_sqrt(QElem(Rat(6), Rat(2), 5), 5);
  REQUIRE(s);
  CHECK((*s * *s) == QElem(Rat(6), Rat(2), 5));
  CHECK(*s == QElem(Rat(1), Rat(1), 5));
  CHECK(!qelem_sqrt(QElem(Rat(1), Rat(1), 5), 5));
}

TEST_CASE("exact nth roots") {
  CHECK(*rat_nth_root(Rat(27, 8), 3) == Rat(3, 2));
  CHECK(*rat_nth_root(Rat(-27), 3) == Rat(-3));
  CHECK(!rat_nth_root(Rat(-27), 2));
  CHECK(*rat_nth_root(Rat(16), 4) == Rat(2));
  // (1 + sqrt5)^4 = (6+2s)^2 = 56 + 24 s.
  auto r = qelem_nth_root(QElem(Rat(56), Rat(24), 5), 4, 5);
  REQUIRE(r);
  CHECK(r->pow_n(4) == QElem(Rat(56), Rat(24), 5));
  // (2 sqrt5)^3 = 40 sqrt5.
  auto c = qelem_nth_root(QElem(Rat(0), Rat(40), 5), 3, 5);
  REQUIRE(c);
  CHECK(*c == QElem(Rat(0), Rat(2), 5));
}

TEST_CASE("string forms") {
  CHECK(QElem(Rat(-7, 3)).str() == "-7/3");
  CHECK(QElem(Rat(1, 2), Rat(-1), 5).str() == "1/2-sqrt(5)");
  CHECK(QElem(Rat(0), Rat(3, 2), 5).str() == "3/2*sqrt(5)");
  CHECK(rat_from_string("-22/7") == Rat(-22, 7));
  CHECK_THROWS_AS(rat_from_string("x"), arith_error);
}
