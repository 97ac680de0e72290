#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "torbase/bigint.hpp"
#include "torbase/interval.hpp"
#include "torbase/partition.hpp"
#include "torbase/quadratic.hpp"

using namespace torbase;

TEST_CASE("big integer helpers") {
  CHECK(pow_int(Int(2), 10) == 1024);
  CHECK(factorial(6) == 720);
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(5, 7) == 0);
  CHECK(is_prime(Int(2)));
  CHECK(is_prime(Int(127)));
  CHECK(!is_prime(Int(1)));
  CHECK(!is_prime(Int(91)));

  auto fac = factorize(Int(720));
  CHECK(fac[Int(2)] == 4);
  CHECK(fac[Int(3)] == 2);
  CHECK(fac[Int(5)] == 1);

  CHECK(is_power_of(Int(81), Int(3)));
  CHECK(is_power_of(Int(1), Int(5)));
  CHECK(!is_power_of(Int(24), Int(2)));
}

TEST_CASE("partitions") {
  CHECK(Partition::all(4).size() == 5);
  CHECK(Partition::all(6).size() == 11);
  CHECK(Partition::all(0).size() == 1);
  Partition p{1, 3, 1};
  CHECK(p.parts() == std::vector<unsigned>{3, 1, 1});
  CHECK(p.sum() == 5);
  CHECK(p.multiplicities().at(1) == 2);
  CHECK(Partition::parse("3,1,1") == p);
  CHECK(Partition::parse("").empty());
  CHECK(Partition({2, 4}).all_parts_even());
  CHECK(!Partition({2, 1}).all_parts_even());
}

TEST_CASE("interval encloses exact values") {
  Interval a{Int(7)};
  Interval b = a.log();
  // ln 7 = 1.9459101490553132...
  CHECK(b.lo_d() <= 1.9459101491);
  CHECK(b.hi_d() >= 1.9459101490);
  CHECK(b.rel_width() < 1e-30);

  // 63^{-31/100}: containment and tightness
  Interval v = Interval::pow_neg(Int(63), Rat(31, 100));
  CHECK(v.lo_d() > 0.276);
  CHECK(v.hi_d() < 0.278);
  CHECK(v.rel_width() < 1e-12);

  // trivial powers
  CHECK(Interval::pow_neg(Int(1), Rat(1, 3)).hi_d() == doctest::Approx(1.0));

  Interval sum = Interval::pow_neg(Int(4), Rat(1, 2)) + Interval::pow_neg(Int(4), Rat(1, 2));
  CHECK(sum.lo_d() <= 1.0);
  CHECK(sum.hi_d() >= 1.0);
  CHECK(!sum.upper_lt(1));

  Interval q{Rat(1, 3)};
  CHECK((q + q + q).hi_d() == doctest::Approx(1.0));
  CHECK(Interval{Rat(99, 100)}.upper_lt(1));
}

TEST_CASE("interval log2 matches exact powers") {
  Interval x{Int(1024)};
  Interval l = x.log2();
  CHECK(l.lo_d() <= 10.0);
  CHECK(l.hi_d() >= 10.0);
  CHECK(l.rel_width() < 1e-30);
}

TEST_CASE("quadratic field arithmetic") {
  // (sqrt(8)+1)^4 = 113 + 72 sqrt(2)
  Quad s8 = Quad::sqrt_q(Int(8), 2);
  Quad v = (s8 + Quad::integer(Int(1), 2)).pow(4);
  CHECK(v.a == Rat(113));
  CHECK(v.b == Rat(72));
  // numeric value about 214.82
  CHECK(v.ceil() == 215);
  CHECK(Quad::integer(Int(214), 2) < v);
  CHECK(v < Rat(215));

  Quad s27 = Quad::sqrt_q(Int(27), 3);
  CHECK(s27.b == Rat(3));
  CHECK((s27 * s27).a == Rat(27));

  CHECK_THROWS(Quad::sqrt_q(Int(16), 2));

  Quad x{Rat(3), Rat(-2), 2};  // 3 - 2 sqrt 2 > 0
  CHECK(x.sign() == 1);
  Quad y{Rat(2), Rat(-2), 2};  // 2 - 2 sqrt 2 < 0
  CHECK(y.sign() == -1);
  CHECK((x / x).a == Rat(1));
}
