#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "torbase/groupspec.hpp"
#include "torbase/taxonomy.hpp"

using namespace torbase;

namespace {

GroupSpec L(unsigned n, long q) { return GroupSpec::classical(Family::LinearA, n, Int(q)); }
GroupSpec U(unsigned n, long q) { return GroupSpec::classical(Family::UnitaryA2, n, Int(q)); }
GroupSpec Sp(unsigned n, long q) { return GroupSpec::classical(Family::SymplecticC, n, Int(q)); }
GroupSpec Om(unsigned n, long q) { return GroupSpec::classical(Family::OrthogonalOddB, n, Int(q)); }
GroupSpec Op(unsigned n, long q) { return GroupSpec::classical(Family::OrthogonalPlusD, n, Int(q)); }
GroupSpec On(unsigned n, long q) {
  return GroupSpec::classical(Family::OrthogonalMinus2D, n, Int(q));
}

}  // namespace

TEST_CASE("group orders") {
  CHECK(group_order(L(2, 4)) == 60);
  CHECK(group_order(L(2, 7)) == 168);
  CHECK(group_order(L(3, 2)) == 168);
  CHECK(group_order(L(3, 3)) == 5616);
  CHECK(group_order(L(4, 2)) == 20160);
  CHECK(group_order(U(3, 3)) == 6048);
  CHECK(group_order(U(4, 2)) == 25920);
  CHECK(group_order(U(5, 2)) == 13685760);
  CHECK(group_order(U(6, 2)) == Int("9196830720"));
  CHECK(group_order(Sp(6, 2)) == 1451520);
  CHECK(group_order(Om(7, 3)) == Int("4585351680"));
  CHECK(group_order(Op(8, 2)) == 174182400);
  CHECK(group_order(On(8, 2)) == 197406720);
  CHECK(group_order(GroupSpec::exceptional(Family::D4tri, Int(2))) == Int("211341312"));
  CHECK(group_order(GroupSpec::exceptional(Family::G2, Int(3))) == Int("4245696"));
  CHECK(group_order(GroupSpec::exceptional(Family::B2tw, Int(8))) == 29120);
  CHECK(group_order(GroupSpec::exceptional(Family::G2tw, Int(27))) == Int("10073444472"));
  CHECK(group_order(GroupSpec::exceptional(Family::F4tw, Int(2))) == Int("35942400"));
}

TEST_CASE("weyl orders and reflection counts") {
  CHECK(weyl_order(L(5, 7)) == 120);
  CHECK(weyl_order(Sp(6, 2)) == 48);
  CHECK(weyl_order(Op(8, 2)) == 192);
  CHECK(weyl_order(GroupSpec::exceptional(Family::E8, Int(2))) == 696729600);
  CHECK(weyl_order(GroupSpec::exceptional(Family::E7, Int(2))) == 2903040);
  CHECK(reflection_count(GroupSpec::exceptional(Family::E8, Int(2))) == 120);
  CHECK(reflection_count(GroupSpec::exceptional(Family::E7, Int(2))) == 63);
  CHECK(reflection_count(GroupSpec::exceptional(Family::E6, Int(2))) == 36);
  CHECK(reflection_count(GroupSpec::exceptional(Family::F4, Int(2))) == 24);
  CHECK(reflection_count(GroupSpec::exceptional(Family::G2, Int(4))) == 6);
  CHECK(reflection_count(L(6, 2)) == 15);
  CHECK(reflection_count(Sp(6, 2)) == 9);
  CHECK(reflection_count(Op(8, 2)) == 12);
}

TEST_CASE("class counts per family") {
  CHECK(enumerate_torus_classes(L(3, 7)).size() == 3);
  CHECK(enumerate_torus_classes(U(3, 3)).size() == 3);
  CHECK(enumerate_torus_classes(L(4, 2)).size() == 5);
  CHECK(enumerate_torus_classes(Sp(4, 3)).size() == 5);
  CHECK(enumerate_torus_classes(L(5, 7)).size() == 7);
  CHECK(enumerate_torus_classes(Sp(6, 2)).size() == 10);
  CHECK(enumerate_torus_classes(Op(8, 2)).size() == 13);
  CHECK(enumerate_torus_classes(On(8, 2)).size() == 9);
  CHECK(enumerate_torus_classes(GroupSpec::exceptional(Family::G2, Int(5))).size() == 6);
  CHECK(enumerate_torus_classes(GroupSpec::exceptional(Family::D4tri, Int(2))).size() == 7);
  CHECK_THROWS(enumerate_torus_classes(GroupSpec::exceptional(Family::E8, Int(2))));
}

TEST_CASE("torus data: pinned examples") {
  // L3(2), Singer torus: N = 7:3
  {
    auto d = torus_data(L(3, 2), TorusClass{Partition{3}, {}});
    CHECK(d.torus_order == 7);
    CHECK(d.f_centralizer_order == 3);
    CHECK(d.normaliser_order == 21);
  }
  // L3(2), split: N = S3 (monomial subgroup), torus trivial at q=2
  {
    auto d = torus_data(L(3, 2), TorusClass{Partition{1, 1, 1}, {}});
    CHECK(d.torus_order == 1);
    CHECK(d.normaliser_order == 6);
  }
  // L3(2), middle: N = D6
  {
    auto d = torus_data(L(3, 2), TorusClass{Partition{2, 1}, {}});
    CHECK(d.torus_order == 3);
    CHECK(d.normaliser_order == 6);
  }
  // U6(2) split: T = 3^6/(3*3) = 81, R = S6
  {
    auto d = torus_data(U(6, 2), TorusClass{Partition{1, 1, 1, 1, 1, 1}, {}});
    CHECK(d.torus_order == 81);
    CHECK(d.f_centralizer_order == 720);
    CHECK(d.normaliser_order == 58320);
  }
  // U4(2) split: N = 3^3:S4
  {
    auto d = torus_data(U(4, 2), TorusClass{Partition{1, 1, 1, 1}, {}});
    CHECK(d.torus_order == 27);
    CHECK(d.normaliser_order == 648);
  }
  // U5(2) split: N = 3^4:S5
  {
    auto d = torus_data(U(5, 2), TorusClass{Partition{1, 1, 1, 1, 1}, {}});
    CHECK(d.torus_order == 81);
    CHECK(d.normaliser_order == 9720);
  }
  // U3(3) split: N = 4^2:S3
  {
    auto d = torus_data(U(3, 3), TorusClass{Partition{1, 1, 1}, {}});
    CHECK(d.torus_order == 16);
    CHECK(d.normaliser_order == 96);
  }
  // Sp6(2), T = 3^3, R = S2 wr S3
  {
    auto d = torus_data(Sp(6, 2), TorusClass{{}, Partition{1, 1, 1}});
    CHECK(d.torus_order == 27);
    CHECK(d.f_centralizer_order == 48);
    CHECK(d.normaliser_order == 1296);
  }
  // Omega8+(2), T = 3^4, R = 2^3:S4
  {
    auto d = torus_data(Op(8, 2), TorusClass{{}, Partition{1, 1, 1, 1}});
    CHECK(d.torus_order == 81);
    CHECK(d.f_centralizer_order == 192);
    CHECK(d.normaliser_order == 15552);
  }
  // L2(q) dihedral normalisers
  for (long q : {4L, 8L, 16L, 32L}) {
    auto dm = torus_data(L(2, q), TorusClass{Partition{2}, {}});
    CHECK(dm.torus_order == q + 1);
    CHECK(dm.normaliser_order == 2 * (q + 1));
    auto dp = torus_data(L(2, q), TorusClass{Partition{1, 1}, {}});
    CHECK(dp.torus_order == q - 1);
    CHECK(dp.normaliser_order == 2 * (q - 1));
  }
  // L2(q) odd: |N| = 2(q -+ 1)/d, dihedral
  {
    auto dm = torus_data(L(2, 7), TorusClass{Partition{2}, {}});
    CHECK(dm.normaliser_order == 8);  // D8 < L2(7)
    auto dp = torus_data(L(2, 7), TorusClass{Partition{1, 1}, {}});
    CHECK(dp.normaliser_order == 6);
  }
}

TEST_CASE("Table 3: the nine F-classes of Omega8-(2), bit exact") {
  auto spec = On(8, 2);
  // rows: lambda, mu, |T|, |R|, |N|
  struct Row {
    TorusClass cls;
    long t, r, nn;
  };
  std::vector<Row> rows = {
      {{Partition{3}, Partition{1}}, 21, 6, 126},
      {{Partition{2, 1}, Partition{1}}, 9, 8, 72},
      {{Partition{1, 1, 1}, Partition{1}}, 3, 48, 144},
      {{Partition{2}, Partition{2}}, 15, 8, 120},
      {{Partition{1, 1}, Partition{2}}, 5, 16, 80},
      {{Partition{1}, Partition{3}}, 9, 6, 54},
      {{Partition{1}, Partition{1, 1, 1}}, 27, 48, 1296},
      {{Partition{}, Partition{4}}, 17, 4, 68},
      {{Partition{}, Partition{2, 1, 1}}, 45, 16, 720},
  };
  auto classes = enumerate_torus_classes(spec);
  CHECK(classes.size() == rows.size());
  for (auto& row : rows) {
    CAPTURE(row.cls.str());
    CHECK(std::find(classes.begin(), classes.end(), row.cls) != classes.end());
    auto d = torus_data(spec, row.cls);
    CHECK(d.torus_order == row.t);
    CHECK(d.f_centralizer_order == row.r);
    CHECK(d.normaliser_order == row.nn);
  }
}

TEST_CASE("|N| = |T| |R| and hat-factor divisibility for assorted corpora") {
  for (auto spec : {L(3, 2), L(4, 3), U(4, 2), U(5, 2), Sp(6, 2), Sp(8, 3), Om(7, 3), Op(8, 2),
                    On(8, 2), Op(10, 3), On(10, 3)}) {
    for (auto& cls : enumerate_torus_classes(spec)) {
      auto d = torus_data(spec, cls);
      CHECK(d.normaliser_order == d.torus_order * d.f_centralizer_order);
      CHECK(d.hat_order % d.torus_order == 0);
      Int prod = 1;
      for (auto& f : d.hat_torus_factors) prod *= f;
      CHECK(prod == d.hat_order);
    }
  }
}

TEST_CASE("class equation: untwisted classical W") {
  // sum over W-classes of |W|/|C_W(w)| = |W|
  for (auto spec : {L(4, 5), L(6, 2), Sp(8, 3), Om(9, 3), Op(8, 2), Op(12, 2)}) {
    Int w = weyl_order(spec);
    Rat sum = 0;
    for (auto& cls : enumerate_torus_classes(spec)) {
      auto d = torus_data(spec, cls);
      sum += Rat(w, d.f_centralizer_order);
    }
    CHECK(sum == Rat(w));
  }
}

TEST_CASE("twisted class equation for 2D and 3D4 and 2A") {
  for (auto spec : {On(8, 2), On(12, 3), On(10, 2)}) {
    Int w = weyl_order(spec);
    Rat sum = 0;
    for (auto& cls : enumerate_torus_classes(spec)) {
      auto d = torus_data(spec, cls);
      sum += Rat(w, d.f_centralizer_order);
    }
    CHECK(sum == Rat(w));
  }
  {
    auto spec = GroupSpec::exceptional(Family::D4tri, Int(2));
    Rat sum = 0;
    for (auto& cls : enumerate_torus_classes(spec))
      sum += Rat(192, torus_data(spec, cls).f_centralizer_order);
    CHECK(sum == Rat(192));
  }
  {
    auto spec = U(6, 2);
    Rat sum = 0;
    for (auto& cls : enumerate_torus_classes(spec))
      sum += Rat(720, torus_data(spec, cls).f_centralizer_order);
    CHECK(sum == Rat(720));
  }
}

TEST_CASE("Steinberg torus-count identity for GL_n(q)") {
  // sum over F-classes |GL_n(q)| / (|That| |R|) = q^{n(n-1)}
  for (unsigned n = 2; n <= 6; ++n) {
    for (long q : {2L, 3L, 4L, 5L}) {
      auto spec = L(n, q);
      Int gl = gl_order(n, Int(q), +1);
      Rat sum = 0;
      for (auto& cls : enumerate_torus_classes(spec)) {
        auto d = torus_data(spec, cls);
        sum += Rat(gl, d.hat_order * d.f_centralizer_order);
      }
      CAPTURE(n);
      CAPTURE(q);
      CHECK(sum == Rat(pow_int(Int(q), static_cast<unsigned long>(n) * (n - 1))));
    }
  }
}

TEST_CASE("Steinberg identity for twisted and exceptional families") {
  // GU_n(q) via the same identity (the ambient group has order |GU|)
  for (unsigned n = 2; n <= 5; ++n) {
    auto spec = U(n, 2);
    Int gu = gl_order(n, Int(2), -1);
    Rat sum = 0;
    for (auto& cls : enumerate_torus_classes(spec)) {
      auto d = torus_data(spec, cls);
      sum += Rat(gu, d.hat_order * d.f_centralizer_order);
    }
    CHECK(sum == Rat(pow_int(Int(2), static_cast<unsigned long>(n) * (n - 1))));
  }
  // G2(q) and 3D4(q): number of F-stable maximal tori = q^{2 * #pos roots}
  for (long q : {2L, 3L, 4L, 5L}) {
    auto g2 = GroupSpec::exceptional(Family::G2, Int(q));
    Rat sum = 0;
    for (auto& cls : enumerate_torus_classes(g2)) {
      auto d = torus_data(g2, cls);
      sum += Rat(group_order(g2), d.torus_order * d.f_centralizer_order);
    }
    CHECK(sum == Rat(pow_int(Int(q), 12)));
  }
  for (long q : {2L, 3L, 4L}) {
    auto d4 = GroupSpec::exceptional(Family::D4tri, Int(q));
    Rat sum = 0;
    for (auto& cls : enumerate_torus_classes(d4)) {
      auto d = torus_data(d4, cls);
      sum += Rat(group_order(d4), d.torus_order * d.f_centralizer_order);
    }
    CAPTURE(q);
    CHECK(sum == Rat(pow_int(Int(q), 24)));
  }
}

TEST_CASE("G2 torus structures match the dihedral picture") {
  auto spec = GroupSpec::exceptional(Family::G2, Int(5));
  std::multiset<long> norms;
  for (auto& cls : enumerate_torus_classes(spec))
    norms.insert(static_cast<long>(torus_data(spec, cls).normaliser_order));
  CHECK(norms == std::multiset<long>{96, 96, 126, 186, 192, 432});
}

TEST_CASE("3D4 torus orders at q=2") {
  auto spec = GroupSpec::exceptional(Family::D4tri, Int(2));
  std::multiset<long> orders;
  for (auto& cls : enumerate_torus_classes(spec))
    orders.insert(static_cast<long>(torus_data(spec, cls).torus_order));
  // (q3-1)(q-1), (q3+1)(q+1), (q3-1)(q+1), (q3+1)(q-1), (q2+q+1)^2, (q2-q+1)^2, q4-q2+1
  CHECK(orders == std::multiset<long>{7, 27, 21, 9, 49, 9, 13});
}

TEST_CASE("parse round trips") {
  auto c = TorusClass::parse("3,1;2");
  CHECK(c.lambda == Partition({3, 1}));
  CHECK(c.mu == Partition({2}));
  CHECK(TorusClass::parse(c.str()) == c);
  auto s = TorusClass::parse("2,2;+");
  CHECK(s.split_tag == SplitTag::plus);
  CHECK(TorusClass::parse(s.str()) == s);
  auto e = TorusClass::parse("1,1,1,1;");
  CHECK(e.mu.empty());
  CHECK(valid_torus_class(GroupSpec::classical(Family::UnitaryA2, 4, Int(2)), e));
  CHECK(!valid_torus_class(GroupSpec::classical(Family::UnitaryA2, 4, Int(2)),
                           TorusClass::parse("3,1;1")));
}

TEST_CASE("D-type split classes") {
  auto spec = Op(8, 2);
  auto classes = enumerate_torus_classes(spec);
  int split = 0;
  for (auto& c : classes)
    if (c.split_tag != SplitTag::none) ++split;
  CHECK(split == 4);  // (4)+-, (2,2)+-
  auto d1 = torus_data(spec, TorusClass{Partition{4}, {}, SplitTag::plus});
  auto d2 = torus_data(spec, TorusClass{Partition{4}, {}, SplitTag::minus});
  CHECK(d1.torus_order == 15);
  CHECK(d1.f_centralizer_order == 8);  // full hyperoctahedral centralizer, not halved
  CHECK(d2.f_centralizer_order == 8);
  auto d3 = torus_data(spec, TorusClass{Partition{3, 1}, {}});
  CHECK(d3.f_centralizer_order == 6);  // (2*3)(2*1)/2
  CHECK(d3.normaliser_order == 7 * 6);
}
