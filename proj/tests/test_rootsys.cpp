#include <map>
#include <string>

#include "doctest.h"
#include "rspace/rootsys.hpp"

using namespace rspace;

namespace {

std::map<std::string, int> uniform(Family f, int m) {
  std::map<std::string, int> out;
  for (const auto& cls : multiplicity_classes(f)) out[cls] = m;
  return out;
}

RatVec rv(std::initializer_list<long long> xs) {
  RatVec v;
  for (long long x : xs) v.push_back(Rational(x));
  return v;
}

}  // namespace

TEST_CASE("smallest system: A_1") {
  auto rs = build_irreducible(Family::A, 1, {{"long", 1}});
  CHECK(rs.rank == 1);
  CHECK(rs.num_positive_roots() == 1);
  CHECK(rs.positive_roots[0].multiplicity == 1);
  CHECK(validate(rs).empty());
}

TEST_CASE("textbook A_2 realization") {
  auto rs = build_irreducible(Family::A, 2, {{"long", 1}});
  CHECK(rs.num_positive_roots() == 3);
  for (const auto& r : rs.positive_roots) CHECK(r.multiplicity == 1);
  CHECK(rs.simple_roots[0] == rv({1, -1, 0}));
  CHECK(rs.simple_roots[1] == rv({0, 1, -1}));
  CHECK(validate(rs).empty());
}

TEST_CASE("BC_1 carries the ray and its double") {
  auto rs = build_irreducible(Family::BC, 1,
                              {{"short", 3}, {"long", 2}, {"double", 5}});
  REQUIRE(rs.num_positive_roots() == 2);
  // {e1, 2e1} with the short and double multiplicities
  int m_e = 0, m_2e = 0;
  for (const auto& r : rs.positive_roots) {
    if (r.coords == rv({1})) m_e = r.multiplicity;
    if (r.coords == rv({2})) m_2e = r.multiplicity;
  }
  CHECK(m_e == 3);
  CHECK(m_2e == 5);
  CHECK(validate(rs).empty());
}

TEST_CASE("classical positive-root counts by enumeration") {
  for (int r = 1; r <= 5; ++r)
    CHECK(build_irreducible(Family::A, r, uniform(Family::A, 1)).num_positive_roots() ==
          r * (r + 1) / 2);
  for (int r = 1; r <= 4; ++r) {
    CHECK(build_irreducible(Family::B, r, uniform(Family::B, 1)).num_positive_roots() ==
          r * r);
    CHECK(build_irreducible(Family::C, r, uniform(Family::C, 1)).num_positive_roots() ==
          r * r);
    CHECK(build_irreducible(Family::BC, r, uniform(Family::BC, 1)).num_positive_roots() ==
          r * r + r);
  }
  for (int r = 2; r <= 5; ++r)
    CHECK(build_irreducible(Family::D, r, uniform(Family::D, 1)).num_positive_roots() ==
          r * (r - 1));
  CHECK(build_irreducible(Family::G2, 2, uniform(Family::G2, 1)).num_positive_roots() == 6);
  CHECK(build_irreducible(Family::F4, 4, uniform(Family::F4, 1)).num_positive_roots() == 24);
  CHECK(build_irreducible(Family::E6, 6, uniform(Family::E6, 1)).num_positive_roots() == 36);
  CHECK(build_irreducible(Family::E7, 7, uniform(Family::E7, 1)).num_positive_roots() == 63);
  CHECK(build_irreducible(Family::E8, 8, uniform(Family::E8, 1)).num_positive_roots() == 120);
}

TEST_CASE("every built-in family validates cleanly") {
  for (auto [f, r] : {std::pair{Family::A, 3}, {Family::B, 3}, {Family::C, 3},
                      {Family::BC, 3}, {Family::D, 4}, {Family::G2, 2},
                      {Family::F4, 4}, {Family::E6, 6}, {Family::E7, 7},
                      {Family::E8, 8}}) {
    auto rs = build_irreducible(f, r, uniform(f, 2));
    INFO(rs.label);
    CHECK(validate(rs).empty());
  }
}

TEST_CASE("dual basis values") {
  SUBCASE("A_1: <H,α> = 1 forces H = α/2") {
    auto rs = build_irreducible(Family::A, 1, {{"long", 1}});
    REQUIRE(rs.dual_basis.size() == 1);
    CHECK(rs.dual_basis[0] == RatVec{Rational(1, 2), Rational(-1, 2)});
  }
  SUBCASE("A_2 dual pair") {
    auto rs = build_irreducible(Family::A, 2, {{"long", 1}});
    REQUIRE(rs.dual_basis.size() == 2);
    CHECK(rs.dual_basis[0] ==
          RatVec{Rational(2, 3), Rational(-1, 3), Rational(-1, 3)});
    CHECK(rs.dual_basis[1] ==
          RatVec{Rational(1, 3), Rational(1, 3), Rational(-2, 3)});
  }
}

TEST_CASE("dual pairing is the identity in floating point") {
  for (auto [f, r] : {std::pair{Family::A, 4}, {Family::BC, 3}, {Family::G2, 2},
                      {Family::F4, 4}, {Family::E7, 7}}) {
    auto rs = build_irreducible(f, r, uniform(f, 1));
    Eigen::MatrixXd pairing = rs.dual_mat.transpose() * rs.simple_mat;
    CHECK((pairing - Eigen::MatrixXd::Identity(rs.rank, rs.rank)).cwiseAbs().maxCoeff() <
          1e-12);
  }
}

TEST_CASE("dual basis fails loudly on dependent simple roots") {
  CHECK_THROWS_AS(dual_basis({rv({1, -1}), rv({-1, 1})}), std::invalid_argument);
}

TEST_CASE("validate flags the spec counterexamples") {
  SUBCASE("negative pair") {
    // A_2 with α2 replaced by -α1
    auto rs = make_root_system(
        3, {{rv({1, -1, 0}), 1}, {rv({-1, 1, 0}), 1}}, {rv({1, -1, 0}), rv({-1, 1, 0})},
        "broken A2");
    auto v = validate(rs);
    REQUIRE_FALSE(v.empty());
    bool negative = false, rank_bad = false;
    for (const auto& viol : v) {
      if (viol.rule == "negative pair in positive roots") negative = true;
      if (viol.rule == "rank mismatch") rank_bad = true;
    }
    CHECK(rank_bad);  // dependent simples reported first
    CHECK((negative || rank_bad));
  }
  SUBCASE("duplicate root") {
    auto rs = make_root_system(2, {{rv({1, 0}), 1}, {rv({1, 0}), 2}},
                               {rv({1, 0}), rv({0, 1})}, "dup");
    bool dup = false;
    for (const auto& viol : validate(rs))
      if (viol.rule == "duplicate root") dup = true;
    CHECK(dup);
  }
  SUBCASE("zero root") {
    auto rs = make_root_system(2, {{rv({0, 0}), 1}, {rv({1, 0}), 1}},
                               {rv({1, 0}), rv({0, 1})}, "zero");
    bool zero = false;
    for (const auto& viol : validate(rs))
      if (viol.rule == "zero root") zero = true;
    CHECK(zero);
  }
  SUBCASE("non-integer combination") {
    auto rs = make_root_system(2, {{rv({1, 1}), 1}, {RatVec{Rational(1, 2), Rational(0)}, 1}},
                               {rv({1, 1}), rv({1, -1})}, "frac");
    bool frac = false;
    for (const auto& viol : validate(rs))
      if (viol.rule == "root is not a nonnegative integer combination of simple roots")
        frac = true;
    CHECK(frac);
  }
}

TEST_CASE("direct sums") {
  auto a1 = build_irreducible(Family::A, 1, {{"long", 1}});
  auto a1m2 = build_irreducible(Family::A, 1, {{"long", 2}});

  SUBCASE("A_1 ⊕ A_1") {
    auto sum = direct_sum(a1, a1);
    CHECK(sum.rank == 2);
    CHECK(sum.num_positive_roots() == 2);
    CHECK(dot(sum.positive_roots[0].coords, sum.positive_roots[1].coords).is_zero());
    CHECK(validate(sum).empty());
  }
  SUBCASE("the (1,2) configuration") {
    auto sum = direct_sum(a1, a1m2);
    CHECK(sum.positive_roots[0].multiplicity == 1);
    CHECK(sum.positive_roots[1].multiplicity == 2);
    CHECK(validate(sum).empty());
  }
  SUBCASE("rank additivity") {
    auto a2 = build_irreducible(Family::A, 2, {{"long", 1}});
    auto g2 = build_irreducible(Family::G2, 2, uniform(Family::G2, 1));
    CHECK(direct_sum(a2, g2).rank == 4);
  }
  SUBCASE("factors stay exactly orthogonal") {
    auto b2 = build_irreducible(Family::B, 2, uniform(Family::B, 3));
    auto sum = direct_sum(b2, a1);
    for (int i = 0; i < b2.num_positive_roots(); ++i)
      for (int j = b2.num_positive_roots(); j < sum.num_positive_roots(); ++j)
        CHECK(dot(sum.positive_roots[i].coords, sum.positive_roots[j].coords).is_zero());
    CHECK(validate(sum).empty());
  }
}

TEST_CASE("build errors") {
  CHECK_THROWS_AS(build_irreducible(Family::G2, 3, uniform(Family::G2, 1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_irreducible(Family::D, 1, uniform(Family::D, 1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_irreducible(Family::B, 2, {{"short", 1}}),
                  std::invalid_argument);  // missing long
  CHECK_THROWS_AS(build_irreducible(Family::A, 2, {{"long", 0}}),
                  std::invalid_argument);  // non-positive
}

TEST_CASE("simple_coefficients certifies span membership") {
  auto rs = build_irreducible(Family::A, 2, {{"long", 1}});
  auto c = simple_coefficients(rs, rv({1, 0, -1}));  // α1 + α2
  REQUIRE(c.has_value());
  CHECK((*c)[0] == Rational(1));
  CHECK((*c)[1] == Rational(1));
  CHECK_FALSE(simple_coefficients(rs, rv({1, 1, 1})).has_value());
}
