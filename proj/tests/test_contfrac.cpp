#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "sdlab/contfrac.hpp"

using namespace sdlab;
using namespace sdlab::contfrac;

namespace {

std::vector<long> as_longs(const std::vector<BigInt>& a) {
  std::vector<long> out;
  for (const auto& x : a) out.push_back(x.get_si());
  return out;
}

QuotientSequence golden_sequence() { return {{BigInt(0)}, {BigInt(1)}}; }

}  // namespace

TEST_CASE("rational expansion terminates on the input") {
  auto cf = cf_expand(make_rational(7, 5), 5);
  CHECK(as_longs(cf.a) == std::vector<long>{1, 2, 2});
  CHECK(cf.exhausted);
  CHECK(cf.conv.back().value() == make_rational(7, 5));

  auto three = cf_expand(Rational(3), 4);
  CHECK(as_longs(three.a) == std::vector<long>{3});
  CHECK(three.exhausted);

  auto neg = cf_expand(make_rational(-7, 5), 10);
  CHECK(as_longs(neg.a) == std::vector<long>{-2, 1, 1, 2});
  CHECK(neg.conv.back().value() == make_rational(-7, 5));
}

TEST_CASE("depth limits the number of quotients") {
  auto cf = cf_expand(make_rational(7, 5), 1);
  CHECK(as_longs(cf.a) == std::vector<long>{1, 2});
  CHECK_FALSE(cf.exhausted);
  auto zero = cf_expand(make_rational(13, 8), 0);
  CHECK(zero.a.size() == 1);
}

TEST_CASE("golden quotient sequence has Fibonacci convergents") {
  auto cf = cf_expand(golden_sequence(), 4);
  std::vector<std::pair<long, long>> expected{{0, 1}, {1, 1}, {1, 2}, {2, 3}, {3, 5}};
  REQUIRE(cf.conv.size() == expected.size());
  for (size_t k = 0; k < expected.size(); ++k) {
    CHECK(cf.conv[k].n == expected[k].first);
    CHECK(cf.conv[k].m == expected[k].second);
  }
  CHECK(cf.tail_quotient_bound == BigInt(1));
}

TEST_CASE("surd expansions are periodic") {
  auto r2 = cf_expand(Surd::sqrt_of(2), 10);
  CHECK(as_longs(r2.a) == std::vector<long>{1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2});
  CHECK(r2.tail_quotient_bound == BigInt(2));

  auto g = cf_expand(Surd::golden_conjugate(), 6);
  CHECK(as_longs(g.a) == std::vector<long>{0, 1, 1, 1, 1, 1, 1});

  // sqrt 7 = [2; 1, 1, 1, 4, ...]
  auto r7 = cf_expand(Surd::sqrt_of(7), 8);
  CHECK(as_longs(r7.a) == std::vector<long>{2, 1, 1, 1, 4, 1, 1, 1, 4});
  CHECK(r7.tail_quotient_bound == BigInt(4));

  // (1 - sqrt 2)/(-3) = 0.138..., negative denominator normalizes
  Surd s{1, -1, 2, -3};
  auto cf = cf_expand(s, 12);
  CHECK(std::abs(to_double(cf.conv[12].value()) - s.approx()) < 1e-12);
}

TEST_CASE("surd enclosure has the requested width") {
  Surd s = Surd::sqrt_of(2);
  RationalInterval e = s.enclosure(256);
  CHECK(e.width() <= Rational(1) / Rational(BigInt(1) << 256));
  CHECK(e.lo * e.lo < 2);
  CHECK(e.hi * e.hi > 2);
}

TEST_CASE("invalid inputs are rejected") {
  CHECK_THROWS(cf_expand(Surd{0, 1, 4, 1}, 3));
  CHECK_THROWS(cf_expand(Surd{0, 1, 2, 0}, 3));
  CHECK_THROWS(cf_expand(QuotientSequence{{BigInt(0), BigInt(0)}, {}}, 3));
}

TEST_CASE("property: Bezout, Fibonacci bound and reconstruction") {
  for (int trial = 0; trial < 200; ++trial) {
    CfSource src;
    if (trial % 2 == 0) src = testgen::rational(100000);
    else src = testgen::surd();
    auto cf = cf_expand(src, 25);
    for (size_t k = 0; k < cf.conv.size(); ++k) {
      BigInt prev_n = k == 0 ? BigInt(1) : cf.conv[k - 1].n;
      BigInt prev_m = k == 0 ? BigInt(0) : cf.conv[k - 1].m;
      BigInt bez = cf.conv[k].m * prev_n - cf.conv[k].n * prev_m;
      CHECK(bez == (k % 2 == 0 ? 1 : -1));
      CHECK(cf.conv[k].m >= fibonacci(k + 1));
      CHECK(evaluate(cf.a, k) == cf.conv[k].value());
      if (k >= 1) CHECK(cf.a[k] >= 1);
    }
    if (std::holds_alternative<Rational>(src)) {
      CHECK(cf.exhausted);
      CHECK(cf.conv.back().value() == std::get<Rational>(src));
    }
  }
}

TEST_CASE("best approximation examples") {
  auto r2 = cf_expand(Surd::sqrt_of(2), 10);
  auto x = Surd::sqrt_of(2).enclosure(256);
  auto rep = check_best_approx(r2, make_rational(4, 3), x, 1);
  CHECK(rep.status == Status::pass);
  CHECK(check_best_approx(r2, make_rational(3, 2), x, 1).status == Status::not_applicable);

  Surd g = Surd::golden_conjugate();
  auto gcf = cf_expand(g, 10);
  CHECK(check_best_approx(gcf, make_rational(1, 3), g.enclosure(256), 2).status == Status::pass);

  // a degenerate enclosure cannot separate the two sides
  RationalInterval wide(Rational(0), Rational(2));
  CHECK(check_best_approx(r2, make_rational(4, 3), wide, 1).status == Status::undecidable);
}

TEST_CASE("gap inequalities") {
  Surd g = Surd::golden_conjugate();
  auto gcf = cf_expand(g, 10);
  auto rep = convergent_gap_checks(gcf, g.enclosure(256));
  CHECK(rep.status == Status::pass);
  // k = 2: |2x - 1| = sqrt5 - 2 with bounds 1/6 and 1/3
  REQUIRE(rep.entries.size() >= 2);
  CHECK(rep.entries[1].k == 2);
  CHECK(rep.entries[1].bounds_ok);

  auto r2 = cf_expand(Surd::sqrt_of(2), 7);
  auto r2rep = convergent_gap_checks(r2, Surd::sqrt_of(2).enclosure(256));
  CHECK(r2rep.status == Status::pass);
  CHECK(r2rep.entries.size() == 6);

  auto rat = cf_expand(make_rational(7, 5), 10);
  auto rrep = convergent_gap_checks(rat, RationalInterval(make_rational(7, 5)));
  CHECK(rrep.note.find("finite expansion") != std::string::npos);
}

TEST_CASE("Bruno series") {
  auto g = cf_expand(Surd::golden_conjugate(), 30);
  auto b = bruno(g, 30, TailModel::bounded(1));
  CHECK(b.partial_sum.hi() == 0.0);
  CHECK(b.tail_bound.hi() == 0.0);

  // sqrt2 - 1 = [0; 2, 2, ...]; 50-term high-precision summation oracle
  QuotientSequence s{{BigInt(0)}, {BigInt(2)}};
  auto cf = cf_expand(s, 60);
  auto classical = bruno(cf, 50, TailModel::bounded(2), BrunoMode::classical);
  CHECK(classical.partial_sum.lo() <= 2.5622561997358712);
  CHECK(classical.partial_sum.hi() >= 2.5622561997358712);
  CHECK(classical.partial_sum.width() < 1e-30);
  auto plain = bruno(cf, 50, TailModel::bounded(2));
  CHECK(std::abs(plain.partial_sum.mid() - 1.2769178500068839) < 1e-15);

  auto none = bruno(cf, 10, TailModel::none());
  CHECK_FALSE(none.tail_bound.is_finite());
  CHECK_THROWS(bruno(cf_expand(Surd::sqrt_of(2), 5), 9, TailModel::none()));

  auto rat = bruno(cf_expand(make_rational(7, 5), 10), 10, TailModel::none());
  CHECK(rat.rational);
  CHECK(rat.tail_bound.hi() == 0.0);
}

TEST_CASE("property: Bruno partial sums grow and tails shrink with depth") {
  for (int trial = 0; trial < 20; ++trial) {
    auto seq = QuotientSequence{{BigInt(0)}, testgen::quotients(3, 6)};
    auto cf = cf_expand(seq, 40);
    BigInt A = *cf.tail_quotient_bound;
    RealInterval prev_sum(0L), prev_tail = RealInterval::infinity();
    for (size_t d = 1; d <= 40; ++d) {
      auto b = bruno(cf, d, TailModel::bounded(A));
      CHECK(b.partial_sum.hi() >= prev_sum.lo());
      CHECK(b.tail_bound.hi() <= prev_tail.hi());
      prev_sum = b.partial_sum;
      prev_tail = b.tail_bound;
    }
    // the tail bound dominates the actual remainder
    auto deep = bruno(cf, 40, TailModel::bounded(A));
    auto shallow = bruno(cf, 8, TailModel::bounded(A));
    CHECK((deep.partial_sum - shallow.partial_sum).hi() <= shallow.tail_bound.hi());
  }
}

TEST_CASE("Fibonacci numbers") {
  CHECK(fibonacci(0) == 0);
  CHECK(fibonacci(1) == 1);
  CHECK(fibonacci(10) == 55);
}
