#include "boxart/rng.hpp"

#include <cmath>
#include <map>

#include <doctest.h>

#include "boxart/error.hpp"

using namespace boxart;

TEST_CASE("equal seeds produce equal draw sequences") {
  RandomStream a(0xDEADBEEFULL);
  RandomStream b(0xDEADBEEFULL);
  for (int i = 0; i < 10000; ++i) {
    REQUIRE(a.next_u64() == b.next_u64());
  }
}

TEST_CASE("different seeds diverge") {
  RandomStream a(1);
  RandomStream b(2);
  int equal = 0;
  for (int i = 0; i < 100; ++i) {
    if (a.next_u64() == b.next_u64()) ++equal;
  }
  CHECK(equal == 0);
}

TEST_CASE("uniform_int stays in bounds and covers the range") {
  RandomStream rng(7);
  std::map<int, int> counts;
  for (int i = 0; i < 6000; ++i) {
    const int draw = rng.uniform_int(2, 7);
    REQUIRE(draw >= 2);
    REQUIRE(draw <= 7);
    ++counts[draw];
  }
  CHECK(counts.size() == 6);
  for (const auto& [value, count] : counts) {
    CHECK(count > 700);  // fair die, ~1000 each
  }
  CHECK(rng.uniform_int(5, 5) == 5);
  CHECK_THROWS_AS((void)rng.uniform_int(3, 2), Error);
}

TEST_CASE("poisson mean and redraw floor behave") {
  RandomStream rng(42);
  double sum = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) sum += rng.poisson(8.0);
  const double mean = sum / n;
  CHECK(mean > 7.8);
  CHECK(mean < 8.2);
  CHECK_THROWS_AS((void)rng.poisson(0.0), Error);
}

TEST_CASE("child streams are independent of the parent state") {
  RandomStream parent(99);
  (void)parent.next_u64();
  RandomStream child_a = parent.child(0);
  RandomStream child_b = RandomStream(99).child(0);
  for (int i = 0; i < 100; ++i) {
    REQUIRE(child_a.next_u64() == child_b.next_u64());
  }
  RandomStream other = parent.child(1);
  CHECK(other.next_u64() != RandomStream(99).child(0).next_u64());
}
