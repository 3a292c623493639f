#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"

#include "increg/rng.hpp"
#include "increg/stats.hpp"

using namespace increg;

TEST_CASE("mix64 matches the reference avalanche values") {
  CHECK(mix64(1) == UINT64_C(0x5692161d100b05e5));
  CHECK(mix64(UINT64_C(0xDEADBEEF)) == UINT64_C(0x4e062702ec929eea));
  CHECK(mix64(0) == 0);
}

TEST_CASE("derive_stream separates ids and is insensitive to overflow") {
  CHECK(derive_stream(7, 0) == UINT64_C(0x63cbe1e459320dd7));
  CHECK(derive_stream(7, 1) == UINT64_C(0x044c3cd7f43c661c));
  CHECK(derive_stream(UINT64_C(0xFFFFFFFFFFFFFFFF), 3) ==
        UINT64_C(0x6d1db36ccba982d2));
  CHECK(derive_stream(7, 0) != derive_stream(7, 1));
  CHECK(derive_stream(7, 0) != derive_stream(8, 0));
}

TEST_CASE("raw stream from seed 42 is reproducible") {
  Rng rng(42);
  CHECK(rng.next() == UINT64_C(0xbdd732262feb6e95));
  CHECK(rng.next() == UINT64_C(0x28efe333b266f103));
  CHECK(rng.next() == UINT64_C(0x47526757130f9f52));
  CHECK(rng.next() == UINT64_C(0x581ce1ff0e4ae394));
}

TEST_CASE("uniform draws are the 53-bit mapping of the raw stream") {
  Rng rng(42);
  CHECK(rng.uniform() == 0.74156487877182342);
  CHECK(rng.uniform() == 0.15991039287692022);
  CHECK(rng.uniform() == 0.27860113025513877);
  CHECK(rng.uniform() == 0.34419071652363764);
}

TEST_CASE("uniform lies in (0, 1] even at the stream extremes") {
  Rng rng(0);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    CHECK(u > 0.0);
    CHECK(u <= 1.0);
  }
}

TEST_CASE("normal draws match the Box-Muller reference") {
  Rng rng(42);
  CHECK(rng.normal() == doctest::Approx(0.41471975043153003).epsilon(1e-14));
  CHECK(rng.normal() == doctest::Approx(-0.89188621362775733).epsilon(1e-14));
  CHECK(rng.normal() == doctest::Approx(1.7295930879374031).epsilon(1e-14));
  CHECK(rng.normal() == doctest::Approx(0.54562043618286604).epsilon(1e-14));
}

TEST_CASE("exponential draws match the inverse-cdf reference") {
  Rng rng(42);
  CHECK(rng.exponential(2.5) ==
        doctest::Approx(0.7474815614346807).epsilon(1e-14));
  CHECK(rng.exponential(2.5) ==
        doctest::Approx(4.5828541628776689).epsilon(1e-14));
  CHECK(rng.exponential(2.5) ==
        doctest::Approx(3.1949354018365379).epsilon(1e-14));
}

TEST_CASE("normal consumes exactly two uniforms per draw") {
  Rng a(9);
  Rng b(9);
  a.normal();
  b.uniform();
  b.uniform();
  CHECK(a.next() == b.next());
}

TEST_CASE("normal sample moments are sane") {
  Rng rng(7);
  const int n = 50000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sum_sq += z * z;
  }
  CHECK(std::abs(sum / n) < 0.02);
  CHECK(std::abs(sum_sq / n - 1.0) < 0.03);
}

TEST_CASE("normal_quantile matches reference values") {
  CHECK(stats::normal_quantile(0.975) ==
        doctest::Approx(1.959963984540054).epsilon(1e-12));
  CHECK(stats::normal_quantile(0.9) ==
        doctest::Approx(1.2815515655446004).epsilon(1e-12));
  CHECK(stats::normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(stats::normal_quantile(0.025) ==
        doctest::Approx(-1.959963984540054).epsilon(1e-12));
}

TEST_CASE("chi-square quantiles match reference values") {
  CHECK(stats::chisq_quantile(0.95, 2) ==
        doctest::Approx(5.991464547107979).epsilon(1e-12));
  CHECK(stats::chisq_quantile(0.99, 5) ==
        doctest::Approx(15.086272469388989).epsilon(1e-12));
  CHECK(stats::chi_upper_quantile(0.05, 2) ==
        doctest::Approx(std::sqrt(5.991464547107979)).epsilon(1e-12));
  CHECK(stats::chi_upper_quantile(0.05, 1) ==
        doctest::Approx(1.959963984540054).epsilon(1e-12));
}

TEST_CASE("mean and sample_sd are the textbook estimators") {
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
  CHECK(stats::mean(x) == doctest::Approx(2.5));
  CHECK(stats::sample_sd(x) ==
        doctest::Approx(std::sqrt(5.0 / 3.0)).epsilon(1e-14));
}

TEST_CASE("kolmogorov_sf matches reference values") {
  CHECK(stats::kolmogorov_sf(0.5) ==
        doctest::Approx(0.96394524366487511).epsilon(1e-12));
  CHECK(stats::kolmogorov_sf(1.0) ==
        doctest::Approx(0.26999967167735456).epsilon(1e-12));
  CHECK(stats::kolmogorov_sf(2.0) ==
        doctest::Approx(0.00067092525577969533).epsilon(1e-9));
  CHECK(stats::kolmogorov_sf(1e-3) == doctest::Approx(1.0));
  CHECK(stats::kolmogorov_sf(50.0) == doctest::Approx(0.0));
}

TEST_CASE("ks_test_standard_normal reproduces an external reference") {
  const std::vector<double> sample{-1.2, -0.4, 0.1,  0.3, 0.8,
                                   1.5,  2.2,  -0.9, 0.05, -2.0};
  const stats::KsResult res = stats::ks_test_standard_normal(sample);
  CHECK(res.statistic ==
        doctest::Approx(0.13319279873114187).epsilon(1e-12));
  CHECK(res.p_value == doctest::Approx(0.98979145611430663).epsilon(1e-10));
}

TEST_CASE("ks test rejects a far-from-normal sample") {
  std::vector<double> shifted;
  Rng rng(11);
  for (int i = 0; i < 400; ++i) shifted.push_back(rng.normal() + 2.0);
  const stats::KsResult res = stats::ks_test_standard_normal(shifted);
  CHECK(res.p_value < 1e-6);
  CHECK(res.statistic > 0.5);
}
