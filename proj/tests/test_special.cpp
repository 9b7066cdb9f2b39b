#include <doctest.h>

#include <cmath>
#include <limits>

#include "noisylab/errors.hpp"
#include "noisylab/special.hpp"

using namespace noisylab;

namespace {

// ln Γ(x) to 25 digits (mpmath).
struct LgammaCase {
  double x;
  double value;
};
constexpr LgammaCase kLgamma[] = {
    {1e-8, 18.42068073818020890537531},  {0.1, 2.252712651734205959869702},
    {0.5, 0.5723649429247000870717137},  {1.5, -0.1207822376352452223455184},
    {2.5, 0.2846828704729191596324947},  {3.0, 0.6931471805599453094172321},
    {7.25, 7.052185450738539444925749},  {10.0, 12.80182748008146961120772},
    {33.3, 82.60372358165495292832303},  {100.0, 359.134205369575398776044},
    {1000.0, 5905.220423209181211826077}, {123456.789, 1323902.018795063123806101},
    {1e10, 220258509288.8105814700419},
};

}  // namespace

TEST_SUITE("special") {
  TEST_CASE("log_gamma matches extended-precision values to 1e-13 relative") {
    for (const auto& c : kLgamma) {
      CAPTURE(c.x);
      CHECK(std::abs(special::log_gamma(c.x) - c.value) <= 1e-13 * std::max(1.0, std::abs(c.value)));
    }
  }

  TEST_CASE("log_gamma is exact at its zeros and agrees with the recurrence") {
    CHECK(std::abs(special::log_gamma(1.0)) < 1e-15);
    CHECK(std::abs(special::log_gamma(2.0)) < 1e-15);
    for (double x : {0.01, 0.3, 0.77, 4.2, 19.5, 250.25}) {
      CAPTURE(x);
      CHECK(special::log_gamma(x + 1.0) - special::log_gamma(x) ==
            doctest::Approx(std::log(x)).epsilon(1e-12));
    }
  }

  TEST_CASE("log_gamma rejects non-positive arguments") {
    CHECK_THROWS_AS(special::log_gamma(0.0), ContractViolation);
    CHECK_THROWS_AS(special::log_gamma(-1.5), ContractViolation);
  }

  TEST_CASE("log_rising on tiny, moderate and long ranges") {
    CHECK(special::log_rising(1e-16, 5) == doctest::Approx(-33.66330765755678511630759).epsilon(1e-14));
    CHECK(special::log_rising(0.3, 7) == doctest::Approx(6.052094528204173511099889).epsilon(1e-14));
    CHECK(special::log_rising(2.5, 300) == doctest::Approx(1423.183076940935705185262).epsilon(1e-13));
    CHECK(special::log_rising(4.0, 0) == 0.0);
    // Block products near the overflow guard.
    CHECK(special::log_rising(1e40, 20) == doctest::Approx(20 * std::log(1e40)).epsilon(1e-14));
    CHECK(special::log_rising(1e60, 9) == doctest::Approx(9 * std::log(1e60)).epsilon(1e-14));
    CHECK(special::log_rising(1e-300, 3) == doctest::Approx(std::log(1e-300) + std::log(2.0)).epsilon(1e-14));
  }

  TEST_CASE("log_rising sum and gamma-difference branches agree at the switch") {
    for (double a : {0.7, 3.0, 55.5}) {
      for (long k : {250L, 256L, 257L, 400L}) {
        long double acc = 0.0L;
        for (long i = 0; i < k; ++i) acc += std::log(static_cast<long double>(a) + i);
        CAPTURE(a);
        CAPTURE(k);
        CHECK(special::log_rising(a, k) == doctest::Approx(static_cast<double>(acc)).epsilon(1e-13));
      }
    }
  }

  TEST_CASE("log_factorial") {
    CHECK(special::log_factorial(0) == 0.0);
    CHECK(special::log_factorial(1) == 0.0);
    CHECK(special::log_factorial(5) == doctest::Approx(std::log(120.0)).epsilon(1e-15));
    CHECK(special::log_factorial(1000) == doctest::Approx(5912.128178488163).epsilon(1e-14));
  }

  TEST_CASE("normal_cdf against extended-precision values") {
    CHECK(std::abs(special::normal_cdf(-1.0) - 0.1586552539314570514147675) < 1e-15);
    CHECK(std::abs(special::normal_cdf(-2.0) - 0.02275013194817920720028264) < 1e-16);
    CHECK(special::normal_cdf(-8.0) == doctest::Approx(6.220960574271784123515995e-16).epsilon(1e-12));
    CHECK(special::normal_cdf(-20.0) == doctest::Approx(2.753624118606233695075623e-89).epsilon(1e-12));
    CHECK(std::abs(special::normal_cdf(0.5) - 0.6914624612740131036377046) < 1e-15);
    CHECK(std::abs(special::normal_cdf(3.0) - 0.9986501019683699054733482) < 1e-15);
    CHECK(special::normal_cdf(0.0) == 0.5);
  }

  TEST_CASE("sigmoid, softplus and log_sigmoid stay finite in the tails") {
    CHECK(special::sigmoid(2.0) == doctest::Approx(0.8807970779778824440597291).epsilon(1e-15));
    CHECK(special::sigmoid(-50.0) == doctest::Approx(1.928749847963917783016971e-22).epsilon(1e-14));
    CHECK(special::sigmoid(-800.0) >= 0.0);
    CHECK(special::sigmoid(800.0) == 1.0);
    CHECK(special::log_sigmoid(-50.0) == doctest::Approx(-50.0).epsilon(1e-15));
    CHECK(special::log_sigmoid(-800.0) == doctest::Approx(-800.0));
    CHECK(special::log_sigmoid(800.0) == 0.0);
    CHECK(special::softplus(0.0) == doctest::Approx(std::log(2.0)));
    CHECK(special::softplus(1000.0) == doctest::Approx(1000.0));
    CHECK(std::isfinite(special::softplus(-1000.0)));
    for (double x : {-30.0, -3.0, 0.0, 0.4, 12.0}) {
      CHECK(special::sigmoid(x) + special::sigmoid(-x) == doctest::Approx(1.0).epsilon(1e-15));
    }
  }
}
