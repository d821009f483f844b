#include "doctest.h"

#include "bathent/verify.hpp"

#include <algorithm>
#include <sstream>

using namespace bathent;

namespace {

VerifyOptions small_options() {
    VerifyOptions o;
    o.system.n_bath = 80;
    o.size_b = 20;
    o.time.t_end = 30.0;
    o.time.samples = 61;
    o.random_draws = 50;
    return o;
}

const CheckResult& find(const VerifyReport& r, const std::string& name) {
    const auto it = std::find_if(r.checks.begin(), r.checks.end(), [&](const CheckResult& c) { return c.name == name; });
    REQUIRE(it != r.checks.end());
    return *it;
}

}  // namespace

TEST_CASE("verify passes on a healthy configuration") {
    const VerifyReport r = verify(small_options());
    CHECK(r.checks.size() == 8);
    CHECK(r.passed());
    std::ostringstream out;
    r.print(out);
    CHECK(out.str().find("PASS norm_exact") != std::string::npos);
    CHECK(out.str().find("all checks passed") != std::string::npos);
}

TEST_CASE("asymmetric generator fails the norm checks") {
    VerifyOptions o = small_options();
    o.fault = fault_from_string("asymmetric-generator");
    const VerifyReport r = verify(o);
    CHECK_FALSE(r.passed());
    CHECK_FALSE(find(r, "norm_exact").passed);
    CHECK_FALSE(find(r, "norm_rk4").passed);
    std::ostringstream out;
    r.print(out);
    CHECK(out.str().find("FAIL norm_exact") != std::string::npos);
}

TEST_CASE("oversized step exercises the integration failure path") {
    VerifyOptions o = small_options();
    o.time.t_end = 100.0;
    o.time.dt = 1.0;
    const VerifyReport r = verify(o);
    CHECK_FALSE(r.passed());
    CHECK_FALSE(find(r, "norm_rk4").passed);
    CHECK(find(r, "norm_rk4").detail.find("norm drift") != std::string::npos);
}

TEST_CASE("fault names") {
    CHECK(fault_from_string("") == Fault::none);
    CHECK_THROWS_AS(fault_from_string("bitflip"), std::invalid_argument);
}

TEST_CASE("oracle draws are legal") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 500; ++i) {
        const OracleDraw d = random_oracle_draw(rng);
        CHECK(d.xi >= 0.0);
        CHECK(d.theta_b >= 0.0);
        CHECK(d.theta_c >= 0.0);
        CHECK(d.xi + d.theta_b + d.theta_c == doctest::Approx(1.0));
        CHECK(d.init.overlap_magnitude > 0.0);
        CHECK(d.init.overlap_magnitude < 1.0);
    }
}

TEST_CASE("two-mode errors") {
    CHECK(two_mode_error(Method::exact) <= 1e-8);
    CHECK(two_mode_error(Method::rk4) <= 1e-6);
}
