#include <doctest.h>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <random>

#include "barylab/errors.hpp"
#include "barylab/exact.hpp"
#include "barylab/hiprec.hpp"
#include "barylab/reference_eval.hpp"
#include "support.hpp"

using namespace barylab;

namespace {

using Big = boost::multiprecision::cpp_bin_float_50;

double rel_to_big(const HiPrec& v, const Big& ref) {
    const Big got = Big(v.hi) + Big(v.lo);
    return static_cast<double>(abs((got - ref) / ref));
}

}  // namespace

TEST_CASE("two-term sums and products are exact") {
    const HiPrec s = hp_add(HiPrec(1.0), HiPrec(0x1p-60));
    CHECK(s.hi == 1.0);
    CHECK(s.lo == 0x1p-60);

    const HiPrec a{1.0, 0x1p-53};
    const HiPrec b{1.0 - 0x1p-53};
    const HiPrec p = hp_mul(a, b);
    CHECK(p.hi == 1.0);
    CHECK(p.lo == -0x1p-106);
    CHECK(to_rational(p) == ExactRational(1) - ExactRational(1) / (ExactRational(mpz_class(1) << 106)));
}

TEST_CASE("random operand pairs match the rational oracle to 1e-30") {
    std::mt19937_64 rng(20240611);
    double worst[4] = {0, 0, 0, 0};
    for (int i = 0; i < 10000; ++i) {
        const HiPrec a = testing::random_hiprec(rng);
        const HiPrec b = testing::random_hiprec(rng);
        const ExactRational qa = to_rational(a);
        const ExactRational qb = to_rational(b);
        const ExactRational sum = qa + qb;
        if (sum != 0) worst[0] = std::max(worst[0], relative_error(hp_add(a, b), sum));
        const ExactRational diff = qa - qb;
        if (diff != 0) worst[1] = std::max(worst[1], relative_error(hp_sub(a, b), diff));
        worst[2] = std::max(worst[2], relative_error(hp_mul(a, b), qa * qb));
        worst[3] = std::max(worst[3], relative_error(hp_div(a, b), qa / qb));
    }
    for (double w : worst) CHECK(w <= 1e-30);
    MESSAGE("worst add/sub/mul/div relative errors: " << worst[0] << " " << worst[1] << " " << worst[2] << " "
                                                      << worst[3]);
}

TEST_CASE("cancelling additions stay within 1e-30") {
    std::mt19937_64 rng(7);
    double worst = 0;
    for (int i = 0; i < 10000; ++i) {
        const HiPrec a = testing::random_hiprec(rng, -2, 2);
        // b is close to -a so the sum cancels most leading bits
        std::uniform_int_distribution<int> shift(1, 60);
        const HiPrec b = hp_add(-a, HiPrec(std::ldexp(a.hi, -shift(rng))));
        const ExactRational exact = to_rational(a) + to_rational(b);
        if (exact != 0) worst = std::max(worst, relative_error(hp_add(a, b), exact));
    }
    CHECK(worst <= 1e-30);
}

TEST_CASE("division by zero is rejected and overflow propagates") {
    CHECK_THROWS_AS((void)hp_div(HiPrec(1.0), HiPrec(0.0)), std::domain_error);
    const HiPrec big = hp_mul(HiPrec(1e300), HiPrec(1e300));
    CHECK_FALSE(big.is_finite());
}

TEST_CASE("cosine of rational multiples of pi matches a 50-digit reference") {
    double worst = 0;
    const Big pi = boost::math::constants::pi<Big>();
    for (long long den : {1LL, 2LL, 3LL, 4LL, 7LL, 10LL, 100LL, 1000LL, 12345LL, 1000000LL}) {
        for (long long num = -2 * den; num <= 2 * den; num += std::max(1LL, den / 37)) {
            const Big ref = cos(pi * num / den);
            const HiPrec c = cos_pi_ratio(num, den);
            if (abs(ref) > 1e-20) {
                worst = std::max(worst, rel_to_big(c, ref));
            } else {
                CHECK(std::abs(c.hi) < 1e-30);
            }
        }
    }
    CHECK(worst < 1e-30);
}

TEST_CASE("sine matches reference and cos(pi/4) equals sqrt(2)/2") {
    const Big pi = boost::math::constants::pi<Big>();
    for (long long num : {1LL, 5LL, 17LL, 49LL}) {
        CHECK(rel_to_big(sin_pi_ratio(num, 50), sin(pi * num / 50)) < 1e-30);
    }
    const HiPrec half_root2 = hp_div(sqrt(HiPrec(2.0)), HiPrec(2.0));
    const HiPrec c = cos_pi_ratio(1, 4);
    CHECK(std::abs(hp_sub(c, half_root2).to_double()) < 1e-31);
}

TEST_CASE("exact evaluator reproduces x^2 on three nodes") {
    const std::vector<ExactRational> x{0, 1, 2};
    const std::vector<ExactRational> w{ExactRational(1, 2), -1, ExactRational(1, 2)};
    const std::vector<ExactRational> y{0, 1, 4};
    CHECK(eval_second_form_exact(x, w, y, ExactRational(3, 2)) == ExactRational(9, 4));
    CHECK(eval_second_form_exact(x, w, y, ExactRational(1)) == ExactRational(1));
    const std::vector<ExactRational> c{ExactRational(7, 3), ExactRational(7, 3), ExactRational(7, 3)};
    CHECK(eval_second_form_exact(x, w, c, ExactRational(-5, 11)) == ExactRational(7, 3));
}

TEST_CASE("exact evaluator rejects poles") {
    const std::vector<ExactRational> x{0, 1};
    const std::vector<ExactRational> w{1, 1};
    const std::vector<ExactRational> y{1, 2};
    CHECK_THROWS_AS((void)eval_second_form_exact(x, w, y, ExactRational(1, 2)), PoleError);
}

TEST_CASE("double-double evaluation agrees with the exact oracle and is scale invariant") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(1.0, 2.0);
    std::uniform_int_distribution<int> deg(1, 12);
    double worst = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const int n = deg(rng);
        const auto xs = testing::random_sorted_nodes(rng, n);
        std::vector<HiPrec> nodes(xs.begin(), xs.end());
        std::vector<HiPrec> w, y;
        for (int k = 0; k <= n; ++k) {
            w.emplace_back(testing::random_double(rng, -3, 3));
            y.emplace_back(u(rng));
        }
        const HiPrec x = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
        const auto exact =
            eval_second_form_exact(to_rational(std::span<const HiPrec>(nodes)), to_rational(std::span<const HiPrec>(w)),
                                   to_rational(std::span<const HiPrec>(y)), to_rational(x));
        if (exact == 0) continue;
        const HiPrec hp = eval_second_form_hp(nodes, w, y, x);
        worst = std::max(worst, relative_error(hp, exact));

        std::vector<HiPrec> w8;
        for (const auto& v : w) w8.push_back(ldexp(v, 8));
        CHECK(eval_second_form_hp(nodes, w8, y, x) == hp);
        CHECK(eval_second_form_hp(nodes, w, y, nodes[n / 2]) == y[n / 2]);
    }
    CHECK(worst < 1e-25);
}
