#include "betadim/beta_core.hpp"
#include "betadim/errors.hpp"
#include "betadim/parse.hpp"

#include <doctest.h>

#include <random>

using namespace betadim;

namespace {

mpq_class q(const char* s) { return parse_rational(s); }

// Oracle: greedy digits of a rational x in a rational base, in plain mpq
// arithmetic, independent of the library path under test.
std::vector<int> rational_expand_oracle(const mpq_class& beta, mpq_class x, int n) {
    std::vector<int> out;
    for (int i = 0; i < n; ++i) {
        mpq_class y = beta * x;
        mpz_class d;
        mpz_fdiv_q(d.get_mpz_t(), y.get_num().get_mpz_t(), y.get_den().get_mpz_t());
        out.push_back(static_cast<int>(d.get_si()));
        x = y - mpq_class(d);
    }
    return out;
}

real_alg golden() { return parse_real("poly:[-1,-1,1]@[1,2]"); }
real_alg one_plus_sqrt3() { return parse_real("poly:[-2,-2,1]@[2,3]"); }

} // namespace

TEST_CASE("t_beta_step on exact rationals") {
    auto r = t_beta_step(real_alg(q("3")), real_alg(0));
    CHECK(r.digit == 0);
    CHECK(r.next.is_zero());

    auto r1 = t_beta_step(real_alg(q("5/2")), real_alg(q("1/2")));
    CHECK(r1.digit == 1);
    CHECK(r1.next == real_alg(q("1/4")));

    auto r2 = t_beta_step(real_alg(q("5/2")), real_alg(q("1/4")));
    CHECK(r2.digit == 0);
    CHECK(r2.next == real_alg(q("5/8")));

    CHECK_THROWS_AS(t_beta_step(real_alg(q("5/2")), real_alg(q("3/2"))), error);
}

TEST_CASE("expand matches the independent rational oracle") {
    auto oracle = rational_expand_oracle(q("3"), q("1/4"), 4);
    CHECK(oracle == std::vector<int>{0, 2, 0, 2});
    CHECK(expand(real_alg(q("3")), real_alg(q("1/4")), 4) == digit_word{0, 2, 0, 2});

    auto o2 = rational_expand_oracle(q("5/2"), q("1/2"), 4);
    CHECK(o2 == std::vector<int>{1, 0, 1, 1});
    CHECK(expand(real_alg(q("5/2")), real_alg(q("1/2")), 4) == digit_word{1, 0, 1, 1});

    CHECK(expand(real_alg(q("2")), real_alg(0), 3) == digit_word{0, 0, 0});

    std::mt19937 rng(7);
    std::uniform_int_distribution<long> num(0, 9999);
    for (int t = 0; t < 50; ++t) {
        mpq_class beta = q("18/5");
        mpq_class x(num(rng), 10000);
        x.canonicalize();
        auto expect = rational_expand_oracle(beta, x, 12);
        auto got = expand(real_alg(beta), real_alg(x), 12);
        CHECK(std::vector<int>(got.begin(), got.end()) == expect);
    }
}

TEST_CASE("evaluate encloses the exact series value") {
    digit_word w;
    for (int i = 0; i < 10; ++i) {
        w.push_back(0);
        w.push_back(2);
    }
    // (0.0202...)_3 to depth 20 differs from 1/4 by at most 3^-20 * 3/2.
    high_real v = evaluate(real_alg(q("3")), w, 128);
    mpq_class err = ::abs(v.midpoint() - q("1/4"));
    mpq_class bound = q("3/2") / mpq_class(mpz_class(3486784401L));  // 3^20
    CHECK(err <= bound + v.upper() - v.lower());

    CHECK(evaluate_exact(real_alg(q("4")), digit_word{3}) == real_alg(q("3/4")));
    CHECK(evaluate_exact(real_alg(q("4")), digit_word{}).is_zero());
}

TEST_CASE("round trip: evaluate(expand(x)) approximates x") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<long> num(0, 99999);
    for (const char* bs : {"5/2", "3", "18/5", "7/3"}) {
        mpq_class beta = q(bs);
        for (int t = 0; t < 20; ++t) {
            mpq_class x(num(rng), 100000);
            x.canonicalize();
            int n = 1 + static_cast<int>(t % 30);
            digit_word w = expand(real_alg(beta), real_alg(x), n);
            for (int d : w) CHECK(d <= 3);  // never exceeds floor(beta)
            real_alg v = evaluate_exact(real_alg(beta), w);
            mpq_class diff = x - v.as_rational();
            CHECK(diff >= 0);
            mpq_class pw(1);
            for (int i = 0; i < n; ++i) pw /= beta;
            CHECK(diff <= pw * beta / (beta - 1));
        }
    }
}

TEST_CASE("expansion of one: golden mean is simple with digits (1,1)") {
    one_expansion one(golden(), 32);
    REQUIRE(one.simple());
    CHECK(one.simple_n() == 2);
    CHECK(one.eps_at(1) == 1);
    CHECK(one.eps_at(2) == 1);
    // quasi-greedy stream (1,0) repeating
    CHECK(one.e(1) == 1);
    CHECK(one.e(2) == 0);
    CHECK(one.e(3) == 1);
    CHECK(one.e(4) == 0);
    CHECK(one.e(1001) == 1);
}

TEST_CASE("expansion of one: 5/2 is not finite within depth") {
    one_expansion one(real_alg(q("5/2")), 16);
    CHECK_FALSE(one.simple());
    // eps = (2,1,0,1,1,1,0,...) by exact rational iteration
    auto oracle = rational_expand_oracle(q("5/2"), q("1/2"), 15);  // 5/2 - 2 = 1/2
    CHECK(one.eps_at(1) == 2);
    for (int i = 2; i <= 16; ++i) CHECK(one.eps_at(i) == oracle[i - 2]);
    CHECK(one.eps_at(2) == 1);
    CHECK_THROWS_AS(one.e(17), error);
}

TEST_CASE("expansion of one: 1+sqrt3 gives (2,2) and quasi-greedy (2,1)") {
    one_expansion one(one_plus_sqrt3(), 32);
    REQUIRE(one.simple());
    CHECK(one.simple_n() == 2);
    CHECK(one.eps_at(1) == 2);
    CHECK(one.eps_at(2) == 2);
    CHECK(one.e(1) == 2);
    CHECK(one.e(2) == 1);
    CHECK(one.e(3) == 2);
}

TEST_CASE("expansion of one: integer bases are simple at the first digit") {
    one_expansion two(real_alg(q("2")), 8);
    REQUIRE(two.simple());
    CHECK(two.simple_n() == 1);
    CHECK(two.eps_at(1) == 2);
    CHECK(two.e(1) == 1);
    CHECK(two.e(5) == 1);

    one_expansion four(real_alg(q("4")), 8);
    CHECK(four.simple_n() == 1);
    CHECK(four.e(1) == 3);
}

TEST_CASE("lex_compare basics") {
    digit_word a{1, 0}, b{1, 1}, c{2, 1}, d{3, 1, 3}, e{3, 2, 0};
    CHECK(lex_compare(digit_view::of_word_zero_padded(a), digit_view::of_word_zero_padded(b), 2) ==
          lex_result::less);
    CHECK(lex_compare(digit_view::of_word_zero_padded(c), digit_view::of_word_zero_padded(c), 2) ==
          lex_result::equal_to_depth);
    CHECK(lex_compare(digit_view::of_word_zero_padded(d), digit_view::of_word_zero_padded(e), 3) ==
          lex_result::less);
}

TEST_CASE("admissibility at the golden mean") {
    one_expansion one(golden(), 40);
    CHECK_FALSE(is_admissible(one, digit_word{1, 1}));
    CHECK(is_admissible(one, digit_word{1, 0, 1}));
    CHECK(is_admissible(one, digit_word{0, 0, 0, 0}));
    CHECK_FALSE(is_admissible(one, digit_word{0, 1, 1}));
}

TEST_CASE("expand output is admissible") {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<long> num(0, 9999);
    for (const char* bs : {"5/2", "18/5"}) {
        one_expansion one(real_alg(q(bs)), 80);
        for (int t = 0; t < 25; ++t) {
            mpq_class x(num(rng), 10000);
            x.canonicalize();
            digit_word w = expand(real_alg(q(bs)), real_alg(x), 10);
            CHECK(is_admissible(one, w));
        }
    }
    one_expansion g(golden(), 80);
    for (int t = 0; t < 25; ++t) {
        mpq_class x(num(rng), 10000);
        x.canonicalize();
        digit_word w = expand(g.beta(), real_alg(x), 10);
        CHECK(is_admissible(g, w));
    }
}

TEST_CASE("monotone expansions of 1 across beta") {
    // Bases listed in increasing order (2.1, 2.5, 1+phi, 3, 3.6, 2+sqrt3):
    // smaller base gives a lexicographically smaller expansion of 1.
    std::vector<real_alg> betas = {real_alg(q("21/10")), real_alg(q("5/2")), golden() + real_alg(1),
                                   real_alg(q("3")), real_alg(q("18/5")), one_plus_sqrt3() + real_alg(1)};
    std::vector<one_expansion> ones;
    for (auto& b : betas) ones.emplace_back(b, 40);
    for (size_t i = 0; i < betas.size(); ++i)
        for (size_t j = i + 1; j < betas.size(); ++j) {
            auto vi = digit_view::of_word_zero_padded(ones[i].eps());
            auto vj = digit_view::of_word_zero_padded(ones[j].eps());
            CHECK(lex_compare(vi, vj, 40) == lex_result::less);
        }
}

TEST_CASE("quasi-greedy shift property") {
    for (const char* spec :
         {"poly:[-1,-1,1]@[1,2]", "poly:[-2,-2,1]@[2,3]", "5/2", "18/5", "3", "poly:[-1,0,-1,1]@[1.4,1.5]"}) {
        real_alg beta = parse_real(spec);
        one_expansion one(beta, 60);
        int depth = one.simple() ? 3 * one.e_period() + 12 : 60;
        for (int k = 1; k + 1 <= depth; ++k) {
            auto shifted = digit_view{[&one, k](int i) { return one.e(i + k); }};
            auto base = digit_view::of_quasi_greedy(one);
            CHECK(lex_compare(shifted, base, depth - k) != lex_result::greater);
        }
    }
}

TEST_CASE("cubic base with finite expansion (1,0,1)") {
    real_alg beta = parse_real("poly:[-1,0,-1,1]@[1.4,1.5]");  // root of t^3 - t^2 - 1
    one_expansion one(beta, 24);
    REQUIRE(one.simple());
    CHECK(one.simple_n() == 3);
    CHECK(one.eps_at(1) == 1);
    CHECK(one.eps_at(2) == 0);
    CHECK(one.eps_at(3) == 1);
    // quasi-greedy: (1,0,0) repeating
    CHECK(one.e(3) == 0);
    CHECK(one.e(4) == 1);
}

TEST_CASE("eventually periodic value") {
    // 0.(2) in base 3 equals 1; 0.(20) in base 1+sqrt3 equals 2b/(b^2-1).
    CHECK(eventually_periodic_value(real_alg(q("3")), digit_word{}, digit_word{2}) == real_alg(1));
    real_alg b = one_plus_sqrt3();
    real_alg v = eventually_periodic_value(b, digit_word{}, digit_word{2, 0});
    CHECK(v * (b * b - real_alg(1)) == real_alg(2) * b);
}
