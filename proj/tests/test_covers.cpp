#include "betadim/covers.hpp"
#include "betadim/errors.hpp"
#include "betadim/parse.hpp"

#include <doctest.h>

using namespace betadim;

namespace {

mpq_class q(const char* s) { return parse_rational(s); }
real_alg one_plus_sqrt3() { return parse_real("poly:[-2,-2,1]@[2,3]"); }

} // namespace

TEST_CASE("classical Cantor cover levels are exact") {
    one_expansion three(real_alg(q("3")), 48);
    digit_set t02({0, 2});

    auto c1 = make_cover_level(three, t02, 1, 24);
    REQUIRE(c1.items.size() == 2);
    CHECK(c1.items[0].iv.lo == real_alg(0));
    CHECK(c1.items[0].iv.hi == real_alg(q("1/3")));
    CHECK(c1.items[1].iv.lo == real_alg(q("2/3")));
    CHECK(c1.items[1].iv.hi == real_alg(1));
    CHECK(c1.items[0].sup_exact);

    auto c2 = make_cover_level(three, t02, 2, 24);
    REQUIRE(c2.items.size() == 4);
    for (const auto& item : c2.items) CHECK(item.iv.hi - item.iv.lo == real_alg(q("1/9")));
}

TEST_CASE("cover level of 1+sqrt3 uses the restricted supremum") {
    real_alg b = one_plus_sqrt3();
    one_expansion one(b, 48);
    auto c1 = make_cover_level(one, digit_set({0, 2}), 1, 24);
    REQUIRE(c1.items.size() == 2);
    // sup C = 2b/(b^2-1); intervals [0, sup/b] and [2/b, 2/b + sup/b].
    real_alg supc = real_alg(2) * b / (b * b - real_alg(1));
    CHECK(c1.items[0].sup_exact);
    CHECK(c1.items[0].iv.lo == real_alg(0));
    CHECK(c1.items[0].iv.hi == supc / b);
    CHECK(c1.items[1].iv.lo == real_alg(2) / b);
    CHECK(c1.items[1].iv.hi == (real_alg(2) + supc) / b);
    // numeric spot value of sup C
    CHECK(::abs(supc.enclosure(128).midpoint() - q("8453/10000")) < q("1/1000"));
}

TEST_CASE("cover nesting: finer levels sit inside coarser ones") {
    for (const char* spec : {"3", "18/5", "poly:[-2,-2,1]@[2,3]"}) {
        real_alg beta = parse_real(spec);
        one_expansion one(beta, 80);
        digit_set theta = std::string(spec) == "18/5" ? digit_set({0, 1, 3}) : digit_set({0, 2});
        auto coarse = make_cover_level(one, theta, 3, 24);
        auto fine = make_cover_level(one, theta, 4, 24);
        for (const auto& f : fine.items) {
            bool inside = false;
            for (const auto& c : coarse.items)
                if (c.iv.lo <= f.iv.lo && f.iv.hi <= c.iv.hi) {
                    inside = true;
                    break;
                }
            CHECK(inside);
        }
    }
}

TEST_CASE("interval lengths respect the tail bound and adjacent overlap is a point") {
    for (const char* spec : {"3", "18/5"}) {
        real_alg beta = parse_real(spec);
        one_expansion one(beta, 80);
        digit_set theta = std::string(spec) == "18/5" ? digit_set({0, 1, 3}) : digit_set({0, 2});
        for (int k : {2, 5}) {
            auto cover = make_cover_level(one, theta, k, 24);
            real_alg bound =
                beta.inverse().pow_ui(k) * beta / (beta - real_alg(1));
            for (size_t i = 0; i < cover.items.size(); ++i) {
                CHECK(cover.items[i].iv.hi - cover.items[i].iv.lo <= bound);
                if (i > 0) {
                    // Sorted by construction, and exact suprema never overrun
                    // the next interval's interior.
                    CHECK(cover.items[i - 1].iv.lo < cover.items[i].iv.lo);
                    if (cover.items[i - 1].sup_exact)
                        CHECK(cover.items[i - 1].iv.hi <= cover.items[i].iv.hi);
                }
            }
        }
    }
}

TEST_CASE("premeasure sums") {
    one_expansion three(real_alg(q("3")), 48);
    digit_set t02({0, 2});
    auto c4 = make_cover_level(three, t02, 4, 24);

    // s = log2/log3 makes the classical Cantor pre-measure exactly 1.
    high_real s = high_real(2, 192).log() / high_real(3, 192).log();
    high_real m = premeasure_sum(c4, s, 192);
    CHECK(m.lower() <= 1);
    CHECK(m.upper() >= 1);
    CHECK(m.upper() - m.lower() < q("1/1000000000"));

    // s = 0 counts the intervals.
    high_real m0 = premeasure_sum(c4, high_real(0, 192), 192);
    CHECK(m0.lower() <= 16);
    CHECK(m0.upper() >= 16);

    // Mixed base: the pre-measure at the pipeline dimension stays within
    // [1, alpha/(alpha-1)].
    one_expansion b36(real_alg(q("18/5")), 96);
    digit_set t013({0, 1, 3});
    pipeline_options opts;
    opts.prec = 192;
    auto dim = hausdorff_dimension(b36.beta(), t013, opts);
    auto c8 = make_cover_level(b36, t013, 8, 32);
    high_real m8 = premeasure_sum(c8, dim.s, 192);
    high_real ratio = dim.alpha.alpha / (dim.alpha.alpha - high_real(1, 192));
    CHECK(m8.upper() >= 1);  // outer approximation cannot undershoot 1
    CHECK(m8.lower() <= ratio.upper());
}

TEST_CASE("two-sided counting band and box estimates") {
    struct scenario {
        const char* beta;
        digit_set theta;
    };
    for (auto& sc : {scenario{"18/5", digit_set({0, 1, 3})}, scenario{"3", digit_set({0, 2})}}) {
        real_alg beta = parse_real(sc.beta);
        one_expansion one(beta, 128);
        pipeline_options opts;
        opts.prec = 192;
        auto table = box_dimension_estimate(one, sc.theta, 14, opts);
        high_real ratio = table.alpha / (table.alpha - high_real(1, 192));
        for (const auto& row : table.rows) {
            CHECK(row.within);
            // 1 <= N_k alpha^-k <= alpha/(alpha-1)
            high_real scaled = high_real::from_mpz(row.count, 192) * table.alpha.pow_si(-row.k);
            CHECK(scaled.upper() >= 1);
            CHECK(scaled.lower() <= ratio.upper());
        }
    }

    // Full restricted shift at beta = 4: s_k equals log3/log4 at every k.
    one_expansion four(real_alg(q("4")), 48);
    auto t4 = box_dimension_estimate(four, digit_set({0, 1, 3}), 10);
    high_real ref = high_real(3, 128).log() / high_real(4, 128).log();
    for (const auto& row : t4.rows)
        CHECK(::abs(row.s_k.midpoint() - ref.midpoint()) < q("1/1000000000"));

    // Band half-width at k = 10 for beta = 18/5 is about 0.0356.
    one_expansion b36(real_alg(q("18/5")), 128);
    auto t36 = box_dimension_estimate(b36, digit_set({0, 1, 3}), 10);
    const auto& r10 = t36.rows.back();
    CHECK(r10.k == 10);
    CHECK(::abs(r10.band.midpoint() - q("356/10000")) < q("1/5000"));
    CHECK(r10.s_k.midpoint() > q("7846/10000"));
    CHECK(r10.s_k.midpoint() < q("8202/10000"));
}

TEST_CASE("extendable words carry full-length unrestricted cylinders") {
    // Words whose final index can be bumped within the recoded shift have
    // unrestricted continuation supremum 1, hence cylinder length beta^-k.
    struct scenario {
        const char* beta;
        digit_set theta;
        const char* alpha;
    };
    for (auto& sc : {scenario{"3", digit_set({0, 2}), "2"},
                     scenario{"18/5", digit_set({0, 1, 3}), "poly:[-2,-2,1]@[2,3]"}}) {
        real_alg beta = parse_real(sc.beta);
        one_expansion one(beta, 160);
        one_expansion alpha_one(parse_real(sc.alpha), 80);
        int k = 5;
        suffix_tracker tracker(one, 120);
        for (const auto& w : enumerate_restricted(one, sc.theta.thetas, k)) {
            // Index-bump admissibility in the recoded alphabet.
            std::vector<int> idx;
            for (int d : w) idx.push_back(sc.theta.index_of(d));
            if (idx.back() + 1 > sc.theta.q() - 1) continue;
            std::vector<int> bumped = idx;
            ++bumped.back();
            bool extendable = true;
            try {
                extendable = is_admissible(alpha_one, bumped);
            } catch (const error&) {
                extendable = false;
            }
            if (!extendable) continue;

            int state = 0;
            for (int d : w) state = tracker.step(state, d);
            REQUIRE(state >= 0);
            // Enclosure of the unrestricted continuation supremum from this
            // suffix state; it must contain 1 tightly.
            digit_word tail;
            for (int i = 1; i <= 48; ++i) tail.push_back(tracker.e_at(state + i));
            real_alg lo = evaluate_exact(beta, tail);
            real_alg pad = beta.inverse().pow_ui(48) * beta / (beta - real_alg(1));
            CHECK(lo <= real_alg(1));
            CHECK(real_alg(1) <= lo + pad);
        }
    }
}

TEST_CASE("separation verdicts") {
    digit_set t02({0, 2});
    one_expansion three(real_alg(q("3")), 48);
    auto s3 = separation_check(three, t02, 2, 24);
    CHECK(s3.verdict == separation_verdict::separated);
    CHECK(s3.gap.upper() >= q("1/3"));
    CHECK(s3.gap.lower() >= q("33/100"));

    one_expansion b12(parse_real("poly:[-1,-2,1]@[2,3]"), 48);
    auto s12 = separation_check(b12, t02, 6, 24);
    CHECK(s12.verdict == separation_verdict::separated);
    CHECK(s12.gap.lower() > 0);

    // At beta = 4 the images of digits 0 and 1 share the point 1/4 = f_0(1)
    // = f_1(0), which itself lies in the set.
    one_expansion four(real_alg(q("4")), 48);
    auto s4 = separation_check(four, digit_set({0, 1, 3}), 2, 24);
    bool acceptable = s4.verdict == separation_verdict::violated ||
                      s4.verdict == separation_verdict::undecided_at_depth;
    CHECK(acceptable);
    CHECK(s4.verdict == separation_verdict::violated);
    CHECK(s4.bad.first == 0);
    CHECK(s4.bad.second == 1);
}
