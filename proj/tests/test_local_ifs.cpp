#include "betadim/errors.hpp"
#include "betadim/local_ifs.hpp"
#include "betadim/parse.hpp"

#include <doctest.h>

using namespace betadim;

namespace {

mpq_class q(const char* s) { return parse_rational(s); }
real_alg one_plus_sqrt3() { return parse_real("poly:[-2,-2,1]@[2,3]"); }

void check_parts(const interval_union& u, const std::vector<std::pair<const char*, const char*>>& expect) {
    REQUIRE(u.size() == expect.size());
    for (size_t i = 0; i < expect.size(); ++i) {
        CHECK(u.parts()[i].lo == real_alg(q(expect[i].first)));
        CHECK(u.parts()[i].hi == real_alg(q(expect[i].second)));
    }
}

} // namespace

TEST_CASE("interval removal stages in exact rational arithmetic") {
    auto b1 = build_b(real_alg(q("5/2")), 1);
    check_parts(b1.set, {{"0", "2/5"}, {"4/5", "1"}});

    auto b2 = build_b(real_alg(q("5/2")), 2);
    check_parts(b2.set, {{"0", "4/25"}, {"8/25", "2/5"}, {"4/5", "24/25"}});
    CHECK(b2.tie_skips == 0);

    auto c2 = build_b(real_alg(q("3")), 2);
    check_parts(c2.set, {{"0", "1/9"}, {"2/9", "1/3"}, {"2/3", "7/9"}, {"8/9", "1"}});

    CHECK_THROWS_AS(build_b(real_alg(q("7/2")), 2), error);  // out of range
}

TEST_CASE("restricted-set approximation matches the removal set at base 3") {
    one_expansion three(real_alg(q("3")), 48);
    auto c = build_c_approx(three, 2);
    auto b = build_b(real_alg(q("3")), 2);
    REQUIRE(c.size() == b.set.size());
    for (size_t i = 0; i < c.size(); ++i) {
        CHECK(c.parts()[i].lo == b.set.parts()[i].lo);
        CHECK(c.parts()[i].hi == b.set.parts()[i].hi);
    }
}

TEST_CASE("containment: the cover approximation sits inside the removal set") {
    one_expansion b52(real_alg(q("5/2")), 96);
    auto c = build_c_approx(b52, 3);
    auto b = build_b(real_alg(q("5/2")), 3);
    CHECK(c.size() <= 8);
    CHECK(c.subset_of(b.set));

    one_expansion s3(one_plus_sqrt3(), 64);
    auto c3 = build_c_approx(s3, 2);
    CHECK(c3.size() == 3);  // the word (2,2) is excluded
    auto b3 = build_b(one_plus_sqrt3(), 2);
    CHECK(c3.subset_of(b3.set));
}

TEST_CASE("invariance distances shrink like beta^-n") {
    struct scenario {
        real_alg beta;
        int n;
    };
    for (auto& sc : {scenario{real_alg(q("3")), 4}, scenario{real_alg(q("5/2")), 5},
                     scenario{real_alg(q("3")), 8}, scenario{real_alg(q("5/2")), 10}}) {
        auto b = build_b(sc.beta, sc.n);
        high_real d = invariance_check(b.set, sc.beta, 192);
        high_real bound = sc.beta.enclosure(192).pow_si(-sc.n) * sc.beta.enclosure(192) /
                          (sc.beta.enclosure(192) - high_real(1, 192));
        CHECK(d.upper() <= bound.upper());
    }
    one_expansion s3(one_plus_sqrt3(), 64);
    auto c = build_c_approx(s3, 6);
    high_real d = invariance_check(c, one_plus_sqrt3(), 192);
    high_real b = one_plus_sqrt3().enclosure(192);
    high_real bound = b.pow_si(-6) * b / (b - high_real(1, 192));
    CHECK(d.upper() <= bound.upper());
}

TEST_CASE("equality off Q: removal and cover approximations converge together") {
    real_alg beta(q("5/2"));
    one_expansion one(beta, 256);
    for (int n : {6, 10, 14, 20}) {
        auto b = build_b(beta, n);
        auto c = build_c_approx(one, n);
        real_alg d = hausdorff_distance_exact(b.set, c);
        real_alg bound = real_alg(2) * beta.inverse().pow_ui(n) * beta / (beta - real_alg(1));
        CHECK(d <= bound);
    }
}

TEST_CASE("membership in Q") {
    one_expansion s3(one_plus_sqrt3(), 48);
    auto r = member_q(s3);
    CHECK(r.v == q_status::verdict::in_q);
    CHECK(r.eps == digit_word{2, 2});

    one_expansion b52(real_alg(q("5/2")), 48);
    auto r2 = member_q(b52);
    CHECK(r2.v == q_status::verdict::not_in_q);
    CHECK(r2.pos == 2);
    CHECK(r2.digit == 1);

    one_expansion three(real_alg(q("3")), 48);
    auto r3 = member_q(three);
    CHECK(r3.v == q_status::verdict::not_in_q);
    CHECK(r3.pos == 1);
    CHECK(r3.digit == 3);

    one_expansion low(real_alg(q("3/2")), 16);
    CHECK_THROWS_AS(member_q(low), error);
}

TEST_CASE("difference points for a parameter in Q") {
    real_alg beta = one_plus_sqrt3();
    one_expansion one(beta, 64);
    auto pts = difference_points(one, 2);
    // Contains 1/beta and 1.
    bool has_inv = false, has_one = false;
    for (const auto& p : pts) {
        if (p == beta.inverse()) has_inv = true;
        if (p == real_alg(1)) has_one = true;
    }
    CHECK(has_inv);
    CHECK(has_one);

    // Every point stays in the removal set at all tested depths.
    for (int n : {4, 8, 12, 20}) {
        auto b = build_b(beta, n);
        for (const auto& p : pts) CHECK(b.set.contains(p));
    }

    // The point 1 keeps a definite distance from the cover approximation.
    auto c10 = build_c_approx(one, 10);
    real_alg d = c10.distance(real_alg(1));
    CHECK(d >= real_alg(q("15/100")));

    // Isolation: at depth 12 each point is its own degenerate piece with a
    // strictly positive gap to the rest of the set.
    auto b12 = build_b(beta, 12);
    for (const auto& p : pts) {
        std::optional<real_alg> gap;
        bool found = false;
        for (const auto& part : b12.set.parts()) {
            if (part.lo <= p && p <= part.hi) {
                found = true;
                CHECK(part.lo == p);
                CHECK(part.hi == p);
                continue;
            }
            real_alg dd = p < part.lo ? part.lo - p : p - part.hi;
            if (!gap || dd < *gap) gap = dd;
        }
        CHECK(found);
        REQUIRE(gap.has_value());
        CHECK(gap->sign() > 0);
    }

    one_expansion three(real_alg(q("3")), 32);
    CHECK_THROWS_AS(difference_points(three, 2), error);
}

TEST_CASE("extended maps reproduce the removal set") {
    // Integer base: the extension never clamps and the stages coincide.
    auto e3 = extended_ifs_attractor(real_alg(q("3")), 4);
    auto b3 = build_b(real_alg(q("3")), 4);
    CHECK(hausdorff_distance_exact(e3, b3.set).is_zero());

    // For a parameter in Q the clamp pins the point 1 into every stage.
    for (int n = 1; n <= 6; ++n) {
        auto e = extended_ifs_attractor(one_plus_sqrt3(), n);
        CHECK(e.contains(real_alg(1)));
    }

    real_alg beta(q("5/2"));
    auto e5 = extended_ifs_attractor(beta, 5);
    auto b5 = build_b(beta, 5);
    real_alg bound = beta.inverse().pow_ui(5) * beta / (beta - real_alg(1));
    CHECK(hausdorff_distance_exact(e5, b5.set) <= bound);
}
