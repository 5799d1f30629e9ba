#include "normnum/digits.hpp"
#include "normnum/rng.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <vector>

using namespace normnum;

namespace {

IntervalUnion three_quarters() { return IntervalUnion::normalize({Interval(Rat(0), rat(3, 4))}); }

IntervalUnion random_cover(SplitMix64& rng) {
    // 20 intervals of width <= 1/32: total measure <= 5/8 < 3/4.
    std::vector<Interval> raw;
    for (int i = 0; i < 20; ++i) {
        Rat lo = rng.dyadic(10);
        Rat w = rng.dyadic(10) / 32;
        if (w == 0) w = rat(1, 2048);
        raw.emplace_back(lo, Rat(lo + w));
    }
    return IntervalUnion::normalize(std::move(raw));
}

Interval state_cell(const DigitState& s) {
    Int denom = factorial(s.step + 1);
    return Interval(rat(s.d, denom), rat(s.d + 1, denom));
}

}  // namespace

TEST_CASE("wcm queries") {
    ExactUnionCover cover(three_quarters());
    CHECK(wcm_query(cover, Interval(Rat(0), rat(1, 2)), 10) == rat(1, 2));
    ExactUnionCover empty{IntervalUnion()};
    CHECK(wcm_query(empty, Interval(Rat(0), Rat(1)), 4) == 0);

    // one-chunk polynomial cover: preimage of (0, 1/4) under x^2 is (0, 1/2)
    ChunkedPolyCover chunk({CoverChunk{IntPolynomial({0, 1}),
                                       IntervalUnion::normalize({Interval(Rat(0), rat(1, 4))}),
                                       rat(1, 4), Rat(0)}});
    Rat l = wcm_query(chunk, Interval(Rat(0), Rat(1)), 8);
    CHECK(abs(l - rat(1, 2)) <= pow2(-8));
}

TEST_CASE("decision steps on the pinned cover") {
    ExactUnionCover cover(three_quarters());
    DigitState s0{0, Int(0), rat(1, 4), rat(3, 4)};
    DigitState s1 = algo_step(s0, cover);
    CHECK(s1.step == 1);
    CHECK(s1.d == 1);  // right half has measure 1/4 < 1/2
    CHECK(s1.slack == rat(1, 16));

    DigitState s2 = algo_step(s1, cover);
    CHECK(s2.d == 5);  // children measures 1/6, 1/12, 0
    CHECK(s2.slack == rat(1, 96));

    // consistency constraint (N+2) d_N <= d_{N+1} < (N+2)(d_N + 1)
    CHECK(Int(3) * s1.d <= s2.d);
    CHECK(s2.d < Int(3) * (s1.d + 1));
}

TEST_CASE("empty cover emits zero") {
    ExactUnionCover empty{IntervalUnion()};
    auto report = run_decision_tree(empty, 5, rat(1, 2));
    CHECK(report.state.d == 0);
    CHECK(report.digits.at(2) == std::string(report.digits.at(2).size(), '0'));
}

TEST_CASE("digit extraction formula") {
    DigitState s{2, Int(5), rat(1, 96), Rat(0)};
    CHECK(extract_digits(s, 2, 1) == "1");
    CHECK(extract_digits(s, 3, 1) == "2");
    CHECK(extract_digits(s, 6, 1) == "5");
}

TEST_CASE("extraction overflow names the required iteration count") {
    DigitState s{2, Int(5), rat(1, 96), Rat(0)};
    try {
        extract_digits(s, 2, 10);
        FAIL("expected InsufficientIterations");
    } catch (const InsufficientIterations& e) {
        // 2^10 | (N+1)! first at N+1 = 12
        CHECK(e.required() == 11);
        CHECK(factorial(e.required() + 1) % int_pow(2, 10) == 0);
        CHECK(factorial(e.required()) % int_pow(2, 10) != 0);
    }
}

TEST_CASE("run on the pinned cover lands in the complement") {
    ExactUnionCover cover(three_quarters());
    auto report = run_decision_tree(cover, 6, rat(1, 4));
    Interval cell = state_cell(report.state);
    CHECK(cell.lo >= rat(3, 4));
    CHECK(cover.set().measure_within(cell) < cell.width());
    CHECK(report.digits.at(2) == "1101");
    CHECK(report.digits.at(3) == "21");
    CHECK(report.digits.at(6) == "50");
}

TEST_CASE("certificate invariant holds exactly after every step") {
    SplitMix64 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        ExactUnionCover cover(random_cover(rng));
        auto report = run_decision_tree(cover, 6, rat(1, 4));
        for (const auto& st : report.trail) {
            Interval cell = state_cell(st);
            Rat true_measure = cover.set().measure_within(cell);
            CHECK(true_measure <= st.certificate);
            CHECK(st.certificate <= cell.width() - st.slack);
        }
    }
}

TEST_CASE("twenty seeded covers: emitted cell always meets the complement") {
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        ExactUnionCover cover(random_cover(rng));
        auto report = run_decision_tree(cover, 6, rat(1, 4));
        Interval cell = state_cell(report.state);
        CHECK(cover.set().measure_within(cell) < cell.width());
    }
}

TEST_CASE("digit stability across iterations") {
    SplitMix64 rng(555);
    ExactUnionCover cover(random_cover(rng));
    std::vector<DigitState> states;
    DigitState s{0, Int(0), rat(1, 4), cover.measure_bound()};
    for (int i = 0; i < 7; ++i) {
        s = algo_step(s, cover);
        states.push_back(s);
    }
    for (long b : {2L, 3L, 6L}) {
        std::string prev;
        for (const auto& st : states) {
            long n = max_final_digits(st.step, b);
            if (n < 1) continue;
            std::string cur = extract_digits(st, b, n);
            CHECK(cur.substr(0, prev.size()) == prev);
            prev = cur;
        }
    }
}

TEST_CASE("base-4 digits pair base-2 digits") {
    SplitMix64 rng(31337);
    for (int trial = 0; trial < 5; ++trial) {
        ExactUnionCover cover(random_cover(rng));
        auto report = run_decision_tree(cover, 6, rat(1, 4), {2, 4});
        const std::string& b2 = report.digits.at(2);
        const std::string& b4 = report.digits.at(4);
        REQUIRE(b2.size() >= 2 * b4.size());
        for (size_t i = 0; i < b4.size(); ++i) {
            int paired = (b2[2 * i] - '0') * 2 + (b2[2 * i + 1] - '0');
            CHECK(b4[i] - '0' == paired);
        }
    }
}

TEST_CASE("first step coincides with the two-way warm-up rule") {
    SplitMix64 rng(808);
    for (int trial = 0; trial < 12; ++trial) {
        ExactUnionCover cover(random_cover(rng));
        Rat left = cover.set().measure_within(Interval(Rat(0), rat(1, 2)));
        Rat right = cover.set().measure_within(Interval(rat(1, 2), Rat(1)));
        long warmup = left <= right ? 0 : 1;
        DigitState s = algo_step(DigitState{0, Int(0), rat(1, 4), cover.measure_bound()}, cover);
        CHECK(s.d == warmup);
    }
}

TEST_CASE("run rejects covers violating the epsilon certificate") {
    ExactUnionCover big(IntervalUnion::normalize({Interval(Rat(0), rat(9, 10))}));
    CHECK_THROWS_AS(run_decision_tree(big, 3, rat(1, 4)), InvariantViolation);
}

TEST_CASE("chunked cover run with tail accounting") {
    // synthetic chunk with an explicit tail bound: the report carries the
    // stretch-amplified residual and compares it against the final slack
    ChunkedPolyCover cover({CoverChunk{IntPolynomial({0, 1}),
                                       IntervalUnion::normalize({Interval(Rat(0), rat(1, 16))}),
                                       rat(1, 16), pow2(-80)}});
    auto report = run_decision_tree(cover, 4, rat(1, 4));
    CHECK(report.tail_residual == stretch_bound(IntPolynomial({0, 1}), pow2(-80)));
    CHECK(report.tail_residual > 0);
    CHECK(report.residual_within_slack);
    // the emitted cell avoids the built preimage (0, 1/4)
    Interval cell = state_cell(report.state);
    CHECK(cell.lo >= rat(1, 4));
}

TEST_CASE("assembled truncated cover runs end to end") {
    TruncationBudget budget;
    auto chunks = assemble_truncated_cover(rat(1, 2), 4, budget);
    ChunkedPolyCover cover(std::move(chunks));
    auto report = run_decision_tree(cover, 4, rat(1, 4));
    // honest truncation: nothing was built at desk scale, the tree emits 0,
    // and the tail residual is accounted for in the report
    CHECK(report.state.d == 0);
    CHECK(report.tail_residual > 0);
    CHECK(report.initial_bound < rat(1, 2));
}
