#include <doctest.h>

#include "descent/delta_machine.hpp"

using namespace descent;

namespace {

ISequence S(const char* s) { return ISequence::parse(s); }

}  // namespace

TEST_CASE("analysis of i-sequences") {
    auto a = analyze(S("++-+-+"));
    CHECK(a.l == 3);
    CHECK(a.r == 3);
    CHECK(a.delta == 0);
    CHECK(a.initial->size() == 1);
    CHECK(a.clusters.size() == 2);
    CHECK(a.clusters[1].start == 5);
    CHECK(a.clusters[1].end == 7);
    auto p = analyze(S("+++"));
    CHECK(p.l == 0);
    CHECK(p.r == 2);
    CHECK(p.delta == 2);
    CHECK(analyze(S("---")).delta == -1);
    CHECK_FALSE(analyze(S("---")).initial);
    // only position i-1 low gives r = 2i-1
    auto q = analyze(S("++-+"));
    CHECK(q.r == 5);
}

TEST_CASE("observation on deleting from a short initial cluster") {
    auto c = contractions(S("++-+-+"));
    ISequence s = S("++-+-+");
    // deleting +_3 is not a contraction, but the resulting sequence matches the text
    std::string without3 = "++-" + std::string("-+");
    auto b = analyze(ISequence::parse(without3));
    CHECK(b.l == 4);
    CHECK(b.r == 6);
    for (const auto& x : c) CHECK(x.deleted != 3);
    (void)s;
}

TEST_CASE("transformations") {
    CHECK(trf(S("+++")) == std::set<ISequence>{S("+++")});
    CHECK_THROWS_AS(trf(S("---")), InputError);
    CHECK(trf(S("+-+")) == std::set<ISequence>{S("+++")});
    CHECK(trf(S("+-")) == std::set<ISequence>{S("++")});
    CHECK(trf(S("-+")) == std::set<ISequence>{S("++")});
    for (std::uint32_t m = 1; m < 31; ++m) {
        ISequence s{5, m};
        for (const auto& t : trf(s)) {
            CHECK(t.plus_count() >= s.plus_count());
            CHECK(analyze(t).delta >= 0);
        }
    }
}

TEST_CASE("improvements and order") {
    CHECK(is_improvement(S("+-"), S("+-")));
    CHECK(is_improvement(S("++"), S("-+")));
    CHECK_FALSE(is_improvement(S("-+"), S("+-")));
    CHECK(improvements(S("+--")).size() == 4);
    CHECK(precedes(S("+-+"), S("+-+")));
    CHECK(precedes(S("+-+"), S("+++")));
    CHECK_THROWS_AS(is_improvement(S("++"), S("+++")), InputError);
    for (int i = 1; i <= 3; ++i) CHECK(order_check(i).ok);
    for (int len = 2; len <= 4; ++len)
        for (std::uint32_t a = 0; a < (1u << len); ++a)
            for (std::uint32_t b = 0; b < (1u << len); ++b)
                if (a != b && precedes({len, a}, {len, b})) CHECK_FALSE(precedes({len, b}, {len, a}));
}

TEST_CASE("machine steps") {
    MachineState top{S("++")};
    CHECK(machine_step(top, {}, nullptr) == top);
    MachineState s{S("++"), S("+-"), S("-+")};
    MachineState n = machine_step(s, {S("+-")}, nullptr);
    CHECK(n == MachineState{S("++"), S("-+")});
    CHECK(validate_step(s, n).ok);
    CHECK_FALSE(validate_step(s, s).ok);
    CHECK_THROWS_AS(machine_step(s, {}, nullptr), InputError);
}

TEST_CASE("worst case i = 1") {
    auto w = worst_case(1, 0, 1);
    CHECK(w.bound == 7);
    CHECK_FALSE(w.exhaustive_cycle);
    CHECK(w.within_bound());
    CHECK(w.exhaustive_max >= 1);
}

TEST_CASE("literal machine for i = 2 admits a cycle") {
    MachineState s{S("+++"), S("++-"), S("+--")};
    auto v = validate_step(s, s);
    CHECK(v.ok);
    auto w = worst_case(2, 1000, 7);
    CHECK(w.bound == 127);
    CHECK_FALSE(w.exhaustive_cycle);
    CHECK(w.literal_cycle.has_value());
    CHECK(w.within_bound());
}

TEST_CASE("sublemma") {
    CHECK(sublemma_solve(1).max_steps == 0);
    for (int n = 1; n <= 5; ++n) {
        auto r = sublemma_solve(n);
        CHECK_FALSE(r.cycle);
        CHECK(static_cast<std::uint64_t>(r.max_steps) <= r.bound);
    }
    CHECK(sublemma_solve(2).empty_replacement_max == 2);
}

TEST_CASE("jumpdelta") {
    for (int len = 3; len <= 6; ++len)
        for (std::uint32_t m = 1; m < (1u << len); ++m) {
            ISequence s{len, m};
            for (int p = 1; p < len; ++p) {
                if (!s.plus(p)) continue;
                try {
                    auto r = jumpdelta_check(s, p);
                    CHECK(r.ok());
                } catch (const InputError&) {
                }
            }
        }
    auto r = jumpdelta_check(S("+++-"), 1);
    CHECK(r.from_initial);
    CHECK(r.clause_c_holds);
}
