#include <random>

#include "descent/hochschild.hpp"
#include "doctest.h"

using namespace descent;

namespace {

ZVector z(std::initializer_list<long> xs) {
    ZVector v;
    for (long x : xs) v.push_back(Integer(x));
    return v;
}

const DescentInstance& instance21() {
    static const DescentInstance inst = [] {
        InstanceSpec s;
        s.n_generators = {z({0, 1}), z({1, 1}), z({2, 1})};
        s.m_generators = {z({0, 1}), z({1, 1})};
        s.d_rays = {z({1, 4}), z({1, 2})};
        s.dprime_rays = {z({1, 8}), z({7, 8})};
        s.v = {Rational(2), Rational(1)};
        s.t = z({2, 1});
        return build_instance(s);
    }();
    return inst;
}

Tensor pattern(const DescentInstance& inst, const std::string& signs, std::int64_t high) {
    Tensor t;
    for (char c : signs) t.push_back(c == '+' ? inst.monomial(Slot::DIAG, Point{high / 2, high}) : inst.monomial(Slot::E21, inst.t));
    return t;
}

}  // namespace

TEST_CASE("slice conditions") {
    const auto& inst = instance21();
    SliceCache cache(inst);
    for (std::int64_t d = 0; d <= 8; ++d)
        for (const auto& t : slice_basis(cache, 0, 1, 2, d)) {
            bool has_one = false;
            for (const auto& b : t) has_one = has_one || b.degree == 1;
            CHECK(has_one);
            CHECK(total_degree(t) == d);
        }
    CHECK(slice_basis(cache, 0, 2, 1, 5).empty());
    auto s0 = slice_basis(cache, 0, 0, 3, 2);
    CHECK(s0.size() == lambda_basis_slice(inst, 0, 2).size());
    CHECK(slice_basis(cache, 0, 0, 2, 2).empty());
}

TEST_CASE("boundary of a boundary vanishes") {
    const auto& inst = instance21();
    SliceCache cache(inst);
    for (int j : {0, 3, 6})
        for (int i = 1; i <= 3; ++i)
            for (std::int64_t d = 1; d <= 7; ++d)
                for (const auto& t : slice_basis(cache, j, i, 2, d)) CHECK(boundary(inst, j, 2, boundary(inst, j, 2, t)).empty());
}

TEST_CASE("commutator differential") {
    const auto& inst = instance21();
    std::optional<BasisMonomial> e12;
    for (std::int64_t d = 1; d <= 12 && !e12; ++d)
        for (const auto& b : lambda_basis_slice(inst, 0, d))
            if (b.slot == Slot::E12 && !e12) e12 = b;
    REQUIRE(e12.has_value());
    Tensor t{inst.monomial(Slot::E21, inst.t), *e12};
    // E21(t) E12(m) - E12(m) E21(t) = DIAG - 2 E11 at t + m
    CHECK(boundary(inst, 0, 2, t).empty());
    Chain c = boundary(inst, 0, static_cast<int>(e12->degree) + 2, t);
    REQUIRE(c.size() == 2);
    const Point m = point_add(inst.t, e12->point);
    CHECK(c.at(Tensor{inst.monomial(Slot::DIAG, m)}) == 1);
    CHECK(c.at(Tensor{inst.monomial(Slot::E11, m)}) == -2);
}

TEST_CASE("homology ranks") {
    const auto& inst = instance21();
    SliceCache cache(inst);
    for (std::int64_t d = 1; d <= 6; ++d) {
        auto h = homology_rank(cache, 0, 1, 2, d);
        CHECK(h.cycles >= h.boundaries);
        auto h0 = homology_rank(cache, 0, 0, 2, d);
        CHECK(h0.cycles == h0.slice);
        auto same = induced_image_rank(cache, 2, 2, 1, 2, d);
        CHECK(same.image == homology_rank(cache, 2, 1, 2, d).homology);
        auto img = induced_image_rank(cache, 0, 6, 1, 2, d);
        CHECK(img.image <= h.homology);
        CHECK(img.image <= homology_rank(cache, 6, 1, 2, d).homology);
    }
}

TEST_CASE("delta data") {
    const auto& inst = instance21();
    auto dd = delta_data(pattern(inst, "++-+-+", 20), 5);
    CHECK(dd.l == 3);
    CHECK(dd.r == 3);
    CHECK(dd.delta == 0);
    dd = delta_data(pattern(inst, "++++-+", 20), 5);
    CHECK(dd.r == 2 * 5 - 1);
    CHECK(delta_data(pattern(inst, "---", 20), 5).delta == -1);
    CHECK(chain_delta(Chain{}, 5) == -1);
    SliceCache cache(inst);
    for (std::int64_t d = 1; d <= 9; ++d)
        for (const auto& t : slice_basis(cache, 0, 2, 2, d)) {
            const int delta = delta_data(t, 3).delta;
            CHECK(delta >= -1);
            CHECK(delta <= 1);
        }
}

TEST_CASE("isequence sets") {
    const auto& inst = instance21();
    CHECK(to_isequences(Chain{}, 5, 3) == MachineState{ISequence::all_plus(2)});
    Chain c;
    add_term(c, pattern(inst, "+-+", 20), Rational(1));
    auto s = to_isequences(c, 5, 3);
    CHECK(s.size() == 2);
    CHECK(s.count(ISequence::parse("+-+")) == 1);
}

TEST_CASE("restriction and lemma delta0") {
    const auto& inst = instance21();
    Tensor t = pattern(inst, "+-+-", 20);
    CHECK(restrict_tensor(t, {0, 1, 2, 3}) == t);
    CHECK(restrict_tensor(t, {2}).size() == 1);
    CHECK(restrict_tensor(t, {3, 4}) == Tensor{t[3], t[0]});
    CHECK_THROWS_AS(restrict_tensor(t, {1, 5}), InputError);

    SliceCache cache(inst);
    std::vector<BasisMonomial> pool;
    for (std::int64_t d = 0; d <= 4; ++d)
        for (const auto& b : cache.monomials(0, d)) pool.push_back(b);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> coef(-2, 2);
    int zero_cases = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const std::vector<int> S = trial % 2 ? std::vector<int>{1, 2} : std::vector<int>{2, 3, 4};
        Tensor base{pool[pick(rng)], pool[pick(rng)], pool[pick(rng)], pool[pick(rng)]};
        std::vector<Tensor> family;
        for (int k = 0; k < 3; ++k) {
            Tensor x = base;
            for (int q : S) x[static_cast<std::size_t>(q % 4)] = pool[pick(rng) % 4];
            family.push_back(x);
        }
        Chain sum, restricted;
        for (const auto& x : family) {
            const Rational q(coef(rng));
            add_term(sum, x, q);
            add_term(restricted, restrict_tensor(x, S), q);
        }
        CHECK(sum.empty() == restricted.empty());
        zero_cases += sum.empty();
    }
    CHECK(zero_cases > 0);
}

TEST_CASE("face summands share a format and lemma bigstar classifies") {
    const auto& inst = instance21();
    SliceCache cache(inst);
    const std::int64_t gamma = 1;
    for (int i = 2; i <= 3; ++i) {
        struct Entry {
            Tensor t;
            int u;
        };
        std::map<Format, std::vector<Entry>> buckets;
        for (std::int64_t d = 3; d <= (i == 2 ? 9 : 7); ++d)
            for (const auto& t : slice_basis(cache, 0, i, 2, d)) {
                const DeltaData dd = delta_data(t, gamma);
                if (dd.delta <= 0) continue;
                for (int u = dd.l; u <= dd.r - 1; ++u) {
                    const Chain du = face(inst, 0, 2, t, u);
                    if (du.empty()) continue;
                    auto f = chain_format(du, gamma);
                    REQUIRE(f.has_value());
                    buckets[*f].push_back({t, u});
                }
            }
        std::size_t pairs = 0, bad = 0;
        for (const auto& [f, list] : buckets)
            for (const auto& a : list)
                for (const auto& b : list) {
                    ++pairs;
                    const std::string cases = bigstar_cases(a.t, b.t, a.u, b.u, gamma);
                    if (cases.size() != 1) {
                        ++bad;
                        if (bad <= 3)
                            MESSAGE("i=" << i << " cases '" << cases << "' " << tensor_string(a.t) << " u=" << a.u << " | "
                                         << tensor_string(b.t) << " v=" << b.u);
                    }
                }
        MESSAGE("i=" << i << " pairs " << pairs);
        CHECK(pairs > 0);
        CHECK(bad == 0);
    }
}

TEST_CASE("descent step on window cycles") {
    const auto& inst = instance21();
    std::mt19937_64 rng(5);
    const BasisMonomial low = inst.monomial(Slot::E21, inst.t);
    const std::int64_t g0 = inst.gammas[0];
    for (int trial = 0; trial < 20; ++trial) {
        Chain zc;
        const std::int64_t d = 2 * g0 + 1 + trial;
        for (int k = 0; k < 3; ++k) {
            auto mu = sample_monomial(inst, 0, static_cast<Slot>(k % 4), d - 1, rng);
            REQUIRE(mu.has_value());
            add_term(zc, Tensor{low, *mu}, Rational(k + 1));
            add_term(zc, Tensor{*mu, low}, Rational(-2 * k + 1));
        }
        auto rec = descent_step(inst, zc, 0);
        for (const auto& f : rec.failures) MESSAGE(f);
        CHECK(rec.ok());
        CHECK(rec.claim_b);
        CHECK(rec.z1_cycle);
    }
}

TEST_CASE("descent step on sampled cycles with three and four factors") {
    const auto& inst = instance21();
    SliceCache cache(inst);
    std::mt19937_64 rng(9);
    for (int i = 1; i <= 3; ++i)
        for (int j : {0, 2, 5}) {
            const std::int64_t g = inst.gammas[static_cast<std::size_t>(j)];
            std::size_t steps = 0, pairs = 0;
            for (int round = 0; round < 4; ++round) {
                const std::int64_t d = 2 * g + 5 + round;
                for (const auto& zc : sample_cycles(cache, j, i, d, 4, rng, 3, round % 2 + 1)) {
                    auto rec = descent_step(inst, zc, j);
                    for (const auto& f : rec.failures) MESSAGE("i=" << i << " j=" << j << ": " << f);
                    CHECK(rec.ok());
                    ++steps;
                    pairs += rec.window_pairs;
                }
            }
            MESSAGE("i=" << i << " j=" << j << " steps " << steps << " window pairs " << pairs);
            CHECK(steps > 0);
        }
}

TEST_CASE("descent runs along the chain") {
    const auto& inst = instance21();
    SliceCache cache(inst);
    std::mt19937_64 rng(21);
    for (int i = 1; i <= 3; ++i) {
        std::size_t runs = 0, zero = 0, max_steps = 0;
        for (int round = 0; round < 6; ++round) {
            const std::int64_t d = 2 * inst.gammas[0] + 3 + round;
            for (const auto& zc : sample_cycles(cache, 0, i, d, 3, rng, 3, round % 2 + 1)) {
                auto run = descend(inst, zc, 0);
                CHECK(run.ok());
                ++runs;
                zero += run.reached_zero;
                max_steps = std::max(max_steps, run.steps.size());
            }
        }
        MESSAGE("i=" << i << " runs " << runs << " reached zero " << zero << " max steps " << max_steps);
        CHECK(runs > 0);
    }
}
