#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "aucstream/compressed_auc.hpp"
#include "test_access.hpp"

using namespace aucstream;

namespace {

CompressedAuc make(const char* epsilon, bool flipped = false) {
    return CompressedAuc(EstimatorConfig::from_epsilon(epsilon, flipped));
}

std::vector<double> finite_member_keys(const CompressedAuc& est) {
    std::vector<double> keys;
    const WeightedList& c = est.compressed_list();
    for (const StatsNode* v = c.first(); v; v = c.next(v)) {
        if (v->key.is_finite()) keys.push_back(v->key.score());
    }
    return keys;
}

void require_sound(const CompressedAuc& est) {
    const InvariantReport r = est.verify_invariants();
    REQUIRE_MESSAGE(r.ok, r.violation);
}

}  // namespace

TEST_CASE("epsilon parses as an exact rational") {
    EstimatorConfig c = EstimatorConfig::from_epsilon("0.3");
    CHECK(c.alpha_num == 13);
    CHECK(c.alpha_den == 10);
    c = EstimatorConfig::from_epsilon("0.5");
    CHECK(c.alpha_num == 3);
    CHECK(c.alpha_den == 2);
    c = EstimatorConfig::from_epsilon("0");
    CHECK(c.exact_mode());
    c = EstimatorConfig::from_epsilon("2");
    CHECK(c.alpha_num == 3);
    CHECK(c.alpha_den == 1);
    CHECK(EstimatorConfig::from_epsilon("0.000001").alpha_den == 1000000);

    CHECK_THROWS_AS(EstimatorConfig::from_epsilon(""), std::invalid_argument);
    CHECK_THROWS_AS(EstimatorConfig::from_epsilon("-0.1"), std::invalid_argument);
    CHECK_THROWS_AS(EstimatorConfig::from_epsilon("0.0000001"), std::invalid_argument);
    CHECK_THROWS_AS(EstimatorConfig::from_epsilon("1e-3"), std::invalid_argument);
    CHECK_THROWS_AS(EstimatorConfig::from_epsilon("0."), std::invalid_argument);
}

TEST_CASE("two events, perfect ordering: estimate is exactly 1") {
    CompressedAuc est = make("0.1");
    est.add_pos(1.0);
    est.add_neg(2.0);
    CHECK(finite_member_keys(est) == std::vector<double>{1.0});
    CHECK(est.estimate() == AucValue(2, 1));
    CHECK(est.estimate().value() == 1.0);
    CHECK(est.exact() == est.estimate());
    require_sound(est);
}

TEST_CASE("a coarse list groups the hidden positives at the gap midpoint") {
    // alpha = 3 keeps the compressed list at a single member while three
    // positives pile up; the grouped term then reads 2/3 against exact 1.
    CompressedAuc est = make("2");
    est.add_pos(1);
    est.add_pos(2);
    est.add_pos(3);
    est.add_neg(4);
    CHECK(finite_member_keys(est) == std::vector<double>{1.0});
    CHECK(est.estimate() == AucValue(4, 3));  // 2/3
    CHECK(est.exact() == AucValue(6, 3));     // 1
    require_sound(est);
}

TEST_CASE("exact mode keeps every positive node and reproduces the exact AUC") {
    std::mt19937_64 rng(41);
    CompressedAuc est = make("0");
    std::uniform_int_distribution<int> score(0, 40);
    std::bernoulli_distribution pos(0.35);
    for (int i = 0; i < 600; ++i) {
        const double s = static_cast<double>(score(rng));
        pos(rng) ? est.add_pos(s) : est.add_neg(s);
        REQUIRE(est.estimate() == est.exact());
    }
    // every positive node is a member
    std::size_t positive_nodes = 0;
    est.tree().visit_in_order([&](const StatsNode& n) {
        if (n.is_positive()) ++positive_nodes;
    });
    CHECK(est.compressed_size() == positive_nodes + 2);
    require_sound(est);
}

TEST_CASE("add_next splices the successor from the all-positives list") {
    CompressedAuc est = make("0.5");
    est.add_pos(1.0);
    StatsNode* lo = TestAccess::tree(est).min_sentinel();
    StatsNode* one = TestAccess::clist(est).next(lo);
    REQUIRE(one->key == NodeKey::finite(1.0));

    SUBCASE("successor already a member: no-op") {
        TestAccess::add_next(est, lo);
        CHECK(finite_member_keys(est) == std::vector<double>{1.0});
        require_sound(est);
    }
    SUBCASE("missing successor is spliced back with its P gaps") {
        TestAccess::clist(est).remove(one);
        CHECK(finite_member_keys(est).empty());
        TestAccess::add_next(est, lo);
        CHECK(finite_member_keys(est) == std::vector<double>{1.0});
        CHECK(TestAccess::clist(est).gap_pos(lo) == 0);
        CHECK(TestAccess::clist(est).gap_pos(one) == 1);
        require_sound(est);
    }
}

TEST_CASE("compress removes exactly the redundant members") {
    // Start from the full list (epsilon = 0), then compress at alpha = 2.
    CompressedAuc est = make("0");
    for (double s : {1.0, 2.0, 3.0, 4.0}) est.add_pos(s);
    REQUIRE(finite_member_keys(est) == std::vector<double>{1.0, 2.0, 3.0, 4.0});

    TestAccess::config(est) = EstimatorConfig::from_epsilon("1");  // alpha = 2
    TestAccess::compress(est);
    CHECK(finite_member_keys(est) == std::vector<double>{1.0, 3.0});

    const WeightedList& c = TestAccess::clist(est);
    const StatsTree& t = est.tree();
    CHECK(c.gap_pos(t.find(NodeKey::finite(1.0))) == 2);
    CHECK(c.gap_pos(t.find(NodeKey::finite(3.0))) == 2);
    require_sound(est);

    SUBCASE("an already compressed list is left alone") {
        TestAccess::compress(est);
        CHECK(finite_member_keys(est) == std::vector<double>{1.0, 3.0});
    }
}

TEST_CASE("the first real member always has a zero head count") {
    std::mt19937_64 rng(43);
    CompressedAuc est = make("0.4");
    std::uniform_real_distribution<double> score(0.0, 10.0);
    std::bernoulli_distribution pos(0.5);
    std::vector<LabeledScore> window;
    for (int i = 0; i < 800; ++i) {
        if (window.size() > 60 && std::bernoulli_distribution(0.5)(rng)) {
            const std::size_t j =
                std::uniform_int_distribution<std::size_t>(0, window.size() - 1)(rng);
            est.remove(window[j]);
            window.erase(window.begin() + static_cast<std::ptrdiff_t>(j));
        } else {
            const LabeledScore e{score(rng), pos(rng) ? Label::positive : Label::negative};
            est.add(e);
            window.push_back(e);
        }
        const StatsNode* first = est.compressed_list().next(est.compressed_list().first());
        if (first->key.is_finite()) {
            REQUIRE(est.tree().head_stats(first->key).head_pos == 0);
        }
    }
}

TEST_CASE("a fresh violation is repaired by a single splice") {
    // At alpha = 2 the third positive breaks the growth cap for node 1;
    // the repair brings in node 2 and the result is compressed again.
    CompressedAuc est = make("1");
    est.add_pos(1);
    est.add_pos(2);
    CHECK(finite_member_keys(est) == std::vector<double>{1.0});
    est.add_pos(3);
    CHECK(finite_member_keys(est) == std::vector<double>{1.0, 2.0});
    require_sound(est);
}

TEST_CASE("adding then removing a positive restores the empty state") {
    CompressedAuc est = make("0.3");
    est.add_pos(1.0);
    est.remove_pos(1.0);
    CHECK(est.compressed_size() == 2);
    CHECK(est.tree().node_count() == 2);
    CHECK(est.tree().total_pos() == 0);
    CHECK_FALSE(est.estimate().is_defined());
    require_sound(est);
}

TEST_CASE("removing a member's last positive swaps in the next positive node") {
    CompressedAuc est = make("2");  // alpha = 3
    est.add_pos(1);
    est.add_pos(2);
    est.add_neg(5);
    REQUIRE(finite_member_keys(est) == std::vector<double>{1.0});

    est.remove_pos(1);
    CHECK(finite_member_keys(est) == std::vector<double>{2.0});
    // the replacement inherits the departed member's head count
    CHECK(est.tree().head_stats(NodeKey::finite(2.0)).head_pos == 0);
    CHECK(est.estimate() == AucValue(2, 1));
    require_sound(est);
}

TEST_CASE("negative updates adjust one gap and never grow the list") {
    CompressedAuc est = make("0.3");
    est.add_pos(1.0);
    est.add_neg(2.0);
    const StatsNode* one = est.tree().find(NodeKey::finite(1.0));
    CHECK(est.compressed_list().gap_neg(one) == 1);
    CHECK(est.estimate().value() == 1.0);

    SUBCASE("inverse restores the state") {
        est.remove_neg(2.0);
        CHECK(est.compressed_list().gap_neg(one) == 0);
        CHECK_FALSE(est.estimate().is_defined());
        require_sound(est);
    }
    SUBCASE("negative-only bursts leave the membership alone") {
        std::mt19937_64 rng(47);
        const std::size_t members = est.compressed_size();
        std::uniform_real_distribution<double> score(0.0, 4.0);
        std::vector<double> added;
        for (int i = 0; i < 300; ++i) {
            if (!added.empty() && std::bernoulli_distribution(0.4)(rng)) {
                est.remove_neg(added.back());
                added.pop_back();
            } else {
                added.push_back(score(rng));
                est.add_neg(added.back());
            }
            REQUIRE(est.compressed_size() == members);
        }
        require_sound(est);
    }
}

TEST_CASE("window-consistency errors on removals that do not match") {
    CompressedAuc est = make("0.3");
    est.add_pos(1.0);
    CHECK_THROWS_AS(est.remove_pos(2.0), std::invalid_argument);
    CHECK_THROWS_AS(est.remove_neg(1.0), std::invalid_argument);
    require_sound(est);  // failed removals must not disturb state
}

TEST_CASE("verify_invariants flags an injected gap corruption") {
    CompressedAuc est = make("0.3");
    est.add_pos(1.0);
    est.add_neg(2.0);
    REQUIRE(est.verify_invariants().ok);

    TestAccess::clist(est).bump_gap_neg(TestAccess::tree(est).min_sentinel(), +1);
    const InvariantReport r = est.verify_invariants();
    CHECK_FALSE(r.ok);
    CHECK(r.violation.find("gap_neg") != std::string::npos);
}

TEST_CASE("fresh estimator verifies clean") {
    CompressedAuc est = make("0.1");
    require_sound(est);
    CHECK_FALSE(est.estimate().is_defined());
    CHECK_FALSE(est.exact().is_defined());
}

TEST_CASE("flipped mode complements a label-inverted twin") {
    CompressedAuc est = make("0.5", /*flipped=*/true);
    est.add_pos(1.0);
    est.add_neg(2.0);
    // exact AUC is 1, so the flipped guarantee pins the estimate exactly
    CHECK(est.estimate() == AucValue(2, 1));
    CHECK(est.estimate().value() == 1.0);
    require_sound(est);

    est.add_pos(3.0);  // one discordant positive
    CHECK(est.exact() == AucValue(2, 2));
    const double err = std::abs(est.estimate().value() - est.exact().value());
    CHECK(err <= (1.0 - est.exact().value()) * 0.25 + 1e-9);
    require_sound(est);
}

TEST_CASE("mixed-op soak holds every invariant at every step") {
    std::mt19937_64 rng(53);
    CompressedAuc est = make("0.3");
    std::vector<LabeledScore> window;
    std::uniform_real_distribution<double> score(-2.0, 2.0);
    std::bernoulli_distribution pos(0.3);

    for (int step = 0; step < 2500; ++step) {
        if (window.size() > 80 && std::bernoulli_distribution(0.5)(rng)) {
            const std::size_t j =
                std::uniform_int_distribution<std::size_t>(0, window.size() - 1)(rng);
            est.remove(window[j]);
            window.erase(window.begin() + static_cast<std::ptrdiff_t>(j));
        } else {
            const LabeledScore e{score(rng), pos(rng) ? Label::positive : Label::negative};
            est.add(e);
            window.push_back(e);
        }
        const InvariantReport r = est.verify_invariants();
        REQUIRE_MESSAGE(r.ok, r.violation << " at step " << step);
    }
}

TEST_CASE("identical op sequences produce identical estimator state") {
    std::mt19937_64 rng(59);
    std::vector<LabeledScore> ops;
    std::uniform_real_distribution<double> score(0.0, 1.0);
    std::bernoulli_distribution pos(0.4);
    for (int i = 0; i < 500; ++i) {
        ops.push_back({score(rng), pos(rng) ? Label::positive : Label::negative});
    }

    CompressedAuc a = make("0.2");
    CompressedAuc b = make("0.2");
    for (const auto& e : ops) a.add(e);
    for (const auto& e : ops) b.add(e);

    CHECK(finite_member_keys(a) == finite_member_keys(b));
    const WeightedList& ca = a.compressed_list();
    const WeightedList& cb = b.compressed_list();
    const StatsNode* va = ca.first();
    const StatsNode* vb = cb.first();
    while (va && vb) {
        CHECK(ca.gap_pos(va) == cb.gap_pos(vb));
        CHECK(ca.gap_neg(va) == cb.gap_neg(vb));
        va = ca.next(va);
        vb = cb.next(vb);
    }
    CHECK(va == nullptr);
    CHECK(vb == nullptr);
    CHECK(a.estimate() == b.estimate());
}
