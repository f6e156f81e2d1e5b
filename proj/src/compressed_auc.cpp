#include "aucstream/compressed_auc.hpp"

#include <cassert>
#include <cctype>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace aucstream {

EstimatorConfig EstimatorConfig::from_epsilon(std::string_view decimal, bool flipped) {
    std::int64_t num = 0;
    std::int64_t den = 1;
    std::size_t i = 0;
    std::size_t int_digits = 0;
    while (i < decimal.size() && std::isdigit(static_cast<unsigned char>(decimal[i]))) {
        num = num * 10 + (decimal[i] - '0');
        ++int_digits;
        ++i;
        if (int_digits > 4) throw std::invalid_argument("epsilon too large");
    }
    std::size_t frac_digits = 0;
    if (i < decimal.size() && decimal[i] == '.') {
        ++i;
        while (i < decimal.size() && std::isdigit(static_cast<unsigned char>(decimal[i]))) {
            num = num * 10 + (decimal[i] - '0');
            den *= 10;
            ++frac_digits;
            ++i;
            if (frac_digits > 6) {
                throw std::invalid_argument("epsilon: at most 6 fractional digits");
            }
        }
        if (frac_digits == 0) throw std::invalid_argument("epsilon: digits required after '.'");
    }
    if (i != decimal.size() || int_digits + frac_digits == 0) {
        throw std::invalid_argument("epsilon: expected a non-negative decimal like 0.25");
    }

    EstimatorConfig cfg;
    cfg.alpha_num = den + num;
    cfg.alpha_den = den;
    const std::int64_t g = std::gcd(cfg.alpha_num, cfg.alpha_den);
    cfg.alpha_num /= g;
    cfg.alpha_den /= g;
    cfg.flipped = flipped;
    return cfg;
}

CompressedAuc::CompressedAuc(EstimatorConfig config)
    : config_(config), clist_(ListId::compressed) {
    clist_.attach_sentinels(tree_.min_sentinel(), tree_.max_sentinel());
    if (config_.flipped) {
        EstimatorConfig twin = config_;
        twin.flipped = false;
        flip_twin_ = std::make_unique<CompressedAuc>(twin);
    }
}

void CompressedAuc::add(LabeledScore e) {
    e.label == Label::positive ? add_pos(e.score) : add_neg(e.score);
}

void CompressedAuc::remove(LabeledScore e) {
    e.label == Label::positive ? remove_pos(e.score) : remove_neg(e.score);
}

CompressedAuc::Cursor CompressedAuc::locate(double score) const {
    const NodeKey key = NodeKey::finite(score);
    StatsNode* u = clist_.first();
    std::int64_t c = 0;
    while (StatsNode* w = clist_.next(u)) {
        if (!(w->key <= key)) break;
        c += clist_.gap_pos(u);
        u = w;
    }
    return Cursor{u, c};
}

bool CompressedAuc::growth_cap_violated(std::int64_t head_pos, std::int64_t gap,
                                        std::int64_t own_pos) const {
    return config_.alpha_den * (head_pos + gap) > config_.alpha_num * (head_pos + own_pos);
}

void CompressedAuc::add_next(StatsNode* v) {
    const WeightedList& positives = tree_.pos_list();
    assert(clist_.contains(v) && positives.contains(v));
    StatsNode* w = positives.next(v);
    if (!w || clist_.contains(w)) return;
    clist_.add_after(v, w, positives.gap_pos(v), positives.gap_neg(v));
}

void CompressedAuc::compress() {
    StatsNode* v = clist_.first();
    std::int64_t c = 0;
    while (true) {
        StatsNode* w = clist_.next(v);
        if (!w || !clist_.next(w)) break;
        // Merging w into v's gap keeps the growth cap iff the combined gap
        // still fits under alpha; otherwise the gap pair already exceeds
        // alpha, which is exactly the lower bound that keeps |C| small.
        if (config_.alpha_den * (c + clist_.gap_pos(v) + clist_.gap_pos(w)) <=
            config_.alpha_num * (c + v->pos_label)) {
            clist_.remove(w);
        } else {
            c += clist_.gap_pos(v);
            v = w;
        }
    }
}

void CompressedAuc::repair_growth_cap() {
    StatsNode* v = clist_.first();
    std::int64_t c = 0;
    while (true) {
        StatsNode* w = clist_.next(v);
        if (!w) break;
        const std::int64_t gap = clist_.gap_pos(v);
        if (growth_cap_violated(c, gap, v->pos_label)) add_next(v);
        c += gap;
        v = w;  // pre-repair successor; members spliced just now need no check
    }
}

void CompressedAuc::add_pos(double score) {
    tree_.add_pos_label(score);
    const Cursor at = locate(score);
    clist_.bump_gap_pos(at.member, +1);
    if (growth_cap_violated(at.head_pos, clist_.gap_pos(at.member), at.member->pos_label)) {
        add_next(at.member);
    }
    compress();
    if (flip_twin_) flip_twin_->add_neg(score);
}

void CompressedAuc::remove_pos(double score) {
    const NodeKey key = NodeKey::finite(score);
    const StatsNode* entry = tree_.find(key);
    if (!entry || entry->pos_label < 1) {
        throw std::invalid_argument("window has no positive entry with this score");
    }

    StatsNode* u = locate(score).member;
    if (u->key == key && u->pos_label == 1) {
        // u is about to become non-positive: bring in its successor from the
        // all-positives list first, so every remaining member keeps its head
        // count, then drop u. The decrement lands on u's now-tiny gap.
        add_next(u);
        clist_.bump_gap_pos(u, -1);
        clist_.remove(u);
    } else {
        clist_.bump_gap_pos(u, -1);
    }

    tree_.remove_pos_label(score);
    repair_growth_cap();
    compress();
    if (flip_twin_) flip_twin_->remove_neg(score);
}

void CompressedAuc::add_neg(double score) {
    tree_.add_neg_label(score);
    clist_.bump_gap_neg(locate(score).member, +1);
    if (flip_twin_) flip_twin_->add_pos(score);
}

void CompressedAuc::remove_neg(double score) {
    const StatsNode* entry = tree_.find(NodeKey::finite(score));
    if (!entry || entry->neg_label < 1) {
        throw std::invalid_argument("window has no negative entry with this score");
    }
    tree_.remove_neg_label(score);
    clist_.bump_gap_neg(locate(score).member, -1);
    if (flip_twin_) flip_twin_->remove_pos(score);
}

AucValue CompressedAuc::approximate_over(const WeightedList& list) const {
    const std::int64_t pairs = tree_.total_pos() * tree_.total_neg();
    if (pairs == 0) return AucValue::undefined();

    // Every member contributes twice: once with its own counters and once as
    // the grouped stand-in for the nodes hidden in its gap.
    std::int64_t twice_sum = 0;
    std::int64_t hp = 0;
    for (StatsNode* v = list.first(); v; v = list.next(v)) {
        std::int64_t p = v->pos_label;
        std::int64_t n = v->neg_label;
        twice_sum += (2 * hp + p) * n;
        hp += p;
        p = list.gap_pos(v) - v->pos_label;
        n = list.gap_neg(v) - v->neg_label;
        twice_sum += (2 * hp + p) * n;
        hp += p;
    }
    return AucValue(twice_sum, pairs);
}

AucValue CompressedAuc::estimate() const {
    if (flip_twin_) {
        const AucValue inverted = flip_twin_->estimate();
        if (!inverted.is_defined()) return inverted;
        return AucValue(2 * inverted.pair_count() - inverted.twice_numerator(),
                        inverted.pair_count());
    }
    return approximate_over(clist_);
}

AucValue CompressedAuc::exact() const {
    const std::int64_t pairs = tree_.total_pos() * tree_.total_neg();
    if (pairs == 0) return AucValue::undefined();
    std::int64_t twice_sum = 0;
    std::int64_t hp = 0;
    tree_.visit_in_order([&](const StatsNode& v) {
        twice_sum += (2 * hp + v.pos_label) * v.neg_label;
        hp += v.pos_label;
    });
    return AucValue(twice_sum, pairs);
}

InvariantReport CompressedAuc::verify_invariants() const {
    const auto fail = [](std::string msg) { return InvariantReport{false, std::move(msg)}; };

    if (std::string err = tree_.check_integrity(); !err.empty()) {
        return fail("tree: " + err);
    }

    const WeightedList& positives = tree_.pos_list();
    if (clist_.first() != tree_.min_sentinel() || clist_.last() != tree_.max_sentinel()) {
        return fail("compressed list: sentinels misplaced");
    }

    // Gap consistency of the compressed list against head counts from the
    // tree, plus membership and key ordering.
    std::int64_t sum_pos = 0;
    std::int64_t sum_neg = 0;
    for (const StatsNode* v = clist_.first(); v; v = clist_.next(v)) {
        if (!positives.contains(v)) {
            return fail("compressed list: member missing from the positive list");
        }
        const StatsNode* w = clist_.next(v);
        if (!w) {
            if (clist_.gap_pos(v) != 0 || clist_.gap_neg(v) != 0) {
                return fail("compressed list: last member has nonzero gaps");
            }
            break;
        }
        if (!(v->key < w->key)) return fail("compressed list: keys not increasing");
        const HeadStats at_v = tree_.head_stats(v->key);
        const HeadStats at_w = tree_.head_stats(w->key);
        if (clist_.gap_pos(v) != at_w.head_pos - at_v.head_pos) {
            return fail("compressed list: gap_pos inconsistent with head counts");
        }
        if (clist_.gap_neg(v) != at_w.head_neg - at_v.head_neg) {
            return fail("compressed list: gap_neg inconsistent with head counts");
        }
        sum_pos += clist_.gap_pos(v);
        sum_neg += clist_.gap_neg(v);
    }
    if (sum_pos != tree_.total_pos() || sum_neg != tree_.total_neg()) {
        return fail("compressed list: gap totals disagree with window totals");
    }

    // The two compression inequalities, evaluated with exact integers.
    for (const StatsNode* v = clist_.first(); v; v = clist_.next(v)) {
        const StatsNode* w = clist_.next(v);
        if (!w) break;
        const std::int64_t budget = tree_.head_stats(v->key).head_pos + v->pos_label;
        if (config_.alpha_den * tree_.head_stats(w->key).head_pos > config_.alpha_num * budget) {
            return fail("compressed list: gap grows head counts beyond alpha");
        }
        const StatsNode* u = clist_.next(w);
        if (u && config_.alpha_den * tree_.head_stats(u->key).head_pos <=
                     config_.alpha_num * budget) {
            return fail("compressed list: consecutive gaps stay within alpha (list too long)");
        }
    }

    if (!config_.exact_mode()) {
        const double alpha =
            static_cast<double>(config_.alpha_num) / static_cast<double>(config_.alpha_den);
        const double cap =
            2.0 * std::log(std::max<double>(static_cast<double>(tree_.total_pos()), 2.0)) /
                std::log(alpha) +
            6.0;
        if (static_cast<double>(clist_.size()) > cap) {
            return fail("compressed list: size bound exceeded");
        }
    }

    const AucValue truth = exact();
    if (truth.is_defined()) {
        const double half_eps = config_.epsilon() / 2.0;
        const AucValue direct = approximate_over(clist_);
        const double direct_err = std::abs(direct.value() - truth.value());
        if (direct_err > half_eps * truth.value() + 1e-9) {
            return fail("estimate breaches the relative error guarantee");
        }
        if (direct_err > half_eps + 1e-9) {
            return fail("estimate breaches the absolute error guarantee");
        }
        if (config_.flipped) {
            const double est_err = std::abs(estimate().value() - truth.value());
            if (est_err > half_eps * (1.0 - truth.value()) + 1e-9) {
                return fail("flipped estimate breaches the complement error guarantee");
            }
        }
    }

    if (flip_twin_) {
        if (flip_twin_->tree().total_pos() != tree_.total_neg() ||
            flip_twin_->tree().total_neg() != tree_.total_pos()) {
            return fail("flip twin totals out of sync");
        }
        InvariantReport twin = flip_twin_->verify_invariants();
        if (!twin.ok) return fail("flip twin: " + twin.violation);
    }
    return InvariantReport{};
}

}  // namespace aucstream
