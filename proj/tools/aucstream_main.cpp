// Command-line front end: run the sliding-window estimator over CSV event
// streams, validate it against the exact oracle, benchmark the speedup, and
// generate synthetic streams.
//
// Input rows are "score,label" with label 0/1 (1 = positive), an optional
// header, and '#' comment lines. Exit codes: 0 success, 1 I/O or config
// error, 2 malformed data, 3 guarantee breach in validate mode.

#include <CLI11.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <deque>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "aucstream/compressed_auc.hpp"
#include "aucstream/core.hpp"
#include "aucstream/sliding_auc.hpp"
#include "aucstream/stats_tree.hpp"
#include "aucstream/synthetic.hpp"

namespace {

using namespace aucstream;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitMalformed = 2;
constexpr int kExitBreach = 3;

// Shortest round-trip formatting for every number we emit.
std::string format_double(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, end);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

bool parse_event(std::string_view line, LabeledScore& out) {
    const std::size_t comma = line.find(',');
    if (comma == std::string_view::npos) return false;
    const std::string_view score_field = trim(line.substr(0, comma));
    const std::string_view label_field = trim(line.substr(comma + 1));
    if (score_field.empty() || label_field.empty()) return false;

    double score = 0.0;
    const auto [ptr, ec] =
        std::from_chars(score_field.data(), score_field.data() + score_field.size(), score);
    if (ec != std::errc() || ptr != score_field.data() + score_field.size()) return false;
    if (!std::isfinite(score)) return false;

    if (label_field == "1") {
        out = {score, Label::positive};
    } else if (label_field == "0") {
        out = {score, Label::negative};
    } else {
        return false;
    }
    return true;
}

// Streams events out of a CSV source, tracking 1-based line numbers for
// error reporting. The first unparseable content line is forgiven as a
// header; any later one is malformed data.
class EventReader {
public:
    explicit EventReader(std::istream& in) : in_(in) {}

    // 1 = event produced, 0 = end of stream, -1 = malformed line
    int next(LabeledScore& out) {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_number_;
            const std::string_view content = trim(line);
            if (content.empty() || content.front() == '#') continue;
            if (parse_event(content, out)) {
                saw_event_ = true;
                return 1;
            }
            if (!saw_event_ && !header_skipped_) {
                header_skipped_ = true;
                continue;
            }
            return -1;
        }
        return 0;
    }

    std::size_t line_number() const { return line_number_; }

private:
    std::istream& in_;
    std::size_t line_number_ = 0;
    bool saw_event_ = false;
    bool header_skipped_ = false;
};

struct IoStreams {
    std::istream* in = nullptr;
    std::ostream* out = nullptr;
    std::ifstream in_file;
    std::ofstream out_file;

    bool open(const std::string& input, const std::string& output) {
        if (input == "-") {
            in = &std::cin;
        } else {
            in_file.open(input);
            if (!in_file) {
                std::cerr << "cannot open input: " << input << "\n";
                return false;
            }
            in = &in_file;
        }
        if (output == "-") {
            out = &std::cout;
        } else {
            out_file.open(output);
            if (!out_file) {
                std::cerr << "cannot open output: " << output << "\n";
                return false;
            }
            out = &out_file;
        }
        return true;
    }
};

struct StreamOptions {
    std::string input = "-";
    std::string output = "-";
    std::uint64_t window = 0;
    std::string epsilon;
    std::uint64_t emit_every = 1;
    bool flip = false;
};

int load_events(EventReader& reader, std::vector<LabeledScore>& events) {
    LabeledScore e;
    int status = 0;
    while ((status = reader.next(e)) == 1) events.push_back(e);
    if (status < 0) {
        std::cerr << "line " << reader.line_number() << ": malformed row\n";
        return kExitMalformed;
    }
    return kExitOk;
}

int run_mode(const StreamOptions& opt) {
    IoStreams io;
    if (!io.open(opt.input, opt.output)) return kExitConfig;
    SlidingAucEstimator window(opt.window, EstimatorConfig::from_epsilon(opt.epsilon, opt.flip));

    *io.out << "index,estimate\n";
    EventReader reader(*io.in);
    LabeledScore e;
    std::uint64_t index = 0;
    int status = 0;
    while ((status = reader.next(e)) == 1) {
        window.push(e);
        if ((index + 1) % opt.emit_every == 0) {
            const AucValue est = window.estimate();
            *io.out << index << ","
                    << (est.is_defined() ? format_double(est.value()) : "nan") << "\n";
        }
        ++index;
    }
    if (status < 0) {
        std::cerr << "line " << reader.line_number() << ": malformed row\n";
        return kExitMalformed;
    }
    return kExitOk;
}

int validate_mode(const StreamOptions& opt) {
    IoStreams io;
    if (!io.open(opt.input, opt.output)) return kExitConfig;
    const EstimatorConfig config = EstimatorConfig::from_epsilon(opt.epsilon, opt.flip);
    SlidingAucEstimator window(opt.window, config);

    *io.out << "index,estimate,exact,rel_error\n";
    EventReader reader(*io.in);
    LabeledScore e;
    std::uint64_t index = 0;
    std::uint64_t defined_windows = 0;
    double sum_rel = 0.0;
    double max_rel = 0.0;
    int status = 0;
    while ((status = reader.next(e)) == 1) {
        window.push(e);
        const AucValue est = window.estimate();
        const AucValue truth = window.exact();
        double rel = std::numeric_limits<double>::quiet_NaN();
        if (truth.is_defined()) {
            const double diff = std::abs(est.value() - truth.value());
            rel = diff == 0.0 ? 0.0 : diff / truth.value();
            ++defined_windows;
            sum_rel += rel;
            max_rel = std::max(max_rel, rel);
        }
        if ((index + 1) % opt.emit_every == 0) {
            *io.out << index << ","
                    << (est.is_defined() ? format_double(est.value()) : "nan") << ","
                    << (truth.is_defined() ? format_double(truth.value()) : "nan") << ","
                    << (truth.is_defined() ? format_double(rel) : "nan") << "\n";
        }
        ++index;
    }
    if (status < 0) {
        std::cerr << "line " << reader.line_number() << ": malformed row\n";
        return kExitMalformed;
    }

    const double avg_rel = defined_windows ? sum_rel / static_cast<double>(defined_windows) : 0.0;
    std::cerr << "avg_rel_error=" << format_double(avg_rel) << "\n";
    std::cerr << "max_rel_error=" << format_double(max_rel) << "\n";
    if (max_rel > config.epsilon() / 2.0 + 1e-9) {
        std::cerr << "guarantee breach: max_rel_error exceeds epsilon/2\n";
        return kExitBreach;
    }
    return kExitOk;
}

AucValue exact_from_tree(const StatsTree& tree) {
    const std::int64_t pairs = tree.total_pos() * tree.total_neg();
    if (pairs == 0) return AucValue::undefined();
    std::int64_t twice_sum = 0;
    std::int64_t hp = 0;
    tree.visit_in_order([&](const StatsNode& v) {
        twice_sum += (2 * hp + v.pos_label) * v.neg_label;
        hp += v.pos_label;
    });
    return AucValue(twice_sum, pairs);
}

int bench_mode(const StreamOptions& opt) {
    IoStreams io;
    if (!io.open(opt.input, opt.output)) return kExitConfig;
    const EstimatorConfig config = EstimatorConfig::from_epsilon(opt.epsilon, opt.flip);

    std::vector<LabeledScore> events;
    EventReader reader(*io.in);
    if (int status = load_events(reader, events); status != kExitOk) return status;
    if (events.empty()) {
        std::cerr << "bench: empty stream\n";
        return kExitConfig;
    }

    using Clock = std::chrono::steady_clock;

    // Approximate pipeline: push + estimate per event.
    std::vector<double> estimates(events.size(),
                                  std::numeric_limits<double>::quiet_NaN());
    double mean_size = 0.0;
    const auto approx_begin = Clock::now();
    {
        SlidingAucEstimator window(opt.window, config);
        for (std::size_t i = 0; i < events.size(); ++i) {
            window.push(events[i]);
            const AucValue est = window.estimate();
            if (est.is_defined()) estimates[i] = est.value();
            mean_size += static_cast<double>(window.estimator().compressed_size());
        }
    }
    const double approx_seconds =
        std::chrono::duration<double>(Clock::now() - approx_begin).count();
    mean_size /= static_cast<double>(events.size());

    // Baseline: same tree maintenance, but the AUC is recomputed from
    // scratch by an O(k) walk on every event.
    std::vector<double> exacts(events.size(), std::numeric_limits<double>::quiet_NaN());
    const auto base_begin = Clock::now();
    {
        StatsTree tree;
        std::deque<LabeledScore> buffer;
        for (std::size_t i = 0; i < events.size(); ++i) {
            if (buffer.size() == opt.window) {
                const LabeledScore old = buffer.front();
                buffer.pop_front();
                old.label == Label::positive ? tree.remove_pos_label(old.score)
                                             : tree.remove_neg_label(old.score);
            }
            buffer.push_back(events[i]);
            events[i].label == Label::positive ? (void)tree.add_pos_label(events[i].score)
                                               : (void)tree.add_neg_label(events[i].score);
            const AucValue truth = exact_from_tree(tree);
            if (truth.is_defined()) exacts[i] = truth.value();
        }
    }
    const double base_seconds = std::chrono::duration<double>(Clock::now() - base_begin).count();

    std::uint64_t defined_windows = 0;
    double sum_rel = 0.0;
    double max_rel = 0.0;
    for (std::size_t i = 0; i < events.size(); ++i) {
        if (std::isnan(exacts[i])) continue;
        const double diff = std::abs(estimates[i] - exacts[i]);
        const double rel = diff == 0.0 ? 0.0 : diff / exacts[i];
        ++defined_windows;
        sum_rel += rel;
        max_rel = std::max(max_rel, rel);
    }

    const double n = static_cast<double>(events.size());
    *io.out << "events: " << events.size() << "\n"
            << "window: " << opt.window << "\n"
            << "epsilon: " << opt.epsilon << "\n"
            << "estimator_events_per_sec: " << format_double(n / approx_seconds) << "\n"
            << "baseline_events_per_sec: " << format_double(n / base_seconds) << "\n"
            << "speedup: " << format_double(base_seconds / approx_seconds) << "\n"
            << "mean_compressed_size: " << format_double(mean_size) << "\n"
            << "avg_rel_error: "
            << format_double(defined_windows ? sum_rel / static_cast<double>(defined_windows)
                                             : 0.0)
            << "\n"
            << "max_rel_error: " << format_double(max_rel) << "\n";
    return kExitOk;
}

struct GenOptions {
    std::string output = "-";
    std::uint64_t count = 0;
    double pos_rate = 0.3;
    double separation = 1.0;
    std::uint64_t seed = 1;
};

int gen_mode(const GenOptions& opt) {
    IoStreams io;
    if (!io.open("-", opt.output)) return kExitConfig;
    SyntheticStream stream({opt.count, opt.pos_rate, opt.separation, opt.seed});
    *io.out << "score,label\n";
    for (std::uint64_t i = 0; i < opt.count; ++i) {
        const LabeledScore e = stream.next();
        *io.out << format_double(e.score) << ","
                << (e.label == Label::positive ? '1' : '0') << "\n";
    }
    return kExitOk;
}

void add_stream_options(CLI::App* cmd, StreamOptions& opt, bool with_emit = true) {
    cmd->add_option("-i,--input", opt.input, "input CSV path, or - for stdin");
    cmd->add_option("-o,--output", opt.output, "output CSV path, or - for stdout");
    cmd->add_option("-k,--window", opt.window, "sliding window size")
        ->required()
        ->check(CLI::PositiveNumber);
    cmd->add_option("-e,--epsilon", opt.epsilon,
                    "error budget; the estimate stays within epsilon/2 of exact")
        ->required();
    if (with_emit) {
        cmd->add_option("--emit-every", opt.emit_every, "emit one row per this many events")
            ->check(CLI::PositiveNumber);
    }
    cmd->add_flag("--flip", opt.flip,
                  "complement a label-inverted estimator; tightens high-AUC streams");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sliding-window AUC estimation over labeled score streams"};
    app.require_subcommand(1);

    StreamOptions run_opt;
    CLI::App* run = app.add_subcommand("run", "stream estimates over a CSV input");
    add_stream_options(run, run_opt);

    StreamOptions validate_opt;
    CLI::App* validate = app.add_subcommand(
        "validate", "compare estimates against the exact oracle on every window");
    add_stream_options(validate, validate_opt);

    StreamOptions bench_opt;
    CLI::App* bench = app.add_subcommand(
        "bench", "time the estimator against per-event exact recomputation");
    add_stream_options(bench, bench_opt, /*with_emit=*/false);

    GenOptions gen_opt;
    CLI::App* gen = app.add_subcommand("gen", "generate a synthetic labeled stream");
    gen->add_option("-o,--output", gen_opt.output, "output CSV path, or - for stdout");
    gen->add_option("-n,--count", gen_opt.count, "number of events")
        ->required()
        ->check(CLI::PositiveNumber);
    gen->add_option("--pos-rate", gen_opt.pos_rate, "positive label probability")
        ->check(CLI::Range(0.0, 1.0));
    gen->add_option("--separation", gen_opt.separation,
                    "distance between the class score means (positives lower)")
        ->check(CLI::NonNegativeNumber);
    gen->add_option("--seed", gen_opt.seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (run->parsed()) return run_mode(run_opt);
        if (validate->parsed()) return validate_mode(validate_opt);
        if (bench->parsed()) return bench_mode(bench_opt);
        if (gen->parsed()) return gen_mode(gen_opt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
