// SPDX-FileCopyrightText: 2026 xumeval contributors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Subcommands: eval, parse, scores, filter,
// stats, encode. Exit codes: 0 success, 1 I/O or format error,
// 2 semantic error (empty summary, undefined score).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "xumeval/dataset.hpp"
#include "xumeval/embedding.hpp"
#include "xumeval/error.hpp"
#include "xumeval/importance.hpp"
#include "xumeval/parse.hpp"
#include "xumeval/report.hpp"
#include "xumeval/temporal.hpp"
#include "xumeval/version.hpp"

namespace {

using xumeval::Json;

struct CommonFlags {
    int token_width = xumeval::kDefaultTokenWidth;
    int target_frames = xumeval::kDefaultTargetFrames;
    std::string out;
};

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw xumeval::LoadError("cannot open output file: " + out_path);
    out << text;
}

std::string read_input(const std::string& path) {
    if (path.empty() || path == "-") {
        return std::string(std::istreambuf_iterator<char>(std::cin),
                           std::istreambuf_iterator<char>());
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw xumeval::LoadError("cannot open input file: " + path);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

int run_eval_cmd(const std::string& manifest, const std::string& predictions,
                 const CommonFlags& common, const std::vector<std::string>& metrics,
                 const std::string& format, const std::string& provider_url, bool percent) {
    static const std::set<std::string> kKnown = {"f1",          "correlation",  "fclip",
                                                 "cross_fclip", "vt_clipscore", "text"};
    xumeval::EvalConfig config;
    config.token_width = common.token_width;
    config.target_frames = common.target_frames;
    config.percent = percent;
    config.provider_url = provider_url;
    for (const auto& m : metrics) {
        if (!kKnown.count(m)) {
            throw xumeval::ArgumentError(
                "unknown metric \"" + m +
                "\" (valid: f1, correlation, fclip, cross_fclip, vt_clipscore, text)");
        }
        config.metrics.insert(m);
    }
    const Json report = xumeval::run_eval(manifest, predictions, config);
    const std::string json_text = dump(report);
    if (!common.out.empty()) {
        emit(json_text, common.out);
        if (format == "table") std::cout << xumeval::render_table(report);
    } else {
        std::cout << (format == "table" ? xumeval::render_table(report) : json_text);
    }
    return 0;
}

int run_parse_cmd(const std::string& input, const std::string& task_name,
                  const CommonFlags& common) {
    const auto task = xumeval::parse_task_kind(task_name);
    const std::string raw = read_input(input);
    const auto parsed = task == xumeval::TaskKind::Video
                            ? xumeval::parse_v2v(raw, common.token_width)
                            : xumeval::parse_v2vt(raw, common.token_width, task);
    Json out;
    out["indices"] = parsed.frame_indices;
    out["text"] = parsed.clean_text;
    emit(dump(out), common.out);
    return 0;
}

int run_scores_cmd(const std::string& logits, int timeline_len, const CommonFlags& common) {
    const auto records = xumeval::load_logit_records(logits);
    const auto importance = xumeval::importance_vector(records, timeline_len);
    Json out;
    out["scores"] = importance.scores;
    out["mean_score"] = importance.mean_score;
    emit(dump(out), common.out);
    return 0;
}

int run_filter_cmd(const std::string& similarities, const std::string& embeddings,
                   double threshold, const CommonFlags& common) {
    std::vector<int> kept;
    std::size_t total = 0;
    if (!similarities.empty()) {
        const auto sims = xumeval::load_similarity_file(similarities);
        total = sims.size();
        kept = xumeval::redundancy_filter(sims, threshold);
    } else {
        const auto set = xumeval::load_embedding_file(embeddings);
        total = set.size();
        kept = xumeval::redundancy_filter(set, threshold);
    }
    std::vector<int> dropped;
    std::size_t next_kept = 0;
    for (std::size_t i = 0; i < total; ++i) {
        if (next_kept < kept.size() && kept[next_kept] == static_cast<int>(i)) {
            ++next_kept;
        } else {
            dropped.push_back(static_cast<int>(i));
        }
    }
    Json out;
    out["threshold"] = threshold;
    out["count"] = static_cast<std::int64_t>(total);
    out["kept"] = kept;
    out["dropped"] = dropped;
    emit(dump(out), common.out);
    return 0;
}

int run_stats_cmd(const std::string& manifest, const CommonFlags& common) {
    const auto records =
        xumeval::load_manifest(manifest, common.target_frames, common.token_width);
    const auto stats = xumeval::corpus_stats(records, common.token_width);
    const auto splits = xumeval::split_counts(records);
    Json out;
    out["n_videos"] = static_cast<std::int64_t>(stats.n_videos);
    out["mean_duration_s"] = stats.mean_duration_s;
    out["mean_text_tokens"] = stats.mean_text_tokens;
    out["mean_video_summary_frames"] = stats.mean_video_summary_frames;
    out["mean_compression_ratio"] = stats.mean_compression_ratio;
    Json split_json;
    split_json["train"] = static_cast<std::int64_t>(splits.train);
    split_json["val"] = static_cast<std::int64_t>(splits.val);
    split_json["test"] = static_cast<std::int64_t>(splits.test);
    out["splits"] = std::move(split_json);
    emit(dump(out), common.out);
    return 0;
}

int run_encode_cmd(int frame_count, double fps, const CommonFlags& common) {
    const auto map = xumeval::make_normalized_map(frame_count, common.target_frames, fps);
    const auto seq = xumeval::build_interleaved_sequence(map, common.token_width);
    Json out;
    out["original_count"] = map.original_count();
    out["target_count"] = map.target_count();
    out["token_width"] = seq.token_width;
    Json entries = Json::array();
    for (const auto& entry : seq.entries) {
        Json e;
        e["token"] = xumeval::encode_temporal_token(entry.token.index, seq.token_width);
        e["source_frame"] = entry.source_frame;
        e["source_time_s"] = xumeval::detail::round6(
            map.to_original_timestamp(entry.token.index));
        entries.push_back(std::move(e));
    }
    out["entries"] = std::move(entries);
    emit(dump(out), common.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"evaluation toolkit for temporal-prompted video and text summarization"};
    app.set_version_flag("--version", std::string("xumeval ") + xumeval::kVersion);
    app.require_subcommand(1);

    CommonFlags common;
    std::string manifest, predictions, input = "-", task_name = "BOTH";
    std::string logits, similarities, embeddings, format = "json", provider_url;
    std::vector<std::string> metrics;
    double threshold = xumeval::kDefaultRedundancyThreshold;
    double fps = 1.0;
    int timeline_len = 0, frame_count = 0;
    bool percent = false;

    const auto add_common = [&](CLI::App* cmd, bool with_target = true) {
        cmd->add_option("--token-width", common.token_width, "digits per temporal token")
            ->capture_default_str();
        if (with_target) {
            cmd->add_option("--target-frames", common.target_frames,
                            "normalized timeline length")
                ->capture_default_str();
        }
        cmd->add_option("--out", common.out, "write output to a file instead of stdout");
    };

    auto* eval_cmd = app.add_subcommand("eval", "score predictions against a manifest");
    eval_cmd->add_option("--manifest", manifest, "dataset manifest JSONL")->required();
    eval_cmd->add_option("--predictions", predictions, "model predictions JSONL")->required();
    eval_cmd->add_option("--metrics", metrics,
                         "metric families to compute (default all): "
                         "f1,correlation,fclip,cross_fclip,vt_clipscore,text")
        ->delimiter(',');
    eval_cmd->add_option("--format", format, "stdout format")
        ->check(CLI::IsMember({"json", "table"}))
        ->capture_default_str();
    eval_cmd->add_option("--provider-url", provider_url, "remote embedding provider")
        ->envname("XUM_EVAL_PROVIDER_URL");
    eval_cmd->add_flag("--percent", percent, "scale table values by 100");
    add_common(eval_cmd);

    auto* parse_cmd = app.add_subcommand("parse", "extract frame indices and clean text");
    parse_cmd->add_option("--input", input, "input file, or - for stdin")
        ->capture_default_str();
    parse_cmd->add_option("--task", task_name, "VIDEO, TEXT, or BOTH")
        ->check(CLI::IsMember({"VIDEO", "TEXT", "BOTH"}))
        ->capture_default_str();
    add_common(parse_cmd, false);

    auto* scores_cmd = app.add_subcommand("scores", "importance scores from decoder logits");
    scores_cmd->add_option("--logits", logits, "logit records JSONL")->required();
    scores_cmd->add_option("--timeline-len", timeline_len, "normalized timeline length")
        ->required()
        ->check(CLI::PositiveNumber);
    add_common(scores_cmd, false);

    auto* filter_cmd = app.add_subcommand("filter", "drop redundant summary frames");
    filter_cmd->add_option("--similarities", similarities, "precomputed similarity matrix");
    filter_cmd->add_option("--embeddings", embeddings, "caption embedding file");
    filter_cmd->add_option("--threshold", threshold, "redundancy threshold")
        ->capture_default_str();
    add_common(filter_cmd, false);

    auto* stats_cmd = app.add_subcommand("stats", "corpus statistics from a manifest");
    stats_cmd->add_option("--manifest", manifest, "dataset manifest JSONL")->required();
    add_common(stats_cmd);

    auto* encode_cmd = app.add_subcommand("encode", "interleaved temporal-prompt sequence");
    encode_cmd->add_option("--frame-count", frame_count, "original frame count")
        ->required()
        ->check(CLI::PositiveNumber);
    encode_cmd->add_option("--fps", fps, "frames per second")->capture_default_str();
    add_common(encode_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(eval_cmd)) {
            return run_eval_cmd(manifest, predictions, common, metrics, format, provider_url,
                                percent);
        }
        if (app.got_subcommand(parse_cmd)) return run_parse_cmd(input, task_name, common);
        if (app.got_subcommand(scores_cmd)) return run_scores_cmd(logits, timeline_len, common);
        if (app.got_subcommand(filter_cmd)) {
            if (similarities.empty() == embeddings.empty()) {
                throw xumeval::ArgumentError(
                    "filter needs exactly one of --similarities or --embeddings");
            }
            return run_filter_cmd(similarities, embeddings, threshold, common);
        }
        if (app.got_subcommand(stats_cmd)) return run_stats_cmd(manifest, common);
        if (app.got_subcommand(encode_cmd)) return run_encode_cmd(frame_count, fps, common);
        return 1;
    } catch (const xumeval::EmptySummaryError& e) {
        std::cerr << "xumeval: " << e.what() << '\n';
        return 2;
    } catch (const xumeval::UndefinedScoreError& e) {
        std::cerr << "xumeval: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "xumeval: " << e.what() << '\n';
        return 1;
    }
}
