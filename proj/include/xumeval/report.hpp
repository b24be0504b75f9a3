// SPDX-FileCopyrightText: 2026 xumeval contributors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file report.hpp
 * @brief Corpus evaluation driver and machine-readable report assembly.
 *
 * run_eval() joins a dataset manifest with a predictions file, parses
 * every prediction, computes the requested metrics, and assembles one
 * JSON report. Reports are deterministic: videos are processed in
 * video_id order, every float is rounded to six decimals before emission,
 * and field order is fixed, so identical inputs give byte-identical
 * output.
 *
 * Predictions are JSON lines, one per manifest video:
 *
 *   {"video_id": str, "raw": str, "task": "VIDEO"|"TEXT"|"BOTH" (optional,
 *    default BOTH), "logits": path (optional), "text_emb": path (optional)}
 *
 * Relative paths inside either file resolve against that file's directory.
 * Per-video failures (unreadable embeddings, undefined scores) are
 * recorded and excluded from the corpus means; they never abort the run.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "xumeval/dataset.hpp"
#include "xumeval/embedding.hpp"
#include "xumeval/error.hpp"
#include "xumeval/importance.hpp"
#include "xumeval/metrics.hpp"
#include "xumeval/parse.hpp"
#include "xumeval/provider.hpp"
#include "xumeval/temporal.hpp"
#include "xumeval/text_metrics.hpp"
#include "xumeval/version.hpp"

#include <json.hpp>

namespace xumeval {

using Json = nlohmann::ordered_json;

struct EvalConfig {
    int token_width = kDefaultTokenWidth;
    int target_frames = kDefaultTargetFrames;
    std::set<std::string> metrics;  // empty = all; names: f1, correlation, fclip, cross_fclip, vt_clipscore, text
    bool percent = false;           // table rendering only; JSON always stays 0..1
    std::string provider_url;      // optional remote embedding provider
};

/// One line of the predictions file.
struct Prediction {
    std::string video_id;
    std::string raw;
    TaskKind task = TaskKind::Both;
    std::optional<std::string> logits;
    std::optional<std::string> text_emb;
};

inline std::vector<Prediction> load_predictions(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open predictions: " + path.string());
    std::vector<Prediction> predictions;
    std::vector<std::string> problems;
    std::unordered_map<std::string, std::size_t> first_line_of_id;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const auto obj = nlohmann::json::parse(line);
            Prediction pred;
            pred.video_id = obj.at("video_id").get<std::string>();
            pred.raw = obj.at("raw").get<std::string>();
            pred.task = parse_task_kind(obj.value("task", "BOTH"));
            if (obj.contains("logits")) pred.logits = obj.at("logits").get<std::string>();
            if (obj.contains("text_emb")) pred.text_emb = obj.at("text_emb").get<std::string>();
            const auto [it, inserted] = first_line_of_id.emplace(pred.video_id, line_no);
            if (!inserted) {
                problems.push_back("line " + std::to_string(line_no) + ": duplicate video_id \"" +
                                   pred.video_id + "\" (first seen on line " +
                                   std::to_string(it->second) + ")");
            }
            predictions.push_back(std::move(pred));
        } catch (const nlohmann::json::exception& e) {
            problems.push_back("line " + std::to_string(line_no) + ": " + e.what());
        } catch (const ParseError& e) {
            problems.push_back("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!problems.empty()) {
        std::string message = path.string() + ": predictions rejected:";
        for (const auto& p : problems) message += "\n  " + p;
        throw LoadError(message);
    }
    return predictions;
}

namespace detail {

/// Six-decimal rounding applied to every float the report emits.
inline double round6(double v) {
    return std::round(v * 1e6) / 1e6;
}

/// Kahan-compensated mean so corpus aggregation is order-stable.
class MeanAccumulator {
public:
    void add(double v) {
        const double y = v - compensation_;
        const double t = sum_ + y;
        compensation_ = (t - sum_) - y;
        sum_ = t;
        ++count_;
    }

    std::size_t count() const noexcept { return count_; }
    bool empty() const noexcept { return count_ == 0; }
    double mean() const { return sum_ / static_cast<double>(count_); }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
    std::size_t count_ = 0;
};

inline std::filesystem::path resolve_relative(const std::filesystem::path& base_file,
                                              const std::string& maybe_relative) {
    const std::filesystem::path p(maybe_relative);
    if (p.is_absolute()) return p;
    return base_file.parent_path() / p;
}

/// Sentence boundaries for provider payloads: split on ./!/? + space.
inline std::vector<std::string> split_sentences(const std::string& text) {
    std::vector<std::string> sentences;
    std::string current;
    for (std::size_t i = 0; i < text.size(); ++i) {
        current += text[i];
        const bool boundary = (text[i] == '.' || text[i] == '!' || text[i] == '?') &&
                              (i + 1 == text.size() || text[i + 1] == ' ');
        if (boundary) {
            while (!current.empty() && current.front() == ' ') current.erase(current.begin());
            if (!current.empty()) sentences.push_back(current);
            current.clear();
        }
    }
    while (!current.empty() && current.front() == ' ') current.erase(current.begin());
    if (!current.empty()) sentences.push_back(current);
    return sentences;
}

}  // namespace detail

/// Builds the config echo carried by every report, so any number in the
/// report can be traced back to the exact metric configuration.
inline Json config_echo_json(const EvalConfig& config) {
    Json echo;
    echo["token_width"] = config.token_width;
    echo["target_frames"] = config.target_frames;
    echo["bleu_smoothing"] = "none";
    echo["rouge_beta"] = kRougeBeta;
    echo["cider_ngram_max"] = kMaxNgramOrder;
    echo["cider_sigma"] = kCiderSigma;
    echo["cider_scale"] = kCiderScale;
    echo["tokenizer"] = "lowercase, ascii-punctuation-split, unicode-whitespace";
    echo["clip_clamp"] = "max(cos, 0)";
    echo["percent"] = config.percent;
    Json selected = Json::array();
    for (const auto& m : config.metrics) selected.push_back(m);
    echo["metrics"] = config.metrics.empty() ? Json("all") : Json(selected);
    return echo;
}

/// Corpus evaluation: joins manifest and predictions, computes all
/// requested metrics, returns the report as ordered JSON.
inline Json run_eval(const std::filesystem::path& manifest_path,
                     const std::filesystem::path& predictions_path, const EvalConfig& config) {
    const auto records = load_manifest(manifest_path, config.target_frames, config.token_width);
    const auto predictions = load_predictions(predictions_path);

    const auto want = [&](const char* name) {
        return config.metrics.empty() || config.metrics.count(name) > 0;
    };

    std::map<std::string, const Prediction*> prediction_by_id;
    for (const auto& pred : predictions) prediction_by_id.emplace(pred.video_id, &pred);

    std::map<std::string, const VideoRecord*> record_by_id;
    for (const auto& rec : records) record_by_id.emplace(rec.video_id, &rec);

    Json report;
    report["tool_version"] = kVersion;
    report["config_echo"] = config_echo_json(config);

    Json provenance;
    provenance["manifest"] = manifest_path.string();
    provenance["predictions"] = predictions_path.string();
    provenance["encoder_note"] =
        "embeddings are external inputs; scores are comparable only across runs "
        "that share one embedding source";
    std::map<std::string, Json> embedding_sources;  // path -> {count, dim}

    Json per_video = Json::object();
    Json errors = Json::object();
    std::vector<std::string> missing;
    std::vector<std::string> unmatched;
    for (const auto& pred : predictions) {
        if (!record_by_id.count(pred.video_id)) unmatched.push_back(pred.video_id);
    }
    std::sort(unmatched.begin(), unmatched.end());

    std::map<std::string, detail::MeanAccumulator> means;
    // cider is corpus-level: gather aligned token lists, then fold back
    std::vector<std::string> cider_ids;
    std::vector<std::vector<std::string>> cider_preds, cider_refs;

    const auto load_set_cached = [&](const std::filesystem::path& path) {
        auto set = load_embedding_file(path);
        Json meta;
        meta["count"] = static_cast<std::int64_t>(set.size());
        meta["dim"] = static_cast<std::int64_t>(set.dim());
        embedding_sources.emplace(path.string(), std::move(meta));
        return set;
    };

    for (const auto& [video_id, rec] : record_by_id) {
        const auto pred_it = prediction_by_id.find(video_id);
        if (pred_it == prediction_by_id.end()) {
            missing.push_back(video_id);
            continue;
        }
        const Prediction& pred = *pred_it->second;
        const int norm_len = rec->normalized_len(config.target_frames);
        const auto timeline = make_normalized_map(rec->frame_count, config.target_frames, rec->fps);

        Json entry = Json::object();
        std::vector<std::string> warnings;

        ParsedSummary parsed;
        try {
            parsed = pred.task == TaskKind::Video ? parse_v2v(pred.raw, config.token_width)
                                                  : parse_v2vt(pred.raw, config.token_width, pred.task);
        } catch (const Error& e) {
            errors[video_id] = std::string("parse: ") + e.what();
            continue;
        }
        if (parsed.diagnostics.malformed_tokens > 0) {
            warnings.push_back(std::to_string(parsed.diagnostics.malformed_tokens) +
                               " malformed token(s) skipped");
        }
        if (!parsed.frame_indices.empty()) {
            try {
                parsed = validate_against_timeline(std::move(parsed), timeline);
            } catch (const EmptySummaryError&) {
                warnings.push_back("all predicted frame indices out of range; video metrics skipped");
                parsed.frame_indices.clear();
            }
        }
        if (parsed.diagnostics.dropped_out_of_range > 0) {
            warnings.push_back(std::to_string(parsed.diagnostics.dropped_out_of_range) +
                               " frame index(es) outside the normalized timeline dropped");
        }

        // video-side metrics only make sense for tasks that predict frames
        const bool video_side = pred.task != TaskKind::Text;

        // V2V frame overlap
        if (want("f1") && video_side) {
            try {
                const auto score = f1_frame_overlap(parsed.frame_indices, rec->gt_video_summary);
                Json v2v;
                v2v["precision"] = detail::round6(score.precision);
                v2v["recall"] = detail::round6(score.recall);
                v2v["f1"] = detail::round6(score.f1);
                entry["v2v"] = std::move(v2v);
                means["precision"].add(score.precision);
                means["recall"].add(score.recall);
                means["f1"].add(score.f1);
            } catch (const Error& e) {
                warnings.push_back(std::string("f1: ") + e.what());
            }
        }

        // rank correlations from decoder logits vs ground-truth scores
        if (want("correlation") && video_side && pred.logits && rec->gt_frame_scores) {
            try {
                auto logit_records =
                    load_logit_records(detail::resolve_relative(predictions_path, *pred.logits));
                std::vector<LogitRecord> usable;
                std::unordered_set<int> seen;
                int dropped = 0;
                for (auto& lr : logit_records) {
                    if (lr.frame_index < 0 || lr.frame_index >= norm_len || !seen.insert(lr.frame_index).second) {
                        ++dropped;
                        continue;
                    }
                    usable.push_back(std::move(lr));
                }
                if (dropped > 0) {
                    warnings.push_back(std::to_string(dropped) +
                                       " logit record(s) dropped (duplicate or out of range)");
                }
                const auto importance = importance_vector(usable, norm_len);
                const auto& gt_scores = *rec->gt_frame_scores;
                const double rho = spearman_rho(importance.scores, gt_scores);
                const double tau = kendall_tau(importance.scores, gt_scores);
                Json corr;
                corr["spearman"] = detail::round6(rho);
                corr["kendall"] = detail::round6(tau);
                corr["mean_importance"] = detail::round6(importance.mean_score);
                entry["correlation"] = std::move(corr);
                means["spearman"].add(rho);
                means["kendall"].add(tau);
            } catch (const Error& e) {
                warnings.push_back(std::string("correlation: ") + e.what());
            }
        }

        // embedding-based metrics
        const bool need_clip = want("fclip") || want("cross_fclip") || want("vt_clipscore");
        if (need_clip && video_side && rec->frame_emb) {
            std::optional<EmbeddingSet> frames;
            try {
                frames = load_set_cached(detail::resolve_relative(manifest_path, *rec->frame_emb));
            } catch (const Error& e) {
                errors[video_id] = std::string("frame embeddings: ") + e.what();
            }
            std::optional<EmbeddingSet> ref_video, pred_video;
            if (frames) {
                try {
                    ref_video = frames->select(rec->gt_video_summary);
                } catch (const Error& e) {
                    warnings.push_back(std::string("reference selection: ") + e.what());
                }
                if (!parsed.frame_indices.empty()) {
                    try {
                        pred_video = frames->select(parsed.frame_indices);
                    } catch (const Error& e) {
                        warnings.push_back(std::string("prediction selection: ") + e.what());
                    }
                }
            }

            if (want("fclip") && ref_video && pred_video) {
                try {
                    const auto clip = f_clip(*ref_video, *pred_video);
                    Json cj;
                    cj["r_clip"] = detail::round6(clip.r_clip);
                    cj["p_clip"] = detail::round6(clip.p_clip);
                    cj["f_clip"] = detail::round6(clip.f_clip);
                    entry["clip"] = std::move(cj);
                    means["r_clip"].add(clip.r_clip);
                    means["p_clip"].add(clip.p_clip);
                    means["f_clip"].add(clip.f_clip);
                } catch (const Error& e) {
                    warnings.push_back(std::string("fclip: ") + e.what());
                }
            }

            // text embeddings for the cross-modal metrics
            std::optional<EmbeddingSet> ref_text, pred_text;
            const bool need_text_emb = want("cross_fclip") || want("vt_clipscore");
            if (need_text_emb) {
                if (rec->text_emb) {
                    try {
                        ref_text = load_set_cached(detail::resolve_relative(manifest_path, *rec->text_emb));
                    } catch (const Error& e) {
                        warnings.push_back(std::string("reference text embeddings: ") + e.what());
                    }
                }
                if (pred.text_emb) {
                    try {
                        pred_text = load_set_cached(detail::resolve_relative(predictions_path, *pred.text_emb));
                    } catch (const Error& e) {
                        warnings.push_back(std::string("prediction text embeddings: ") + e.what());
                    }
                } else if (!config.provider_url.empty() && !parsed.clean_text.empty()) {
                    try {
                        const auto sentences = detail::split_sentences(parsed.clean_text);
                        pred_text = fetch_remote(config.provider_url, sentences, PayloadKind::Text);
                    } catch (const Error& e) {
                        warnings.push_back(std::string("provider: ") + e.what());
                    }
                }
            }

            if (want("cross_fclip") && ref_video && pred_video && ref_text && pred_text) {
                try {
                    const double cross = cross_f_clip(*ref_video, *pred_video, *ref_text, *pred_text);
                    entry["cross_f_clip"] = detail::round6(cross);
                    means["cross_f_clip"].add(cross);
                } catch (const Error& e) {
                    warnings.push_back(std::string("cross_fclip: ") + e.what());
                }
            }
            if (want("vt_clipscore") && pred_video && pred_text) {
                try {
                    const double vt = vt_clip_score(*pred_video, *pred_text);
                    entry["vt_clip_score"] = detail::round6(vt);
                    means["vt_clip_score"].add(vt);
                } catch (const Error& e) {
                    warnings.push_back(std::string("vt_clipscore: ") + e.what());
                }
            }
        }

        // text metrics against the token-stripped ground-truth summary
        if (want("text") && pred.task != TaskKind::Video) {
            const auto ref_clean = parse_v2vt(rec->gt_text_summary, config.token_width).clean_text;
            const auto pred_tokens = tokenize(parsed.clean_text);
            const auto ref_tokens = tokenize(ref_clean);
            if (pred_tokens.empty()) warnings.push_back("text: empty prediction, scores are 0");
            const double bleu = bleu4(pred_tokens, ref_tokens);
            const double rouge = rouge_l(pred_tokens, ref_tokens);
            Json text;
            text["bleu4"] = detail::round6(bleu);
            text["rouge_l"] = detail::round6(rouge);
            entry["text"] = std::move(text);
            means["bleu4"].add(bleu);
            means["rouge_l"].add(rouge);
            cider_ids.push_back(video_id);
            cider_preds.push_back(pred_tokens);
            cider_refs.push_back(ref_tokens);
        }

        if (!warnings.empty()) entry["warnings"] = warnings;
        per_video[video_id] = std::move(entry);
    }

    // fold corpus-level CIDEr back into the per-video entries
    if (want("text") && !cider_ids.empty()) {
        const auto cider_result = cider(cider_preds, cider_refs);
        for (std::size_t i = 0; i < cider_ids.size(); ++i) {
            per_video[cider_ids[i]]["text"]["cider"] = detail::round6(cider_result.per_item[i]);
            means["cider"].add(cider_result.per_item[i]);
        }
        if (cider_result.degenerate_idf) {
            report["warnings"] = Json::array({"cider: single-item corpus, IDF is degenerate"});
        }
    }

    Json emb_json = Json::object();
    for (const auto& [path, meta] : embedding_sources) emb_json[path] = meta;
    provenance["embeddings"] = std::move(emb_json);
    report["provenance"] = std::move(provenance);

    report["per_video"] = std::move(per_video);
    report["missing"] = missing;  // already in sorted map order
    if (!unmatched.empty()) report["unmatched_predictions"] = unmatched;
    report["errors"] = std::move(errors);

    Json corpus = Json::object();
    static constexpr const char* kMeanOrder[] = {
        "precision", "recall", "f1", "spearman", "kendall", "r_clip", "p_clip",
        "f_clip", "cross_f_clip", "vt_clip_score", "bleu4", "rouge_l", "cider"};
    for (const char* name : kMeanOrder) {
        const auto it = means.find(name);
        if (it == means.end() || it->second.empty()) continue;
        Json cell;
        cell["mean"] = detail::round6(it->second.mean());
        cell["count"] = static_cast<std::int64_t>(it->second.count());
        corpus[name] = std::move(cell);
    }
    report["corpus_means"] = std::move(corpus);
    report["n_videos"] = static_cast<std::int64_t>(records.size());
    report["n_scored"] = static_cast<std::int64_t>(report["per_video"].size());
    return report;
}

/// Aligned plain-text rendering of a report. Honors the percent flag in
/// the report's config echo (JSON values always stay in 0..1).
inline std::string render_table(const Json& report) {
    const bool percent = report.at("config_echo").value("percent", false);
    const double scale = percent ? 100.0 : 1.0;
    static constexpr const char* kColumns[] = {"f1",      "spearman",     "kendall",
                                               "f_clip",  "cross_f_clip", "vt_clip_score",
                                               "bleu4",   "rouge_l",      "cider"};
    const auto find_value = [](const Json& entry, const std::string& column) -> std::optional<double> {
        if (column == "f1" && entry.contains("v2v")) return entry["v2v"]["f1"].get<double>();
        if ((column == "spearman" || column == "kendall") && entry.contains("correlation")) {
            return entry["correlation"][column].get<double>();
        }
        if (column == "f_clip" && entry.contains("clip")) return entry["clip"]["f_clip"].get<double>();
        if (column == "cross_f_clip" && entry.contains("cross_f_clip")) {
            return entry["cross_f_clip"].get<double>();
        }
        if (column == "vt_clip_score" && entry.contains("vt_clip_score")) {
            return entry["vt_clip_score"].get<double>();
        }
        if ((column == "bleu4" || column == "rouge_l" || column == "cider") && entry.contains("text") &&
            entry["text"].contains(column)) {
            return entry["text"][column].get<double>();
        }
        return std::nullopt;
    };

    std::ostringstream out;
    out << std::left << std::setw(24) << "video_id";
    for (const char* col : kColumns) out << std::right << std::setw(14) << col;
    out << '\n';
    const auto emit_row = [&](const std::string& label, const auto& value_of) {
        out << std::left << std::setw(24) << label;
        for (const char* col : kColumns) {
            const auto v = value_of(col);
            if (v) {
                std::ostringstream cell;
                cell << std::fixed << std::setprecision(percent ? 4 : 6) << (*v * scale);
                out << std::right << std::setw(14) << cell.str();
            } else {
                out << std::right << std::setw(14) << "-";
            }
        }
        out << '\n';
    };
    for (const auto& [video_id, entry] : report.at("per_video").items()) {
        emit_row(video_id, [&](const char* col) { return find_value(entry, col); });
    }
    const auto& corpus = report.at("corpus_means");
    emit_row("mean", [&](const char* col) -> std::optional<double> {
        if (!corpus.contains(col)) return std::nullopt;
        return corpus[col]["mean"].get<double>();
    });
    return out.str();
}

}  // namespace xumeval
