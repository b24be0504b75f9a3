// SPDX-FileCopyrightText: 2026 xumeval contributors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file metrics.hpp
 * @brief Video-summary metrics: frame overlap, rank correlation, and
 *        greedy CLIP-similarity matching.
 *
 * The CLIP family compares embedding sets by greedy matching: recall
 * averages, over reference items, the best clamped cosine against any
 * predicted item; precision swaps the roles; the F score is their
 * harmonic mean. Only non-negative similarities contribute (negative
 * cosines clamp to zero). The cross-modal variant averages the two
 * cross pairings (reference video vs predicted text, predicted video vs
 * reference text); the mean-pooling score collapses each set to its
 * renormalized mean vector first.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xumeval/embedding.hpp"
#include "xumeval/error.hpp"

namespace xumeval {

/// Frame-overlap and rank-correlation scores for one video.
struct V2VScore {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::optional<double> spearman;
    std::optional<double> kendall;
};

/// Greedy CLIP-matching recall/precision/F for one video.
struct ClipScore {
    double r_clip = 0.0;
    double p_clip = 0.0;
    double f_clip = 0.0;
};

namespace detail {

inline void require_canonical(std::span<const int> indices, const char* name) {
    for (std::size_t i = 1; i < indices.size(); ++i) {
        if (indices[i] <= indices[i - 1]) {
            throw ArgumentError(std::string(name) + " indices must be sorted and unique");
        }
    }
}

inline double harmonic_mean(double p, double r) {
    return (p + r) > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
}

/// Average ranks, ties shared. Rank values start at 1.
inline std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double shared = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
        i = j + 1;
    }
    return ranks;
}

inline double pearson(std::span<const double> x, std::span<const double> y) {
    const auto n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw UndefinedScoreError("correlation undefined for constant input");
    }
    return sxy / std::sqrt(sxx * syy);
}

inline void check_correlation_input(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw ArgumentError("correlation inputs must have equal length, got " +
                            std::to_string(x.size()) + " and " + std::to_string(y.size()));
    }
    if (x.size() < 2) throw ArgumentError("correlation needs at least two observations");
}

}  // namespace detail

/// Exact-match precision/recall/F1 between two canonical frame-index
/// lists on the same normalized timeline.
inline V2VScore f1_frame_overlap(std::span<const int> pred, std::span<const int> gt) {
    detail::require_canonical(pred, "predicted");
    detail::require_canonical(gt, "ground-truth");
    if (pred.empty() && gt.empty()) {
        throw UndefinedScoreError("frame overlap undefined when both index sets are empty");
    }
    std::size_t inter = 0, i = 0, j = 0;
    while (i < pred.size() && j < gt.size()) {
        if (pred[i] == gt[j]) {
            ++inter;
            ++i;
            ++j;
        } else if (pred[i] < gt[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    V2VScore score;
    score.precision = pred.empty() ? 0.0 : static_cast<double>(inter) / static_cast<double>(pred.size());
    score.recall = gt.empty() ? 0.0 : static_cast<double>(inter) / static_cast<double>(gt.size());
    score.f1 = detail::harmonic_mean(score.precision, score.recall);
    return score;
}

/// Pearson correlation of average ranks (ties get their shared rank).
inline double spearman_rho(std::span<const double> x, std::span<const double> y) {
    detail::check_correlation_input(x, y);
    const auto rx = detail::average_ranks(x);
    const auto ry = detail::average_ranks(y);
    return detail::pearson(rx, ry);
}

/// Kendall tau-b: (concordant - discordant) / sqrt((n0 - tx)(n0 - ty)).
inline double kendall_tau(std::span<const double> x, std::span<const double> y) {
    detail::check_correlation_input(x, y);
    const std::size_t n = x.size();
    long long concordant = 0, discordant = 0, ties_x = 0, ties_y = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = x[i] - x[j];
            const double dy = y[i] - y[j];
            if (dx == 0.0 && dy == 0.0) {
                ++ties_x;
                ++ties_y;
            } else if (dx == 0.0) {
                ++ties_x;
            } else if (dy == 0.0) {
                ++ties_y;
            } else if ((dx > 0.0) == (dy > 0.0)) {
                ++concordant;
            } else {
                ++discordant;
            }
        }
    }
    const auto n0 = static_cast<long long>(n) * static_cast<long long>(n - 1) / 2;
    const double denom_x = static_cast<double>(n0 - ties_x);
    const double denom_y = static_cast<double>(n0 - ties_y);
    if (denom_x <= 0.0 || denom_y <= 0.0) {
        throw UndefinedScoreError("correlation undefined for constant input");
    }
    return static_cast<double>(concordant - discordant) / std::sqrt(denom_x * denom_y);
}

namespace detail {

inline double greedy_match_mean(const EmbeddingSet& over, const EmbeddingSet& against) {
    if (over.empty() || against.empty()) {
        throw ArgumentError("CLIP metrics require non-empty embedding sets");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < over.size(); ++i) {
        double best = 0.0;
        for (std::size_t j = 0; j < against.size(); ++j) {
            best = std::max(best, clamped_cosine(over.row(i), against.row(j)));
        }
        sum += best;
    }
    return sum / static_cast<double>(over.size());
}

}  // namespace detail

/// Mean over reference items of the best clamped cosine to any predicted item.
inline double r_clip(const EmbeddingSet& ref, const EmbeddingSet& pred) {
    return detail::greedy_match_mean(ref, pred);
}

/// Mean over predicted items of the best clamped cosine to any reference item.
inline double p_clip(const EmbeddingSet& ref, const EmbeddingSet& pred) {
    return detail::greedy_match_mean(pred, ref);
}

inline ClipScore f_clip(const EmbeddingSet& ref, const EmbeddingSet& pred) {
    ClipScore score;
    score.r_clip = r_clip(ref, pred);
    score.p_clip = p_clip(ref, pred);
    score.f_clip = detail::harmonic_mean(score.p_clip, score.r_clip);
    return score;
}

/// Mean of the two cross-modal F scores: F(ref video, pred text) and
/// F(pred video, ref text). Frame and sentence embeddings must share a
/// joint space.
inline double cross_f_clip(const EmbeddingSet& ref_video, const EmbeddingSet& pred_video,
                           const EmbeddingSet& ref_text, const EmbeddingSet& pred_text) {
    const std::size_t dims[] = {ref_video.dim(), pred_video.dim(), ref_text.dim(), pred_text.dim()};
    for (std::size_t d : dims) {
        if (d != dims[0]) {
            throw ArgumentError("cross-modal embedding sets must share one dimension");
        }
    }
    const double video_vs_text = f_clip(ref_video, pred_text).f_clip;
    const double text_vs_video = f_clip(pred_video, ref_text).f_clip;
    return (video_vs_text + text_vs_video) / 2.0;
}

/// Clamped cosine between the renormalized mean-pooled video and text
/// summary vectors.
inline double vt_clip_score(const EmbeddingSet& pred_video, const EmbeddingSet& pred_text) {
    const auto video_mean = mean_pooled(pred_video);
    const auto text_mean = mean_pooled(pred_text);
    return clamped_cosine(video_mean, text_mean);
}

}  // namespace xumeval
