// SPDX-FileCopyrightText: 2026 xumeval contributors
// SPDX-License-Identifier: Apache-2.0
//
// Curation walkthrough: deduplicate a frame sequence by caption similarity,
// then summarize a small corpus with the dataset statistics helpers.

#include <cmath>
#include <cstdio>
#include <vector>

#include "xumeval/dataset.hpp"
#include "xumeval/embedding.hpp"

int main() {
    // Caption embeddings for eight frames of one video. Frames 0-2 describe
    // the same moment from slightly different angles, 3-5 a second scene,
    // and 6-7 a third; within a scene the captions are nearly parallel.
    std::vector<std::vector<double>> captions;
    const double scene_axes[3][2] = {{1.0, 0.0}, {0.0, 1.0}, {0.7071, 0.7071}};
    const int scene_of[8] = {0, 0, 0, 1, 1, 1, 2, 2};
    for (int frame = 0; frame < 8; ++frame) {
        const auto* axis = scene_axes[scene_of[frame]];
        const double wobble = 0.05 * frame;
        captions.push_back({axis[0] + wobble * axis[1], axis[1] + wobble * axis[0], 0.01 * frame});
    }
    const auto embedded = xumeval::EmbeddingSet::from_rows(captions);

    const auto kept = xumeval::redundancy_filter(embedded, xumeval::kDefaultRedundancyThreshold);
    std::printf("redundancy filter at %.2f kept %zu of 8 frames:", xumeval::kDefaultRedundancyThreshold,
                kept.size());
    for (int idx : kept) std::printf(" %d", idx);
    std::printf("\n");

    // A minimal three-video corpus. Records normally come from
    // load_manifest; building them inline keeps the sample self-contained.
    std::vector<xumeval::VideoRecord> corpus(3);
    const int frame_counts[3] = {120, 80, 200};
    const char* summaries[3] = {
        "[f00] A chef preps vegetables. [f45] The dish is plated.",
        "[f10] Waves roll onto the beach.",
        "[f05] A crowd gathers. [f60] The parade begins. [f90] Confetti falls.",
    };
    for (int i = 0; i < 3; ++i) {
        auto& rec = corpus[static_cast<std::size_t>(i)];
        rec.video_id = "demo_" + std::to_string(i);
        rec.frame_count = frame_counts[i];
        rec.fps = 2.0;
        rec.duration_s = frame_counts[i] / 2.0;
        rec.gt_text_summary = summaries[i];
        const auto parsed = xumeval::parse_v2vt(rec.gt_text_summary);
        rec.gt_video_summary = parsed.frame_indices;
        rec.split = i == 2 ? xumeval::Split::Test : xumeval::Split::Train;
    }

    const auto stats = xumeval::corpus_stats(corpus);
    std::printf("\ncorpus of %zu videos:\n", stats.n_videos);
    std::printf("  mean duration        %.2f s\n", stats.mean_duration_s);
    std::printf("  mean text tokens     %.2f\n", stats.mean_text_tokens);
    std::printf("  mean summary frames  %.2f\n", stats.mean_video_summary_frames);
    std::printf("  mean compression     %.4f\n", stats.mean_compression_ratio);

    const auto splits = xumeval::split_counts(corpus);
    std::printf("  splits               train %zu / val %zu / test %zu\n", splits.train, splits.val,
                splits.test);
    return 0;
}
